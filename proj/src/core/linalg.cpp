#include "difftan/linalg.hpp"

namespace difftan {

Vector zero_vector(std::size_t n) { return Vector(n); }

Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n);
  v.at(i) = 1;
  return v;
}

bool is_zero(const Vector& v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) fail(ErrorCode::ShapeMismatch, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols, std::size_t rows) {
  Matrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) fail(ErrorCode::ShapeMismatch, "ragged matrix columns");
    for (std::size_t r = 0; r < rows; ++r) m.at(r, c) = cols[c][r];
  }
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<long>(r * cols_),
                data_.begin() + static_cast<long>((r + 1) * cols_));
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  }
  return t;
}

Matrix operator*(const Matrix& x, const Matrix& y) {
  if (x.cols_ != y.rows_) fail(ErrorCode::ShapeMismatch, "matrix product shape mismatch");
  Matrix r(x.rows_, y.cols_);
  for (std::size_t i = 0; i < x.rows_; ++i) {
    for (std::size_t k = 0; k < x.cols_; ++k) {
      const QuadNumber& a = x.at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < y.cols_; ++j) r.at(i, j) += a * y.at(k, j);
    }
  }
  return r;
}

Vector operator*(const Matrix& m, const Vector& v) {
  if (m.cols_ != v.size()) fail(ErrorCode::ShapeMismatch, "matrix-vector shape mismatch");
  Vector r(m.rows_);
  for (std::size_t i = 0; i < m.rows_; ++i) {
    for (std::size_t k = 0; k < m.cols_; ++k) r[i] += m.at(i, k) * v[k];
  }
  return r;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (at(r, c) != QuadNumber(r == c ? 1 : 0)) return false;
    }
  }
  return true;
}

std::vector<std::vector<std::string>> Matrix::to_strings() const {
  std::vector<std::vector<std::string>> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out[r].push_back(at(r, c).to_string());
  }
  return out;
}

Vector EchelonBasis::reduce(const Vector& v, Vector* tag_combination) const {
  if (v.size() != dim_) fail(ErrorCode::ShapeMismatch, "vector has wrong length");
  Vector w = v;
  if (tag_combination) *tag_combination = Vector(tag_dim_);
  for (const auto& row : rows_) {
    QuadNumber f = w[row.pivot];
    if (f.is_zero()) continue;
    for (std::size_t i = 0; i < dim_; ++i) {
      if (!row.v[i].is_zero()) w[i] -= f * row.v[i];
    }
    if (tag_combination) {
      for (std::size_t i = 0; i < tag_dim_; ++i) {
        if (!row.tag[i].is_zero()) (*tag_combination)[i] += f * row.tag[i];
      }
    }
  }
  return w;
}

bool EchelonBasis::insert(const Vector& v, const Vector& tag_in) {
  Vector tag = tag_in.empty() ? Vector(tag_dim_) : tag_in;
  if (tag.size() != tag_dim_) fail(ErrorCode::ShapeMismatch, "tag has wrong length");
  Vector comb;
  Vector w = reduce(v, &comb);
  std::size_t pivot = dim_;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!w[i].is_zero()) {
      pivot = i;
      break;
    }
  }
  if (pivot == dim_) return false;
  for (std::size_t i = 0; i < tag_dim_; ++i) tag[i] -= comb[i];
  QuadNumber s = w[pivot].inverse();
  for (auto& x : w) x *= s;
  for (auto& x : tag) x *= s;
  rows_.push_back({std::move(w), std::move(tag), pivot});
  return true;
}

bool EchelonBasis::contains(const Vector& v) const { return is_zero(reduce(v)); }

std::size_t rank(const std::vector<Vector>& vectors, std::size_t dim) {
  EchelonBasis b(dim);
  for (const auto& v : vectors) b.insert(v);
  return b.rank();
}

std::size_t rank(const Matrix& m) {
  std::vector<Vector> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  return rank(rows, m.cols());
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m.at(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
    }
    QuadNumber s = m.at(r, c).inverse();
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(r, j) *= s;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      QuadNumber f = m.at(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::vector<Vector> kernel(const Matrix& m_in) {
  Matrix m = m_in;
  auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve(const Matrix& a, const Vector& b) {
  if (b.size() != a.rows()) fail(ErrorCode::ShapeMismatch, "right-hand side has wrong length");
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
    aug.at(r, a.cols()) = b[r];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  Vector x(a.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, a.cols());
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, n + r) = 1;
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) inv.at(r, c) = aug.at(r, n + c);
  }
  return inv;
}

LinSpace::LinSpace(std::size_t dim, std::vector<Vector> vectors)
    : ambient_dim(dim), spanning_vectors(std::move(vectors)) {
  for (const auto& v : spanning_vectors) {
    if (v.size() != ambient_dim) fail(ErrorCode::ShapeMismatch, "spanning vector has wrong length");
  }
}

std::size_t LinSpace::rank() const { return difftan::rank(spanning_vectors, ambient_dim); }

bool LinSpace::contains(const Vector& v) const {
  EchelonBasis b(ambient_dim);
  for (const auto& w : spanning_vectors) b.insert(w);
  return b.contains(v);
}

QuotientSpace::QuotientSpace(const LinSpace& big, const LinSpace& sub) : big_(big) {
  if (big.ambient_dim != sub.ambient_dim) {
    fail(ErrorCode::ShapeMismatch, "quotient of spaces in different ambient dimensions");
  }
  EchelonBasis big_basis(big.ambient_dim);
  for (const auto& v : big.spanning_vectors) big_basis.insert(v);
  big_rank_ = big_basis.rank();
  for (std::size_t i = 0; i < sub.spanning_vectors.size(); ++i) {
    if (!big_basis.contains(sub.spanning_vectors[i])) {
      fail(ErrorCode::SubNotContained,
           "relation vector " + std::to_string(i) + " lies outside the spanning space");
    }
  }
  // first pass: find representatives
  EchelonBasis probe(big.ambient_dim);
  for (const auto& v : sub.spanning_vectors) probe.insert(v);
  sub_rank_ = probe.rank();
  for (std::size_t i = 0; i < big.spanning_vectors.size(); ++i) {
    if (probe.insert(big.spanning_vectors[i])) reps_.push_back(i);
  }
  // second pass: tagged basis for coordinates
  basis_ = EchelonBasis(big.ambient_dim, reps_.size());
  for (const auto& v : sub.spanning_vectors) basis_.insert(v);
  for (std::size_t k = 0; k < reps_.size(); ++k) {
    basis_.insert(big.spanning_vectors[reps_[k]], unit_vector(reps_.size(), k));
  }
}

std::vector<Vector> QuotientSpace::representatives() const {
  std::vector<Vector> out;
  for (auto i : reps_) out.push_back(big_.spanning_vectors[i]);
  return out;
}

std::optional<Vector> QuotientSpace::coordinates(const Vector& v) const {
  Vector comb;
  Vector residual = basis_.reduce(v, &comb);
  if (!is_zero(residual)) return std::nullopt;
  return comb;
}

std::size_t quotient_dim(const LinSpace& big, const LinSpace& sub) {
  return QuotientSpace(big, sub).dim();
}

Jet1 jet_of(const PolyMap& map, const Point& at) {
  Jet1 j;
  j.base = evaluate_map(map, at);
  std::size_t n = at.size();
  j.linear = Matrix(map.size(), n);
  for (std::size_t r = 0; r < map.size(); ++r) {
    for (std::size_t c = 0; c < n; ++c) j.linear.at(r, c) = map[r].derivative(c).evaluate(at);
  }
  return j;
}

}  // namespace difftan
