#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "difftan/polynomial.hpp"
#include "difftan/quad.hpp"

namespace difftan {

using Vector = std::vector<QuadNumber>;

Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);
bool is_zero(const Vector& v);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  QuadNumber& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const QuadNumber& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;

  Matrix transpose() const;
  friend Matrix operator*(const Matrix& x, const Matrix& y);
  friend Vector operator*(const Matrix& m, const Vector& v);
  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
  }
  bool is_identity() const;

  std::vector<std::vector<std::string>> to_strings() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<QuadNumber> data_;
};

// Incremental row echelon form. Each stored row carries a tag vector recording
// which inserted vectors combine to it.
class EchelonBasis {
 public:
  EchelonBasis(std::size_t dim, std::size_t tag_dim = 0) : dim_(dim), tag_dim_(tag_dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }

  // Returns true if v was independent of what is already stored.
  bool insert(const Vector& v, const Vector& tag = {});
  bool contains(const Vector& v) const;
  // Reduce v; returns the residual and the tag combination subtracted.
  Vector reduce(const Vector& v, Vector* tag_combination = nullptr) const;

 private:
  struct Row {
    Vector v;
    Vector tag;
    std::size_t pivot;
  };
  std::size_t dim_, tag_dim_;
  std::vector<Row> rows_;
};

std::size_t rank(const std::vector<Vector>& vectors, std::size_t dim);
std::size_t rank(const Matrix& m);
// Basis of {x : m x = 0}.
std::vector<Vector> kernel(const Matrix& m);
std::optional<Vector> solve(const Matrix& a, const Vector& b);
std::optional<Matrix> inverse(const Matrix& m);

struct LinSpace {
  std::size_t ambient_dim = 0;
  std::vector<Vector> spanning_vectors;

  LinSpace() = default;
  LinSpace(std::size_t dim, std::vector<Vector> vectors);
  std::size_t rank() const;
  bool contains(const Vector& v) const;
};

// span(big)/span(sub), with coset representatives chosen among big's vectors,
// earliest first.
class QuotientSpace {
 public:
  QuotientSpace(const LinSpace& big, const LinSpace& sub);

  std::size_t dim() const { return reps_.size(); }
  // indices into big.spanning_vectors
  const std::vector<std::size_t>& representative_indices() const { return reps_; }
  std::vector<Vector> representatives() const;
  std::size_t big_rank() const { return big_rank_; }
  std::size_t sub_rank() const { return sub_rank_; }

  // Coordinates of v modulo sub in the representative basis; nullopt when v is
  // outside span(big).
  std::optional<Vector> coordinates(const Vector& v) const;

 private:
  LinSpace big_;
  std::vector<std::size_t> reps_;
  std::size_t big_rank_ = 0, sub_rank_ = 0;
  EchelonBasis basis_{0};
};

std::size_t quotient_dim(const LinSpace& big, const LinSpace& sub);

struct Jet1 {
  Point base;
  Matrix linear;
};

// First-order jet of a polynomial map at a point.
Jet1 jet_of(const PolyMap& map, const Point& at);

}  // namespace difftan
