// Test-side reference computations, written independently of the library.
#pragma once

#include <gmpxx.h>

#include <random>
#include <vector>

#include "difftan/linalg.hpp"
#include "difftan/polynomial.hpp"

namespace oracle {

using Row = std::vector<mpq_class>;

// Rank over Q by plain Gaussian elimination on a copy.
inline std::size_t rational_rank(std::vector<Row> m) {
  std::size_t rank = 0;
  std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][c] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      mpq_class f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

// Rank over Q(sqrt d): a + b*sqrt(d) acts on Q^2 as [[a, d*b], [b, a]], which
// doubles the rank.
inline std::size_t quad_rank(const difftan::Matrix& m) {
  std::uint64_t d = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m.at(i, j).d() != 0) d = m.at(i, j).d();
  std::vector<Row> big(2 * m.rows(), Row(2 * m.cols(), 0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto& x = m.at(i, j);
      big[2 * i][2 * j] = x.a();
      big[2 * i][2 * j + 1] = x.b() * mpq_class(static_cast<unsigned long>(d));
      big[2 * i + 1][2 * j] = x.b();
      big[2 * i + 1][2 * j + 1] = x.a();
    }
  }
  return rational_rank(big) / 2;
}

// Dense univariate convolution truncated at degree k.
inline Row convolve(const Row& a, const Row& b, std::size_t k) {
  Row out(k + 1, 0);
  for (std::size_t i = 0; i < a.size() && i <= k; ++i) {
    for (std::size_t j = 0; j < b.size() && i + j <= k; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

inline Row coefficients(const difftan::Polynomial& p, std::size_t k) {
  Row out(k + 1, 0);
  for (std::size_t i = 0; i <= k; ++i) out[i] = p.coefficient({static_cast<unsigned>(i)}).a();
  return out;
}

inline difftan::Polynomial random_poly(std::mt19937& rng, std::size_t nvars, unsigned degree, int range = 3,
                                       bool constant = true) {
  std::uniform_int_distribution<int> c(-range, range);
  difftan::Polynomial p(nvars);
  difftan::Exponent e(nvars, 0);
  for (int term = 0; term < 5; ++term) {
    unsigned left = static_cast<unsigned>(rng() % (degree + 1));
    if (!constant && left == 0) left = 1;
    std::fill(e.begin(), e.end(), 0);
    for (unsigned s = 0; s < left; ++s) ++e[rng() % nvars];
    p.add_term(e, difftan::QuadNumber(c(rng)));
  }
  return p;
}

}  // namespace oracle
