#pragma once

#include <random>
#include <vector>

#include "hopfcyc/linalg.hpp"

namespace hc::test {

// Dense Gaussian elimination, written independently of Echelon.
inline Index dense_rank(std::vector<std::vector<Scalar>> a) {
  Index rank = 0;
  const Index rows = a.size(), cols = rows ? a[0].size() : 0;
  for (Index c = 0; c < cols && rank < rows; ++c) {
    Index piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    for (Index r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      Scalar f = a[r][c] / a[rank][c];
      for (Index k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

inline std::vector<std::vector<Scalar>> to_dense(const SparseMatrix& m) {
  std::vector<std::vector<Scalar>> d(m.rows(), std::vector<Scalar>(m.cols()));
  for (Index c = 0; c < m.cols(); ++c)
    for (const auto& [r, v] : m.col(c).entries()) d[r][c] = v;
  return d;
}

// Small sparse rationals; about a third of the entries are nonzero.
inline SparseMatrix random_matrix(std::mt19937& rng, Index rows, Index cols) {
  std::uniform_int_distribution<int> pick(0, 8), num(-4, 4), den(1, 3);
  std::vector<std::vector<Scalar>> d(rows, std::vector<Scalar>(cols));
  for (auto& row : d)
    for (auto& x : row)
      if (pick(rng) < 3) x = make_scalar(num(rng), den(rng));
  return SparseMatrix::from_dense(d);
}

// A matrix of prescribed rank at most r, as a product of random factors.
inline SparseMatrix low_rank_matrix(std::mt19937& rng, Index rows, Index cols, Index r) {
  return compose(random_matrix(rng, rows, r), random_matrix(rng, r, cols));
}

}  // namespace hc::test
