#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hopfcyc/scalar.hpp"

namespace hc {

using Index = std::size_t;

struct BasedSpace {
  std::vector<std::string> labels;

  BasedSpace() = default;
  explicit BasedSpace(std::vector<std::string> l);
  // Labels v0, v1, ... with the given prefix.
  static BasedSpace numbered(Index dim, const std::string& prefix = "v");
  Index dim() const { return labels.size(); }
  bool operator==(const BasedSpace&) const = default;
};

// Lexicographic tensor basis, left factor major; labels joined by '|'.
BasedSpace tensor_space(const BasedSpace& a, const BasedSpace& b);
BasedSpace tensor_power(const BasedSpace& a, int k);

// Sparse vector: entries sorted by index, no explicit zeros.
class SparseVec {
 public:
  using Entry = std::pair<Index, Scalar>;

  SparseVec() = default;
  static SparseVec unit(Index i, Scalar c = Scalar(1));
  // Accepts unsorted pairs with repeats; sums duplicates and drops zeros.
  static SparseVec from_pairs(std::vector<Entry> pairs);
  static SparseVec from_dense(const std::vector<Scalar>& dense);

  const std::vector<Entry>& entries() const { return e_; }
  bool empty() const { return e_.empty(); }
  std::size_t nnz() const { return e_.size(); }
  Scalar at(Index i) const;
  Index lead() const { return e_.front().first; }
  Index max_index() const { return e_.back().first; }

  SparseVec& add_scaled(const SparseVec& o, const Scalar& c);
  SparseVec& scale(const Scalar& c);
  SparseVec operator+(const SparseVec& o) const;
  SparseVec operator-(const SparseVec& o) const;
  SparseVec operator*(const Scalar& c) const;
  Scalar dot(const SparseVec& o) const;
  bool operator==(const SparseVec& o) const { return e_ == o.e_; }
  std::vector<Scalar> to_dense(Index dim) const;

 private:
  std::vector<Entry> e_;
};

// Accumulates (index, coefficient) contributions, then produces a SparseVec.
class VecBuilder {
 public:
  void add(Index i, const Scalar& c) {
    if (sgn(c) != 0) pairs_.emplace_back(i, c);
  }
  void add(const SparseVec& v, const Scalar& c);
  SparseVec finish() { return SparseVec::from_pairs(std::move(pairs_)); }

 private:
  std::vector<SparseVec::Entry> pairs_;
};

// Column-major sparse matrix over Q.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(Index rows, Index cols);
  static SparseMatrix identity(Index n);
  static SparseMatrix zero(Index rows, Index cols) { return SparseMatrix(rows, cols); }
  static SparseMatrix from_columns(Index rows, std::vector<SparseVec> cols);
  static SparseMatrix from_rows(Index cols, const std::vector<SparseVec>& rows);
  static SparseMatrix from_dense(const std::vector<std::vector<Scalar>>& rows);

  Index rows() const { return rows_; }
  Index cols() const { return cols_.size(); }
  const SparseVec& col(Index j) const { return cols_[j]; }
  void set_col(Index j, SparseVec v);
  Scalar at(Index r, Index c) const { return cols_[c].at(r); }
  std::size_t nnz() const;
  bool is_zero() const;

  SparseVec apply(const SparseVec& v) const;
  SparseMatrix transpose() const;
  std::vector<SparseVec> row_vectors() const;

  SparseMatrix operator+(const SparseMatrix& o) const;
  SparseMatrix operator-(const SparseMatrix& o) const;
  SparseMatrix operator*(const Scalar& c) const;
  bool operator==(const SparseMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

  // "rows cols" then one "r c p/q" line per nonzero, sorted by (r, c).
  std::string serialize() const;
  static SparseMatrix parse(const std::string& text);

 private:
  Index rows_ = 0;
  std::vector<SparseVec> cols_;
};

SparseMatrix compose(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix tensor_kron(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix matrix_power(const SparseMatrix& a, int k);

// Incremental fraction-free echelon form. Rows are kept as primitive integer
// vectors with positive leading coefficient; elimination cross-multiplies and
// divides out the content, so no rational arithmetic happens during insertion.
class Echelon {
 public:
  explicit Echelon(Index dim) : dim_(dim), pivot_row_(dim, -1) {}
  // Returns true if v was independent of the rows so far.
  bool insert(const SparseVec& v);
  bool contains(const SparseVec& v) const;
  Index rank() const { return rows_.size(); }
  Index dim() const { return dim_; }
  // Canonical reduced row echelon form: leading 1s, pivots increasing, zeros
  // above and below each pivot.
  std::vector<SparseVec> rref() const;

 private:
  using IntRow = std::vector<std::pair<Index, Integer>>;
  IntRow reduce(IntRow v) const;
  Index dim_;
  std::vector<IntRow> rows_;
  std::vector<long> pivot_row_;
};

std::vector<SparseVec> rref_of(const std::vector<SparseVec>& vectors, Index dim);

// Basis of {v : m v = 0}. Each basis vector carries a 1 at its free column and
// zeros at the other free columns; vectors are ordered by free column. Its last
// nonzero entry is that 1, so this is the echelon form read from the right.
std::vector<SparseVec> kernel_basis(const SparseMatrix& m);
Index image_rank(const SparseMatrix& m);
// The same right-read echelon form applied to an arbitrary spanning set.
std::vector<SparseVec> right_echelon(const std::vector<SparseVec>& vectors, Index dim);
// dim span(big) - dim span(small); throws SubspaceNotContained.
Index quotient_dim(const std::vector<SparseVec>& big, const std::vector<SparseVec>& small, Index dim);

// Subspace of Q^ambient with a basis in key form: basis[k] has coefficient 1
// at keys[k] and 0 at every other key. Coordinates of a member are read off
// at the keys.
struct Subspace {
  Index ambient = 0;
  std::vector<SparseVec> basis;
  std::vector<Index> keys;

  static Subspace from_key_basis(Index ambient, std::vector<SparseVec> basis, bool trailing_keys);
  static Subspace whole(Index ambient);
  Index dim() const { return basis.size(); }
  // Coordinates of v; returns false if v is not in the subspace.
  bool coordinates(const SparseVec& v, SparseVec& out) const;
  SparseMatrix inclusion() const;
};

// Quotient V / R where R is given by a spanning set. The quotient basis is the
// set of standard vectors at non-pivot columns of rref(R).
struct Quotient {
  Index ambient = 0;
  std::vector<SparseVec> relation_rref;
  std::vector<Index> pivots;
  std::vector<Index> complement;      // ambient index of each quotient basis vector
  std::vector<long> complement_pos;   // ambient index -> quotient index or -1
  std::vector<long> pivot_pos;        // ambient index -> relation row or -1

  static Quotient make(Index ambient, const std::vector<SparseVec>& relations);
  Index dim() const { return complement.size(); }
  SparseVec project(const SparseVec& v) const;
  SparseMatrix projection() const;
  SparseMatrix section() const;
  bool in_relations(const SparseVec& v) const;
};

}  // namespace hc
