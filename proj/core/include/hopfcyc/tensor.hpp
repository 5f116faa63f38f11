#pragma once

#include <functional>
#include <vector>

#include "hopfcyc/linalg.hpp"

namespace hc {

// Flat index <-> multi-index for a product of spaces, left factor major.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<Index> dims);
  static MultiIndex power(Index d, int k) { return MultiIndex(std::vector<Index>(static_cast<std::size_t>(k), d)); }

  const std::vector<Index>& dims() const { return dims_; }
  Index size() const { return size_; }
  Index encode(const std::vector<Index>& idx) const;
  std::vector<Index> decode(Index flat) const;

 private:
  std::vector<Index> dims_;
  Index size_ = 1;
};

// Multilinear map V_1 x ... x V_k -> W_1 (x) ... (x) W_l given on basis tuples.
// image[flat input] is a vector over the flat codomain.
struct StructureTensor {
  std::vector<BasedSpace> in;
  std::vector<BasedSpace> out;
  std::vector<SparseVec> image;

  static StructureTensor zero(std::vector<BasedSpace> in, std::vector<BasedSpace> out);
  Index in_size() const;
  Index out_size() const;
  // The map as a matrix from the flat input space to the flat output space.
  SparseMatrix matrix() const;
  const SparseVec& operator()(const std::vector<Index>& idx) const;
  bool operator==(const StructureTensor& o) const { return in == o.in && out == o.out && image == o.image; }
};

// A linear combination of pure tensors of basis elements, stored sparsely by
// flat index over a fixed list of factor dimensions. This is the working
// representation for Sweedler-style expansions.
struct Terms {
  std::vector<std::pair<Scalar, std::vector<Index>>> items;

  static Terms basis(std::vector<Index> idx) {
    Terms t;
    t.items.emplace_back(Scalar(1), std::move(idx));
    return t;
  }
  static Terms from_vector(const SparseVec& v, const MultiIndex& mi);
  SparseVec to_vector(const MultiIndex& mi) const;
  // Replace the factor at slot by the image of a linear map given per basis
  // element as a vector over (out dims) factors.
  Terms map_slot(Index slot, const std::function<const SparseVec&(Index)>& f, const MultiIndex& out) const;
  // Combine slots [slot, slot+arity) through a multilinear map.
  Terms contract(Index slot, Index arity, const std::function<const SparseVec&(const std::vector<Index>&)>& f,
                 const MultiIndex& out) const;
  Terms permute(const std::vector<Index>& perm) const;  // new[k] = old[perm[k]]
  Terms& scale(const Scalar& c);
  Terms& append(const Terms& o);
  Terms& simplify();
};

}  // namespace hc
