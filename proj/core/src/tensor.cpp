#include "hopfcyc/tensor.hpp"

#include <algorithm>
#include <map>

#include "hopfcyc/errors.hpp"

namespace hc {

MultiIndex::MultiIndex(std::vector<Index> dims) : dims_(std::move(dims)) {
  size_ = 1;
  for (Index d : dims_) size_ *= d;
}

Index MultiIndex::encode(const std::vector<Index>& idx) const {
  if (idx.size() != dims_.size()) throw Error(ErrorKind::ShapeMismatch, "multi-index arity");
  Index f = 0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] >= dims_[k]) throw Error(ErrorKind::ShapeMismatch, "multi-index component out of range");
    f = f * dims_[k] + idx[k];
  }
  return f;
}

std::vector<Index> MultiIndex::decode(Index flat) const {
  std::vector<Index> idx(dims_.size());
  for (std::size_t k = dims_.size(); k-- > 0;) {
    idx[k] = flat % dims_[k];
    flat /= dims_[k];
  }
  return idx;
}

namespace {

MultiIndex dims_of(const std::vector<BasedSpace>& spaces) {
  std::vector<Index> d;
  for (const auto& s : spaces) d.push_back(s.dim());
  return MultiIndex(d);
}

}  // namespace

StructureTensor StructureTensor::zero(std::vector<BasedSpace> in, std::vector<BasedSpace> out) {
  StructureTensor t;
  t.in = std::move(in);
  t.out = std::move(out);
  t.image.assign(t.in_size(), SparseVec());
  return t;
}

Index StructureTensor::in_size() const { return dims_of(in).size(); }
Index StructureTensor::out_size() const { return dims_of(out).size(); }

SparseMatrix StructureTensor::matrix() const { return SparseMatrix::from_columns(out_size(), image); }

const SparseVec& StructureTensor::operator()(const std::vector<Index>& idx) const {
  return image.at(dims_of(in).encode(idx));
}

Terms Terms::from_vector(const SparseVec& v, const MultiIndex& mi) {
  Terms t;
  for (const auto& [i, c] : v.entries()) t.items.emplace_back(c, mi.decode(i));
  return t;
}

SparseVec Terms::to_vector(const MultiIndex& mi) const {
  VecBuilder b;
  for (const auto& [c, idx] : items) b.add(mi.encode(idx), c);
  return b.finish();
}

Terms Terms::map_slot(Index slot, const std::function<const SparseVec&(Index)>& f, const MultiIndex& out) const {
  Terms r;
  for (const auto& [c, idx] : items) {
    const SparseVec& img = f(idx.at(slot));
    for (const auto& [j, x] : img.entries()) {
      auto sub = out.decode(j);
      std::vector<Index> n;
      n.reserve(idx.size() + sub.size());
      n.insert(n.end(), idx.begin(), idx.begin() + static_cast<long>(slot));
      n.insert(n.end(), sub.begin(), sub.end());
      n.insert(n.end(), idx.begin() + static_cast<long>(slot) + 1, idx.end());
      r.items.emplace_back(c * x, std::move(n));
    }
  }
  return r;
}

Terms Terms::contract(Index slot, Index arity,
                      const std::function<const SparseVec&(const std::vector<Index>&)>& f,
                      const MultiIndex& out) const {
  Terms r;
  for (const auto& [c, idx] : items) {
    if (slot + arity > idx.size()) throw Error(ErrorKind::ShapeMismatch, "contract beyond tensor length");
    std::vector<Index> args(idx.begin() + static_cast<long>(slot), idx.begin() + static_cast<long>(slot + arity));
    const SparseVec& img = f(args);
    for (const auto& [j, x] : img.entries()) {
      auto sub = out.decode(j);
      std::vector<Index> n;
      n.insert(n.end(), idx.begin(), idx.begin() + static_cast<long>(slot));
      n.insert(n.end(), sub.begin(), sub.end());
      n.insert(n.end(), idx.begin() + static_cast<long>(slot + arity), idx.end());
      r.items.emplace_back(c * x, std::move(n));
    }
  }
  return r;
}

Terms Terms::permute(const std::vector<Index>& perm) const {
  Terms r;
  for (const auto& [c, idx] : items) {
    std::vector<Index> n(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) n[k] = idx.at(perm[k]);
    r.items.emplace_back(c, std::move(n));
  }
  return r;
}

Terms& Terms::scale(const Scalar& c) {
  for (auto& it : items) it.first *= c;
  return *this;
}

Terms& Terms::append(const Terms& o) {
  items.insert(items.end(), o.items.begin(), o.items.end());
  return *this;
}

Terms& Terms::simplify() {
  std::map<std::vector<Index>, Scalar> acc;
  for (auto& [c, idx] : items) acc[idx] += c;
  items.clear();
  for (auto& [idx, c] : acc)
    if (sgn(c) != 0) items.emplace_back(c, idx);
  return *this;
}

}  // namespace hc
