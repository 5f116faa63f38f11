#include "hopfcyc/fixtures.hpp"

namespace hc::fixtures {

namespace {

std::string power_label(int k) {
  if (k == 0) return "e";
  if (k == 1) return "g";
  return "g" + std::to_string(k);
}

}  // namespace

HopfData cyclic_group(int n) {
  std::vector<std::string> labels;
  for (int k = 0; k < n; ++k) labels.push_back(power_label(k));
  BasedSpace s(labels);
  const Index d = static_cast<Index>(n);
  HopfData h;
  h.alg.space = s;
  h.alg.mul = StructureTensor::zero({s, s}, {s});
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) h.alg.mul.image[i * d + j] = SparseVec::unit((i + j) % d);
  h.alg.unit = SparseVec::unit(0);
  h.coalg.space = s;
  h.coalg.comul = StructureTensor::zero({s}, {s, s});
  std::vector<Scalar> ones(d, Scalar(1));
  for (Index i = 0; i < d; ++i) h.coalg.comul.image[i] = SparseVec::unit(i * d + i);
  h.coalg.counit = SparseVec::from_dense(ones);
  std::vector<SparseVec> s_cols;
  for (Index i = 0; i < d; ++i) s_cols.push_back(SparseVec::unit((d - i) % d));
  h.antipode = SparseMatrix::from_columns(d, s_cols);
  h.antipode_inv = h.antipode;
  return h;
}

HopfData sweedler() {
  // g^a x^b sits at index a + 2b: 1, g, x, gx.
  BasedSpace s({"1", "g", "x", "gx"});
  auto idx = [](int a, int b) -> Index { return static_cast<Index>(b == 0 ? a : 2 + a); };
  HopfData h;
  h.alg.space = s;
  h.alg.mul = StructureTensor::zero({s, s}, {s});
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) {
          if (b + d >= 2) continue;
          Scalar sign((b * c) % 2 ? -1 : 1);
          h.alg.mul.image[idx(a, b) * 4 + idx(c, d)] = SparseVec::unit(idx((a + c) % 2, b + d), sign);
        }
  h.alg.unit = SparseVec::unit(0);
  h.coalg.space = s;
  h.coalg.comul = StructureTensor::zero({s}, {s, s});
  h.coalg.comul.image[0] = SparseVec::unit(0);
  h.coalg.comul.image[1] = SparseVec::unit(1 * 4 + 1);
  h.coalg.comul.image[2] = SparseVec::from_pairs({{2 * 4 + 0, Scalar(1)}, {1 * 4 + 2, Scalar(1)}});
  h.coalg.comul.image[3] = SparseVec::from_pairs({{3 * 4 + 1, Scalar(1)}, {0 * 4 + 3, Scalar(1)}});
  h.coalg.counit = SparseVec::from_pairs({{0, Scalar(1)}, {1, Scalar(1)}});
  h.antipode = SparseMatrix::from_columns(
      4, {SparseVec::unit(0), SparseVec::unit(1), SparseVec::unit(3, Scalar(-1)), SparseVec::unit(2)});
  h.antipode_inv = SparseMatrix::from_columns(
      4, {SparseVec::unit(0), SparseVec::unit(1), SparseVec::unit(3), SparseVec::unit(2, Scalar(-1))});
  return h;
}

ModularPair sweedler_pair(bool delta_minus, bool sigma_g) {
  HopfData h = sweedler();
  SparseVec delta = SparseVec::from_pairs({{0, Scalar(1)}, {1, Scalar(delta_minus ? -1 : 1)}});
  return ModularPair{h, delta, SparseVec::unit(sigma_g ? 1 : 0)};
}

ModularPair cyclic_pair(int n, int sigma_power) {
  HopfData h = cyclic_group(n);
  SparseVec eps = h.coalg.counit;
  return ModularPair{h, eps, SparseVec::unit(static_cast<Index>(sigma_power % n))};
}

ModularPair trivial_pair(const HopfData& h) { return ModularPair{h, h.coalg.counit, h.alg.unit}; }

ModuleAlgebra swap_module_algebra() {
  ModuleAlgebra ma;
  ma.hopf = cyclic_group(2);
  BasedSpace s({"p", "q"});
  ma.alg.space = s;
  ma.alg.mul = StructureTensor::zero({s, s}, {s});
  ma.alg.mul.image[0] = SparseVec::unit(0);
  ma.alg.mul.image[3] = SparseVec::unit(1);
  ma.alg.unit = SparseVec::from_pairs({{0, Scalar(1)}, {1, Scalar(1)}});
  ma.action = StructureTensor::zero({ma.hopf.space(), s}, {s});
  ma.action.image[0] = SparseVec::unit(0);
  ma.action.image[1] = SparseVec::unit(1);
  ma.action.image[2] = SparseVec::unit(1);
  ma.action.image[3] = SparseVec::unit(0);
  return ma;
}

ModuleAlgebra sweedler_dual_numbers() {
  ModuleAlgebra ma;
  ma.hopf = sweedler();
  BasedSpace s({"1", "t"});
  ma.alg.space = s;
  ma.alg.mul = StructureTensor::zero({s, s}, {s});
  ma.alg.mul.image[0] = SparseVec::unit(0);
  ma.alg.mul.image[1] = SparseVec::unit(1);
  ma.alg.mul.image[2] = SparseVec::unit(1);
  ma.alg.unit = SparseVec::unit(0);
  ma.action = StructureTensor::zero({ma.hopf.space(), s}, {s});
  // rows: h in 1, g, x, gx; columns: 1, t
  ma.action.image[0 * 2 + 0] = SparseVec::unit(0);
  ma.action.image[0 * 2 + 1] = SparseVec::unit(1);
  ma.action.image[1 * 2 + 0] = SparseVec::unit(0);
  ma.action.image[1 * 2 + 1] = SparseVec::unit(1, Scalar(-1));
  ma.action.image[2 * 2 + 1] = SparseVec::unit(0);
  ma.action.image[3 * 2 + 1] = SparseVec::unit(0);
  return ma;
}

ModuleAlgebra cyclic_functions(int n) {
  ModuleAlgebra ma;
  ma.hopf = cyclic_group(n);
  const Index d = static_cast<Index>(n);
  std::vector<std::string> labels;
  for (int k = 0; k < n; ++k) labels.push_back("d" + std::to_string(k));
  BasedSpace s(labels);
  ma.alg.space = s;
  ma.alg.mul = StructureTensor::zero({s, s}, {s});
  std::vector<Scalar> ones(d, Scalar(1));
  for (Index i = 0; i < d; ++i) ma.alg.mul.image[i * d + i] = SparseVec::unit(i);
  ma.alg.unit = SparseVec::from_dense(ones);
  ma.action = StructureTensor::zero({ma.hopf.space(), s}, {s});
  for (Index k = 0; k < d; ++k)
    for (Index j = 0; j < d; ++j) ma.action.image[k * d + j] = SparseVec::unit((j + k) % d);
  return ma;
}

ComoduleAlgebra group_graded(int n) {
  ComoduleAlgebra b;
  b.hopf = cyclic_group(n);
  b.alg = b.hopf.alg;
  b.coaction = StructureTensor::zero({b.alg.space}, {b.hopf.space(), b.alg.space});
  const Index d = static_cast<Index>(n);
  for (Index i = 0; i < d; ++i) b.coaction.image[i] = SparseVec::unit(i * d + i);
  return b;
}

SubHopf cyclic_subgroup(const HopfData& zn, int n, int generator_power) {
  SubHopf k;
  k.hopf = zn;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  int x = 0;
  while (!seen[static_cast<std::size_t>(x)]) {
    seen[static_cast<std::size_t>(x)] = true;
    k.inclusion.push_back(SparseVec::unit(static_cast<Index>(x)));
    x = (x + generator_power) % n;
  }
  return k;
}

}  // namespace hc::fixtures
