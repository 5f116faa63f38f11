#include <doctest.h>

#include "hopfcyc/errors.hpp"
#include "hopfcyc/fixtures.hpp"
#include "oracle.hpp"

using namespace hc;

TEST_CASE("shipped module and comodule algebras validate") {
  CHECK(validate_module_algebra(fixtures::swap_module_algebra()).ok());
  CHECK(validate_module_algebra(fixtures::sweedler_dual_numbers()).ok());
  for (int n = 1; n <= 4; ++n) {
    CHECK(validate_module_algebra(fixtures::cyclic_functions(n)).ok());
    CHECK(validate_comodule_algebra(fixtures::group_graded(n)).ok());
  }
  auto h = fixtures::sweedler();
  CHECK(validate_comodule_algebra(regular_comodule_algebra(h)).ok());
  CHECK(validate_comodule_algebra(trivial_comodule_algebra(h)).ok());
  CHECK(validate_module_coalgebra(regular_module_coalgebra(h)).ok());
  CHECK(validate_coalgebra_action(regular_coalgebra_action(fixtures::sweedler_dual_numbers())).ok());
  // S^2 is not the identity on Sweedler, so trivial coefficients fail there.
  CHECK_FALSE(validate_sayd(trivial_coefficients(h)).ok());
  CHECK(validate_sayd(trivial_coefficients(fixtures::cyclic_group(3))).ok());
}

TEST_CASE("a non-multiplicative action is rejected") {
  auto ma = fixtures::swap_module_algebra();
  ma.action.image[1 * 2 + 0] = SparseVec::from_pairs({{0, 1}, {1, 1}});  // g p = 1
  CHECK(validate_module_algebra(ma).has_law("action on products"));
}

TEST_CASE("crossed products are associative with the expected dimension") {
  auto ma = fixtures::swap_module_algebra();
  auto cross = crossed_product(ma, regular_comodule_algebra(ma.hopf));
  CHECK(cross.dim() == 4);
  CHECK(validate_algebra(cross).ok());
  auto sw = fixtures::sweedler_dual_numbers();
  auto big = crossed_product(sw, regular_comodule_algebra(sw.hopf));
  CHECK(big.dim() == 8);
  CHECK(validate_algebra(big).ok());
}

TEST_CASE("Q x Q smash Z/2 is a full matrix algebra") {
  auto ma = fixtures::swap_module_algebra();
  auto cross = crossed_product(ma, regular_comodule_algebra(ma.hopf));
  // Centre of M_2(Q) is one dimensional: solve [a, e_i] = 0 for all basis e_i.
  Index d = cross.dim();
  std::vector<SparseVec> rows;
  for (Index i = 0; i < d; ++i) {
    auto l = cross.left_mult(SparseVec::unit(i));
    for (Index a = 0; a < d; ++a) {
      VecBuilder r;
      // row: coefficient of basis a in (x e_i - e_i x), as a functional of x
      for (Index x = 0; x < d; ++x) {
        Scalar c = cross.mul_basis(x, i).at(a) - cross.mul_basis(i, x).at(a);
        r.add(x, c);
      }
      rows.push_back(r.finish());
    }
    (void)l;
  }
  auto m = SparseMatrix::from_rows(d, rows);
  CHECK(kernel_basis(m).size() == 1);
}

TEST_CASE("subgroups of Z/4") {
  auto z4 = fixtures::cyclic_group(4);
  auto k = fixtures::cyclic_subgroup(z4, 4, 2);
  CHECK(k.inclusion.size() == 2);
  CHECK(validate_subhopf(k).ok());
  SubHopf bad{z4, {SparseVec::unit(0), SparseVec::unit(1)}};
  CHECK(validate_subhopf(bad).has_law("closed under product"));
}

TEST_CASE("invariants and the relative coalgebra for K = {e, g2} in Z/4") {
  auto ma = fixtures::cyclic_functions(4);
  auto k = fixtures::cyclic_subgroup(ma.hopf, 4, 2);
  auto inv = invariant_subalgebra(ma, k);
  CHECK(inv.alg.dim() == 2);
  CHECK(validate_algebra(inv.alg).ok());
  auto rel = relative_coalgebra(ma.hopf, k);
  CHECK(rel.mc.coalg.dim() == 2);
  CHECK(validate_coalgebra(rel.mc.coalg).ok());
  CHECK(validate_module_coalgebra(rel.mc).ok());
  auto ra = relative_action(ma, k);
  CHECK(ra.action.image.size() == 4);
}

TEST_CASE("convolution algebra of the regular action and the natural map") {
  auto ma = fixtures::sweedler_dual_numbers();
  auto ca = regular_coalgebra_action(ma);
  auto conv = convolution_algebra(ca);
  CHECK(validate_algebra(conv.alg).ok());
  auto nat = natural_map(ca, conv);
  CHECK(nat.cols() == ma.alg.dim());
  CHECK(nat.rows() == conv.alg.dim());
  // natural is an algebra map.
  for (Index a = 0; a < ma.alg.dim(); ++a)
    for (Index b = 0; b < ma.alg.dim(); ++b)
      CHECK(nat.apply(ma.alg.mul_basis(a, b)) ==
            conv.alg.multiply(nat.apply(SparseVec::unit(a)), nat.apply(SparseVec::unit(b))));
}

TEST_CASE("iterated coaction of a grading") {
  auto ba = fixtures::group_graded(3);
  auto t = iterated_coaction_b(ba, 2, 3);
  t.simplify();
  REQUIRE(t.items.size() == 1);
  CHECK(t.items[0].second == std::vector<Index>{2, 2, 2, 2});
}
