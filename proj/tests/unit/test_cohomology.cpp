#include <doctest.h>

#include "hopfcyc/cohomology.hpp"
#include "hopfcyc/errors.hpp"
#include "hopfcyc/fixtures.hpp"

using namespace hc;

namespace {

void check_b_squared(const CocyclicComplex& c) {
  auto b = hochschild_b(c);
  for (std::size_t n = 0; n + 1 < b.size(); ++n) CHECK(compose(b[n + 1], b[n]).is_zero());
}

// Degrees n <= N - 2 are the trusted ones.
void check_hc(const CohomologyReport& r, const std::vector<Index>& expect) {
  for (std::size_t n = 0; n < expect.size(); ++n) {
    CAPTURE(n);
    REQUIRE(r.hc_trusted[n]);
    CHECK(r.hc[n] == expect[n]);
  }
}

}  // namespace

TEST_CASE("ground field: HH = Q in degree 0, HC = Q in even degrees") {
  auto r = compute_cohomology(build_plain_complex(trivial_algebra(), 5));
  CHECK(r.hh == std::vector<Index>{1, 0, 0, 0, 0, 0});
  check_hc(r, {1, 0, 1, 0});
  CHECK(r.hp_even == 1);
  CHECK(r.hp_odd == 0);
}

TEST_CASE("Q x Q doubles every group") {
  auto r = compute_cohomology(build_plain_complex(fixtures::swap_module_algebra().alg, 5));
  CHECK(r.hh == std::vector<Index>{2, 0, 0, 0, 0, 0});
  check_hc(r, {2, 0, 2, 0});
}

TEST_CASE("Morita invariance: Q x Q smash Z/2 = M_2(Q)") {
  auto ma = fixtures::swap_module_algebra();
  auto cross = crossed_product(ma, regular_comodule_algebra(ma.hopf));
  auto c = build_plain_complex(cross, 4);
  check_b_squared(c);
  auto r = compute_cohomology(c);
  CHECK(r.hh == std::vector<Index>{1, 0, 0, 0, 0});
  check_hc(r, {1, 0, 1});
}

TEST_CASE("dual numbers have HH in every degree") {
  // Q[t]/(t^2) over Q: HH^n is one dimensional for n >= 1, two dimensional in
  // degree 0 (the trace space is the full dual).
  auto a = fixtures::sweedler_dual_numbers().alg;
  auto r = compute_cohomology(build_plain_complex(a, 3));
  CHECK(r.hh == std::vector<Index>{2, 1, 1, 1});
}

TEST_CASE("group algebras with trivial pair: HC is Q in even degrees") {
  for (int n : {2, 3}) {
    CAPTURE(n);
    auto c = build_ans_complex(fixtures::trivial_pair(fixtures::cyclic_group(n)), 5);
    check_b_squared(c);
    check_hc(compute_cohomology(c), {1, 0, 1, 0});
  }
}

TEST_CASE("B b + b B = 0 and B B = 0") {
  auto c = build_ans_complex(fixtures::sweedler_pair(false, true), 3);
  auto bb = connes_B(c);
  for (int n = 1; n + 1 <= 3; ++n) {
    CAPTURE(n);
    CHECK((compose(bb.B[n + 1], bb.b[n]) + compose(bb.b[n - 1], bb.B[n])).is_zero());
    if (n >= 1 && n + 1 <= 3) CHECK(compose(bb.B[n], bb.B[n + 1]).is_zero());
  }
  CHECK_FALSE(bb.placement.empty());
}

TEST_CASE("cyclic cocycles are b-closed, lambda-fixed, and not all coboundaries") {
  auto c = build_plain_complex(fixtures::swap_module_algebra().alg, 3);
  auto b = hochschild_b(c);
  for (int n = 0; n <= 2; ++n) {
    auto lam = cyclic_lambda(c, n);
    for (const auto& v : cyclic_cocycles(c, n)) {
      CHECK(b[n].apply(v).empty());
      CHECK(lam.apply(v) == v);
    }
  }
  auto z = cyclic_cocycles(c, 0);
  REQUIRE(z.size() == 2);
  CHECK_FALSE(is_cyclic_coboundary(c, 0, z[0]));
  // b of any cochain is a coboundary.
  auto x = b[0].apply(SparseVec::unit(0));
  CHECK(is_hochschild_coboundary(c, 1, x));
}

TEST_CASE("a face that breaks b b = 0 is reported") {
  auto c = build_plain_complex(fixtures::swap_module_algebra().alg, 2);
  c.faces[1][2] = c.faces[1][2] * Scalar(3);
  CHECK_THROWS_AS(hochschild_b(c), Error);
}
