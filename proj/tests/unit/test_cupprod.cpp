#include <doctest.h>

#include "hopfcyc/cupprod.hpp"
#include "hopfcyc/errors.hpp"
#include "hopfcyc/fixtures.hpp"

using namespace hc;

TEST_CASE("small shuffle sets") {
  auto s = shuffle_set(1, 1);
  REQUIRE(s.size() == 2);
  CHECK(s[0].image == std::vector<int>{1, 2});
  CHECK(s[0].sign == 1);
  CHECK(s[1].image == std::vector<int>{2, 1});
  CHECK(s[1].sign == -1);
  CHECK(shuffle_set(0, 3).size() == 1);
  CHECK(shuffle_set(2, 2).size() == 6);
  CHECK(shuffle_set(3, 2).size() == 10);
}

TEST_CASE("the formal expansion is capped at total degree 3") {
  CHECK(dg_expand_oracle(1, 1).sorted_match);
  CHECK(dg_expand_oracle(0, 0).words == 1);
  CHECK_THROWS_AS(dg_expand_oracle(2, 2), Error);
}

namespace {

ModularPair z2_trivial() { return fixtures::trivial_pair(fixtures::cyclic_group(2)); }

}  // namespace

TEST_CASE("coalgebra context on Q x Q: chain maps and cups") {
  auto ma = fixtures::swap_module_algebra();
  auto ctx = make_coalgebra_context(regular_coalgebra_action(ma), mpi_coefficients(z2_trivial()), 2);
  auto p = psi(ctx);
  auto pc = psi_c(ctx);
  CHECK(p.maps.size() == pc.maps.size());
  auto a0 = hochschild_cocycles(ctx.alg, 0);
  auto c0 = hochschild_cocycles(ctx.coal, 0);
  REQUIRE_FALSE(a0.empty());
  REQUIRE_FALSE(c0.empty());
  for (const auto& phi : a0)
    for (const auto& x : c0) {
      auto r = aw_cup(ctx, p, CoalgebraTarget::Algebra, {0, phi}, {0, x});
      CHECK(r.b_closed);
      auto e = cup_explicit_coalgebra(ctx, p, {0, phi}, {0, x});
      CHECK(e.coeffs == r.value.coeffs);
    }
  // A cochain with nonzero b is refused.
  auto b = hochschild_b(ctx.alg);
  for (Index i = 0; i < ctx.alg.dim(0); ++i) {
    auto v = SparseVec::unit(i);
    if (b[0].apply(v).empty()) continue;
    CHECK_THROWS_AS(aw_cup(ctx, p, CoalgebraTarget::Algebra, {0, v}, {0, c0[0]}), Error);
    break;
  }
}

TEST_CASE("crossed and relative contexts certify their maps") {
  auto ma = fixtures::swap_module_algebra();
  auto m = mpi_coefficients(z2_trivial());
  auto cross = make_crossed_context(ma, fixtures::group_graded(2), m, 2);
  CHECK(cross.cross.dim() == 4);
  auto pc = psi_cross(cross);
  CHECK_FALSE(pc.certificate.empty());
  auto no = normal_ordered_map(cross);
  CHECK(no.maps.size() >= 3);

  auto f = fixtures::cyclic_functions(4);
  auto k = fixtures::cyclic_subgroup(f.hopf, 4, 2);
  auto rel = make_relative_context(f, k, mpi_coefficients(fixtures::trivial_pair(f.hopf)), 2);
  CHECK(rel.plain.dim(0) == 2);
  auto pr = psi_r(rel);
  CHECK(pr.maps.size() >= 3);
}

TEST_CASE("certify_chain_map rejects a non-chain map") {
  auto a = build_plain_complex(fixtures::swap_module_algebra().alg, 2);
  std::vector<SparseMatrix> maps;
  for (int n = 0; n <= a.top(); ++n) maps.push_back(SparseMatrix::identity(a.dim(n)));
  CHECK_NOTHROW(certify_chain_map(a, a, maps, "id"));
  maps[1] = maps[1] * Scalar(2);
  CHECK_THROWS_AS(certify_chain_map(a, a, maps, "twice"), Error);
}

TEST_CASE("traces: the counting trace on Q x Q is invariant, a lopsided one is not") {
  auto ma = fixtures::swap_module_algebra();
  auto mp = z2_trivial();
  auto good = SparseVec::from_dense({1, 1});
  CHECK(validate_trace(mp, ma, good).ok());
  CHECK_FALSE(validate_trace(mp, ma, SparseVec::from_dense({1, 0})).ok());
  auto chi = char_map(mp, ma, good, 2);
  // In degree 0 the map sends the unit functional to the trace.
  REQUIRE_FALSE(chi.maps.empty());
  CHECK(chi.maps[0].cols() == 1);
  CHECK(chi.maps[0].apply(SparseVec::unit(0)) == good);
}
