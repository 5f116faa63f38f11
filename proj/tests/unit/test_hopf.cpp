#include <doctest.h>

#include "hopfcyc/errors.hpp"
#include "hopfcyc/fixtures.hpp"

using namespace hc;

TEST_CASE("shipped Hopf algebras validate") {
  CHECK(validate_hopf(trivial_hopf()).ok());
  for (int n = 1; n <= 4; ++n) CHECK(validate_hopf(fixtures::cyclic_group(n)).ok());
  CHECK(validate_hopf(fixtures::sweedler()).ok());
}

TEST_CASE("a broken product is caught by the right law") {
  auto z3 = fixtures::cyclic_group(3);
  z3.alg.mul.image[1 * 3 + 1] = SparseVec::unit(0);  // g g = e
  auto r = validate_hopf(z3);
  CHECK_FALSE(r.ok());
  CHECK(r.has_law("algebra: associativity"));

  auto h = fixtures::sweedler();
  h.alg.mul.image[2 * 4 + 2] = SparseVec::unit(0);  // x x = 1, table otherwise unchanged
  r = validate_hopf(h);
  CHECK(r.has_law("comultiplicativity"));
}

TEST_CASE("a broken antipode is caught") {
  auto h = fixtures::sweedler();
  h.antipode = SparseMatrix::identity(4);
  auto r = validate_hopf(h);
  CHECK(r.has_law("antipode left"));
  CHECK(r.has_law("antipode right"));
}

TEST_CASE("Sweedler antipode has order four and the stored inverse is its inverse") {
  auto h = fixtures::sweedler();
  CHECK(compose(h.antipode, h.antipode_inv) == SparseMatrix::identity(4));
  CHECK_FALSE(compose(h.antipode, h.antipode) == SparseMatrix::identity(4));
  CHECK(matrix_power(h.antipode, 4) == SparseMatrix::identity(4));
}

TEST_CASE("iterated coproduct of a group-like is its tensor power") {
  auto z3 = fixtures::cyclic_group(3);
  auto t = iterated_coproduct(z3.coalg, 3);
  MultiIndex mi = MultiIndex::power(3, 3);
  for (Index g = 0; g < 3; ++g) CHECK(t.image[g] == SparseVec::unit(mi.encode({g, g, g})));
  // x in Sweedler: x(x)1(x)1 + g(x)x(x)1 + g(x)g(x)x.
  auto h = fixtures::sweedler();
  auto s = iterated_coproduct(h.coalg, 3);
  MultiIndex m4 = MultiIndex::power(4, 3);
  auto expect = SparseVec::from_pairs({{m4.encode({2, 0, 0}), 1}, {m4.encode({1, 2, 0}), 1}, {m4.encode({1, 1, 2}), 1}});
  CHECK(s.image[2] == expect);
}

TEST_CASE("modular pair structure on Sweedler") {
  CHECK(validate_modular_pair_structure(fixtures::sweedler_pair(false, false)).ok());
  CHECK(validate_modular_pair_structure(fixtures::sweedler_pair(false, true)).ok());
  CHECK(validate_modular_pair_structure(fixtures::sweedler_pair(true, false)).ok());
  // delta(g) = -1, so (delta, g) is not a modular pair at all.
  CHECK_FALSE(validate_modular_pair_structure(fixtures::sweedler_pair(true, true)).ok());
  auto bad = fixtures::sweedler_pair(false, false);
  bad.sigma = SparseVec::unit(2);  // x is not group-like
  CHECK_FALSE(validate_modular_pair_structure(bad).ok());
}

TEST_CASE("exactly the pairs (eps, g) and (delta, 1) on Sweedler are MPIs") {
  // delta_minus selects delta, sigma_g selects sigma = g.
  CHECK_FALSE(validate_sayd(mpi_coefficients(fixtures::sweedler_pair(false, false))).ok());
  CHECK(validate_sayd(mpi_coefficients(fixtures::sweedler_pair(false, true))).ok());
  CHECK(validate_sayd(mpi_coefficients(fixtures::sweedler_pair(true, false))).ok());
  CHECK_FALSE(validate_sayd(mpi_coefficients(fixtures::sweedler_pair(true, true))).ok());
}

TEST_CASE("every modular pair on a commutative cocommutative algebra is an MPI") {
  for (int n = 1; n <= 4; ++n)
    for (int k = 0; k < n; ++k) {
      auto mp = fixtures::cyclic_pair(n, k);
      CHECK(validate_modular_pair_structure(mp).ok());
      CHECK(validate_sayd(mpi_coefficients(mp)).ok());
    }
}

TEST_CASE("vector formatting") {
  auto h = fixtures::sweedler();
  CHECK(format_vector(SparseVec{}, h.space()) == "0");
  auto s = format_vector(SparseVec::from_pairs({{1, 2}, {3, make_scalar(-1, 2)}}), h.space());
  CHECK(s.find("g") != std::string::npos);
  CHECK(s.find("gx") != std::string::npos);
}
