#include <doctest.h>

#include "hopfcyc/errors.hpp"
#include "hopfcyc/fixtures.hpp"
#include "hopfcyc/cocyclic.hpp"

using namespace hc;

namespace {

void check_tau_order(const CocyclicComplex& c) {
  for (int n = 0; n <= c.top(); ++n)
    CHECK(matrix_power(c.cyclic(n), n + 1) == SparseMatrix::identity(c.dim(n)));
}

}  // namespace

TEST_CASE("builders produce cocyclic modules") {
  auto z2 = fixtures::cyclic_group(2);
  auto sw = fixtures::sweedler();
  auto mp = fixtures::sweedler_pair(false, true);
  auto swap = fixtures::swap_module_algebra();
  std::vector<std::pair<std::string, CocyclicComplex>> cs;
  cs.emplace_back("constant", constant_complex(3));
  cs.emplace_back("plain", build_plain_complex(swap.alg, 3));
  cs.emplace_back("ans z2", build_ans_complex(fixtures::trivial_pair(z2), 3));
  cs.emplace_back("ans sweedler", build_ans_complex(mp, 2));
  cs.emplace_back("algebra", build_algebra_complex(swap, trivial_coefficients(z2), 2));
  cs.emplace_back("coalgebra", build_coalgebra_complex(regular_module_coalgebra(sw), mpi_coefficients(mp), 2));
  cs.emplace_back("comodule", build_comodule_algebra_complex(fixtures::group_graded(2), trivial_coefficients(z2), 2));
  for (const auto& [name, c] : cs) {
    CAPTURE(name);
    auto r = check_cocyclic(c);
    CHECK_MESSAGE(r.ok(), r.to_text());
    check_tau_order(c);
  }
}

TEST_CASE("the Hopf complex on H^(x)n is conjugate to the coalgebra one") {
  auto mp = fixtures::sweedler_pair(true, false);
  auto r = build_hopf_complex(mp, 2);
  CHECK(check_cocyclic(r.ans).ok());
  CHECK(check_cocyclic(r.coalgebra).ok());
  for (int n = 0; n <= r.ans.top(); ++n) {
    CHECK(r.ans.dim(n) == r.coalgebra.dim(n));
    CHECK(r.ans.dim(n) == static_cast<Index>(1) << (2 * n));
  }
  CHECK_FALSE(r.certificate.empty());
}

TEST_CASE("a corrupted cyclic operator breaks tau^(n+1) = id") {
  auto c = build_plain_complex(fixtures::swap_module_algebra().alg, 2);
  c.tau[1] = c.tau[1] * Scalar(2);
  auto r = check_cocyclic(c);
  CHECK(r.has_law("ce"));
  CHECK(r.has_law("ci"));
}

TEST_CASE("a corrupted face breaks the simplicial identities") {
  auto c = build_plain_complex(fixtures::swap_module_algebra().alg, 2);
  std::swap(c.faces[1][0], c.faces[1][1]);
  auto r = check_cocyclic(c);
  CHECK_FALSE(r.ok());
  CHECK(r.has_law("ds"));
}

TEST_CASE("products and diagonals of cocyclic modules") {
  auto a = build_plain_complex(fixtures::swap_module_algebra().alg, 2);
  auto b = build_ans_complex(fixtures::trivial_pair(fixtures::cyclic_group(2)), 2);
  auto bi = tensor_bicocyclic(a, b);
  CHECK(check_bicocyclic(bi, 2).ok());
  auto d = diagonal(bi);
  auto p = product_complex(a, b);
  CHECK(check_cocyclic(d).ok());
  CHECK(check_cocyclic(p).ok());
  for (int n = 0; n <= 2; ++n) CHECK(d.dim(n) == a.dim(n) * b.dim(n));
  for (int n = 0; n <= d.top(); ++n) {
    CHECK(d.cyclic(n) == p.cyclic(n));
    if (n <= d.maxdeg)
      for (int i = 0; i <= n + 1; ++i) CHECK(d.face(n, i) == p.face(n, i));
  }
}

TEST_CASE("dump and load round trip, keyed") {
  auto c = build_ans_complex(fixtures::sweedler_pair(false, true), 2);
  auto text = dump_complex(c, "k1");
  CocyclicComplex back;
  REQUIRE(load_complex(text, "k1", back));
  CHECK(same_complex(c, back));
  CocyclicComplex other;
  CHECK_FALSE(load_complex(text, "k2", other));
  CHECK_FALSE(load_complex("garbage\n", "k1", other));
}

TEST_CASE("content hash") {
  CHECK(hex64(fnv1a64("")) == "cbf29ce484222325");
  CHECK(hex64(fnv1a64("a")) == "af63dc4c8601ec8c");
}
