#include <doctest.h>

#include <random>

#include "hopfcyc/errors.hpp"
#include "hopfcyc/hopf.hpp"
#include "oracle.hpp"

using namespace hc;

TEST_CASE("scalars parse to canonical form") {
  CHECK(parse_scalar("6/4") == make_scalar(3, 2));
  CHECK(parse_scalar("-0/5") == 0);
  CHECK(parse_scalar("+7") == 7);
  CHECK(to_string(parse_scalar("-10/4")) == "-5/2");
  CHECK_THROWS_AS(parse_scalar("1/0"), Error);
  CHECK_THROWS_AS(parse_scalar("1/-2"), Error);
  CHECK_THROWS_AS(parse_scalar("x"), Error);
  CHECK_THROWS_AS(parse_scalar(""), Error);
}

TEST_CASE("sparse vectors drop zeros and sum repeats") {
  auto v = SparseVec::from_pairs({{3, 1}, {1, 2}, {3, -1}, {0, 0}, {1, 1}});
  REQUIRE(v.nnz() == 1);
  CHECK(v.lead() == 1);
  CHECK(v.at(1) == 3);
  CHECK(v.at(3) == 0);
  auto w = SparseVec::unit(3, 5);
  CHECK((v + w - w) == v);
  CHECK((v * 0).empty());
  CHECK(v.dot(w) == 0);
  CHECK((v + w).dot(v + w) == 34);
}

TEST_CASE("kernel of a rank one matrix") {
  auto m = SparseMatrix::from_dense({{1, 2}, {2, 4}});
  auto k = kernel_basis(m);
  REQUIRE(k.size() == 1);
  CHECK(k[0] == SparseVec::from_dense({-2, 1}));
  CHECK(image_rank(m) == 1);
}

TEST_CASE("rank plus nullity and m * ker = 0 on random matrices") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    Index rows = 1 + rng() % 7, cols = 1 + rng() % 7;
    SparseMatrix m = trial % 2 ? test::random_matrix(rng, rows, cols)
                               : test::low_rank_matrix(rng, rows, cols, 1 + rng() % 3);
    Index rank = test::dense_rank(test::to_dense(m));
    auto ker = kernel_basis(m);
    CHECK(image_rank(m) == rank);
    CHECK(ker.size() + rank == cols);
    for (const auto& v : ker) CHECK(m.apply(v).empty());
    // Kernel vectors are independent: their rank is their count.
    CHECK(test::dense_rank(test::to_dense(SparseMatrix::from_columns(cols, ker))) == ker.size());
  }
}

TEST_CASE("echelon form is canonical for the span") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    Index dim = 2 + rng() % 5;
    auto m = test::low_rank_matrix(rng, dim, 4, 2);
    std::vector<SparseVec> cols, mixed;
    for (Index j = 0; j < m.cols(); ++j) cols.push_back(m.col(j));
    // Another spanning set of the same space.
    for (Index j = 0; j < cols.size(); ++j) mixed.push_back(cols[j] + cols[(j + 1) % cols.size()] * 2);
    mixed.insert(mixed.end(), cols.begin(), cols.end());
    auto r1 = rref_of(cols, dim), r2 = rref_of(mixed, dim);
    CHECK(r1 == r2);
    Echelon e(dim);
    for (const auto& c : cols) e.insert(c);
    for (const auto& c : mixed) CHECK(e.contains(c));
    CHECK(e.rank() == r1.size());
  }
}

TEST_CASE("invert_matrix gives a two sided inverse or nothing") {
  std::mt19937 rng(7);
  int inverted = 0;
  for (int trial = 0; trial < 40; ++trial) {
    Index n = 1 + rng() % 5;
    auto m = test::random_matrix(rng, n, n);
    auto inv = invert_matrix(m);
    bool full = test::dense_rank(test::to_dense(m)) == n;
    REQUIRE(inv.has_value() == full);
    if (!inv) continue;
    ++inverted;
    CHECK(compose(m, *inv) == SparseMatrix::identity(n));
    CHECK(compose(*inv, m) == SparseMatrix::identity(n));
  }
  CHECK(inverted > 0);
}

TEST_CASE("compose and kron are associative and kron respects composition") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = test::random_matrix(rng, 3, 2), b = test::random_matrix(rng, 2, 4), c = test::random_matrix(rng, 4, 2);
    CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
    auto d = test::random_matrix(rng, 2, 2);
    CHECK(tensor_kron(tensor_kron(a, d), c) == tensor_kron(a, tensor_kron(d, c)));
    auto e = test::random_matrix(rng, 2, 3), f = test::random_matrix(rng, 2, 2);
    CHECK(compose(tensor_kron(a, d), tensor_kron(e, f)) == tensor_kron(compose(a, e), compose(d, f)));
  }
}

TEST_CASE("matrix serialization round trips") {
  std::mt19937 rng(9);
  auto m = test::random_matrix(rng, 5, 3);
  CHECK(SparseMatrix::parse(m.serialize()) == m);
  CHECK_THROWS_AS(SparseMatrix::parse("2 2\n5 0 1\n"), Error);
}

TEST_CASE("quotient dimension and projection") {
  Index dim = 4;
  std::vector<SparseVec> rel{SparseVec::from_dense({1, 1, 0, 0}), SparseVec::from_dense({0, 0, 1, -1})};
  auto q = Quotient::make(dim, rel);
  CHECK(q.dim() == 2);
  for (const auto& r : rel) CHECK(q.project(r).empty());
  CHECK(compose(q.projection(), q.section()) == SparseMatrix::identity(2));
  std::vector<SparseVec> all;
  for (Index i = 0; i < dim; ++i) all.push_back(SparseVec::unit(i));
  CHECK(quotient_dim(all, rel, dim) == 2);
  CHECK_THROWS_AS(quotient_dim(rel, all, dim), Error);
}

TEST_CASE("multi-index encode and decode are inverse, left factor major") {
  MultiIndex mi({2, 3, 4});
  CHECK(mi.size() == 24);
  CHECK(mi.encode({1, 0, 0}) == 12);
  CHECK(mi.encode({0, 1, 0}) == 4);
  for (Index f = 0; f < mi.size(); ++f) CHECK(mi.encode(mi.decode(f)) == f);
}

TEST_CASE("tensor basis labels") {
  auto t = tensor_space(BasedSpace({"a", "b"}), BasedSpace({"x", "y"}));
  CHECK(t.labels == std::vector<std::string>{"a|x", "a|y", "b|x", "b|y"});
  CHECK(tensor_power(BasedSpace({"a"}), 0).dim() == 1);
}
