#include <doctest.h>

#include <fstream>
#include <sstream>

#include "hopfcyc/errors.hpp"
#include "hopfcyc/run.hpp"

using namespace hc;

namespace {

const char* kPoint = R"(hopf Q
  basis 1
  unit = 1
  mul 1 1 = 1
  comul 1 = 1*1|1
  counit 1 = 1
  antipode 1 = 1
end
)";

// Expects an error of the given kind whose message starts at line:col.
void expect_error(const std::string& text, ErrorKind kind, const std::string& where) {
  try {
    parse_spec(text);
    FAIL("no error for:\n" << text);
  } catch (const Error& e) {
    CHECK(e.kind() == kind);
    std::string msg = e.what();
    CHECK_MESSAGE(msg.find(": " + where + ":") != std::string::npos, msg);
  }
}

}  // namespace

TEST_CASE("the one-dimensional Hopf algebra, with the antipode inverse filled in") {
  auto s = parse_spec(kPoint);
  REQUIRE(s.hopf.count("Q") == 1);
  const auto& h = s.hopf.at("Q");
  CHECK(h.dim() == 1);
  CHECK(validate_hopf(h).ok());
  CHECK(h.antipode_inv == SparseMatrix::identity(1));
  CHECK(s.max_degree == 5);
}

TEST_CASE("every shipped fixture prints canonically and round trips") {
  for (const auto& [name, text] : fixture_files()) {
    CAPTURE(name);
    auto s = parse_spec(text);
    auto printed = print_spec(s);
    auto again = parse_spec(printed);
    CHECK(again == s);
    CHECK(print_spec(again) == printed);
    CHECK(again.hopf.size() == s.hopf.size());
  }
}

TEST_CASE("the fixture directory matches the generator") {
  for (const auto& [name, text] : fixture_files()) {
    CAPTURE(name);
    std::ifstream in(std::string(HOPFCYC_FIXTURE_DIR) + "/" + name);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == text);
  }
}

TEST_CASE("unknown basis label names its line and column") {
  std::string text = R"(hopf Z2
  basis e g
  unit = 1*e
  mul e e = 1*e
  mul g g = 1*h
end
)";
  expect_error(text, ErrorKind::UnresolvedName, "5:13");
}

TEST_CASE("undeclared names, syntax errors and mismatched Hopf algebras") {
  expect_error(std::string(kPoint) + "let M = mpi P\n", ErrorKind::UnresolvedName, "9:13");
  expect_error(std::string(kPoint) + "pair P Q\n  delta 1 = 1/0\nend\n", ErrorKind::ParseError, "10:13");
  expect_error(std::string(kPoint) + "frobnicate X\n", ErrorKind::ParseError, "9:1");
  expect_error(std::string(kPoint) + "hopf R\n  basis a\n", ErrorKind::ParseError, "9:1");
  std::string two = std::string(kPoint) + R"(
hopf Q2
  basis u
  unit = 1*u
  mul u u = 1*u
  comul u = 1*u|u
  counit u = 1
  antipode u = 1*u
end
let M = trivial_sayd Q
let R = regular_module_coalgebra Q2
complex C = coalgebra R M
)";
  try {
    parse_spec(two);
    FAIL("mismatch accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionMismatch);
  }
}

TEST_CASE("set max_degree and dependency text") {
  auto s = parse_spec(std::string(kPoint) + "set max_degree 3\npair P Q\n  delta 1 = 1\n  sigma = 1*1\nend\n"
                                              "let M = mpi P\ncomplex H = hopf P\ncomplex K = constant\n");
  CHECK(s.max_degree == 3);
  auto dep = dependency_text(s, "H");
  CHECK(dep.find("hopf Q") != std::string::npos);
  CHECK(dep.find("pair P Q") != std::string::npos);
  CHECK(dep.find("mpi") == std::string::npos);
  CHECK(dependency_text(s, "K").find("hopf") == std::string::npos);
}
