#include <doctest.h>

#include <filesystem>
#include <map>

#include "hopfcyc/run.hpp"

using namespace hc;

namespace {

std::string fixture(const std::string& name) {
  for (const auto& [n, t] : fixture_files())
    if (n == name) return t;
  FAIL("no fixture " << name);
  return {};
}

RunReport run_text(const std::string& text, RunOptions opt) {
  if (opt.cache_dir == ".hopfcyc-cache") opt.cache_dir.clear();
  return run(parse_spec(text), text, opt);
}

bool has_line(const std::string& text, const std::string& line) {
  return ("\n" + text).find("\n" + line + "\n") != std::string::npos;
}

}  // namespace

TEST_CASE("validate: valid fixtures pass, the non-MPI pair fails with exit 1") {
  RunOptions opt;
  opt.command = "validate";
  auto ok = run_text(fixture("sweedler.hc"), opt);
  CHECK(ok.exit_code == 0);
  CHECK(ok.text.rfind("hopfcyc-report 1\n", 0) == 0);
  CHECK(has_line(ok.text, "command validate"));
  auto bad = run_text(fixture("sweedler_nonmpi.hc"), opt);
  CHECK(bad.exit_code == 1);
  CHECK(bad.text.find("[FAILED]") != std::string::npos);
}

TEST_CASE("cohomology of Q[Z/2] to degree 6") {
  RunOptions opt;
  opt.command = "cohomology";
  opt.max_degree = 6;
  auto r = run_text(fixture("z2.hc"), opt);
  CHECK(r.exit_code == 0);
  CHECK(has_line(r.text, "max_degree 6"));
  for (int n = 0; n <= 4; ++n) {
    CAPTURE(n);
    std::string expect = "HC " + std::to_string(n) + " " + (n % 2 ? "0" : "1") + " trusted";
    CHECK(r.text.find(expect) != std::string::npos);
  }
}

TEST_CASE("reports are deterministic and the cache does not change them") {
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path() / "hopfcyc-unit-cache";
  fs::remove_all(dir);
  RunOptions opt;
  opt.command = "cohomology";
  opt.max_degree = 3;
  opt.cache_dir = dir.string();
  const auto text = fixture("z3.hc");
  auto spec = parse_spec(text);
  auto cold = run(spec, text, opt);
  CHECK(fs::exists(dir));
  CHECK_FALSE(fs::is_empty(dir));
  auto warm = run(spec, text, opt);
  CHECK(cold.text == warm.text);
  RunOptions off = opt;
  off.cache_dir.clear();
  CHECK(run(spec, text, off).text == cold.text);
  RunOptions cmp = opt;
  cmp.no_cache = true;
  auto c = run(spec, text, cmp);
  CHECK(c.exit_code == 0);
  CHECK(c.text.find("== cache comparison") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("the input hash depends on the text") {
  RunOptions opt;
  opt.command = "validate";
  const auto text = fixture("trivial.hc");
  auto a = run_text(text, opt);
  auto b = run_text(text + "\n# trailing comment\n", opt);
  auto header = [](const std::string& t) { return t.substr(0, t.find("command")); };
  CHECK(header(a.text) != header(b.text));
  CHECK(a.text.substr(a.text.find("command")) == b.text.substr(b.text.find("command")));
}

TEST_CASE("cups sample deterministically under a seed") {
  RunOptions opt;
  opt.command = "cup";
  opt.cup_kind = "traces";
  opt.p = 0;
  opt.q = 0;
  opt.seed = 7;
  const auto text = fixture("swap.hc");
  auto a = run_text(text, opt);
  auto b = run_text(text, opt);
  CHECK(a.text == b.text);
  CHECK(a.exit_code == 0);
}
