#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hopfcyc/errors.hpp"
#include "hopfcyc/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact Hopf cyclic cohomology from structure-constant files"};
  app.set_version_flag("--version", hc::kToolVersion);
  app.require_subcommand(1);

  hc::RunOptions opt;
  std::string input;
  std::string format = "text";

  auto common = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("input", input, "Structure-constant file (.hc)");
    if (needs_input) in->required()->check(CLI::ExistingFile);
    sub->add_option("--max-degree", opt.max_degree, "Highest degree N (default: the file's, else 5)")
        ->check(CLI::Range(0, 12));
    sub->add_option("--seed", opt.seed, "Seed for sampling cocycle pairs");
    sub->add_flag("--no-cache", opt.no_cache, "Rebuild complexes and compare with cached entries");
    sub->add_option("--cache-dir", opt.cache_dir, "Complex cache directory (empty disables)");
    sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"text"}));
    sub->add_option("--out", opt.out, "Write the report here (fixtures: output directory)");
    sub->add_option("--jobs", opt.jobs, "Parallel sections (0: all cores)")->check(CLI::NonNegativeNumber);
  };

  common(app.add_subcommand("validate", "Check every declared structure against its axioms"), true);
  common(app.add_subcommand("identities", "Cocyclic identities and b/B certificates of every complex"), true);
  common(app.add_subcommand("cohomology", "HH, HC and HP dimension tables"), true);
  auto* cup = app.add_subcommand("cup", "Cup products of cocycle bases in every matching context");
  common(cup, true);
  cup->add_option("--kind", opt.cup_kind, "Cup product family")
      ->required()
      ->check(CLI::IsMember({"coalgebra", "crossed", "relative", "traces"}));
  cup->add_option("--p", opt.p, "Degree of the first argument")->check(CLI::NonNegativeNumber);
  cup->add_option("--q", opt.q, "Degree of the second argument")->check(CLI::NonNegativeNumber);
  common(app.add_subcommand("fixtures", "Write the shipped fixture files"), false);
  common(app.add_subcommand("audit", "Every certificate in one run"), true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  opt.command = app.get_subcommands().front()->get_name();

  std::string text;
  if (!input.empty()) {
    std::ifstream f(input, std::ios::binary);
    if (!f) {
      std::cerr << input << ": cannot read\n";
      return 2;
    }
    std::stringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }

  hc::SpecFile spec;
  try {
    spec = hc::parse_spec(text);
  } catch (const hc::Error& e) {
    std::cerr << input << ": " << e.what() << "\n";
    return 2;
  }

  hc::RunReport rep = hc::run(spec, text, opt);
  if (opt.command != "fixtures" && !opt.out.empty()) {
    std::ofstream f(opt.out, std::ios::binary);
    f << rep.text;
    if (!f) {
      std::cerr << opt.out << ": cannot write\n";
      return 2;
    }
  } else {
    std::cout << rep.text;
  }
  return rep.exit_code;
}
