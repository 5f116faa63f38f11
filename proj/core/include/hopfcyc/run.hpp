#pragma once

#include <string>

#include "hopfcyc/specfile.hpp"

namespace hc {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunOptions {
  std::string command;     // validate, identities, cohomology, cup, fixtures, audit
  int max_degree = -1;     // -1: the file's max_degree
  std::string cup_kind;    // coalgebra, crossed, relative, traces
  int p = 1, q = 1;
  unsigned seed = 0;       // sampling of cocycle pairs when there are too many
  bool no_cache = false;   // rebuild and compare with any cached entry
  std::string cache_dir = ".hopfcyc-cache";  // empty disables the cache
  std::string out;         // fixtures: output directory
  int jobs = 0;            // 0: hardware concurrency
};

struct RunReport {
  std::string text;
  int exit_code = 0;  // 0 ok, 1 certificate failure, 2 input error
};

// input_text is hashed into the report header.
RunReport run(const SpecFile& spec, const std::string& input_text, const RunOptions& opt);

// Builds the named complex declaration at degree n, without the cache.
CocyclicComplex build_complex(const SpecFile& spec, const std::string& name, int n);

// The shipped fixture files, name -> contents.
std::vector<std::pair<std::string, std::string>> fixture_files();

}  // namespace hc
