#pragma once

#include <map>
#include <string>
#include <vector>

#include "hopfcyc/cupprod.hpp"

namespace hc {

// coef * l1|l2|...; a bare scalar has no labels and keeps its text in bare,
// which is read as a basis label when the target has one factor with that
// label.
struct SpecTerm {
  Scalar coef;
  std::vector<std::string> labels;
  std::string bare;
  bool operator==(const SpecTerm& o) const { return coef == o.coef && labels == o.labels; }
};

// One line inside a block: keyword args [= rhs].
struct SpecItem {
  int line = 0;
  std::string keyword;
  std::vector<std::string> args;
  bool has_rhs = false;
  std::vector<SpecTerm> rhs;
  // Source columns for diagnostics: keyword, then each arg; one per rhs term.
  std::vector<int> cols;
  std::vector<int> term_cols;
  bool operator==(const SpecItem& o) const {
    return keyword == o.keyword && args == o.args && has_rhs == o.has_rhs && rhs == o.rhs;
  }
};

// A block (kind name args... / items / end) or a one-line declaration
// (let, complex, context, set) whose words after '=' are in args.
struct SpecDecl {
  int line = 0;
  std::string kind;
  std::string name;
  std::vector<std::string> args;
  std::vector<SpecItem> items;
  std::vector<int> cols;  // kind, name, then each arg
  bool operator==(const SpecDecl& o) const {
    return kind == o.kind && name == o.name && args == o.args && items == o.items;
  }
};

struct TraceSpec {
  std::string pair, module_algebra;
  SparseVec values;
};

struct SpecFile {
  std::vector<SpecDecl> decls;

  std::map<std::string, HopfData> hopf;
  std::map<std::string, AlgebraData> algebra;
  std::map<std::string, CoalgebraData> coalgebra;
  std::map<std::string, ModuleAlgebra> module_algebra;
  std::map<std::string, ModuleCoalgebra> module_coalgebra;
  std::map<std::string, ComoduleAlgebra> comodule_algebra;
  std::map<std::string, ModularPair> pair;
  std::map<std::string, SAYDModule> sayd;
  std::map<std::string, SubHopf> subhopf;
  std::map<std::string, CoalgebraAction> coalgebra_action;
  std::map<std::string, TraceSpec> trace;
  int max_degree = 5;

  bool operator==(const SpecFile& o) const { return decls == o.decls; }
  const SpecDecl* find(const std::string& name) const;
  // Complex and context declarations in file order.
  std::vector<const SpecDecl*> of_kind(const std::string& kind) const;
};

// Throws ParseError, UnresolvedName or DimensionMismatch with "line:col".
SpecFile parse_spec(const std::string& text);
std::string print_spec(const SpecFile& spec);
std::string print_decl(const SpecDecl& d);
// Canonical text of a declaration and everything it refers to, in file order.
std::string dependency_text(const SpecFile& spec, const std::string& name);

// Declarations for concrete data, used to write fixture files.
SpecDecl hopf_decl(const std::string& name, const HopfData& h);
SpecDecl algebra_decl(const std::string& name, const AlgebraData& a);
SpecDecl module_algebra_decl(const std::string& name, const std::string& hopf, const std::string& alg,
                             const ModuleAlgebra& ma);
SpecDecl comodule_algebra_decl(const std::string& name, const std::string& hopf, const std::string& alg,
                               const ComoduleAlgebra& ba);
SpecDecl pair_decl(const std::string& name, const std::string& hopf, const ModularPair& mp);
SpecDecl subhopf_decl(const std::string& name, const std::string& hopf, const SubHopf& k);
SpecDecl trace_decl(const std::string& name, const std::string& pair, const std::string& ma, const SparseVec& values,
                    const AlgebraData& a);
SpecDecl line_decl(const std::string& kind, const std::string& name, std::vector<std::string> args);

}  // namespace hc
