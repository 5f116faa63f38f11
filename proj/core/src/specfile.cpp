#include "hopfcyc/specfile.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "hopfcyc/errors.hpp"

namespace hc {

namespace {

const std::set<std::string> kBlockKinds = {"hopf",     "algebra",          "coalgebra", "module_algebra",
                                           "module_coalgebra", "comodule_algebra", "pair",      "sayd",
                                           "subhopf",  "coalgebra_action", "trace"};
const std::set<std::string> kLineKinds = {"let", "complex", "context"};

[[noreturn]] void fail(ErrorKind k, int line, int col, const std::string& msg) {
  throw Error(k, std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
}

Scalar scalar_at(const std::string& t, int line, int col) {
  try {
    return parse_scalar(t);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ParseError) throw;
    fail(ErrorKind::ParseError, line, col, "malformed scalar '" + t + "'");
  }
}

struct Word {
  std::string text;
  int col;
};

std::vector<Word> split_words(const std::string& s, int base) {
  std::vector<Word> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    out.push_back({s.substr(i, j - i), base + static_cast<int>(i)});
    i = j;
  }
  return out;
}

bool label_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'' || c == '^';
}

bool is_number(const std::string& t) {
  if (t.empty()) return false;
  for (char c : t)
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '/') return false;
  return std::isdigit(static_cast<unsigned char>(t.front()));
}

// term (('+' | '-') term)*, term = [coef '*'] label ('|' label)* | coef
void parse_rhs(const std::string& s, int base, int line, SpecItem& item) {
  std::size_t i = 0;
  auto skip = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  auto col = [&] { return base + static_cast<int>(i); };
  auto token = [&] {
    std::size_t j = i;
    while (j < s.size() && (label_char(s[j]) || s[j] == '/')) ++j;
    std::string t = s.substr(i, j - i);
    i = j;
    return t;
  };
  skip();
  if (i >= s.size()) fail(ErrorKind::ParseError, line, col(), "empty right-hand side");
  bool first = true;
  while (i < s.size()) {
    int sign = 1;
    if (!first) {
      if (s[i] != '+' && s[i] != '-') fail(ErrorKind::ParseError, line, col(), "expected '+' or '-'");
      sign = s[i] == '-' ? -1 : 1;
      ++i;
      skip();
    }
    while (i < s.size() && (s[i] == '-' || s[i] == '+')) {
      if (s[i] == '-') sign = -sign;
      ++i;
      skip();
    }
    const int tcol = col();
    std::string t = token();
    if (t.empty()) fail(ErrorKind::ParseError, line, tcol, "expected a term");
    SpecTerm term;
    term.coef = Scalar(sign);
    skip();
    if (i < s.size() && s[i] == '*') {
      if (!is_number(t)) fail(ErrorKind::ParseError, line, tcol, "malformed scalar '" + t + "'");
      term.coef *= scalar_at(t, line, tcol);
      ++i;
      skip();
      const int lcol = col();
      std::string l = token();
      if (l.empty()) fail(ErrorKind::ParseError, line, lcol, "expected a basis label");
      term.labels.push_back(l);
    } else if (i < s.size() && s[i] == '|') {
      term.labels.push_back(t);
    } else if (is_number(t)) {
      term.coef *= scalar_at(t, line, tcol);
      term.bare = t;
    } else {
      term.labels.push_back(t);
    }
    while (i < s.size() && s[i] == '|') {
      ++i;
      const int lcol = col();
      std::string l = token();
      if (l.empty()) fail(ErrorKind::ParseError, line, lcol, "expected a basis label after '|'");
      term.labels.push_back(l);
    }
    skip();
    item.rhs.push_back(std::move(term));
    item.term_cols.push_back(tcol);
    first = false;
  }
}

std::vector<SpecDecl> parse_decls(const std::string& text) {
  std::vector<SpecDecl> out;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  SpecDecl* open = nullptr;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw.substr(0, raw.find('#'));
    if (!s.empty() && s.back() == '\r') s.pop_back();
    const auto eq = s.find('=');
    std::vector<Word> left = split_words(s.substr(0, eq), 1);
    if (left.empty()) {
      if (eq != std::string::npos) fail(ErrorKind::ParseError, line, static_cast<int>(eq) + 1, "missing keyword");
      continue;
    }
    if (open) {
      if (left[0].text == "end" && left.size() == 1 && eq == std::string::npos) {
        open = nullptr;
        continue;
      }
      SpecItem item;
      item.line = line;
      item.keyword = left[0].text;
      for (const auto& w : left) item.cols.push_back(w.col);
      for (std::size_t k = 1; k < left.size(); ++k) item.args.push_back(left[k].text);
      if (eq != std::string::npos) {
        item.has_rhs = true;
        parse_rhs(s.substr(eq + 1), static_cast<int>(eq) + 2, line, item);
      }
      open->items.push_back(std::move(item));
      continue;
    }
    SpecDecl d;
    d.line = line;
    d.kind = left[0].text;
    if (kBlockKinds.count(d.kind)) {
      if (eq != std::string::npos) fail(ErrorKind::ParseError, line, static_cast<int>(eq) + 1, "unexpected '='");
      if (left.size() < 2) fail(ErrorKind::ParseError, line, left[0].col, d.kind + " needs a name");
      d.name = left[1].text;
      for (const auto& w : left) d.cols.push_back(w.col);
      for (std::size_t k = 2; k < left.size(); ++k) d.args.push_back(left[k].text);
      out.push_back(std::move(d));
      open = &out.back();
    } else if (kLineKinds.count(d.kind)) {
      if (left.size() != 2 || eq == std::string::npos)
        fail(ErrorKind::ParseError, line, left[0].col, "expected '" + d.kind + " <name> = ...'");
      d.name = left[1].text;
      d.cols = {left[0].col, left[1].col};
      for (const auto& w : split_words(s.substr(eq + 1), static_cast<int>(eq) + 2)) {
        d.args.push_back(w.text);
        d.cols.push_back(w.col);
      }
      if (d.args.empty()) fail(ErrorKind::ParseError, line, static_cast<int>(eq) + 2, "empty declaration");
      out.push_back(std::move(d));
    } else if (d.kind == "set") {
      if (left.size() != 3 || eq != std::string::npos)
        fail(ErrorKind::ParseError, line, left[0].col, "expected 'set <key> <value>'");
      d.name = left[1].text;
      d.args = {left[2].text};
      d.cols = {left[0].col, left[1].col, left[2].col};
      out.push_back(std::move(d));
    } else {
      fail(ErrorKind::ParseError, line, left[0].col, "unknown declaration '" + d.kind + "'");
    }
  }
  if (open) fail(ErrorKind::ParseError, open->line, 1, "block '" + open->name + "' is missing 'end'");
  return out;
}

int item_col(const SpecItem& it, std::size_t word) {
  return word < it.cols.size() ? it.cols[word] : (it.cols.empty() ? 1 : it.cols.front());
}

Index label_index(const BasedSpace& sp, const std::string& l, int line, int col) {
  auto it = std::find(sp.labels.begin(), sp.labels.end(), l);
  if (it == sp.labels.end()) fail(ErrorKind::UnresolvedName, line, col, "unknown basis label '" + l + "'");
  return static_cast<Index>(it - sp.labels.begin());
}

// Flat index of the item arguments [first, first + spaces.size()) over spaces.
Index args_index(const SpecItem& it, std::size_t first, const std::vector<BasedSpace>& spaces) {
  if (it.args.size() != first + spaces.size())
    fail(ErrorKind::DimensionMismatch, it.line, item_col(it, 0),
         "'" + it.keyword + "' expects " + std::to_string(first + spaces.size()) + " argument(s), got " +
             std::to_string(it.args.size()));
  std::vector<Index> dims, idx;
  for (std::size_t k = 0; k < spaces.size(); ++k) {
    dims.push_back(spaces[k].dim());
    idx.push_back(label_index(spaces[k], it.args[first + k], it.line, item_col(it, first + k + 1)));
  }
  return MultiIndex(dims).encode(idx);
}

// The right-hand side as a vector over the tensor product of spaces; with no
// spaces the value is a scalar stored at index 0.
SparseVec rhs_vector(const SpecItem& it, const std::vector<BasedSpace>& spaces) {
  if (!it.has_rhs) fail(ErrorKind::ParseError, it.line, item_col(it, 0), "'" + it.keyword + "' needs '= ...'");
  std::vector<Index> dims;
  for (const auto& sp : spaces) dims.push_back(sp.dim());
  MultiIndex mi(dims);
  VecBuilder vb;
  for (std::size_t t = 0; t < it.rhs.size(); ++t) {
    SpecTerm term = it.rhs[t];
    const int col = it.term_cols[t];
    if (term.labels.empty()) {
      if (sgn(term.coef) == 0) continue;
      if (spaces.size() == 1 && !term.bare.empty()) {
        const auto& ls = spaces[0].labels;
        if (std::find(ls.begin(), ls.end(), term.bare) != ls.end()) {
          term.coef /= parse_scalar(term.bare);
          term.labels = {term.bare};
        }
      }
    }
    if (term.labels.size() != spaces.size())
      fail(ErrorKind::DimensionMismatch, it.line, col,
           "term has " + std::to_string(term.labels.size()) + " tensor factor(s), expected " +
               std::to_string(spaces.size()));
    std::vector<Index> idx;
    for (std::size_t k = 0; k < spaces.size(); ++k) idx.push_back(label_index(spaces[k], term.labels[k], it.line, col));
    vb.add(mi.encode(idx), term.coef);
  }
  return vb.finish();
}

Scalar rhs_scalar(const SpecItem& it) { return rhs_vector(it, {}).at(0); }

void no_args(const SpecItem& it) {
  if (!it.args.empty()) fail(ErrorKind::DimensionMismatch, it.line, item_col(it, 1), "'" + it.keyword + "' takes no arguments");
}

BasedSpace read_basis(const SpecDecl& d) {
  const SpecItem* found = nullptr;
  for (const auto& it : d.items)
    if (it.keyword == "basis") {
      if (found) fail(ErrorKind::ParseError, it.line, item_col(it, 0), "duplicate basis");
      found = &it;
    }
  if (!found) fail(ErrorKind::ParseError, d.line, 1, d.kind + " '" + d.name + "' has no basis");
  if (found->has_rhs || found->args.empty())
    fail(ErrorKind::ParseError, found->line, item_col(*found, 0), "expected 'basis <label> ...'");
  std::set<std::string> seen;
  for (std::size_t k = 0; k < found->args.size(); ++k)
    if (!seen.insert(found->args[k]).second)
      fail(ErrorKind::ParseError, found->line, item_col(*found, k + 1), "duplicate label '" + found->args[k] + "'");
  return BasedSpace(found->args);
}

[[noreturn]] void unknown_item(const SpecDecl& d, const SpecItem& it) {
  fail(ErrorKind::ParseError, it.line, item_col(it, 0), "unknown entry '" + it.keyword + "' in " + d.kind);
}

AlgebraData read_algebra(const SpecDecl& d, const BasedSpace& sp, std::set<std::string> extra) {
  AlgebraData a;
  a.space = sp;
  a.mul = StructureTensor::zero({sp, sp}, {sp});
  bool unit = false;
  for (const auto& it : d.items) {
    if (it.keyword == "unit") {
      no_args(it);
      a.unit = rhs_vector(it, {sp});
      unit = true;
    } else if (it.keyword == "mul") {
      a.mul.image[args_index(it, 0, {sp, sp})] = rhs_vector(it, {sp});
    } else if (it.keyword != "basis" && !extra.count(it.keyword)) {
      unknown_item(d, it);
    }
  }
  if (!unit) fail(ErrorKind::ParseError, d.line, 1, d.kind + " '" + d.name + "' has no unit");
  return a;
}

CoalgebraData read_coalgebra(const SpecDecl& d, const BasedSpace& sp, std::set<std::string> extra) {
  CoalgebraData c;
  c.space = sp;
  c.comul = StructureTensor::zero({sp}, {sp, sp});
  std::vector<Scalar> counit(sp.dim());
  for (const auto& it : d.items) {
    if (it.keyword == "comul") {
      c.comul.image[args_index(it, 0, {sp})] = rhs_vector(it, {sp, sp});
    } else if (it.keyword == "counit") {
      counit[args_index(it, 0, {sp})] = rhs_scalar(it);
    } else if (it.keyword != "basis" && !extra.count(it.keyword)) {
      unknown_item(d, it);
    }
  }
  c.counit = SparseVec::from_dense(counit);
  return c;
}

SparseMatrix read_linear_map(const SpecDecl& d, const std::string& key, const BasedSpace& sp, bool& present) {
  std::vector<SparseVec> cols(sp.dim());
  present = false;
  for (const auto& it : d.items)
    if (it.keyword == key) {
      cols[args_index(it, 0, {sp})] = rhs_vector(it, {sp});
      present = true;
    }
  return SparseMatrix::from_columns(sp.dim(), std::move(cols));
}

class Resolver {
 public:
  explicit Resolver(SpecFile& f) : f_(f) {}

  void run() {
    for (const auto& d : f_.decls) {
      if (d.kind == "set") {
        set(d);
        continue;
      }
      if (kind_.count(d.name)) fail(ErrorKind::ParseError, d.line, col(d, 1), "duplicate name '" + d.name + "'");
      if (d.kind == "hopf") hopf(d);
      else if (d.kind == "algebra") algebra(d);
      else if (d.kind == "coalgebra") coalgebra(d);
      else if (d.kind == "module_algebra") module_algebra(d);
      else if (d.kind == "module_coalgebra") module_coalgebra(d);
      else if (d.kind == "comodule_algebra") comodule_algebra(d);
      else if (d.kind == "pair") pair(d);
      else if (d.kind == "sayd") sayd(d);
      else if (d.kind == "subhopf") subhopf(d);
      else if (d.kind == "coalgebra_action") coalgebra_action(d);
      else if (d.kind == "trace") trace(d);
      else if (d.kind == "let") let(d);
      else if (d.kind == "complex") complex(d);
      else if (d.kind == "context") context(d);
    }
  }

 private:
  SpecFile& f_;
  std::map<std::string, std::string> kind_;
  std::map<std::string, std::string> over_;  // structure -> Hopf algebra name

  static int col(const SpecDecl& d, std::size_t w) { return w < d.cols.size() ? d.cols[w] : 1; }

  void define(const SpecDecl& d, const std::string& kind, const std::string& over) {
    kind_[d.name] = kind;
    if (!over.empty()) over_[d.name] = over;
  }

  // args[k] (word k + 2 in the declaration) must name one of kinds.
  const std::string& ref(const SpecDecl& d, std::size_t k, std::initializer_list<const char*> kinds) {
    if (k >= d.args.size())
      fail(ErrorKind::ParseError, d.line, col(d, d.cols.size() - 1), d.kind + " '" + d.name + "' is missing an argument");
    const std::string& n = d.args[k];
    auto it = kind_.find(n);
    std::string want;
    for (const char* kd : kinds) {
      if (it != kind_.end() && it->second == kd) return n;
      want += want.empty() ? kd : std::string(" or ") + kd;
    }
    if (it == kind_.end()) fail(ErrorKind::UnresolvedName, d.line, col(d, k + 2), "undeclared name '" + n + "'");
    fail(ErrorKind::UnresolvedName, d.line, col(d, k + 2), "'" + n + "' is a " + it->second + ", expected " + want);
  }

  void arity(const SpecDecl& d, std::size_t n) {
    if (d.args.size() != n)
      fail(ErrorKind::ParseError, d.line, col(d, 0),
           d.kind + " '" + d.name + "' expects " + std::to_string(n) + " argument(s)");
  }

  // Both names must be over the same Hopf algebra.
  void same_hopf(const SpecDecl& d, std::size_t k1, std::size_t k2) {
    const std::string& h1 = over_.at(d.args[k1]);
    const std::string& h2 = over_.at(d.args[k2]);
    if (h1 != h2)
      fail(ErrorKind::DimensionMismatch, d.line, col(d, k2 + 2),
           "'" + d.args[k1] + "' is over " + h1 + " but '" + d.args[k2] + "' is over " + h2);
  }

  const AlgebraData& algebra_ref(const SpecDecl& d, std::size_t k) {
    const std::string& n = ref(d, k, {"algebra", "hopf"});
    return kind_[n] == "hopf" ? f_.hopf.at(n).alg : f_.algebra.at(n);
  }
  const CoalgebraData& coalgebra_ref(const SpecDecl& d, std::size_t k) {
    const std::string& n = ref(d, k, {"coalgebra", "hopf"});
    return kind_[n] == "hopf" ? f_.hopf.at(n).coalg : f_.coalgebra.at(n);
  }

  void set(const SpecDecl& d) {
    if (d.name != "max_degree") fail(ErrorKind::ParseError, d.line, col(d, 1), "unknown setting '" + d.name + "'");
    const std::string& v = d.args[0];
    if (v.empty() || v.size() > 2 || !std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      fail(ErrorKind::ParseError, d.line, col(d, 2), "max_degree must be a small non-negative integer");
    f_.max_degree = std::stoi(v);
  }

  void hopf(const SpecDecl& d) {
    arity(d, 0);
    BasedSpace sp = read_basis(d);
    HopfData h;
    h.alg = read_algebra(d, sp, {"comul", "counit", "antipode", "antipode_inv"});
    h.coalg = read_coalgebra(d, sp, {"unit", "mul", "antipode", "antipode_inv"});
    bool has_s = false, has_sinv = false;
    h.antipode = read_linear_map(d, "antipode", sp, has_s);
    if (!has_s) fail(ErrorKind::ParseError, d.line, 1, "hopf '" + d.name + "' has no antipode");
    h.antipode_inv = read_linear_map(d, "antipode_inv", sp, has_sinv);
    if (!has_sinv) {
      auto inv = invert_matrix(h.antipode);
      if (!inv) fail(ErrorKind::InvalidArgument, d.line, 1, "antipode of '" + d.name + "' is not invertible");
      h.antipode_inv = *inv;
    }
    f_.hopf[d.name] = std::move(h);
    define(d, "hopf", d.name);
  }

  void algebra(const SpecDecl& d) {
    arity(d, 0);
    f_.algebra[d.name] = read_algebra(d, read_basis(d), {});
    define(d, "algebra", "");
  }

  void coalgebra(const SpecDecl& d) {
    arity(d, 0);
    f_.coalgebra[d.name] = read_coalgebra(d, read_basis(d), {});
    define(d, "coalgebra", "");
  }

  void module_algebra(const SpecDecl& d) {
    arity(d, 2);
    ModuleAlgebra ma;
    ma.hopf = f_.hopf.at(ref(d, 0, {"hopf"}));
    ma.alg = algebra_ref(d, 1);
    const BasedSpace& h = ma.hopf.space();
    const BasedSpace& a = ma.alg.space;
    ma.action = StructureTensor::zero({h, a}, {a});
    for (const auto& it : d.items) {
      if (it.keyword != "act") unknown_item(d, it);
      ma.action.image[args_index(it, 0, {h, a})] = rhs_vector(it, {a});
    }
    f_.module_algebra[d.name] = std::move(ma);
    define(d, "module_algebra", d.args[0]);
  }

  void module_coalgebra(const SpecDecl& d) {
    arity(d, 2);
    ModuleCoalgebra mc;
    mc.hopf = f_.hopf.at(ref(d, 0, {"hopf"}));
    mc.coalg = coalgebra_ref(d, 1);
    const BasedSpace& h = mc.hopf.space();
    const BasedSpace& c = mc.coalg.space;
    mc.action = StructureTensor::zero({h, c}, {c});
    for (const auto& it : d.items) {
      if (it.keyword != "act") unknown_item(d, it);
      mc.action.image[args_index(it, 0, {h, c})] = rhs_vector(it, {c});
    }
    f_.module_coalgebra[d.name] = std::move(mc);
    define(d, "module_coalgebra", d.args[0]);
  }

  void comodule_algebra(const SpecDecl& d) {
    arity(d, 2);
    ComoduleAlgebra ba;
    ba.hopf = f_.hopf.at(ref(d, 0, {"hopf"}));
    ba.alg = algebra_ref(d, 1);
    const BasedSpace& h = ba.hopf.space();
    const BasedSpace& b = ba.alg.space;
    ba.coaction = StructureTensor::zero({b}, {h, b});
    for (const auto& it : d.items) {
      if (it.keyword != "coact") unknown_item(d, it);
      ba.coaction.image[args_index(it, 0, {b})] = rhs_vector(it, {h, b});
    }
    f_.comodule_algebra[d.name] = std::move(ba);
    define(d, "comodule_algebra", d.args[0]);
  }

  void pair(const SpecDecl& d) {
    arity(d, 1);
    ModularPair mp;
    mp.hopf = f_.hopf.at(ref(d, 0, {"hopf"}));
    const BasedSpace& h = mp.hopf.space();
    std::vector<Scalar> delta(h.dim());
    bool sigma = false;
    for (const auto& it : d.items) {
      if (it.keyword == "delta") {
        delta[args_index(it, 0, {h})] = rhs_scalar(it);
      } else if (it.keyword == "sigma") {
        no_args(it);
        mp.sigma = rhs_vector(it, {h});
        sigma = true;
      } else {
        unknown_item(d, it);
      }
    }
    if (!sigma) fail(ErrorKind::ParseError, d.line, 1, "pair '" + d.name + "' has no sigma");
    mp.delta = SparseVec::from_dense(delta);
    f_.pair[d.name] = std::move(mp);
    define(d, "pair", d.args[0]);
  }

  void sayd(const SpecDecl& d) {
    arity(d, 1);
    SAYDModule m;
    m.hopf = f_.hopf.at(ref(d, 0, {"hopf"}));
    m.space = read_basis(d);
    const BasedSpace& h = m.hopf.space();
    m.raction = StructureTensor::zero({m.space, h}, {m.space});
    m.lcoaction = StructureTensor::zero({m.space}, {h, m.space});
    for (const auto& it : d.items) {
      if (it.keyword == "ract") m.raction.image[args_index(it, 0, {m.space, h})] = rhs_vector(it, {m.space});
      else if (it.keyword == "coact") m.lcoaction.image[args_index(it, 0, {m.space})] = rhs_vector(it, {h, m.space});
      else if (it.keyword != "basis") unknown_item(d, it);
    }
    f_.sayd[d.name] = std::move(m);
    define(d, "sayd", d.args[0]);
  }

  void subhopf(const SpecDecl& d) {
    arity(d, 1);
    SubHopf k;
    k.hopf = f_.hopf.at(ref(d, 0, {"hopf"}));
    std::set<std::string> names;
    for (const auto& it : d.items) {
      if (it.keyword != "include") unknown_item(d, it);
      if (it.args.size() != 1) fail(ErrorKind::DimensionMismatch, it.line, item_col(it, 0), "expected 'include <label> = ...'");
      if (!names.insert(it.args[0]).second)
        fail(ErrorKind::ParseError, it.line, item_col(it, 1), "duplicate label '" + it.args[0] + "'");
      k.inclusion.push_back(rhs_vector(it, {k.hopf.space()}));
    }
    if (k.inclusion.empty()) fail(ErrorKind::ParseError, d.line, 1, "subhopf '" + d.name + "' includes nothing");
    f_.subhopf[d.name] = std::move(k);
    define(d, "subhopf", d.args[0]);
  }

  void coalgebra_action(const SpecDecl& d) {
    arity(d, 2);
    CoalgebraAction ca;
    ca.mc = f_.module_coalgebra.at(ref(d, 0, {"module_coalgebra"}));
    ca.ma = f_.module_algebra.at(ref(d, 1, {"module_algebra"}));
    same_hopf(d, 0, 1);
    const BasedSpace& c = ca.mc.coalg.space;
    const BasedSpace& a = ca.ma.alg.space;
    ca.action = StructureTensor::zero({c, a}, {a});
    for (const auto& it : d.items) {
      if (it.keyword != "act") unknown_item(d, it);
      ca.action.image[args_index(it, 0, {c, a})] = rhs_vector(it, {a});
    }
    f_.coalgebra_action[d.name] = std::move(ca);
    define(d, "coalgebra_action", d.args[0]);
  }

  void trace(const SpecDecl& d) {
    arity(d, 2);
    TraceSpec t;
    t.pair = ref(d, 0, {"pair"});
    t.module_algebra = ref(d, 1, {"module_algebra"});
    same_hopf(d, 0, 1);
    const BasedSpace& a = f_.module_algebra.at(t.module_algebra).alg.space;
    std::vector<Scalar> vals(a.dim());
    for (const auto& it : d.items) {
      if (it.keyword != "value") unknown_item(d, it);
      vals[args_index(it, 0, {a})] = rhs_scalar(it);
    }
    t.values = SparseVec::from_dense(vals);
    f_.trace[d.name] = std::move(t);
    define(d, "trace", d.args[0]);
  }

  void let(const SpecDecl& d) {
    const std::string& op = d.args[0];
    auto operands = [&](std::size_t n) {
      if (d.args.size() != n + 1)
        fail(ErrorKind::ParseError, d.line, col(d, 2), "'" + op + "' expects " + std::to_string(n) + " operand(s)");
    };
    // Operand k of the constructor sits at args[k + 1].
    auto operand = [&](std::size_t k, std::initializer_list<const char*> kinds) -> const std::string& {
      return ref(d, k + 1, kinds);
    };
    if (op == "mpi") {
      operands(1);
      const std::string& p = operand(0, {"pair"});
      f_.sayd[d.name] = mpi_coefficients(f_.pair.at(p));
      define(d, "sayd", over_.at(p));
    } else if (op == "trivial_sayd") {
      operands(1);
      const std::string& h = operand(0, {"hopf"});
      f_.sayd[d.name] = trivial_coefficients(f_.hopf.at(h));
      define(d, "sayd", h);
    } else if (op == "trivial_pair") {
      operands(1);
      const std::string& h = operand(0, {"hopf"});
      const HopfData& hd = f_.hopf.at(h);
      f_.pair[d.name] = ModularPair{hd, hd.coalg.counit, hd.one()};
      define(d, "pair", h);
    } else if (op == "regular_module_coalgebra") {
      operands(1);
      const std::string& h = operand(0, {"hopf"});
      f_.module_coalgebra[d.name] = regular_module_coalgebra(f_.hopf.at(h));
      define(d, "module_coalgebra", h);
    } else if (op == "regular_action") {
      operands(1);
      const std::string& ma = operand(0, {"module_algebra"});
      f_.coalgebra_action[d.name] = regular_coalgebra_action(f_.module_algebra.at(ma));
      define(d, "coalgebra_action", over_.at(ma));
    } else if (op == "regular_comodule_algebra") {
      operands(1);
      const std::string& h = operand(0, {"hopf"});
      f_.comodule_algebra[d.name] = regular_comodule_algebra(f_.hopf.at(h));
      define(d, "comodule_algebra", h);
    } else if (op == "trivial_comodule_algebra") {
      operands(1);
      const std::string& h = operand(0, {"hopf"});
      f_.comodule_algebra[d.name] = trivial_comodule_algebra(f_.hopf.at(h));
      define(d, "comodule_algebra", h);
    } else if (op == "trivial_module_algebra") {
      operands(2);
      const std::string& h = operand(0, {"hopf"});
      f_.module_algebra[d.name] = trivial_module_algebra(f_.hopf.at(h), algebra_ref(d, 2));
      define(d, "module_algebra", h);
    } else if (op == "crossed_product") {
      operands(2);
      const std::string& ma = operand(0, {"module_algebra"});
      const std::string& ba = operand(1, {"comodule_algebra"});
      same_hopf(d, 1, 2);
      f_.algebra[d.name] = crossed_product(f_.module_algebra.at(ma), f_.comodule_algebra.at(ba));
      define(d, "algebra", "");
    } else {
      fail(ErrorKind::ParseError, d.line, col(d, 2), "unknown constructor '" + op + "'");
    }
  }

  void complex(const SpecDecl& d) {
    const std::string& op = d.args[0];
    auto operands = [&](std::size_t n) {
      if (d.args.size() != n + 1)
        fail(ErrorKind::ParseError, d.line, col(d, 2), "'" + op + "' expects " + std::to_string(n) + " operand(s)");
    };
    if (op == "hopf" || op == "ans") {
      operands(1);
      ref(d, 1, {"pair"});
    } else if (op == "algebra") {
      operands(2);
      ref(d, 1, {"module_algebra"});
      ref(d, 2, {"sayd"});
      same_hopf(d, 1, 2);
    } else if (op == "coalgebra") {
      operands(2);
      ref(d, 1, {"module_coalgebra"});
      ref(d, 2, {"sayd"});
      same_hopf(d, 1, 2);
    } else if (op == "comodule") {
      operands(2);
      ref(d, 1, {"comodule_algebra"});
      ref(d, 2, {"sayd"});
      same_hopf(d, 1, 2);
    } else if (op == "plain") {
      operands(1);
      ref(d, 1, {"algebra", "hopf"});
    } else if (op == "diagonal" || op == "product") {
      operands(2);
      ref(d, 1, {"complex"});
      ref(d, 2, {"complex"});
    } else if (op == "constant") {
      operands(0);
    } else {
      fail(ErrorKind::ParseError, d.line, col(d, 2), "unknown complex '" + op + "'");
    }
    define(d, "complex", "");
  }

  void context(const SpecDecl& d) {
    const std::string& op = d.args[0];
    auto operands = [&](std::size_t n) {
      if (d.args.size() != n + 1)
        fail(ErrorKind::ParseError, d.line, col(d, 2), "'" + op + "' expects " + std::to_string(n) + " operand(s)");
    };
    if (op == "coalgebra") {
      operands(2);
      ref(d, 1, {"coalgebra_action"});
      ref(d, 2, {"sayd"});
      same_hopf(d, 1, 2);
    } else if (op == "crossed") {
      operands(3);
      ref(d, 1, {"module_algebra"});
      ref(d, 2, {"comodule_algebra"});
      ref(d, 3, {"sayd"});
      same_hopf(d, 1, 2);
      same_hopf(d, 1, 3);
    } else if (op == "relative") {
      operands(3);
      ref(d, 1, {"module_algebra"});
      ref(d, 2, {"subhopf"});
      ref(d, 3, {"sayd"});
      same_hopf(d, 1, 2);
      same_hopf(d, 1, 3);
    } else {
      fail(ErrorKind::ParseError, d.line, col(d, 2), "unknown context '" + op + "'");
    }
    define(d, "context", "");
  }
};

}  // namespace

SpecFile parse_spec(const std::string& text) {
  SpecFile f;
  f.decls = parse_decls(text);
  Resolver(f).run();
  return f;
}

const SpecDecl* SpecFile::find(const std::string& name) const {
  for (const auto& d : decls)
    if (d.kind != "set" && d.name == name) return &d;
  return nullptr;
}

std::vector<const SpecDecl*> SpecFile::of_kind(const std::string& kind) const {
  std::vector<const SpecDecl*> out;
  for (const auto& d : decls)
    if (d.kind == kind) out.push_back(&d);
  return out;
}

namespace {

std::string print_rhs(const std::vector<SpecTerm>& rhs) {
  if (rhs.empty()) return "0";
  std::string out;
  for (std::size_t t = 0; t < rhs.size(); ++t) {
    const SpecTerm& term = rhs[t];
    const bool neg = sgn(term.coef) < 0;
    if (t == 0) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    out += to_string(neg ? Scalar(-term.coef) : term.coef);
    for (std::size_t k = 0; k < term.labels.size(); ++k) out += (k == 0 ? "*" : "|") + term.labels[k];
  }
  return out;
}

std::vector<SpecTerm> vec_terms(const SparseVec& v, const std::vector<BasedSpace>& spaces) {
  std::vector<Index> dims;
  for (const auto& sp : spaces) dims.push_back(sp.dim());
  MultiIndex mi(dims);
  std::vector<SpecTerm> out;
  for (const auto& [i, c] : v.entries()) {
    SpecTerm t;
    t.coef = c;
    std::vector<Index> idx = mi.decode(i);
    for (std::size_t k = 0; k < spaces.size(); ++k) t.labels.push_back(spaces[k].labels[idx[k]]);
    out.push_back(std::move(t));
  }
  if (out.empty()) out.push_back(SpecTerm{Scalar(0), {}, "0"});
  return out;
}

SpecItem make_item(std::string keyword, std::vector<std::string> args) {
  SpecItem it;
  it.keyword = std::move(keyword);
  it.args = std::move(args);
  return it;
}

SpecItem make_item(std::string keyword, std::vector<std::string> args, const SparseVec& v,
                   const std::vector<BasedSpace>& spaces) {
  SpecItem it = make_item(std::move(keyword), std::move(args));
  it.has_rhs = true;
  it.rhs = vec_terms(v, spaces);
  return it;
}

SpecItem scalar_item(std::string keyword, std::vector<std::string> args, const Scalar& c) {
  return make_item(std::move(keyword), std::move(args), SparseVec::unit(0, c), {});
}

// One item per nonzero image of a structure tensor, keyed by input labels.
void tensor_items(std::vector<SpecItem>& out, const std::string& keyword, const StructureTensor& t) {
  MultiIndex in([&] {
    std::vector<Index> d;
    for (const auto& sp : t.in) d.push_back(sp.dim());
    return d;
  }());
  for (Index i = 0; i < static_cast<Index>(t.image.size()); ++i) {
    if (t.image[i].empty()) continue;
    std::vector<Index> idx = in.decode(i);
    std::vector<std::string> args;
    for (std::size_t k = 0; k < idx.size(); ++k) args.push_back(t.in[k].labels[idx[k]]);
    out.push_back(make_item(keyword, args, t.image[i], t.out));
  }
}

void algebra_items(std::vector<SpecItem>& out, const AlgebraData& a) {
  out.push_back(make_item("basis", a.space.labels));
  out.push_back(make_item("unit", {}, a.unit, {a.space}));
  tensor_items(out, "mul", a.mul);
}

void map_items(std::vector<SpecItem>& out, const std::string& keyword, const SparseMatrix& m, const BasedSpace& sp) {
  for (Index j = 0; j < m.cols(); ++j) out.push_back(make_item(keyword, {sp.labels[j]}, m.col(j), {sp}));
}

void collect(const SpecFile& spec, const std::string& name, std::set<const SpecDecl*>& seen) {
  const SpecDecl* d = spec.find(name);
  if (!d || !seen.insert(d).second) return;
  for (const auto& a : d->args) collect(spec, a, seen);
}

}  // namespace

std::string print_decl(const SpecDecl& d) {
  std::string out = d.kind + " " + d.name;
  if (d.kind == "set") return out + " " + d.args.at(0) + "\n";
  if (kLineKinds.count(d.kind)) {
    out += " =";
    for (const auto& a : d.args) out += " " + a;
    return out + "\n";
  }
  for (const auto& a : d.args) out += " " + a;
  out += "\n";
  for (const auto& it : d.items) {
    out += "  " + it.keyword;
    for (const auto& a : it.args) out += " " + a;
    if (it.has_rhs) out += " = " + print_rhs(it.rhs);
    out += "\n";
  }
  return out + "end\n";
}

std::string print_spec(const SpecFile& spec) {
  std::string out;
  for (std::size_t k = 0; k < spec.decls.size(); ++k) {
    const SpecDecl& d = spec.decls[k];
    const bool block = !d.items.empty() || kBlockKinds.count(d.kind);
    if (k > 0 && (block || spec.decls[k - 1].kind != d.kind)) out += "\n";
    out += print_decl(d);
  }
  return out;
}

std::string dependency_text(const SpecFile& spec, const std::string& name) {
  std::set<const SpecDecl*> seen;
  collect(spec, name, seen);
  if (seen.empty()) throw Error(ErrorKind::UnresolvedName, "undeclared name '" + name + "'");
  std::string out;
  for (const auto& d : spec.decls)
    if (seen.count(&d)) out += print_decl(d);
  return out;
}

SpecDecl line_decl(const std::string& kind, const std::string& name, std::vector<std::string> args) {
  SpecDecl d;
  d.kind = kind;
  d.name = name;
  d.args = std::move(args);
  return d;
}

SpecDecl hopf_decl(const std::string& name, const HopfData& h) {
  SpecDecl d = line_decl("hopf", name, {});
  const BasedSpace& sp = h.space();
  algebra_items(d.items, h.alg);
  tensor_items(d.items, "comul", h.coalg.comul);
  for (const auto& [i, c] : h.coalg.counit.entries()) d.items.push_back(scalar_item("counit", {sp.labels[i]}, c));
  map_items(d.items, "antipode", h.antipode, sp);
  map_items(d.items, "antipode_inv", h.antipode_inv, sp);
  return d;
}

SpecDecl algebra_decl(const std::string& name, const AlgebraData& a) {
  SpecDecl d = line_decl("algebra", name, {});
  algebra_items(d.items, a);
  return d;
}

SpecDecl module_algebra_decl(const std::string& name, const std::string& hopf, const std::string& alg,
                             const ModuleAlgebra& ma) {
  SpecDecl d = line_decl("module_algebra", name, {hopf, alg});
  tensor_items(d.items, "act", ma.action);
  return d;
}

SpecDecl comodule_algebra_decl(const std::string& name, const std::string& hopf, const std::string& alg,
                               const ComoduleAlgebra& ba) {
  SpecDecl d = line_decl("comodule_algebra", name, {hopf, alg});
  tensor_items(d.items, "coact", ba.coaction);
  return d;
}

SpecDecl pair_decl(const std::string& name, const std::string& hopf, const ModularPair& mp) {
  SpecDecl d = line_decl("pair", name, {hopf});
  const BasedSpace& sp = mp.hopf.space();
  for (const auto& [i, c] : mp.delta.entries()) d.items.push_back(scalar_item("delta", {sp.labels[i]}, c));
  d.items.push_back(make_item("sigma", {}, mp.sigma, {sp}));
  return d;
}

SpecDecl subhopf_decl(const std::string& name, const std::string& hopf, const SubHopf& k) {
  SpecDecl d = line_decl("subhopf", name, {hopf});
  const BasedSpace& sp = k.hopf.space();
  for (std::size_t i = 0; i < k.inclusion.size(); ++i) {
    const SparseVec& v = k.inclusion[i];
    const bool basis = v.nnz() == 1 && v.entries()[0].second == 1;
    d.items.push_back(make_item("include", {basis ? sp.labels[v.lead()] : "k" + std::to_string(i)}, v, {sp}));
  }
  return d;
}

SpecDecl trace_decl(const std::string& name, const std::string& pair, const std::string& ma, const SparseVec& values,
                    const AlgebraData& a) {
  SpecDecl d = line_decl("trace", name, {pair, ma});
  for (const auto& [i, c] : values.entries()) d.items.push_back(scalar_item("value", {a.space.labels[i]}, c));
  return d;
}

}  // namespace hc
