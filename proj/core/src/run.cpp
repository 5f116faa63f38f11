#include "hopfcyc/run.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "hopfcyc/errors.hpp"
#include "hopfcyc/fixtures.hpp"

namespace hc {

namespace {

namespace fs = std::filesystem;

struct Section {
  std::string title;
  std::string body;
  int status = 0;
};

bool input_error(ErrorKind k) {
  return k == ErrorKind::ParseError || k == ErrorKind::UnresolvedName || k == ErrorKind::DimensionMismatch ||
         k == ErrorKind::InvalidArgument || k == ErrorKind::DegreeCapExceeded;
}

// Runs fn, turning module errors into a failed section with the error text.
Section guarded(std::string title, const std::function<void(Section&)>& fn) {
  Section s;
  s.title = std::move(title);
  try {
    fn(s);
  } catch (const Error& e) {
    s.body += std::string("error: ") + e.what() + "\n";
    s.status = std::max(s.status, input_error(e.kind()) ? 2 : 1);
  }
  return s;
}

// Independent sections run on a small pool; results keep their input order.
std::vector<Section> run_all(const std::vector<std::function<Section()>>& tasks, int jobs) {
  std::vector<Section> out(tasks.size());
  unsigned n = jobs > 0 ? static_cast<unsigned>(jobs) : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, static_cast<unsigned>(tasks.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < tasks.size();) out[i] = tasks[i]();
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

std::string join_args(const std::vector<std::string>& args) {
  std::string s;
  for (const auto& a : args) s += (s.empty() ? "" : " ") + a;
  return s;
}

std::string dims_line(const CocyclicComplex& c, int upto) {
  std::string s = "dims";
  for (int n = 0; n <= upto; ++n) s += " " + std::to_string(c.dim(n));
  return s + "\n";
}

// Content-addressed store of complex dumps.
class Cache {
 public:
  Cache(std::string dir, bool fresh) : dir_(std::move(dir)), fresh_(fresh) {}

  CocyclicComplex get(const std::string& key_text, const std::function<CocyclicComplex()>& build) {
    const std::string key = hex64(fnv1a64(key_text));
    if (dir_.empty()) return build();
    const fs::path file = fs::path(dir_) / (key + ".cplx");
    CocyclicComplex cached;
    const bool have = read(file, key, cached);
    if (have && !fresh_) return cached;
    CocyclicComplex c = build();
    if (fresh_ && have) {
      std::lock_guard<std::mutex> lock(mu_);
      checks_.emplace_back(key, same_complex(c, cached));
    }
    if (!have) write(file, dump_complex(c, key));
    return c;
  }

  // (key, identical) for every cached entry compared under fresh rebuilds.
  std::vector<std::pair<std::string, bool>> checks() const {
    auto v = checks_;
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }

 private:
  std::string dir_;
  bool fresh_;
  std::mutex mu_;
  std::vector<std::pair<std::string, bool>> checks_;

  static bool read(const fs::path& file, const std::string& key, CocyclicComplex& out) {
    std::ifstream in(file, std::ios::binary);
    if (!in) return false;
    std::stringstream ss;
    ss << in.rdbuf();
    return load_complex(ss.str(), key, out);
  }

  static void write(const fs::path& file, const std::string& text) {
    std::error_code ec;
    fs::create_directories(file.parent_path(), ec);
    // Write then rename so a concurrent reader never sees a partial dump.
    const fs::path tmp = file.string() + ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
    {
      std::ofstream out(tmp, std::ios::binary);
      if (!out) return;
      out << text;
    }
    fs::rename(tmp, file, ec);
    if (ec) fs::remove(tmp, ec);
  }
};

class Runner {
 public:
  Runner(const SpecFile& spec, const RunOptions& opt)
      : spec_(spec), opt_(opt), n_(opt.max_degree >= 0 ? opt.max_degree : spec.max_degree),
        cache_(opt.cache_dir, opt.no_cache) {}

  int degree() const { return n_; }
  Cache& cache() { return cache_; }

  const ModularPair& pair(const std::string& n) const { return spec_.pair.at(n); }

  CocyclicComplex complex(const SpecDecl& d) {
    const std::string key = dependency_text(spec_, d.name) + "N " + std::to_string(n_) + "\nversion " + kToolVersion;
    return cache_.get(key, [&] { return build(d); });
  }

  const AlgebraData& algebra(const std::string& n) const {
    auto it = spec_.algebra.find(n);
    return it != spec_.algebra.end() ? it->second : spec_.hopf.at(n).alg;
  }

  std::vector<Section> validate();
  std::vector<std::function<Section()>> identities();
  std::vector<std::function<Section()>> cohomology();
  std::vector<std::function<Section()>> contexts(int degree);
  std::vector<std::function<Section()>> char_maps(int degree);
  std::vector<std::function<Section()>> cups();

 private:
  const SpecFile& spec_;
  const RunOptions& opt_;
  int n_;
  Cache cache_;

  CocyclicComplex build(const SpecDecl& d) {
    const auto& a = d.args;
    const std::string& op = a[0];
    if (op == "hopf") return build_hopf_complex(pair(a[1]), n_).coalgebra;
    if (op == "ans") return build_ans_complex(pair(a[1]), n_);
    if (op == "algebra") return build_algebra_complex(spec_.module_algebra.at(a[1]), spec_.sayd.at(a[2]), n_);
    if (op == "coalgebra") return build_coalgebra_complex(spec_.module_coalgebra.at(a[1]), spec_.sayd.at(a[2]), n_);
    if (op == "comodule")
      return build_comodule_algebra_complex(spec_.comodule_algebra.at(a[1]), spec_.sayd.at(a[2]), n_);
    if (op == "plain") return build_plain_complex(algebra(a[1]), n_);
    if (op == "constant") return constant_complex(n_);
    const CocyclicComplex c1 = complex(*spec_.find(a[1]));
    const CocyclicComplex c2 = complex(*spec_.find(a[2]));
    if (op == "diagonal") return diagonal(tensor_bicocyclic(c1, c2));
    return product_complex(c1, c2);
  }
};

std::vector<Section> Runner::validate() {
  std::vector<Section> out;
  for (const auto& d : spec_.decls) {
    const std::string& n = d.name;
    ValidationReport r;
    std::string extra;
    const std::string& k = d.kind;
    if (k == "hopf") r = validate_hopf(spec_.hopf.at(n));
    else if (k == "algebra") r = validate_algebra(spec_.algebra.at(n));
    else if (k == "coalgebra") r = validate_coalgebra(spec_.coalgebra.at(n));
    else if (k == "module_algebra") r = validate_module_algebra(spec_.module_algebra.at(n));
    else if (k == "module_coalgebra") r = validate_module_coalgebra(spec_.module_coalgebra.at(n));
    else if (k == "comodule_algebra") r = validate_comodule_algebra(spec_.comodule_algebra.at(n));
    else if (k == "sayd") r = validate_sayd(spec_.sayd.at(n));
    else if (k == "subhopf") r = validate_subhopf(spec_.subhopf.at(n));
    else if (k == "coalgebra_action") r = validate_coalgebra_action(spec_.coalgebra_action.at(n));
    else if (k == "trace") {
      const TraceSpec& t = spec_.trace.at(n);
      r = validate_trace(pair(t.pair), spec_.module_algebra.at(t.module_algebra), t.values);
    } else if (k == "pair") {
      const ModularPair& mp = pair(n);
      r = validate_modular_pair_structure(mp);
      ValidationReport inv = validate_sayd(mpi_coefficients(mp));
      extra = std::string("in involution: ") + (inv.ok() ? "yes" : "no") + "\n" +
              "literal S~ = Ad sigma: " + (literal_involution_holds(mp) ? "yes" : "no") + "\n" +
              "squared S~^2 = Ad sigma: " + (squared_involution_holds(mp) ? "yes" : "no") + "\n";
      r.merge(inv, "involution: ");
    } else if (k == "let") {
      if (spec_.sayd.count(n)) r = validate_sayd(spec_.sayd.at(n));
      else if (spec_.pair.count(n)) r = validate_modular_pair_structure(pair(n));
      else if (spec_.module_coalgebra.count(n)) r = validate_module_coalgebra(spec_.module_coalgebra.at(n));
      else if (spec_.coalgebra_action.count(n)) r = validate_coalgebra_action(spec_.coalgebra_action.at(n));
      else if (spec_.comodule_algebra.count(n)) r = validate_comodule_algebra(spec_.comodule_algebra.at(n));
      else if (spec_.module_algebra.count(n)) r = validate_module_algebra(spec_.module_algebra.at(n));
      else if (spec_.algebra.count(n)) r = validate_algebra(spec_.algebra.at(n));
    } else {
      continue;
    }
    Section s;
    s.title = "validate " + k + " " + n;
    s.body = extra + r.to_text();
    s.status = r.ok() ? 0 : 1;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::function<Section()>> Runner::identities() {
  std::vector<std::function<Section()>> tasks;
  for (const SpecDecl* d : spec_.of_kind("complex")) {
    tasks.push_back([this, d] {
      return guarded("identities complex " + d->name + " = " + join_args(d->args), [&](Section& s) {
        CocyclicComplex c = complex(*d);
        s.body += dims_line(c, c.top());
        ValidationReport r = check_cocyclic(c);
        s.body += "cocyclic identities (ds sd ci cj ce): " + r.to_text();
        if (!r.ok()) s.status = 1;
        BBData bb = connes_B(c);
        s.body += "b b = 0, B B = 0, b B + B b = 0: certified (" + bb.placement + ")\n";
        if (d->args[0] == "hopf") {
          HopfComplexResult h = build_hopf_complex(pair(d->args[1]), n_);
          s.body += "conjugation to the H^(x)n complex: certified\n";
          if (!same_complex(h.coalgebra, c)) {
            s.body += "cached complex differs from a fresh build\n";
            s.status = 1;
          }
        }
      });
    });
  }
  return tasks;
}

std::vector<std::function<Section()>> Runner::cohomology() {
  std::vector<std::function<Section()>> tasks;
  for (const SpecDecl* d : spec_.of_kind("complex")) {
    tasks.push_back([this, d] {
      return guarded("cohomology complex " + d->name + " = " + join_args(d->args), [&](Section& s) {
        CocyclicComplex c = complex(*d);
        CohomologyReport r = compute_cohomology(c);
        s.body += dims_line(c, c.maxdeg);
        std::string t = r.to_text();
        s.body += t.substr(t.find('\n') + 1);
      });
    });
  }
  return tasks;
}


SparseVec coboundary(const CocyclicComplex& c, int n, const SparseVec& v) {
  SparseVec out;
  for (std::size_t i = 0; i < c.faces[static_cast<std::size_t>(n)].size(); ++i)
    out.add_scaled(c.face(n, static_cast<int>(i)).apply(v), Scalar(i % 2 == 0 ? 1 : -1));
  return out;
}

bool is_cyclic_vec(const CocyclicComplex& c, int n, const SparseVec& v) { return cyclic_lambda(c, n).apply(v) == v; }

const char* yes(bool b) { return b ? "yes" : "no"; }

// Index pairs into two cocycle bases, all of them or a seeded sample.
std::vector<std::pair<std::size_t, std::size_t>> cocycle_pairs(std::size_t na, std::size_t nb, unsigned seed,
                                                               std::string& note) {
  constexpr std::size_t kCap = 32;
  std::vector<std::pair<std::size_t, std::size_t>> all;
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) all.emplace_back(i, j);
  note = "pairs " + std::to_string(all.size());
  if (all.size() <= kCap) return all;
  std::vector<std::pair<std::size_t, std::size_t>> pick;
  std::mt19937 rng(seed);
  std::sample(all.begin(), all.end(), std::back_inserter(pick), kCap, rng);
  note += " (sampled " + std::to_string(kCap) + ", seed " + std::to_string(seed) + ")";
  return pick;
}

std::string describe_cup(const CupResult& r, const CocyclicComplex& target, int n) {
  std::string s = "  b-closed " + std::string(yes(r.b_closed)) + ", inputs cyclic " + yes(r.inputs_cyclic) +
                  ", cyclic " + yes(r.cyclic) + ", Hochschild class " +
                  (is_hochschild_coboundary(target, n, r.value.coeffs) ? "zero" : "nonzero") + "\n";
  return s + "  value " + format_vector(r.value.coeffs, target.spaces[static_cast<std::size_t>(n)]) + "\n";
}

CupResult plain_result(const CocyclicComplex& target, int n, const Cochain& v, bool inputs_cyclic) {
  CupResult r;
  r.value = v;
  r.b_closed = coboundary(target, n, v.coeffs).empty();
  r.inputs_cyclic = inputs_cyclic;
  r.cyclic = is_cyclic_vec(target, n, v.coeffs);
  return r;
}

std::vector<std::function<Section()>> Runner::contexts(int degree) {
  std::vector<std::function<Section()>> tasks;
  for (const SpecDecl* d : spec_.of_kind("context")) {
    tasks.push_back([this, d, degree] {
      return guarded("chain maps context " + d->name + " = " + join_args(d->args) + " at degree " +
                         std::to_string(degree),
                     [&](Section& s) {
                       const auto& a = d->args;
                       if (a[0] == "coalgebra") {
                         CoalgebraContext ctx =
                             make_coalgebra_context(spec_.coalgebra_action.at(a[1]), spec_.sayd.at(a[2]), degree);
                         s.body += "Psi_c: " + psi_c(ctx).certificate + "\n";
                         s.body += "Psi: " + psi(ctx).certificate + "\n";
                       } else if (a[0] == "crossed") {
                         CrossedContext ctx = make_crossed_context(spec_.module_algebra.at(a[1]),
                                                                   spec_.comodule_algebra.at(a[2]), spec_.sayd.at(a[3]),
                                                                   degree);
                         s.body += "Psi_cross: " + psi_cross(ctx).certificate + "\n";
                       } else {
                         RelativeContext ctx = make_relative_context(spec_.module_algebra.at(a[1]),
                                                                     spec_.subhopf.at(a[2]), spec_.sayd.at(a[3]), degree);
                         s.body += "Psi_r: " + psi_r(ctx).certificate + "\n";
                       }
                     });
    });
  }
  return tasks;
}

std::vector<std::function<Section()>> Runner::char_maps(int degree) {
  std::vector<std::function<Section()>> tasks;
  for (const SpecDecl* d : spec_.of_kind("trace")) {
    tasks.push_back([this, d, degree] {
      return guarded("characteristic map trace " + d->name + " at degree " + std::to_string(degree),
                     [&](Section& s) {
                       const TraceSpec& t = spec_.trace.at(d->name);
                       ChainMap m = char_map(pair(t.pair), spec_.module_algebra.at(t.module_algebra), t.values, degree);
                       s.body += m.certificate + "\n";
                     });
    });
  }
  return tasks;
}

std::vector<std::function<Section()>> Runner::cups() {
  std::vector<std::function<Section()>> tasks;
  const std::string kind = opt_.cup_kind;
  const int p = opt_.p, q = opt_.q, n = p + q;
  const int deg = std::max(n, 1);
  for (const SpecDecl* d : spec_.of_kind("context")) {
    const std::string& op = d->args[0];
    const bool wanted = op == kind || (kind == "traces" && (op == "crossed" || op == "coalgebra"));
    if (!wanted) continue;
    tasks.push_back([=, this] {
      std::string title = "cup " + kind + " p=" + std::to_string(p) + " q=" + std::to_string(q) + " context " +
                          d->name + " = " + join_args(d->args);
      return guarded(title, [&](Section& s) {
        const auto& a = d->args;
        std::string note;
        auto fail_if = [&](bool bad) {
          if (bad) s.status = 1;
        };
        if (op == "coalgebra") {
          CoalgebraContext ctx = make_coalgebra_context(spec_.coalgebra_action.at(a[1]), spec_.sayd.at(a[2]), deg);
          ChainMap map = psi(ctx);
          if (kind == "traces") {
            // x of degree p on C, phi of degree q on A.
            auto xs = cyclic_cocycles(ctx.coal, p);
            auto phis = cyclic_cocycles(ctx.alg, q);
            auto idx = cocycle_pairs(xs.size(), phis.size(), opt_.seed, note);
            s.body += note + "\n";
            for (auto [i, j] : idx) {
              Cochain v = cotrace_cup(ctx, map, Cochain{p, xs[i]}, Cochain{q, phis[j]});
              CupResult r = plain_result(ctx.plain, n, v, true);
              s.body += "x" + std::to_string(i) + " cup phi" + std::to_string(j) + "\n" + describe_cup(r, ctx.plain, n);
              fail_if(!r.b_closed);
            }
            return;
          }
          auto phis = hochschild_cocycles(ctx.alg, p);
          auto xs = hochschild_cocycles(ctx.coal, q);
          auto idx = cocycle_pairs(phis.size(), xs.size(), opt_.seed, note);
          s.body += note + "\n";
          for (auto [i, j] : idx) {
            Cochain phi{p, phis[i]}, x{q, xs[j]};
            CupResult r = aw_cup(ctx, map, CoalgebraTarget::Algebra, phi, x);
            cup_explicit_coalgebra(ctx, map, phi, x);
            s.body += "phi" + std::to_string(i) + " cup x" + std::to_string(j) + "\n" + describe_cup(r, ctx.plain, n) +
                      "  explicit formula: matches\n";
            fail_if(!r.b_closed);
          }
        } else if (op == "crossed") {
          CrossedContext ctx = make_crossed_context(spec_.module_algebra.at(a[1]), spec_.comodule_algebra.at(a[2]),
                                                    spec_.sayd.at(a[3]), deg);
          if (kind == "traces") {
            auto phis = cyclic_cocycles(ctx.alg, p);
            auto psis = cyclic_cocycles(ctx.comod, q);
            auto idx = cocycle_pairs(phis.size(), psis.size(), opt_.seed, note);
            s.body += note + "\n";
            for (auto [i, j] : idx) {
              Cochain v = shuffle_cup_traces(ctx, Cochain{p, phis[i]}, Cochain{q, psis[j]});
              CupResult r = plain_result(ctx.plain, n, v, true);
              s.body += "phi" + std::to_string(i) + " # psi" + std::to_string(j) + "\n" + describe_cup(r, ctx.plain, n);
              fail_if(!r.b_closed);
            }
            return;
          }
          ChainMap map = psi_cross(ctx);
          auto phis = hochschild_cocycles(ctx.alg, p);
          auto psis = hochschild_cocycles(ctx.comod, q);
          auto idx = cocycle_pairs(phis.size(), psis.size(), opt_.seed, note);
          s.body += note + "\n";
          for (auto [i, j] : idx) {
            Cochain phi{p, phis[i]}, ps{q, psis[j]};
            CupResult r = aw_cup(ctx, map, phi, ps);
            CrossedExplicit e = cup_explicit_crossed(ctx, map, phi, ps);
            s.body += "phi" + std::to_string(i) + " cup psi" + std::to_string(j) + "\n" + describe_cup(r, ctx.plain, n) +
                      "  closed formula: " + (e.match ? "matches" : "differs") + "\n";
            fail_if(!r.b_closed);
          }
        } else {
          RelativeContext ctx = make_relative_context(spec_.module_algebra.at(a[1]), spec_.subhopf.at(a[2]),
                                                      spec_.sayd.at(a[3]), deg);
          ChainMap map = psi_r(ctx);
          auto phis = hochschild_cocycles(ctx.alg, p);
          auto xs = hochschild_cocycles(ctx.coal, q);
          auto idx = cocycle_pairs(phis.size(), xs.size(), opt_.seed, note);
          s.body += note + "\n";
          for (auto [i, j] : idx) {
            CupResult r = aw_cup(ctx, map, Cochain{p, phis[i]}, Cochain{q, xs[j]});
            s.body += "phi" + std::to_string(i) + " cup x" + std::to_string(j) + "\n" + describe_cup(r, ctx.plain, n);
            fail_if(!r.b_closed);
          }
        }
      });
    });
  }
  return tasks;
}


std::string fixture_text(const std::string& header, const std::vector<SpecDecl>& decls) {
  SpecFile f;
  f.decls = decls;
  return header + "\n" + print_spec(f);
}

SpecDecl let(const std::string& name, std::vector<std::string> args) { return line_decl("let", name, std::move(args)); }
SpecDecl cplx(const std::string& name, std::vector<std::string> args) {
  return line_decl("complex", name, std::move(args));
}
SpecDecl ctx(const std::string& name, std::vector<std::string> args) {
  return line_decl("context", name, std::move(args));
}
SpecDecl setting(const std::string& key, int v) { return line_decl("set", key, {std::to_string(v)}); }

SparseVec ones(Index d) {
  std::vector<Scalar> v(d, Scalar(1));
  return SparseVec::from_dense(v);
}

}  // namespace

std::vector<std::pair<std::string, std::string>> fixture_files() {
  std::vector<std::pair<std::string, std::string>> out;

  {
    HopfData q = trivial_hopf();
    out.emplace_back("trivial.hc", fixture_text("# The one-dimensional Hopf algebra Q acting trivially on Q.",
                                                {hopf_decl("Q", q), algebra_decl("A", trivial_algebra()),
                                                 let("P", {"trivial_pair", "Q"}), let("M", {"mpi", "P"}),
                                                 let("TA", {"trivial_module_algebra", "Q", "A"}),
                                                 cplx("HQ", {"hopf", "P"}), cplx("AQ", {"ans", "P"}),
                                                 cplx("CA", {"algebra", "TA", "M"}), cplx("PA", {"plain", "A"}),
                                                 cplx("K", {"constant"})}));
  }
  {
    HopfData z2 = fixtures::cyclic_group(2);
    out.emplace_back(
        "z2.hc",
        fixture_text("# Q[Z/2] with the modular pairs (eps, e) and (eps, g).",
                     {hopf_decl("Z2", z2), pair_decl("P", "Z2", fixtures::cyclic_pair(2, 0)),
                      pair_decl("Pg", "Z2", fixtures::cyclic_pair(2, 1)), let("M", {"mpi", "P"}),
                      let("Mg", {"mpi", "Pg"}), let("R", {"regular_module_coalgebra", "Z2"}),
                      cplx("H", {"hopf", "P"}), cplx("Hg", {"hopf", "Pg"}), cplx("A", {"ans", "P"}),
                      cplx("Ag", {"ans", "Pg"}), cplx("C", {"coalgebra", "R", "Mg"}),
                      cplx("D", {"diagonal", "H", "Hg"}), cplx("X", {"product", "H", "Hg"})}));
  }
  {
    HopfData z3 = fixtures::cyclic_group(3);
    ModuleAlgebra f3 = fixtures::cyclic_functions(3);
    out.emplace_back(
        "z3.hc",
        fixture_text("# Q[Z/3], the trivial pair, and functions on Z/3 with the translation action.",
                     {hopf_decl("Z3", z3), pair_decl("P", "Z3", fixtures::cyclic_pair(3, 0)), let("M", {"mpi", "P"}),
                      algebra_decl("F", f3.alg), module_algebra_decl("T", "Z3", "F", f3),
                      trace_decl("sum", "P", "T", ones(3), f3.alg), let("RA", {"regular_action", "T"}),
                      cplx("H", {"hopf", "P"}), cplx("A", {"ans", "P"}), cplx("CF", {"algebra", "T", "M"}),
                      cplx("PF", {"plain", "F"}), ctx("CT", {"coalgebra", "RA", "M"})}));
  }
  {
    HopfData z4 = fixtures::cyclic_group(4);
    ModuleAlgebra f4 = fixtures::cyclic_functions(4);
    SubHopf k = fixtures::cyclic_subgroup(z4, 4, 2);
    out.emplace_back(
        "z4.hc",
        fixture_text("# Q[Z/4] with the subalgebra K = Q[Z/2] spanned by e and g2, acting on functions on Z/4.",
                     {hopf_decl("Z4", z4), subhopf_decl("K", "Z4", k),
                      pair_decl("P", "Z4", fixtures::cyclic_pair(4, 0)), let("M", {"mpi", "P"}),
                      algebra_decl("F", f4.alg), module_algebra_decl("T", "Z4", "F", f4),
                      trace_decl("sum", "P", "T", ones(4), f4.alg), cplx("H", {"hopf", "P"}),
                      cplx("CF", {"algebra", "T", "M"}), ctx("REL", {"relative", "T", "K", "M"})}));
  }
  {
    HopfData h4 = fixtures::sweedler();
    ModuleAlgebra dn = fixtures::sweedler_dual_numbers();
    std::vector<SpecDecl> base = {hopf_decl("H4", h4), pair_decl("Pd", "H4", fixtures::sweedler_pair(true, false)),
                                  pair_decl("Pg", "H4", fixtures::sweedler_pair(false, true)), let("Md", {"mpi", "Pd"}),
                                  let("Mg", {"mpi", "Pg"}), algebra_decl("D", dn.alg),
                                  module_algebra_decl("DN", "H4", "D", dn)};
    std::vector<SpecDecl> main = base;
    for (SpecDecl d : {trace_decl("tstar", "Pd", "DN", SparseVec::unit(1), dn.alg), let("RA", {"regular_action", "DN"}),
                       let("R", {"regular_module_coalgebra", "H4"}), cplx("Hd", {"hopf", "Pd"}),
                       cplx("Hg", {"hopf", "Pg"}), cplx("Ad", {"ans", "Pd"}), cplx("Ag", {"ans", "Pg"}),
                       cplx("CDd", {"algebra", "DN", "Md"}), cplx("CDg", {"algebra", "DN", "Mg"}),
                       cplx("CR", {"coalgebra", "R", "Md"}), ctx("CTd", {"coalgebra", "RA", "Md"}),
                       ctx("CTg", {"coalgebra", "RA", "Mg"})})
      main.push_back(d);
    out.emplace_back("sweedler.hc",
                     fixture_text("# Sweedler's Hopf algebra H4 with its two modular pairs in involution, acting on "
                                  "the dual numbers Q[t]/(t^2).",
                                  main));
    std::vector<SpecDecl> crossed = {setting("max_degree", 2)};
    for (const auto& d : base) crossed.push_back(d);
    for (SpecDecl d : {let("B", {"regular_comodule_algebra", "H4"}), let("X", {"crossed_product", "DN", "B"}),
                       cplx("CB", {"comodule", "B", "Md"}), cplx("PX", {"plain", "X"}),
                       ctx("CRd", {"crossed", "DN", "B", "Md"}), ctx("CRg", {"crossed", "DN", "B", "Mg"})})
      crossed.push_back(d);
    out.emplace_back("sweedler_crossed.hc",
                     fixture_text("# H4 coacting on itself, crossed with the dual numbers. Kept at degree 2.", crossed));
    out.emplace_back(
        "sweedler_nonmpi.hc",
        fixture_text("# The two H4 pairs that are not in involution; validate reports the failures.",
                     {hopf_decl("H4", h4), pair_decl("P1", "H4", fixtures::sweedler_pair(false, false)),
                      pair_decl("Pdg", "H4", fixtures::sweedler_pair(true, true)), let("M1", {"mpi", "P1"}),
                      let("Mdg", {"mpi", "Pdg"})}));
  }
  {
    HopfData z2 = fixtures::cyclic_group(2);
    ModuleAlgebra sw = fixtures::swap_module_algebra();
    std::vector<SpecDecl> base = {hopf_decl("Z2", z2), pair_decl("P", "Z2", fixtures::cyclic_pair(2, 0)),
                                  pair_decl("Pg", "Z2", fixtures::cyclic_pair(2, 1)), let("M", {"mpi", "P"}),
                                  let("Mg", {"mpi", "Pg"}), algebra_decl("S", sw.alg),
                                  module_algebra_decl("SW", "Z2", "S", sw)};
    std::vector<SpecDecl> swap = base;
    for (SpecDecl d : {trace_decl("tr", "P", "SW", ones(2), sw.alg), let("RA", {"regular_action", "SW"}),
                       let("R", {"regular_module_coalgebra", "Z2"}), cplx("CS", {"algebra", "SW", "M"}),
                       cplx("CSg", {"algebra", "SW", "Mg"}), cplx("CR", {"coalgebra", "R", "M"}),
                       cplx("PS", {"plain", "S"}), cplx("D", {"diagonal", "CS", "CR"}),
                       cplx("X", {"product", "CS", "CR"}), ctx("CT", {"coalgebra", "RA", "M"}),
                       ctx("CTg", {"coalgebra", "RA", "Mg"})})
      swap.push_back(d);
    out.emplace_back("swap.hc",
                     fixture_text("# Q x Q with Z/2 exchanging the two idempotents p and q.", swap));
    std::vector<SpecDecl> graded = base;
    for (SpecDecl d : {comodule_algebra_decl("G", "Z2", "Z2", fixtures::group_graded(2)),
                       let("X", {"crossed_product", "SW", "G"}), cplx("CG", {"comodule", "G", "M"}),
                       cplx("CGg", {"comodule", "G", "Mg"}), cplx("PX", {"plain", "X"}),
                       ctx("CR", {"crossed", "SW", "G", "M"}), ctx("CRg", {"crossed", "SW", "G", "Mg"})})
      graded.push_back(d);
    out.emplace_back("graded.hc",
                     fixture_text("# Q[Z/2] graded by itself, crossed with the swap algebra.", graded));
  }
  return out;
}

CocyclicComplex build_complex(const SpecFile& spec, const std::string& name, int n) {
  const SpecDecl* d = spec.find(name);
  if (!d || d->kind != "complex") throw Error(ErrorKind::UnresolvedName, "no complex named '" + name + "'");
  RunOptions opt;
  opt.max_degree = n;
  opt.cache_dir.clear();
  Runner r(spec, opt);
  return r.complex(*d);
}

RunReport run(const SpecFile& spec, const std::string& input_text, const RunOptions& opt) {
  Runner r(spec, opt);
  std::vector<Section> sections;
  const std::string& cmd = opt.command;
  const int ctx_degree = std::min(r.degree(), 3);
  auto add = [&](std::vector<Section> v) {
    for (auto& s : v) sections.push_back(std::move(s));
  };
  std::ostringstream head;
  head << "hopfcyc-report 1\nversion " << kToolVersion << "\ninput " << hex64(fnv1a64(input_text)) << "\ncommand "
       << cmd << "\nmax_degree " << r.degree() << "\n";

  if (cmd == "validate") {
    add(r.validate());
  } else if (cmd == "identities") {
    add(run_all(r.identities(), opt.jobs));
  } else if (cmd == "cohomology") {
    add(run_all(r.cohomology(), opt.jobs));
  } else if (cmd == "cup") {
    static const std::set<std::string> kinds = {"coalgebra", "crossed", "relative", "traces"};
    head << "kind " << opt.cup_kind << "\np " << opt.p << "\nq " << opt.q << "\nseed " << opt.seed << "\n";
    if (!kinds.count(opt.cup_kind) || opt.p < 0 || opt.q < 0) {
      Section s{"cup", "error: --kind must be coalgebra, crossed, relative or traces; p, q >= 0\n", 2};
      sections.push_back(s);
    } else {
      add(run_all(r.cups(), opt.jobs));
      if (sections.empty()) sections.push_back(Section{"cup", "no context of this kind\n", 0});
    }
  } else if (cmd == "audit") {
    add(r.validate());
    std::vector<std::function<Section()>> tasks = r.identities();
    for (auto& t : r.cohomology()) tasks.push_back(std::move(t));
    for (auto& t : r.contexts(ctx_degree)) tasks.push_back(std::move(t));
    for (auto& t : r.char_maps(ctx_degree)) tasks.push_back(std::move(t));
    add(run_all(tasks, opt.jobs));
  } else if (cmd == "fixtures") {
    Section s{"fixtures", "", 0};
    if (opt.out.empty()) {
      s.body = "error: fixtures needs --out <directory>\n";
      s.status = 2;
    } else {
      std::error_code ec;
      fs::create_directories(opt.out, ec);
      for (const auto& [name, text] : fixture_files()) {
        std::ofstream f(fs::path(opt.out) / name, std::ios::binary);
        f << text;
        if (!f) {
          s.body += "error: cannot write " + name + "\n";
          s.status = 2;
        } else {
          s.body += name + " " + hex64(fnv1a64(text)) + "\n";
        }
      }
    }
    sections.push_back(s);
  } else {
    sections.push_back(Section{"command", "error: unknown command '" + cmd + "'\n", 2});
  }

  if (opt.no_cache && !opt.cache_dir.empty()) {
    Section s{"cache comparison", "", 0};
    for (const auto& [key, same] : r.cache().checks()) {
      s.body += key + " " + (same ? "identical" : "differs") + "\n";
      if (!same) s.status = 1;
    }
    if (s.body.empty()) s.body = "no cached entries to compare\n";
    sections.push_back(s);
  }

  RunReport rep;
  std::ostringstream os;
  os << head.str();
  int failed = 0;
  for (const auto& s : sections) {
    os << "\n== " << s.title << (s.status == 0 ? "" : " [FAILED]") << "\n" << s.body;
    if (s.status != 0) ++failed;
    rep.exit_code = std::max(rep.exit_code, s.status);
  }
  os << "\nsummary " << sections.size() << " section(s), " << failed << " failed\n";
  rep.text = os.str();
  return rep;
}

}  // namespace hc
