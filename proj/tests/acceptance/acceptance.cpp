// One pass/fail line per acceptance criterion, all run from the shipped
// fixture files. Usage: hopfcyc_acceptance <criterion 1..10>
#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "hopfcyc/errors.hpp"
#include "hopfcyc/run.hpp"

#ifndef HOPFCYC_FIXTURE_DIR
#error "HOPFCYC_FIXTURE_DIR must point at the shipped fixtures"
#endif

using namespace hc;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string read_file(const std::string& name) {
  std::ifstream f(std::string(HOPFCYC_FIXTURE_DIR) + "/" + name, std::ios::binary);
  if (!f) throw std::runtime_error("missing fixture " + name);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

SpecFile load(const std::string& name) { return parse_spec(read_file(name)); }

const std::vector<std::string> kFixtures = {"trivial.hc", "z2.hc",    "z3.hc",    "z4.hc",
                                            "sweedler.hc", "sweedler_crossed.hc", "swap.hc", "graded.hc"};

// Solves m c = v exactly; throws if v is not in the column span.
SparseVec solve(const SparseMatrix& m, const SparseVec& v) {
  std::vector<SparseVec> cols;
  for (Index j = 0; j < m.cols(); ++j) cols.push_back(m.col(j));
  cols.push_back(v * Scalar(-1));
  for (const auto& k : kernel_basis(SparseMatrix::from_columns(m.rows(), cols))) {
    const Scalar last = k.at(m.cols());
    if (sgn(last) == 0) continue;
    VecBuilder vb;
    for (const auto& [i, c] : k.entries())
      if (i < m.cols()) vb.add(i, c / last);
    return vb.finish();
  }
  throw std::runtime_error("vector not in the image");
}

// ---- 1 -------------------------------------------------------------------

Outcome criterion1() {
  const std::set<std::string> builders = {"hopf", "ans", "algebra", "coalgebra", "comodule", "diagonal", "product",
                                          "constant"};
  Outcome o;
  int checked = 0;
  std::set<std::string> seen;
  for (const auto& file : kFixtures) {
    SpecFile f = load(file);
    for (const SpecDecl* d : f.of_kind("complex")) {
      if (!builders.count(d->args[0])) continue;
      CocyclicComplex c = build_complex(f, d->name, 5);
      ValidationReport r = check_cocyclic(c);
      ++checked;
      seen.insert(d->args[0]);
      if (!r.ok()) {
        o.pass = false;
        o.detail += " " + file + ":" + d->name + " " + r.violations.front().law;
      }
    }
  }
  std::string b;
  for (const auto& s : seen) b += (b.empty() ? "" : ",") + s;
  if (seen.size() != builders.size()) {
    o.pass = false;
    o.detail += " not every builder is exercised";
  }
  o.detail = std::to_string(checked) + " complexes (" + b + ") at N=5, identities ds sd ci cj ce exact" + o.detail;
  return o;
}

// ---- 2 -------------------------------------------------------------------

Outcome criterion2() {
  Outcome o;
  int checked = 0;
  std::string reduced;
  for (const auto& file : kFixtures) {
    SpecFile f = load(file);
    for (const SpecDecl* d : f.of_kind("complex")) {
      int n = 4;
      // Plain complexes of algebras above dimension 4 grow as dim^(n+2) in
      // the top stored degree; N=4 for the 8-dimensional crossed product is
      // out of the time budget, N=3 takes about a minute.
      if (d->args[0] == "plain" && f.algebra.count(d->args[1]) && f.algebra.at(d->args[1]).dim() > 4) {
        n = 3;
        reduced += " " + file + ":" + d->name + "@N=" + std::to_string(n);
      }
      CocyclicComplex c = build_complex(f, d->name, n);
      try {
        BBData bb = connes_B(c);
        ++checked;
        // connes_B certifies internally; recheck the three identities here.
        const int nb = static_cast<int>(bb.b.size()), nB = static_cast<int>(bb.B.size());
        for (int k = 0; k + 1 < nb; ++k)
          if (!compose(bb.b[k + 1], bb.b[k]).is_zero()) throw Error(ErrorKind::NotAComplex, "b b");
        for (int k = 2; k < nB; ++k)
          if (!compose(bb.B[k - 1], bb.B[k]).is_zero()) throw Error(ErrorKind::NotAComplex, "B B");
        for (int k = 1; k + 1 < nB && k < nb; ++k)
          if (!(compose(bb.b[k - 1], bb.B[k]) + compose(bb.B[k + 1], bb.b[k])).is_zero())
            throw Error(ErrorKind::NotAComplex, "b B + B b");
      } catch (const Error& e) {
        o.pass = false;
        o.detail += std::string(" ") + file + ":" + d->name + " " + e.what();
      }
    }
  }
  o.detail = std::to_string(checked) + " complexes at N=4, b^2 = B^2 = bB+Bb = 0 exact; reduced degree:" +
             (reduced.empty() ? " none" : reduced) + o.detail;
  return o;
}

// ---- 3 -------------------------------------------------------------------

Outcome criterion3() {
  Outcome o;
  for (const auto& [file, pair] : std::vector<std::pair<std::string, std::string>>{{"z2.hc", "P"}, {"z3.hc", "P"}}) {
    SpecFile f = load(file);
    const ModularPair& mp = f.pair.at(pair);
    try {
      HopfComplexResult h = build_hopf_complex(mp, 4);
      // Independent recheck: I F = F' I for every operator.
      CocyclicComplex ans = build_ans_complex(mp, 4);
      for (int n = 0; n <= 4; ++n) {
        for (int i = 0; i <= n + 1; ++i)
          if (!(compose(h.iso[n + 1], h.coalgebra.face(n, i)) == compose(ans.face(n, i), h.iso[n])))
            throw Error(ErrorKind::ConjugationFailure, "face");
        for (int j = 0; n >= 1 && j <= n - 1; ++j)
          if (!(compose(h.iso[n - 1], h.coalgebra.degen(n, j)) == compose(ans.degen(n, j), h.iso[n])))
            throw Error(ErrorKind::ConjugationFailure, "degeneracy");
        if (!(compose(h.iso[n], h.coalgebra.cyclic(n)) == compose(ans.cyclic(n), h.iso[n])))
          throw Error(ErrorKind::ConjugationFailure, "tau");
      }
      o.detail += " " + file + " (eps,1) ok;";
    } catch (const Error& e) {
      o.pass = false;
      o.detail += " " + file + " " + e.what() + ";";
    }
  }
  o.detail = "I conjugates faces, degeneracies and tau exactly through degree 4:" + o.detail;
  return o;
}

// ---- 4 -------------------------------------------------------------------

// Rank over Q by plain Gaussian elimination, kept separate from the library.
Index oracle_rank(std::vector<std::vector<Scalar>> m) {
  Index rank = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && sgn(m[piv][c]) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || sgn(m[r][c]) == 0) continue;
      const Scalar f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

// dim H^k(Z/n, Q) from inhomogeneous cochains with trivial coefficients.
std::vector<Index> group_cohomology(int n, int maxk) {
  auto pw = [](int b, int e) {
    int r = 1;
    while (e-- > 0) r *= b;
    return r;
  };
  std::vector<Index> rank_d(static_cast<std::size_t>(maxk) + 1);
  for (int k = 0; k <= maxk; ++k) {
    // d : C^k -> C^(k+1), rows = (k+1)-tuples, cols = k-tuples.
    const int rows = pw(n, k + 1), cols = pw(n, k);
    std::vector<std::vector<Scalar>> d(static_cast<std::size_t>(rows), std::vector<Scalar>(static_cast<std::size_t>(cols)));
    auto encode = [&](const std::vector<int>& t) {
      int x = 0;
      for (int v : t) x = x * n + v;
      return x;
    };
    for (int r = 0; r < rows; ++r) {
      std::vector<int> g(static_cast<std::size_t>(k + 1));
      for (int i = k, x = r; i >= 0; --i, x /= n) g[static_cast<std::size_t>(i)] = x % n;
      auto add = [&](std::vector<int> t, int sign) { d[static_cast<std::size_t>(r)][static_cast<std::size_t>(encode(t))] += sign; };
      add(std::vector<int>(g.begin() + 1, g.end()), 1);
      for (int i = 0; i < k; ++i) {
        std::vector<int> t;
        for (int j = 0; j <= k; ++j) {
          if (j == i) t.push_back((g[static_cast<std::size_t>(j)] + g[static_cast<std::size_t>(j + 1)]) % n), ++j;
          else t.push_back(g[static_cast<std::size_t>(j)]);
        }
        add(t, (i + 1) % 2 == 0 ? 1 : -1);
      }
      add(std::vector<int>(g.begin(), g.end() - 1), (k + 1) % 2 == 0 ? 1 : -1);
    }
    rank_d[static_cast<std::size_t>(k)] = oracle_rank(d);
  }
  std::vector<Index> h;
  for (int k = 0; k <= maxk; ++k) {
    const Index dimc = static_cast<Index>(pw(n, k));
    const Index in = k == 0 ? 0 : rank_d[static_cast<std::size_t>(k - 1)];
    h.push_back(dimc - rank_d[static_cast<std::size_t>(k)] - in);
  }
  return h;
}

Outcome criterion4() {
  Outcome o;
  for (const auto& [file, n] : std::vector<std::pair<std::string, int>>{{"z2.hc", 2}, {"z3.hc", 3}}) {
    std::vector<Index> h = group_cohomology(n, 3);
    SpecFile f = load(file);
    CohomologyReport r = compute_cohomology(build_complex(f, "H", 5));
    std::string got, want;
    for (int p = 0; p <= 3; ++p) {
      Index expect = 0;
      for (int i = 0; p - 2 * i >= 0; ++i) expect += h[static_cast<std::size_t>(p - 2 * i)];
      if (!r.hc_trusted[static_cast<std::size_t>(p)] || r.hc[static_cast<std::size_t>(p)] != expect) o.pass = false;
      got += (p ? "," : "") + std::to_string(r.hc[static_cast<std::size_t>(p)]);
      want += (p ? "," : "") + std::to_string(expect);
    }
    o.detail += " Z/" + std::to_string(n) + " HC^0..3 = " + got + " (oracle " + want + ");";
  }
  o.detail = "Hopf complex, trivial MPI, N=5:" + o.detail;
  return o;
}

// ---- 5 -------------------------------------------------------------------

struct ContextRef {
  std::string file, name;
};

std::vector<ContextRef> all_contexts() {
  std::vector<ContextRef> out;
  for (const auto& file : kFixtures) {
    SpecFile f = load(file);
    for (const SpecDecl* d : f.of_kind("context")) out.push_back({file, d->name});
  }
  return out;
}

int context_degree(const SpecFile& f) { return std::min(3, f.max_degree); }

Outcome criterion5() {
  Outcome o;
  std::map<std::string, int> counts;
  for (const auto& c : all_contexts()) {
    SpecFile f = load(c.file);
    const auto& a = f.find(c.name)->args;
    const int deg = 3;
    try {
      if (a[0] == "coalgebra") {
        CoalgebraContext ctx = make_coalgebra_context(f.coalgebra_action.at(a[1]), f.sayd.at(a[2]), deg);
        psi_c(ctx);
        psi(ctx);
        counts["Psi_c"]++;
        counts["Psi"]++;
      } else if (a[0] == "crossed") {
        CrossedContext ctx =
            make_crossed_context(f.module_algebra.at(a[1]), f.comodule_algebra.at(a[2]), f.sayd.at(a[3]), deg);
        psi_cross(ctx);
        counts["Psi_cross"]++;
      } else {
        RelativeContext ctx = make_relative_context(f.module_algebra.at(a[1]), f.subhopf.at(a[2]), f.sayd.at(a[3]), deg);
        psi_r(ctx);
        counts["Psi_r"]++;
      }
    } catch (const Error& e) {
      o.pass = false;
      o.detail += " " + c.file + ":" + c.name + " " + e.what();
    }
  }
  std::string summary;
  for (const auto& [k, v] : counts) summary += " " + k + " x" + std::to_string(v);
  if (counts.size() != 4) {
    o.pass = false;
    o.detail += " some chain map has no fixture";
  }
  o.detail = "certified through degree 3 on every context:" + summary + o.detail;
  return o;
}

// ---- 6 and 7 ---------------------------------------------------------------

bool b_closed(const CocyclicComplex& c, int n, const SparseVec& v) {
  SparseVec out;
  for (int i = 0; i <= n + 1; ++i) out.add_scaled(c.face(n, i).apply(v), Scalar(i % 2 == 0 ? 1 : -1));
  return out.empty();
}

bool cyclic(const CocyclicComplex& c, int n, const SparseVec& v) { return cyclic_lambda(c, n).apply(v) == v; }

struct CupTally {
  int outputs = 0, not_closed = 0, cyclic_pairs = 0, not_cyclic = 0, explicit_checked = 0, explicit_failed = 0;
  int not_cyclic_coboundary = 0;
  std::set<std::string> closed_fail, cyclic_fail, explicit_fail;
};

void record(CupTally& t, const std::string& where, const CocyclicComplex& target, int n, const SparseVec& v, bool closed,
            bool inputs_cyclic, bool out_cyclic) {
  ++t.outputs;
  if (!closed) {
    ++t.not_closed;
    t.closed_fail.insert(where);
  }
  if (inputs_cyclic) {
    ++t.cyclic_pairs;
    if (!out_cyclic) {
      ++t.not_cyclic;
      t.cyclic_fail.insert(where);
      if (is_hochschild_coboundary(target, n, v)) ++t.not_cyclic_coboundary;
    }
  }
}

// Runs every cup operation on every context over basis pairs with p + q <= 3.
CupTally run_cups() {
  CupTally t;
  for (const auto& c : all_contexts()) {
    SpecFile f = load(c.file);
    const auto& a = f.find(c.name)->args;
    const int deg = context_degree(f);
    auto tag = [&](const std::string& op, int p, int q) {
      return c.file + ":" + c.name + " " + op + " (p,q)=(" + std::to_string(p) + "," + std::to_string(q) + ")";
    };
    if (a[0] == "coalgebra") {
      CoalgebraContext ctx = make_coalgebra_context(f.coalgebra_action.at(a[1]), f.sayd.at(a[2]), deg);
      ChainMap map = psi(ctx);
      ChainMap mapc = psi_c(ctx);
      for (int p = 0; p <= deg; ++p)
        for (int q = 0; p + q <= deg; ++q) {
          for (const auto& phi : hochschild_cocycles(ctx.alg, p))
            for (const auto& x : hochschild_cocycles(ctx.coal, q)) {
              CupResult r = aw_cup(ctx, map, CoalgebraTarget::Algebra, Cochain{p, phi}, Cochain{q, x});
              record(t, tag("aw/Psi", p, q), ctx.plain, p + q, r.value.coeffs, r.b_closed, r.inputs_cyclic, r.cyclic);
              CupResult rc = aw_cup(ctx, mapc, CoalgebraTarget::Convolution, Cochain{p, phi}, Cochain{q, x});
              record(t, tag("aw/Psi_c", p, q), ctx.conv_plain, p + q, rc.value.coeffs, rc.b_closed, rc.inputs_cyclic, rc.cyclic);
              ++t.explicit_checked;
              try {
                Cochain e = cup_explicit_coalgebra(ctx, map, Cochain{p, phi}, Cochain{q, x});
                if (!(e.coeffs == r.value.coeffs)) throw Error(ErrorKind::MismatchWithAW, "entrywise");
              } catch (const Error&) {
                ++t.explicit_failed;
                t.explicit_fail.insert(tag("explicit", p, q));
              }
            }
          // Cotrace cup: x of degree p on C, phi of degree q on A, cyclic inputs.
          for (const auto& x : cyclic_cocycles(ctx.coal, p))
            for (const auto& phi : cyclic_cocycles(ctx.alg, q)) {
              Cochain v = cotrace_cup(ctx, map, Cochain{p, x}, Cochain{q, phi});
              record(t, tag("cotrace", p, q), ctx.plain, p + q, v.coeffs, b_closed(ctx.plain, p + q, v.coeffs), true,
                     cyclic(ctx.plain, p + q, v.coeffs));
            }
        }
    } else if (a[0] == "crossed") {
      CrossedContext ctx =
          make_crossed_context(f.module_algebra.at(a[1]), f.comodule_algebra.at(a[2]), f.sayd.at(a[3]), deg);
      ChainMap map = psi_cross(ctx);
      for (int p = 0; p <= deg; ++p)
        for (int q = 0; p + q <= deg; ++q) {
          for (const auto& phi : hochschild_cocycles(ctx.alg, p))
            for (const auto& ps : hochschild_cocycles(ctx.comod, q)) {
              CupResult r = aw_cup(ctx, map, Cochain{p, phi}, Cochain{q, ps});
              record(t, tag("aw/Psi_cross", p, q), ctx.plain, p + q, r.value.coeffs, r.b_closed, r.inputs_cyclic, r.cyclic);
            }
          for (const auto& phi : cyclic_cocycles(ctx.alg, p))
            for (const auto& ps : cyclic_cocycles(ctx.comod, q)) {
              Cochain v = shuffle_cup_traces(ctx, Cochain{p, phi}, Cochain{q, ps});
              record(t, tag("shuffle", p, q), ctx.plain, p + q, v.coeffs, b_closed(ctx.plain, p + q, v.coeffs), true,
                     cyclic(ctx.plain, p + q, v.coeffs));
            }
        }
    } else {
      RelativeContext ctx = make_relative_context(f.module_algebra.at(a[1]), f.subhopf.at(a[2]), f.sayd.at(a[3]), deg);
      ChainMap map = psi_r(ctx);
      for (int p = 0; p <= deg; ++p)
        for (int q = 0; p + q <= deg; ++q)
          for (const auto& phi : hochschild_cocycles(ctx.alg, p))
            for (const auto& x : hochschild_cocycles(ctx.coal, q)) {
              CupResult r = aw_cup(ctx, map, Cochain{p, phi}, Cochain{q, x});
              record(t, tag("aw/Psi_r", p, q), ctx.plain, p + q, r.value.coeffs, r.b_closed, r.inputs_cyclic, r.cyclic);
            }
    }
  }
  return t;
}

std::string first_of(const std::set<std::string>& s) { return s.empty() ? "" : *s.begin(); }

Outcome criterion6() {
  CupTally t = run_cups();
  Outcome o;
  o.pass = t.not_closed == 0 && t.not_cyclic == 0;
  o.detail = std::to_string(t.outputs) + " cup outputs, " + std::to_string(t.not_closed) + " not b-closed; " +
             std::to_string(t.cyclic_pairs) + " with cyclic inputs, " + std::to_string(t.not_cyclic) +
             " not cyclic";
  if (!t.closed_fail.empty()) o.detail += "; first non-closed: " + first_of(t.closed_fail);
  if (!t.cyclic_fail.empty()) {
    std::string kinds;
    std::set<std::string> ops;
    for (const auto& w : t.cyclic_fail) ops.insert(w.substr(w.find(' ') + 1, w.find(" (") - w.find(' ') - 1));
    for (const auto& k : ops) kinds += (kinds.empty() ? "" : ",") + k;
    o.detail += "; non-cyclic outputs only from " + kinds + ", e.g. " + first_of(t.cyclic_fail) + "; " +
                std::to_string(t.not_cyclic_coboundary) + " of them are Hochschild coboundaries";
  }
  return o;
}

Outcome criterion7() {
  CupTally t = run_cups();
  Outcome o;
  o.pass = t.explicit_failed == 0 && t.explicit_checked > 0;
  o.detail = std::to_string(t.explicit_checked) + " cocycle pairs on coalgebra contexts, p+q <= 3, " +
             std::to_string(t.explicit_failed) + " entrywise mismatches";
  if (!t.explicit_fail.empty()) o.detail += "; first: " + first_of(t.explicit_fail);
  return o;
}

// ---- 8 -------------------------------------------------------------------

Outcome criterion8() {
  Outcome o;
  int compared = 0;
  for (const auto& c : all_contexts()) {
    SpecFile f = load(c.file);
    for (const SpecDecl* td : f.of_kind("trace")) {
      const TraceSpec& tr = f.trace.at(td->name);
      const ModularPair& mp = f.pair.at(tr.pair);
      const ModuleAlgebra& ma = f.module_algebra.at(tr.module_algebra);
      const auto& a = f.find(c.name)->args;
      if (a[0] != "coalgebra") continue;
      const CoalgebraAction& ca = f.coalgebra_action.at(a[1]);
      const SAYDModule& m = f.sayd.at(a[2]);
      // The context must be the regular action on the trace's algebra with
      // the trace's modular pair as coefficients.
      if (!(ca.ma.action == ma.action) || ca.mc.coalg.dim() != mp.hopf.dim() ||
          !(m.raction == mpi_coefficients(mp).raction) || !(m.lcoaction == mpi_coefficients(mp).lcoaction))
        continue;
      const int deg = context_degree(f);
      CoalgebraContext ctx = make_coalgebra_context(ca, m, deg);
      ChainMap map = psi(ctx);
      ChainMap chi = char_map(mp, ma, tr.values, deg);
      HopfComplexResult hr = build_hopf_complex(mp, deg);
      const SparseVec phi0 = ctx.alg.embed.empty() ? tr.values : solve(ctx.alg.embed[0], tr.values);
      int here = 0;
      for (int p = 0; p <= deg; ++p)
        for (const auto& h : hochschild_cocycles(hr.ans, p)) {
          const SparseVec x = solve(hr.iso[static_cast<std::size_t>(p)], h);
          CupResult r = aw_cup(ctx, map, CoalgebraTarget::Algebra, Cochain{0, phi0}, Cochain{p, x});
          ++compared;
          ++here;
          if (!(r.value.coeffs == chi.maps[static_cast<std::size_t>(p)].apply(h))) {
            o.pass = false;
            o.detail += " mismatch " + c.file + ":" + c.name + " p=" + std::to_string(p);
          }
        }
      o.detail = " " + c.file + ":" + td->name + " (" + std::to_string(here) + ")" + o.detail;
    }
  }
  if (compared == 0) o.pass = false;
  o.detail = "q=0 cup vs chi entrywise on " + std::to_string(compared) + " Hopf cocycles, p <= 3:" + o.detail;
  return o;
}

// ---- 9 -------------------------------------------------------------------

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Outcome criterion9() {
  Outcome o;
  int sets = 0;
  for (int n = 0; n <= 6; ++n)
    for (int q = 0; q <= n; ++q) {
      const int p = n - q;
      auto sh = shuffle_set(q, p);
      ++sets;
      if (static_cast<long>(sh.size()) != binomial(n, q)) {
        o.pass = false;
        o.detail += " |Sh(" + std::to_string(q) + "," + std::to_string(p) + ")| wrong";
      }
      for (const auto& s : sh) {
        int inv = 0;
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j) inv += s.image[static_cast<std::size_t>(i)] > s.image[static_cast<std::size_t>(j)];
        const bool mono = std::is_sorted(s.image.begin(), s.image.begin() + q) && std::is_sorted(s.image.begin() + q, s.image.end());
        if (!mono || s.sign != (inv % 2 == 0 ? 1 : -1)) {
          o.pass = false;
          o.detail += " bad shuffle in Sh(" + std::to_string(q) + "," + std::to_string(p) + ")";
        }
      }
    }
  std::string expansion;
  for (int n = 0; n <= 3; ++n)
    for (int q = 0; q <= n; ++q) {
      OracleResult r = dg_expand_oracle(n - q, q);
      if (!r.sorted_match) {
        o.pass = false;
        expansion += " (" + std::to_string(n - q) + "," + std::to_string(q) + ") " + r.first_difference;
      }
    }
  o.detail = std::to_string(sets) + " shuffle sets with |Sh(q,p)| = C(p+q,q) and parity signs; shuffle sum equals the formal expansion for all p+q <= 3 "
             "as formal words (bidegree-sorted)" + (expansion.empty() ? "" : ": failed" + expansion) + o.detail;
  return o;
}

// ---- 10 ------------------------------------------------------------------

// Reverses the label order of every basis line.
std::string permute_bases(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    const auto pos = line.find("basis ");
    if (pos != std::string::npos && line.find('=') == std::string::npos) {
      std::istringstream ws(line.substr(pos + 6));
      std::vector<std::string> labels;
      for (std::string w; ws >> w;) labels.push_back(w);
      std::reverse(labels.begin(), labels.end());
      line = line.substr(0, pos + 6);
      for (std::size_t i = 0; i < labels.size(); ++i) line += (i ? " " : "") + labels[i];
    }
    out += line + "\n";
  }
  return out;
}

std::string tables(const std::string& report) {
  std::istringstream in(report);
  std::string line, out;
  while (std::getline(in, line))
    if (line.rfind("== ", 0) == 0 || line.rfind("dims", 0) == 0 || line.rfind("HH ", 0) == 0 ||
        line.rfind("HC ", 0) == 0 || line.rfind("HP ", 0) == 0)
      out += line + "\n";
  return out;
}

Outcome criterion10() {
  Outcome o;
  RunOptions opt;
  opt.cache_dir.clear();
  opt.command = "audit";
  for (const std::string file : {"z2.hc", "swap.hc", "z4.hc"}) {
    const std::string text = read_file(file);
    SpecFile f = parse_spec(text);
    RunReport a = run(f, text, opt), b = run(f, text, opt);
    if (a.text != b.text || a.exit_code != b.exit_code) {
      o.pass = false;
      o.detail += " " + file + " audit differs between runs;";
    }
  }
  RunOptions coh;
  coh.cache_dir.clear();
  coh.command = "cohomology";
  int permuted = 0;
  for (const std::string file : {"z3.hc", "swap.hc", "sweedler.hc"}) {
    const std::string text = read_file(file);
    const std::string perm = permute_bases(text);
    if (perm == text) continue;
    ++permuted;
    RunReport a = run(parse_spec(text), text, coh), b = run(parse_spec(perm), perm, coh);
    if (tables(a.text) != tables(b.text) || tables(a.text).empty()) {
      o.pass = false;
      o.detail += " " + file + " tables change under basis permutation;";
    }
  }
  o.detail = "audit byte-identical on z2, swap, z4; dimension tables invariant under reversed bases on " +
             std::to_string(permuted) + " files" + (o.detail.empty() ? "" : ":" + o.detail);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: " << argv[0] << " <criterion 1..10>\n";
    return 2;
  }
  const int k = std::atoi(argv[1]);
  const std::vector<std::function<Outcome()>> crit = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                      criterion6, criterion7, criterion8, criterion9, criterion10};
  if (k < 1 || k > 10) {
    std::cerr << "criterion must be 1..10\n";
    return 2;
  }
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = crit[static_cast<std::size_t>(k - 1)]();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << "criterion " << k << ": " << (o.pass ? "PASS" : "FAIL") << " [tolerance 0, exact rationals; "
            << static_cast<int>(secs + 0.5) << " s] " << o.detail << "\n";
  return o.pass ? 0 : 1;
}
