#include "hopfcyc/cupprod.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "hopfcyc/errors.hpp"

namespace hc {

namespace {

std::size_t sz(int n) { return static_cast<std::size_t>(n); }

SparseVec kron_all(const std::vector<SparseVec>& vs, const std::vector<Index>& dims) {
  std::vector<SparseVec::Entry> acc{{0, Scalar(1)}};
  for (std::size_t k = 0; k < vs.size(); ++k) {
    std::vector<SparseVec::Entry> next;
    for (const auto& [i, x] : acc)
      for (const auto& [j, y] : vs[k].entries()) next.emplace_back(i * dims[k] + j, x * y);
    acc = std::move(next);
  }
  return SparseVec::from_pairs(std::move(acc));
}

SparseVec kron2(const SparseVec& a, const SparseVec& b, Index db) { return kron_all({a, b}, {0, db}); }

std::vector<Index> repeat_dims(Index first, Index d, int k) {
  std::vector<Index> v{first};
  for (int i = 0; i < k; ++i) v.push_back(d);
  return v;
}

SparseMatrix hochschild_at(const CocyclicComplex& c, int n) {
  SparseMatrix b = SparseMatrix::zero(c.dim(n + 1), c.dim(n));
  for (int i = 0; i <= n + 1; ++i) b = b + c.face(n, i) * Scalar(i % 2 == 0 ? 1 : -1);
  return b;
}

bool is_b_closed(const CocyclicComplex& c, const Cochain& x) {
  return hochschild_at(c, x.degree).apply(x.coeffs).empty();
}

bool is_cyclic(const CocyclicComplex& c, const Cochain& x) {
  return cyclic_lambda(c, x.degree).apply(x.coeffs) == x.coeffs;
}

void require_degree(const CocyclicComplex& c, const Cochain& x, const char* what) {
  if (x.degree < 0 || x.degree > c.top() || (!x.coeffs.empty() && x.coeffs.max_index() >= c.dim(x.degree)))
    throw Error(ErrorKind::ShapeMismatch, std::string(what) + " does not live in the complex");
}

void require_ok(const ValidationReport& r, const std::string& what) {
  if (!r.ok()) throw Error(ErrorKind::InvalidArgument, what + ":\n" + r.to_text());
}

// The matrix of phi (x) y |-> (t |-> phi(m (x) v(c^0, t^0) .. v(c^n, t^n)))
// where (m, c^0..c^n) runs over the representatives of the second complex.
// Rows are target tuples t over dt basis elements.
SparseMatrix pairing_matrix(const CocyclicComplex& alg, Index dm, Index da, const CocyclicComplex& coal, Index dc,
                            Index dt, int n, const std::function<const SparseVec&(Index, Index)>& v) {
  const Index d2 = coal.dim(n);
  MultiIndex targets = MultiIndex::power(dt, n + 1);
  MultiIndex reps(repeat_dims(dm, dc, n + 1));
  const auto adims = repeat_dims(dm, da, n + 1);
  std::vector<SparseVec> rows;
  rows.reserve(targets.size());
  for (Index t = 0; t < targets.size(); ++t) {
    auto tt = targets.decode(t);
    VecBuilder row;
    for (Index l = 0; l < d2; ++l)
      for (const auto& [j, coef] : coal.embed[sz(n)].col(l).entries()) {
        auto r = reps.decode(j);
        std::vector<SparseVec> parts{SparseVec::unit(r[0])};
        for (int k = 0; k <= n; ++k) parts.push_back(v(r[sz(k) + 1], tt[sz(k)]));
        SparseVec kv = kron_all(parts, adims);
        for (const auto& [i, x] : kv.entries()) row.add(i * d2 + l, coef * x);
      }
    rows.push_back(row.finish());
  }
  SparseMatrix p = SparseMatrix::from_rows(alg.embed[sz(n)].rows() * d2, rows);
  return compose(p, tensor_kron(alg.embed[sz(n)], SparseMatrix::identity(d2)));
}

// Cochains of a plain complex are read in its own coordinates.
SparseMatrix to_plain(const CocyclicComplex& plain, int n, const SparseMatrix& ambient) {
  return compose(plain.project[sz(n)], ambient);
}


// Which coaction legs of which b^j act on each A slot. legs[j] is the number
// of legs taken from b^j (index 0 is the outermost); slot[i] lists (j, leg)
// in the order the legs are multiplied in H.
struct LegPlan {
  std::string name;
  std::vector<int> legs;
  std::vector<std::vector<std::pair<int, int>>> slot;
  bool inverse = false;  // apply S^-1 to each slot product
};

// The matrix of phi (x) psi |-> (a^0#b^0 .. a^n#b^n |->
//   phi(psi(b^0(0) .. b^n(0)) (x) h_0 a^0 (x) .. (x) h_n a^n)) with h_i the
// slot products of the plan.
SparseMatrix crossed_matrix(const CrossedContext& ctx, int n, const LegPlan& plan) {
  const ModuleAlgebra& ma = ctx.ma;
  const HopfData& h = ma.hopf;
  const Index dm = ctx.m.dim(), da = ma.alg.dim(), db = ctx.ba.alg.dim();
  MultiIndex targets = MultiIndex::power(da * db, n + 1);
  MultiIndex bt = MultiIndex::power(db, n + 1);
  const Index ambB = bt.size() * dm;
  const auto adims = repeat_dims(dm, da, n + 1);
  std::map<std::pair<Index, int>, Terms> coaction;
  auto coact = [&](Index b, int k) -> const Terms& {
    auto key = std::make_pair(b, k);
    auto it = coaction.find(key);
    if (it == coaction.end()) it = coaction.emplace(key, iterated_coaction_b(ctx.ba, b, k)).first;
    return it->second;
  };
  std::vector<SparseVec> rows;
  rows.reserve(targets.size());
  for (Index t = 0; t < targets.size(); ++t) {
    auto tt = targets.decode(t);
    VecBuilder row;
    // Walk the product of the iterated coactions of every b^j.
    std::vector<const Terms*> ex;
    for (int j = 0; j <= n; ++j) ex.push_back(&coact(tt[sz(j)] % db, plan.legs[sz(j)]));
    std::vector<std::size_t> pick(sz(n) + 1, 0);
    for (;;) {
      Scalar coef(1);
      std::vector<Index> b0;
      for (int j = 0; j <= n; ++j) {
        const auto& [c, u] = ex[sz(j)]->items[pick[sz(j)]];
        coef *= c;
        b0.push_back(u.back());
      }
      std::vector<SparseVec> parts{SparseVec()};
      for (int i = 0; i <= n; ++i) {
        SparseVec hv = h.one();
        for (const auto& [j, leg] : plan.slot[sz(i)])
          hv = h.alg.multiply(hv, SparseVec::unit(ex[sz(j)]->items[pick[sz(j)]].second[sz(leg)]));
        if (plan.inverse) hv = h.antipode_inv.apply(hv);
        parts.push_back(ma.act(hv, SparseVec::unit(tt[sz(i)] / db)));
      }
      const Index y = bt.encode(b0);
      for (Index m = 0; m < dm; ++m) {
        parts[0] = SparseVec::unit(m);
        SparseVec kv = kron_all(parts, adims);
        for (const auto& [i, x] : kv.entries()) row.add(i * ambB + y * dm + m, coef * x);
      }
      int j = n;
      while (j >= 0 && ++pick[sz(j)] == ex[sz(j)]->items.size()) pick[sz(j--)] = 0;
      if (j < 0) break;
    }
    rows.push_back(row.finish());
  }
  SparseMatrix p = SparseMatrix::from_rows(ctx.alg.embed[sz(n)].rows() * ambB, rows);
  return to_plain(ctx.plain, n, compose(p, tensor_kron(ctx.alg.embed[sz(n)], ctx.comod.embed[sz(n)])));
}

// Readings of the S^-1 legs: b^j contributes to slots 0..j (or j..n), the
// leg for a slot counted from the inside or the outside, products in
// increasing or decreasing j.
std::vector<std::function<LegPlan(int)>> cross_plans() {
  std::vector<std::function<LegPlan(int)>> out;
  for (bool before : {true, false})
    for (bool inner : {true, false})
      for (bool increasing : {true, false})
        out.push_back([=](int n) {
          LegPlan p;
          p.name = std::string(before ? "legs of b^j on slots 0..j" : "legs of b^j on slots j..n") +
                   (inner ? ", slot 0 innermost" : ", slot 0 outermost") +
                   (increasing ? ", increasing product" : ", decreasing product");
          p.inverse = true;
          p.slot.assign(sz(n) + 1, {});
          for (int j = 0; j <= n; ++j) p.legs.push_back(before ? j + 1 : n - j + 1);
          for (int i = 0; i <= n; ++i) {
            std::vector<int> js;
            for (int j = 0; j <= n; ++j)
              if (before ? j >= i : j <= i) js.push_back(j);
            if (!increasing) std::reverse(js.begin(), js.end());
            for (int j : js) {
              const int L = p.legs[sz(j)];
              const int pos = before ? i : i - j;  // 0-based position among the slots of b^j
              p.slot[sz(i)].emplace_back(j, inner ? L - 1 - pos : pos);
            }
          }
          return p;
        });
  return out;
}

LegPlan normal_order_plan(int n) {
  LegPlan p;
  p.name = "normal order";
  p.slot.assign(sz(n) + 1, {});
  for (int j = 0; j <= n; ++j) p.legs.push_back(n - j);
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j < i; ++j) p.slot[sz(i)].emplace_back(j, i - j - 1);
  return p;
}

}  // namespace

void certify_chain_map(const CocyclicComplex& src, const CocyclicComplex& dst, const std::vector<SparseMatrix>& maps,
                       const std::string& name) {
  const int top = static_cast<int>(maps.size()) - 1;
  auto fail = [&](const std::string& op, int n) {
    throw Error(ErrorKind::ChainMapFailure, name + " does not commute with " + op + " in degree " + std::to_string(n));
  };
  for (int n = 0; n <= top; ++n) {
    const SparseMatrix& f = maps[sz(n)];
    if (f.cols() != src.dim(n) || f.rows() != dst.dim(n))
      throw Error(ErrorKind::ShapeMismatch, name + " has the wrong shape in degree " + std::to_string(n));
    if (n < top && n <= src.maxdeg && n <= dst.maxdeg)
      for (int i = 0; i <= n + 1; ++i)
        if (!(compose(maps[sz(n) + 1], src.face(n, i)) == compose(dst.face(n, i), f)))
          fail("face " + std::to_string(i), n);
    if (n >= 1)
      for (int j = 0; j < n; ++j)
        if (!(compose(maps[sz(n) - 1], src.degen(n, j)) == compose(dst.degen(n, j), f)))
          fail("degeneracy " + std::to_string(j), n);
    if (!(compose(f, src.cyclic(n)) == compose(dst.cyclic(n), f))) fail("the cyclic operator", n);
  }
}

CoalgebraContext make_coalgebra_context(const CoalgebraAction& ca, const SAYDModule& m, int maxdeg) {
  ValidationReport r = validate_coalgebra_action(ca);
  r.merge(validate_sayd(m), "coefficients: ");
  require_ok(r, "coalgebra cup context");
  CoalgebraContext ctx;
  ctx.ca = ca;
  ctx.m = m;
  ctx.maxdeg = maxdeg;
  ctx.alg = build_algebra_complex(ca.ma, m, maxdeg);
  ctx.coal = build_coalgebra_complex(ca.mc, m, maxdeg);
  ctx.diag = diagonal(tensor_bicocyclic(ctx.alg, ctx.coal));
  ctx.conv = convolution_algebra(ca);
  ctx.natural = natural_map(ca, ctx.conv);
  ctx.conv_plain = build_plain_complex(ctx.conv.alg, maxdeg);
  ctx.plain = build_plain_complex(ca.ma.alg, maxdeg);
  return ctx;
}

RelativeContext make_relative_context(const ModuleAlgebra& ma, const SubHopf& k, const SAYDModule& m, int maxdeg) {
  ValidationReport r = validate_module_algebra(ma);
  r.merge(validate_subhopf(k), "subalgebra: ");
  r.merge(validate_sayd(m), "coefficients: ");
  require_ok(r, "relative cup context");
  RelativeContext ctx;
  ctx.ma = ma;
  ctx.k = k;
  ctx.m = m;
  ctx.maxdeg = maxdeg;
  ctx.ra = relative_action(ma, k);
  ctx.alg = build_algebra_complex(ma, m, maxdeg);
  ctx.coal = build_coalgebra_complex(ctx.ra.rel.mc, m, maxdeg);
  ctx.diag = diagonal(tensor_bicocyclic(ctx.alg, ctx.coal));
  ctx.plain = build_plain_complex(ctx.ra.inv.alg, maxdeg);
  return ctx;
}

CrossedContext make_crossed_context(const ModuleAlgebra& ma, const ComoduleAlgebra& ba, const SAYDModule& m,
                                    int maxdeg) {
  ValidationReport r = validate_module_algebra(ma);
  r.merge(validate_comodule_algebra(ba), "comodule algebra: ");
  r.merge(validate_sayd(m), "coefficients: ");
  require_ok(r, "crossed cup context");
  CrossedContext ctx;
  ctx.ma = ma;
  ctx.ba = ba;
  ctx.m = m;
  ctx.maxdeg = maxdeg;
  ctx.cross = crossed_product(ma, ba);
  ctx.alg = build_algebra_complex(ma, m, maxdeg);
  ctx.comod = build_comodule_algebra_complex(ba, m, maxdeg);
  ctx.diag = diagonal(tensor_bicocyclic(ctx.alg, ctx.comod));
  ctx.plain = build_plain_complex(ctx.cross, maxdeg);
  return ctx;
}

ChainMap psi_c(const CoalgebraContext& ctx) {
  const Index dm = ctx.m.dim(), da = ctx.ca.ma.alg.dim(), dc = ctx.ca.mc.coalg.dim();
  const Index dt = ctx.conv.alg.dim();
  // f_t(c) as a vector over A.
  std::vector<std::vector<SparseVec>> val(dc, std::vector<SparseVec>(dt));
  for (Index t = 0; t < dt; ++t) {
    std::vector<VecBuilder> acc(dc);
    for (const auto& [k, x] : ctx.conv.inclusion.col(t).entries()) acc[k / da].add(k % da, x);
    for (Index c = 0; c < dc; ++c) val[c][t] = acc[c].finish();
  }
  ChainMap out;
  for (int n = 0; n <= ctx.diag.top(); ++n)
    out.maps.push_back(to_plain(ctx.conv_plain, n,
                                pairing_matrix(ctx.alg, dm, da, ctx.coal, dc, dt, n,
                                               [&](Index c, Index t) -> const SparseVec& { return val[c][t]; })));
  certify_chain_map(ctx.diag, ctx.conv_plain, out.maps, "psi_c");
  out.certificate = "psi_c commutes with faces, degeneracies and tau through degree " +
                    std::to_string(ctx.diag.top());
  return out;
}

ChainMap psi(const CoalgebraContext& ctx) {
  // The natural map must be a unital algebra map for the pullback to be cyclic.
  const AlgebraData& A = ctx.ca.ma.alg;
  const AlgebraData& B = ctx.conv.alg;
  if (!(ctx.natural.apply(A.unit) == B.unit)) throw Error(ErrorKind::ChainMapFailure, "natural map is not unital");
  for (Index i = 0; i < A.dim(); ++i)
    for (Index j = 0; j < A.dim(); ++j)
      if (!(ctx.natural.apply(A.mul_basis(i, j)) ==
            B.multiply(ctx.natural.col(i), ctx.natural.col(j))))
        throw Error(ErrorKind::ChainMapFailure, "natural map is not multiplicative at (" + A.space.labels[i] + "," +
                                                    A.space.labels[j] + ")");
  ChainMap c = psi_c(ctx);
  ChainMap out;
  for (int n = 0; n <= ctx.diag.top(); ++n) {
    SparseMatrix pull = SparseMatrix::identity(1);
    for (int k = 0; k <= n; ++k) pull = tensor_kron(pull, ctx.natural);
    SparseMatrix amb = compose(pull.transpose(), compose(ctx.conv_plain.embed[sz(n)], c.maps[sz(n)]));
    out.maps.push_back(to_plain(ctx.plain, n, amb));
  }
  certify_chain_map(ctx.diag, ctx.plain, out.maps, "psi");
  out.certificate = "psi = natural-map pullback of psi_c; " + c.certificate;
  return out;
}

ChainMap psi_r(const RelativeContext& ctx) {
  const Index dm = ctx.m.dim(), da = ctx.ma.alg.dim();
  const Index dc = ctx.ra.rel.mc.coalg.dim(), dt = ctx.ra.inv.alg.dim();
  std::vector<std::vector<SparseVec>> val(dc, std::vector<SparseVec>(dt));
  for (Index c = 0; c < dc; ++c)
    for (Index t = 0; t < dt; ++t) val[c][t] = ctx.ra.inv.inclusion.apply(ctx.ra.action.image[c * dt + t]);
  ChainMap out;
  for (int n = 0; n <= ctx.diag.top(); ++n)
    out.maps.push_back(to_plain(ctx.plain, n,
                                pairing_matrix(ctx.alg, dm, da, ctx.coal, dc, dt, n,
                                               [&](Index c, Index t) -> const SparseVec& { return val[c][t]; })));
  certify_chain_map(ctx.diag, ctx.plain, out.maps, "psi_r");
  out.certificate = "psi_r commutes with faces, degeneracies and tau through degree " +
                    std::to_string(ctx.diag.top());
  return out;
}

ChainMap psi_cross(const CrossedContext& ctx) {
  std::string tried;
  for (const auto& make : cross_plans()) {
    ChainMap out;
    std::string name;
    for (int n = 0; n <= ctx.diag.top(); ++n) {
      LegPlan plan = make(n);
      name = plan.name;
      out.maps.push_back(crossed_matrix(ctx, n, plan));
    }
    try {
      certify_chain_map(ctx.diag, ctx.plain, out.maps, "psi_cross");
    } catch (const Error& e) {
      tried += "\n  " + name + ": " + e.what();
      continue;
    }
    out.certificate = "psi_cross with " + name + " commutes with faces, degeneracies and tau through degree " +
                      std::to_string(ctx.diag.top());
    return out;
  }
  throw Error(ErrorKind::ChainMapFailure, "no leg reading of psi_cross is a cyclic map:" + tried);
}

ChainMap normal_ordered_map(const CrossedContext& ctx) {
  ChainMap out;
  for (int n = 0; n <= ctx.diag.top(); ++n) out.maps.push_back(crossed_matrix(ctx, n, normal_order_plan(n)));
  out.certificate = "normal-ordered evaluation, not a cyclic map in general";
  return out;
}

SparseVec alexander_whitney(const CocyclicComplex& first, const CocyclicComplex& second, const Cochain& phi,
                            const Cochain& x) {
  require_degree(first, phi, "first AW argument");
  require_degree(second, x, "second AW argument");
  const int p = phi.degree, q = x.degree, n = p + q;
  if (n > first.top() || n > second.top())
    throw Error(ErrorKind::InvalidArgument, "AW degree " + std::to_string(n) + " beyond the truncation");
  SparseVec a = phi.coeffs;
  for (int k = 0; k < q; ++k) a = first.face(p + k, 0).apply(a);
  SparseVec b = x.coeffs;
  for (int k = 0; k < p; ++k) b = second.face(q + k, q + k + 1).apply(b);
  return kron2(a, b, second.dim(n));
}

namespace {

CupResult finish_cup(const CocyclicComplex& target, const SparseMatrix& map, const SparseVec& aw, int n,
                     bool inputs_cyclic) {
  CupResult r;
  r.value = Cochain{n, map.apply(aw)};
  r.inputs_cyclic = inputs_cyclic;
  r.b_closed = n <= target.maxdeg ? is_b_closed(target, r.value) : false;
  r.cyclic = is_cyclic(target, r.value);
  return r;
}

void require_cocycle(const CocyclicComplex& c, const Cochain& x, const char* what) {
  require_degree(c, x, what);
  if (x.degree > c.maxdeg)
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " degree beyond the truncation");
  if (!is_b_closed(c, x)) throw Error(ErrorKind::NotACocycle, std::string(what) + " is not a Hochschild cocycle");
}

template <class Ctx>
CupResult generic_cup(const Ctx& ctx, const CocyclicComplex& second, const CocyclicComplex& target,
                      const ChainMap& map, const Cochain& phi, const Cochain& x) {
  require_cocycle(ctx.alg, phi, "phi");
  require_cocycle(second, x, "second argument");
  const int n = phi.degree + x.degree;
  if (n > ctx.maxdeg) throw Error(ErrorKind::InvalidArgument, "cup degree beyond the truncation");
  if (sz(n) >= map.maps.size()) throw Error(ErrorKind::InvalidArgument, "chain map not computed in that degree");
  SparseVec aw = alexander_whitney(ctx.alg, second, phi, x);
  return finish_cup(target, map.maps[sz(n)], aw, n, is_cyclic(ctx.alg, phi) && is_cyclic(second, x));
}

}  // namespace

CupResult aw_cup(const CoalgebraContext& ctx, const ChainMap& map, CoalgebraTarget target, const Cochain& phi,
                 const Cochain& x) {
  return generic_cup(ctx, ctx.coal, target == CoalgebraTarget::Algebra ? ctx.plain : ctx.conv_plain, map, phi, x);
}

CupResult aw_cup(const RelativeContext& ctx, const ChainMap& map, const Cochain& phi, const Cochain& x) {
  return generic_cup(ctx, ctx.coal, ctx.plain, map, phi, x);
}

CupResult aw_cup(const CrossedContext& ctx, const ChainMap& map, const Cochain& phi, const Cochain& psi) {
  return generic_cup(ctx, ctx.comod, ctx.plain, map, phi, psi);
}

Cochain cup_explicit_coalgebra(const CoalgebraContext& ctx, const ChainMap& psi_map, const Cochain& phi,
                               const Cochain& x) {
  require_degree(ctx.alg, phi, "phi");
  require_degree(ctx.coal, x, "x");
  const int p = phi.degree, q = x.degree, n = p + q;
  if (n > ctx.diag.top() || sz(n) >= psi_map.maps.size())
    throw Error(ErrorKind::InvalidArgument, "cup degree beyond the truncation");
  const CoalgebraAction& ca = ctx.ca;
  const AlgebraData& A = ca.ma.alg;
  const Index dm = ctx.m.dim(), da = A.dim(), dc = ca.mc.coalg.dim();
  const SparseVec phi_amb = ctx.alg.embed[sz(p)].apply(phi.coeffs);
  MultiIndex reps(repeat_dims(dm, dc, q + 1));
  MultiIndex tuples = MultiIndex::power(da, n + 1);
  const auto adims = repeat_dims(dm, da, p + 1);
  auto c_on_a = [&](const SparseVec& c, Index a) { return ca.act(c, SparseVec::unit(a)); };
  std::vector<Scalar> value(tuples.size());
  for (const auto& [l, xl] : x.coeffs.entries())
    for (const auto& [j, cj] : ctx.coal.embed[sz(q)].col(l).entries()) {
      auto r = reps.decode(j);
      Terms legs = iterated_coaction_m(ctx.m, r[0], p);
      Terms split = coproduct_terms(ca.mc.coalg, r[1], p + 1);
      for (const auto& [cl, hl] : legs.items)
        for (const auto& [cs, cc] : split.items) {
          const Scalar coef = xl * cj * cl * cs;
          for (Index t = 0; t < tuples.size(); ++t) {
            auto a = tuples.decode(t);
            std::vector<SparseVec> parts{SparseVec::unit(hl.back())};
            SparseVec first = c_on_a(SparseVec::unit(cc[sz(p)]), a[0]);
            for (int k = 1; k <= q; ++k) first = A.multiply(first, c_on_a(SparseVec::unit(r[sz(k) + 1]), a[sz(k)]));
            parts.push_back(first);
            for (int k = 1; k <= p; ++k)
              parts.push_back(
                  c_on_a(ca.mc.act(SparseVec::unit(hl[sz(k) - 1]), SparseVec::unit(cc[sz(k) - 1])), a[sz(q + k)]));
            SparseVec kv = kron_all(parts, adims);
            value[t] += coef * phi_amb.dot(kv);
          }
        }
    }
  Cochain out{n, ctx.plain.project[sz(n)].apply(SparseVec::from_dense(value))};
  const SparseVec aw = psi_map.maps[sz(n)].apply(alexander_whitney(ctx.alg, ctx.coal, phi, x));
  if (!(aw == out.coeffs)) {
    SparseVec diff = aw - out.coeffs;
    throw Error(ErrorKind::MismatchWithAW, "closed formula and psi o AW differ at " +
                                               format_vector(SparseVec::unit(diff.lead(), diff.at(diff.lead())),
                                                             ctx.plain.spaces[sz(n)]));
  }
  return out;
}

CrossedExplicit cup_explicit_crossed(const CrossedContext& ctx, const ChainMap& cross_map, const Cochain& phi,
                                     const Cochain& psi) {
  require_degree(ctx.alg, phi, "phi");
  require_degree(ctx.comod, psi, "psi");
  const int p = phi.degree, q = psi.degree, n = p + q;
  if (n > ctx.diag.top() || sz(n) >= cross_map.maps.size())
    throw Error(ErrorKind::InvalidArgument, "cup degree beyond the truncation");
  CrossedExplicit out;
  out.normative = Cochain{n, cross_map.maps[sz(n)].apply(alexander_whitney(ctx.alg, ctx.comod, phi, psi))};

  const ModuleAlgebra& ma = ctx.ma;
  const HopfData& h = ma.hopf;
  const AlgebraData& A = ma.alg;
  const AlgebraData& B = ctx.ba.alg;
  const Index dm = ctx.m.dim(), da = A.dim(), db = B.dim();
  const SparseVec phi_amb = ctx.alg.embed[sz(p)].apply(phi.coeffs);
  const SparseVec psi_amb = ctx.comod.embed[sz(q)].apply(psi.coeffs);
  MultiIndex targets = MultiIndex::power(da * db, n + 1);
  MultiIndex bt = MultiIndex::power(db, q + 1);
  const auto adims = repeat_dims(dm, da, p + 1);
  // Legs per b^j: j+1 for j <= q (slot k of the first block gets leg -(k+1)),
  // n-j for q < j (a^(j+s) gets the s-th leg from the outside).
  std::vector<int> nlegs;
  for (int j = 0; j <= n; ++j) nlegs.push_back(j <= q ? j + 1 : n - j);
  std::vector<Scalar> value(targets.size());
  for (Index t = 0; t < targets.size(); ++t) {
    auto tt = targets.decode(t);
    std::vector<Terms> ex;
    for (int j = 0; j <= n; ++j) ex.push_back(iterated_coaction_b(ctx.ba, tt[sz(j)] % db, nlegs[sz(j)]));
    std::vector<std::size_t> pick(sz(n) + 1, 0);
    for (;;) {
      Scalar coef(1);
      auto leg = [&](int j, int k) { return ex[sz(j)].items[pick[sz(j)]].second[sz(k)]; };
      auto b0 = [&](int j) { return ex[sz(j)].items[pick[sz(j)]].second.back(); };
      for (int j = 0; j <= n; ++j) coef *= ex[sz(j)].items[pick[sz(j)]].first;
      // psi argument: b^(q+1)(0)..b^n(0) b^0(0), b^1(0), .., b^q(0)
      std::vector<SparseVec> bargs;
      SparseVec first = B.unit;
      for (int j = q + 1; j <= n; ++j) first = B.multiply(first, SparseVec::unit(b0(j)));
      bargs.push_back(B.multiply(first, SparseVec::unit(b0(0))));
      for (int j = 1; j <= q; ++j) bargs.push_back(SparseVec::unit(b0(j)));
      SparseVec bvec = kron_all(bargs, std::vector<Index>(sz(q) + 1, db));
      // phi slots
      std::vector<SparseVec> parts{SparseVec()};
      SparseVec slot0 = A.unit;
      for (int i = 0; i <= q; ++i) {
        SparseVec hv = h.one();
        for (int j = i; j <= q; ++j) hv = h.alg.multiply(hv, SparseVec::unit(leg(j, nlegs[sz(j)] - 1 - i)));
        slot0 = A.multiply(slot0, ma.act(h.antipode_inv.apply(hv), SparseVec::unit(tt[sz(i)] / db)));
      }
      parts.push_back(slot0);
      for (int k = 1; k <= p; ++k) {
        SparseVec hv = h.one();
        for (int j = q + 1; j < q + k; ++j) hv = h.alg.multiply(hv, SparseVec::unit(leg(j, q + k - j - 1)));
        parts.push_back(ma.act(hv, SparseVec::unit(tt[sz(q + k)] / db)));
      }
      for (const auto& [y, cy] : bvec.entries())
        for (Index m = 0; m < dm; ++m) {
          Scalar pv = psi_amb.at(y * dm + m);
          if (sgn(pv) == 0) continue;
          parts[0] = SparseVec::unit(m);
          SparseVec kv = kron_all(parts, adims);
          value[t] += coef * cy * pv * phi_amb.dot(kv);
        }
      int j = n;
      while (j >= 0 && ++pick[sz(j)] == ex[sz(j)].items.size()) pick[sz(j--)] = 0;
      if (j < 0) break;
    }
  }
  out.closed_form = Cochain{n, ctx.plain.project[sz(n)].apply(SparseVec::from_dense(value))};
  out.match = out.closed_form.coeffs == out.normative.coeffs;
  return out;
}

ValidationReport validate_trace(const ModularPair& mp, const ModuleAlgebra& ma, const SparseVec& trace) {
  ValidationReport r;
  const AlgebraData& A = ma.alg;
  const HopfData& h = ma.hopf;
  auto tau = [&](const SparseVec& a) { return trace.dot(a); };
  for (Index x = 0; x < h.dim(); ++x)
    for (Index a = 0; a < A.dim(); ++a) {
      Scalar d = tau(ma.act_basis(x, a)) - mp.delta.at(x) * trace.at(a);
      if (sgn(d) != 0)
        r.add("invariance", "(" + h.space().labels[x] + "," + A.space.labels[a] + ")", to_string(d));
    }
  for (Index a = 0; a < A.dim(); ++a)
    for (Index b = 0; b < A.dim(); ++b) {
      SparseVec sa = ma.act(mp.sigma, SparseVec::unit(a));
      Scalar d = tau(A.mul_basis(a, b)) - tau(A.multiply(SparseVec::unit(b), sa));
      if (sgn(d) != 0)
        r.add("twisted trace", "(" + A.space.labels[a] + "," + A.space.labels[b] + ")", to_string(d));
    }
  return r;
}

ChainMap char_map(const ModularPair& mp, const ModuleAlgebra& ma, const SparseVec& trace, int maxdeg) {
  ValidationReport r = validate_trace(mp, ma, trace);
  if (!r.ok()) throw Error(ErrorKind::NotInvariantTrace, r.to_text());
  CocyclicComplex ans = build_ans_complex(mp, maxdeg);
  CocyclicComplex plain = build_plain_complex(ma.alg, maxdeg);
  const AlgebraData& A = ma.alg;
  const Index dh = ma.hopf.dim(), da = A.dim();
  ChainMap out;
  for (int n = 0; n <= ans.top(); ++n) {
    MultiIndex hs = MultiIndex::power(dh, n), as = MultiIndex::power(da, n + 1);
    std::vector<SparseVec> cols;
    for (Index c = 0; c < hs.size(); ++c) {
      auto ht = hs.decode(c);
      std::vector<Scalar> col(as.size());
      for (Index t = 0; t < as.size(); ++t) {
        auto at = as.decode(t);
        SparseVec prod = SparseVec::unit(at[0]);
        for (int k = 1; k <= n; ++k) prod = A.multiply(prod, ma.act_basis(ht[sz(k) - 1], at[sz(k)]));
        col[t] = trace.dot(prod);
      }
      cols.push_back(SparseVec::from_dense(col));
    }
    out.maps.push_back(to_plain(plain, n, SparseMatrix::from_columns(as.size(), std::move(cols))));
  }
  certify_chain_map(ans, plain, out.maps, "chi");
  out.certificate = "chi commutes with faces, degeneracies and tau through degree " + std::to_string(ans.top());
  return out;
}

namespace {

// Applies the faces at image[from..to)-1 in order, starting in degree deg.
SparseVec shuffled_faces(const CocyclicComplex& c, SparseVec v, int deg, const ShufflePermutation& s, int from,
                         int to) {
  for (int k = from; k < to; ++k, ++deg) v = c.face(deg, s.image[sz(k)] - 1).apply(v);
  return v;
}

}  // namespace

Cochain shuffle_cup_traces(const CrossedContext& ctx, const Cochain& phi, const Cochain& psi) {
  require_degree(ctx.alg, phi, "phi");
  require_degree(ctx.comod, psi, "psi");
  const int p = phi.degree, q = psi.degree, n = p + q;
  if (n > ctx.diag.top()) throw Error(ErrorKind::InvalidArgument, "cup degree beyond the truncation");
  VecBuilder acc;
  for (const auto& s : shuffle_set(q, p)) {
    SparseVec a = shuffled_faces(ctx.alg, phi.coeffs, p, s, 0, q);
    SparseVec b = shuffled_faces(ctx.comod, psi.coeffs, q, s, q, n);
    acc.add(kron2(a, b, ctx.comod.dim(n)), Scalar(s.sign));
  }
  return Cochain{n, crossed_matrix(ctx, n, normal_order_plan(n)).apply(acc.finish())};
}

Cochain cotrace_cup(const CoalgebraContext& ctx, const ChainMap& psi_map, const Cochain& x, const Cochain& phi) {
  require_degree(ctx.coal, x, "x");
  require_degree(ctx.alg, phi, "phi");
  const int p = x.degree, q = phi.degree, n = p + q;
  if (n > ctx.diag.top() || sz(n) >= psi_map.maps.size())
    throw Error(ErrorKind::InvalidArgument, "cup degree beyond the truncation");
  VecBuilder acc;
  for (const auto& s : shuffle_set(q, p)) {
    SparseVec a = shuffled_faces(ctx.alg, phi.coeffs, q, s, q, n);
    SparseVec b = shuffled_faces(ctx.coal, x.coeffs, p, s, 0, q);
    acc.add(kron2(a, b, ctx.coal.dim(n)), Scalar(s.sign));
  }
  return Cochain{n, psi_map.maps[sz(n)].apply(acc.finish())};
}

}  // namespace hc
