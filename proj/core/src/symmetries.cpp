#include "hopfcyc/symmetries.hpp"

#include "hopfcyc/errors.hpp"

namespace hc {

namespace {

SparseVec bilinear(const SparseVec& x, const SparseVec& y, Index dy,
                   const std::vector<SparseVec>& image) {
  VecBuilder b;
  for (const auto& [i, p] : x.entries())
    for (const auto& [j, q] : y.entries()) b.add(image[i * dy + j], p * q);
  return b.finish();
}

SparseVec kron_vec(const SparseVec& a, const SparseVec& b, Index db) {
  VecBuilder out;
  for (const auto& [i, x] : a.entries())
    for (const auto& [j, y] : b.entries()) out.add(i * db + j, x * y);
  return out.finish();
}

}  // namespace

SparseVec ModuleAlgebra::act(const SparseVec& h, const SparseVec& a) const {
  return bilinear(h, a, alg.dim(), action.image);
}

SparseMatrix ModuleAlgebra::action_matrix(const SparseVec& h) const {
  std::vector<SparseVec> cols;
  for (Index j = 0; j < alg.dim(); ++j) cols.push_back(act(h, SparseVec::unit(j)));
  return SparseMatrix::from_columns(alg.dim(), std::move(cols));
}

SparseVec ModuleCoalgebra::act(const SparseVec& h, const SparseVec& c) const {
  return bilinear(h, c, coalg.dim(), action.image);
}

SparseVec SAYDModule::ract(const SparseVec& m, const SparseVec& h) const {
  return bilinear(m, h, hopf.dim(), raction.image);
}

SparseVec CoalgebraAction::act(const SparseVec& c, const SparseVec& a) const {
  return bilinear(c, a, ma.alg.dim(), action.image);
}

// ------------------------------------------------------------- validators

ValidationReport validate_module_algebra(const ModuleAlgebra& ma) {
  ValidationReport r;
  const HopfData& h = ma.hopf;
  const Index dh = h.dim(), da = ma.alg.dim();
  const BasedSpace& hs = h.space();
  const BasedSpace& as = ma.alg.space;
  for (Index x = 0; x < dh; ++x)
    for (Index y = 0; y < dh; ++y)
      for (Index a = 0; a < da; ++a) {
        SparseVec lhs = ma.act(h.alg.mul_basis(x, y), SparseVec::unit(a));
        SparseVec rhs = ma.act(SparseVec::unit(x), ma.act_basis(y, a));
        if (!(lhs == rhs))
          r.add("module associativity", "(" + hs.labels[x] + "," + hs.labels[y] + "," + as.labels[a] + ")",
                format_vector(lhs - rhs, as));
      }
  for (Index a = 0; a < da; ++a) {
    SparseVec d = ma.act(h.alg.unit, SparseVec::unit(a)) - SparseVec::unit(a);
    if (!d.empty()) r.add("module unit", "(" + as.labels[a] + ")", format_vector(d, as));
  }
  for (Index x = 0; x < dh; ++x) {
    for (Index a = 0; a < da; ++a)
      for (Index b = 0; b < da; ++b) {
        SparseVec lhs = ma.act(SparseVec::unit(x), ma.alg.mul_basis(a, b));
        VecBuilder rhs;
        for (const auto& [k, c] : h.coalg.comul_basis(x).entries())
          rhs.add(ma.alg.multiply(ma.act_basis(k / dh, a), ma.act_basis(k % dh, b)), c);
        SparseVec d = lhs - rhs.finish();
        if (!d.empty())
          r.add("action on products", "(" + hs.labels[x] + "," + as.labels[a] + "," + as.labels[b] + ")",
                format_vector(d, as));
      }
    SparseVec d = ma.act(SparseVec::unit(x), ma.alg.unit) - ma.alg.unit * h.coalg.counit.at(x);
    if (!d.empty()) r.add("action on unit", "(" + hs.labels[x] + ")", format_vector(d, as));
  }
  return r;
}

ValidationReport validate_module_coalgebra(const ModuleCoalgebra& mc) {
  ValidationReport r;
  const HopfData& h = mc.hopf;
  const Index dh = h.dim(), dc = mc.coalg.dim();
  const BasedSpace& hs = h.space();
  const BasedSpace& cs = mc.coalg.space;
  for (Index x = 0; x < dh; ++x)
    for (Index y = 0; y < dh; ++y)
      for (Index c = 0; c < dc; ++c) {
        SparseVec lhs = mc.act(h.alg.mul_basis(x, y), SparseVec::unit(c));
        SparseVec rhs = mc.act(SparseVec::unit(x), mc.act_basis(y, c));
        if (!(lhs == rhs))
          r.add("module associativity", "(" + hs.labels[x] + "," + hs.labels[y] + "," + cs.labels[c] + ")",
                format_vector(lhs - rhs, cs));
      }
  for (Index c = 0; c < dc; ++c) {
    SparseVec d = mc.act(h.alg.unit, SparseVec::unit(c)) - SparseVec::unit(c);
    if (!d.empty()) r.add("module unit", "(" + cs.labels[c] + ")", format_vector(d, cs));
  }
  BasedSpace cs2 = tensor_space(cs, cs);
  SparseMatrix comul = mc.coalg.comul.matrix();
  for (Index x = 0; x < dh; ++x)
    for (Index c = 0; c < dc; ++c) {
      SparseVec lhs = comul.apply(mc.act_basis(x, c));
      VecBuilder rhs;
      for (const auto& [k, p] : h.coalg.comul_basis(x).entries())
        for (const auto& [l, q] : mc.coalg.comul_basis(c).entries())
          rhs.add(kron_vec(mc.act_basis(k / dh, l / dc), mc.act_basis(k % dh, l % dc), dc), p * q);
      SparseVec d = lhs - rhs.finish();
      if (!d.empty()) r.add("comultiplication H-linear", "(" + hs.labels[x] + "," + cs.labels[c] + ")", format_vector(d, cs2));
      Scalar e = mc.coalg.counit_of(mc.act_basis(x, c)) - h.coalg.counit.at(x) * mc.coalg.counit.at(c);
      if (sgn(e) != 0) r.add("counit H-linear", "(" + hs.labels[x] + "," + cs.labels[c] + ")", to_string(e));
    }
  return r;
}

ValidationReport validate_comodule_algebra(const ComoduleAlgebra& ba) {
  ValidationReport r;
  const HopfData& h = ba.hopf;
  const Index dh = h.dim(), db = ba.alg.dim();
  const BasedSpace& bs = ba.alg.space;
  BasedSpace hb = tensor_space(h.space(), bs);
  BasedSpace hhb = tensor_space(tensor_space(h.space(), h.space()), bs);
  MultiIndex two({dh, db});
  MultiIndex hh({dh, dh});
  MultiIndex three({dh, dh, db});
  auto coact = [&](Index b) -> const SparseVec& { return ba.coact_basis(b); };
  auto delta = [&](Index x) -> const SparseVec& { return h.coalg.comul_basis(x); };
  for (Index b = 0; b < db; ++b) {
    Terms t = Terms::basis({b}).map_slot(0, coact, two);
    SparseVec left = t.map_slot(0, delta, hh).to_vector(three);
    SparseVec right = t.map_slot(1, coact, two).to_vector(three);
    if (!(left == right)) r.add("coaction coassociativity", "(" + bs.labels[b] + ")", format_vector(left - right, hhb));
    VecBuilder cu;
    for (const auto& [c, idx] : t.items) cu.add(idx[1], c * h.coalg.counit.at(idx[0]));
    SparseVec d = cu.finish() - SparseVec::unit(b);
    if (!d.empty()) r.add("coaction counit", "(" + bs.labels[b] + ")", format_vector(d, bs));
  }
  SparseMatrix rho = ba.coaction.matrix();
  auto mul_hb = [&](const SparseVec& x, const SparseVec& y) {
    VecBuilder out;
    for (const auto& [i, p] : x.entries())
      for (const auto& [j, q] : y.entries()) {
        SparseVec hpart = h.alg.mul_basis(i / db, j / db);
        SparseVec bpart = ba.alg.mul_basis(i % db, j % db);
        out.add(kron_vec(hpart, bpart, db), p * q);
      }
    return out.finish();
  };
  for (Index a = 0; a < db; ++a)
    for (Index b = 0; b < db; ++b) {
      SparseVec lhs = rho.apply(ba.alg.mul_basis(a, b));
      SparseVec rhs = mul_hb(ba.coact_basis(a), ba.coact_basis(b));
      if (!(lhs == rhs))
        r.add("coaction multiplicative", "(" + bs.labels[a] + "," + bs.labels[b] + ")", format_vector(lhs - rhs, hb));
    }
  SparseVec u = rho.apply(ba.alg.unit) - kron_vec(h.alg.unit, ba.alg.unit, db);
  if (!u.empty()) r.add("coaction unital", "(1)", format_vector(u, hb));
  return r;
}

ValidationReport validate_sayd(const SAYDModule& m) {
  ValidationReport r;
  const HopfData& h = m.hopf;
  const Index dh = h.dim(), dm = m.dim();
  const BasedSpace& hs = h.space();
  const BasedSpace& ms = m.space;
  BasedSpace hm = tensor_space(hs, ms);
  for (Index x = 0; x < dm; ++x) {
    for (Index a = 0; a < dh; ++a)
      for (Index b = 0; b < dh; ++b) {
        SparseVec lhs = m.ract(m.ract_basis(x, a), SparseVec::unit(b));
        SparseVec rhs = m.ract(SparseVec::unit(x), h.alg.mul_basis(a, b));
        if (!(lhs == rhs))
          r.add("right module associativity", "(" + ms.labels[x] + "," + hs.labels[a] + "," + hs.labels[b] + ")",
                format_vector(lhs - rhs, ms));
      }
    SparseVec d = m.ract(SparseVec::unit(x), h.alg.unit) - SparseVec::unit(x);
    if (!d.empty()) r.add("right module unit", "(" + ms.labels[x] + ")", format_vector(d, ms));
  }
  MultiIndex two({dh, dm});
  MultiIndex hh({dh, dh});
  MultiIndex three({dh, dh, dm});
  auto coact = [&](Index b) -> const SparseVec& { return m.coact_basis(b); };
  auto delta = [&](Index x) -> const SparseVec& { return h.coalg.comul_basis(x); };
  for (Index x = 0; x < dm; ++x) {
    Terms t = Terms::basis({x}).map_slot(0, coact, two);
    SparseVec left = t.map_slot(0, delta, hh).to_vector(three);
    SparseVec right = t.map_slot(1, coact, two).to_vector(three);
    if (!(left == right))
      r.add("comodule coassociativity", "(" + ms.labels[x] + ")",
            format_vector(left - right, tensor_space(tensor_space(hs, hs), ms)));
    VecBuilder cu, stab;
    for (const auto& [c, idx] : t.items) {
      cu.add(idx[1], c * h.coalg.counit.at(idx[0]));
      stab.add(m.ract_basis(idx[1], idx[0]), c);
    }
    SparseVec d = cu.finish() - SparseVec::unit(x);
    if (!d.empty()) r.add("comodule counit", "(" + ms.labels[x] + ")", format_vector(d, ms));
    SparseVec s = stab.finish() - SparseVec::unit(x);
    if (!s.empty()) r.add("stability", "(" + ms.labels[x] + ")", format_vector(s, ms));
  }
  // (m h)(-1) (x) (m h)(0) = S(h(3)) m(-1) h(1) (x) m(0) h(2)
  SparseMatrix rho = m.lcoaction.matrix();
  for (Index x = 0; x < dm; ++x)
    for (Index a = 0; a < dh; ++a) {
      SparseVec lhs = rho.apply(m.ract_basis(x, a));
      Terms h3 = coproduct_terms(h.coalg, a, 3);
      VecBuilder rhs;
      for (const auto& [mi, c1] : m.coact_basis(x).entries()) {
        Index mh = mi / dm, m0 = mi % dm;
        for (const auto& [c2, idx] : h3.items) {
          SparseVec hpart = h.alg.product({h.antipode.col(idx[2]), SparseVec::unit(mh), SparseVec::unit(idx[0])});
          SparseVec mpart = m.ract_basis(m0, idx[1]);
          rhs.add(kron_vec(hpart, mpart, dm), c1 * c2);
        }
      }
      SparseVec d = lhs - rhs.finish();
      if (!d.empty()) r.add("anti-Yetter-Drinfeld", "(" + ms.labels[x] + "," + hs.labels[a] + ")", format_vector(d, hm));
    }
  return r;
}

ValidationReport validate_coalgebra_action(const CoalgebraAction& ca) {
  ValidationReport r;
  const HopfData& h = ca.ma.hopf;
  const AlgebraData& A = ca.ma.alg;
  const Index dh = h.dim(), dc = ca.mc.coalg.dim(), da = A.dim();
  const BasedSpace& hs = h.space();
  const BasedSpace& cs = ca.mc.coalg.space;
  const BasedSpace& as = A.space;
  for (Index x = 0; x < dh; ++x)
    for (Index c = 0; c < dc; ++c)
      for (Index a = 0; a < da; ++a) {
        SparseVec lhs = ca.act(ca.mc.act_basis(x, c), SparseVec::unit(a));
        SparseVec rhs = ca.ma.act(SparseVec::unit(x), ca.act_basis(c, a));
        if (!(lhs == rhs))
          r.add("(hc)a = h(ca)", "(" + hs.labels[x] + "," + cs.labels[c] + "," + as.labels[a] + ")",
                format_vector(lhs - rhs, as));
      }
  for (Index c = 0; c < dc; ++c) {
    for (Index a = 0; a < da; ++a)
      for (Index b = 0; b < da; ++b) {
        SparseVec lhs = ca.act(SparseVec::unit(c), A.mul_basis(a, b));
        VecBuilder rhs;
        for (const auto& [k, p] : ca.mc.coalg.comul_basis(c).entries())
          rhs.add(A.multiply(ca.act_basis(k / dc, a), ca.act_basis(k % dc, b)), p);
        SparseVec d = lhs - rhs.finish();
        if (!d.empty())
          r.add("c(ab) = (c(1)a)(c(2)b)", "(" + cs.labels[c] + "," + as.labels[a] + "," + as.labels[b] + ")",
                format_vector(d, as));
      }
    SparseVec d = ca.act(SparseVec::unit(c), A.unit) - A.unit * ca.mc.coalg.counit.at(c);
    if (!d.empty()) r.add("c(1) = eps(c)1", "(" + cs.labels[c] + ")", format_vector(d, as));
  }
  return r;
}

ValidationReport validate_subhopf(const SubHopf& k) {
  ValidationReport r;
  const HopfData& h = k.hopf;
  const Index d = h.dim();
  Echelon span(d);
  for (const auto& v : k.inclusion) span.insert(v);
  if (!span.contains(h.alg.unit)) r.add("contains unit", "(1)", "unit outside span");
  Echelon span2(d * d);
  for (const auto& u : k.inclusion)
    for (const auto& v : k.inclusion) span2.insert(kron_vec(u, v, d));
  SparseMatrix comul = h.coalg.comul.matrix();
  for (std::size_t i = 0; i < k.inclusion.size(); ++i) {
    const SparseVec& u = k.inclusion[i];
    for (std::size_t j = 0; j < k.inclusion.size(); ++j)
      if (!span.contains(h.alg.multiply(u, k.inclusion[j])))
        r.add("closed under product", "(k" + std::to_string(i) + ",k" + std::to_string(j) + ")",
              format_vector(h.alg.multiply(u, k.inclusion[j]), h.space()));
    if (!span2.contains(comul.apply(u))) r.add("closed under coproduct", "(k" + std::to_string(i) + ")", "");
    if (!span.contains(h.antipode.apply(u)))
      r.add("closed under antipode", "(k" + std::to_string(i) + ")", format_vector(h.antipode.apply(u), h.space()));
  }
  return r;
}

// ------------------------------------------------------------ constructors

SAYDModule mpi_coefficients(const ModularPair& mp) {
  SAYDModule m;
  m.hopf = mp.hopf;
  m.space = BasedSpace({"1"});
  const Index d = mp.hopf.dim();
  m.raction = StructureTensor::zero({m.space, mp.hopf.space()}, {m.space});
  for (Index h = 0; h < d; ++h) m.raction.image[h] = SparseVec::unit(0, mp.delta.at(h));
  m.lcoaction = StructureTensor::zero({m.space}, {mp.hopf.space(), m.space});
  m.lcoaction.image[0] = mp.sigma;  // H (x) Q has the same flat indices as H
  return m;
}

SAYDModule trivial_coefficients(const HopfData& h) {
  ModularPair mp{h, h.coalg.counit, h.alg.unit};
  return mpi_coefficients(mp);
}

ModuleCoalgebra regular_module_coalgebra(const HopfData& h) {
  ModuleCoalgebra mc;
  mc.hopf = h;
  mc.coalg = h.coalg;
  mc.action = StructureTensor::zero({h.space(), h.space()}, {h.space()});
  mc.action.image = h.alg.mul.image;
  return mc;
}

CoalgebraAction regular_coalgebra_action(const ModuleAlgebra& ma) {
  CoalgebraAction ca;
  ca.mc = regular_module_coalgebra(ma.hopf);
  ca.ma = ma;
  ca.action = ma.action;
  return ca;
}

ModuleAlgebra trivial_module_algebra(const HopfData& h, const AlgebraData& a) {
  ModuleAlgebra ma;
  ma.hopf = h;
  ma.alg = a;
  ma.action = StructureTensor::zero({h.space(), a.space}, {a.space});
  for (Index x = 0; x < h.dim(); ++x)
    for (Index i = 0; i < a.dim(); ++i) ma.action.image[x * a.dim() + i] = SparseVec::unit(i, h.coalg.counit.at(x));
  return ma;
}

ModuleAlgebra plain_module_algebra(const AlgebraData& a) { return trivial_module_algebra(trivial_hopf(), a); }

ComoduleAlgebra trivial_comodule_algebra(const HopfData& h) {
  ComoduleAlgebra b;
  b.hopf = h;
  b.alg = trivial_algebra();
  b.coaction = StructureTensor::zero({b.alg.space}, {h.space(), b.alg.space});
  b.coaction.image[0] = h.alg.unit;
  return b;
}

ComoduleAlgebra regular_comodule_algebra(const HopfData& h) {
  ComoduleAlgebra b;
  b.hopf = h;
  b.alg = h.alg;
  b.coaction = StructureTensor::zero({h.space()}, {h.space(), h.space()});
  b.coaction.image = h.coalg.comul.image;
  return b;
}

InvariantSubalgebra invariant_subalgebra(const ModuleAlgebra& ma, const SubHopf& k) {
  const Index da = ma.alg.dim();
  std::vector<SparseVec> rows;
  for (const auto& kv : k.inclusion) {
    SparseMatrix m = ma.action_matrix(kv) - SparseMatrix::identity(da) * ma.hopf.coalg.counit_of(kv);
    for (auto& r : m.row_vectors()) rows.push_back(std::move(r));
  }
  Subspace sub = Subspace::from_key_basis(da, kernel_basis(SparseMatrix::from_rows(da, rows)), true);
  InvariantSubalgebra out;
  out.inclusion = sub.inclusion();
  const Index d = sub.dim();
  std::vector<std::string> labels;
  for (Index i = 0; i < d; ++i) labels.push_back("inv" + std::to_string(i));
  out.alg.space = BasedSpace(labels);
  out.alg.mul = StructureTensor::zero({out.alg.space, out.alg.space}, {out.alg.space});
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      SparseVec p = ma.alg.multiply(sub.basis[i], sub.basis[j]);
      SparseVec c;
      if (!sub.coordinates(p, c))
        throw Error(ErrorKind::NotClosed, "product of invariants " + std::to_string(i) + "," + std::to_string(j) +
                                              " leaves the invariant subspace");
      out.alg.mul.image[i * d + j] = c;
    }
  if (!sub.coordinates(ma.alg.unit, out.alg.unit))
    throw Error(ErrorKind::NotClosed, "unit is not invariant");
  return out;
}

RelativeCoalgebra relative_coalgebra(const HopfData& h, const SubHopf& k) {
  const Index d = h.dim();
  std::vector<SparseVec> rel;
  for (Index x = 0; x < d; ++x)
    for (const auto& kv : k.inclusion) {
      SparseVec v = h.alg.multiply(SparseVec::unit(x), kv);
      v.add_scaled(SparseVec::unit(x), -h.coalg.counit_of(kv));
      rel.push_back(v);
    }
  RelativeCoalgebra out;
  out.quotient = Quotient::make(d, rel);
  out.projection = out.quotient.projection();
  const Quotient& q = out.quotient;
  const Index dc = q.dim();
  std::vector<std::string> labels;
  for (Index i : q.complement) labels.push_back("[" + h.space().labels[i] + "]");
  BasedSpace cs(labels);
  // Relations must map to zero under (pi (x) pi) Delta and eps.
  SparseMatrix pp = tensor_kron(out.projection, out.projection);
  SparseMatrix comul = h.coalg.comul.matrix();
  for (const auto& r : q.relation_rref) {
    if (!pp.apply(comul.apply(r)).empty() || sgn(h.coalg.counit_of(r)) != 0)
      throw Error(ErrorKind::CoalgebraNotInduced, "comultiplication does not descend to H (x)_K Q");
  }
  ModuleCoalgebra& mc = out.mc;
  mc.hopf = h;
  mc.coalg.space = cs;
  mc.coalg.comul = StructureTensor::zero({cs}, {cs, cs});
  mc.coalg.counit = SparseVec();
  std::vector<SparseVec::Entry> cu;
  for (Index j = 0; j < dc; ++j) {
    Index hj = q.complement[j];
    mc.coalg.comul.image[j] = pp.apply(comul.col(hj));
    cu.emplace_back(j, h.coalg.counit.at(hj));
  }
  mc.coalg.counit = SparseVec::from_pairs(std::move(cu));
  mc.action = StructureTensor::zero({h.space(), cs}, {cs});
  for (Index x = 0; x < d; ++x) {
    for (const auto& r : q.relation_rref)
      if (!q.in_relations(h.alg.multiply(SparseVec::unit(x), r)))
        throw Error(ErrorKind::CoalgebraNotInduced, "left action does not descend");
    for (Index j = 0; j < dc; ++j)
      mc.action.image[x * dc + j] = q.project(h.alg.mul_basis(x, q.complement[j]));
  }
  return out;
}

RelativeAction relative_action(const ModuleAlgebra& ma, const SubHopf& k) {
  RelativeAction ra;
  ra.rel = relative_coalgebra(ma.hopf, k);
  ra.inv = invariant_subalgebra(ma, k);
  const Quotient& q = ra.rel.quotient;
  const Index dk = ra.inv.alg.dim();
  Subspace sub = Subspace::from_key_basis(ma.alg.dim(), [&] {
    std::vector<SparseVec> b;
    for (Index i = 0; i < dk; ++i) b.push_back(ra.inv.inclusion.col(i));
    return b;
  }(), true);
  // Relations act by zero on invariants.
  for (const auto& r : q.relation_rref)
    for (Index i = 0; i < dk; ++i)
      if (!ma.act(r, sub.basis[i]).empty())
        throw Error(ErrorKind::ActionNotDescended, "C(H,K) action on A^K is not well defined");
  const BasedSpace& cs = ra.rel.mc.coalg.space;
  ra.action = StructureTensor::zero({cs, ra.inv.alg.space}, {ra.inv.alg.space});
  for (Index j = 0; j < q.dim(); ++j)
    for (Index i = 0; i < dk; ++i) {
      SparseVec img = ma.act(SparseVec::unit(q.complement[j]), sub.basis[i]);
      SparseVec c;
      if (!sub.coordinates(img, c))
        throw Error(ErrorKind::ActionNotDescended, "C(H,K) action leaves A^K");
      ra.action.image[j * dk + i] = c;
    }
  return ra;
}

AlgebraData crossed_product(const ModuleAlgebra& ma, const ComoduleAlgebra& ba) {
  const AlgebraData& A = ma.alg;
  const AlgebraData& B = ba.alg;
  const Index da = A.dim(), db = B.dim();
  AlgebraData out;
  std::vector<std::string> labels;
  for (const auto& a : A.space.labels)
    for (const auto& b : B.space.labels) labels.push_back(a + "#" + b);
  out.space = BasedSpace(labels);
  out.mul = StructureTensor::zero({out.space, out.space}, {out.space});
  for (Index a = 0; a < da; ++a)
    for (Index b = 0; b < db; ++b)
      for (Index a2 = 0; a2 < da; ++a2)
        for (Index b2 = 0; b2 < db; ++b2) {
          VecBuilder acc;
          for (const auto& [k, c] : ba.coact_basis(b).entries()) {
            Index hk = k / db, b0 = k % db;
            SparseVec apart = A.multiply(SparseVec::unit(a), ma.act_basis(hk, a2));
            SparseVec bpart = B.mul_basis(b0, b2);
            acc.add(kron_vec(apart, bpart, db), c);
          }
          out.mul.image[(a * db + b) * (da * db) + a2 * db + b2] = acc.finish();
        }
  out.unit = kron_vec(A.unit, B.unit, db);
  return out;
}

ConvolutionAlgebra convolution_algebra(const CoalgebraAction& ca) {
  const HopfData& h = ca.ma.hopf;
  const AlgebraData& A = ca.ma.alg;
  const CoalgebraData& C = ca.mc.coalg;
  const Index dh = h.dim(), dc = C.dim(), da = A.dim();
  const Index n = dc * da;
  // Rows: for each h, c, target coordinate a: f(h c)_a - (h f(c))_a = 0.
  std::vector<SparseVec> rows;
  for (Index x = 0; x < dh; ++x)
    for (Index c = 0; c < dc; ++c) {
      std::vector<VecBuilder> eq(da);
      for (const auto& [c2, p] : ca.mc.act_basis(x, c).entries())
        for (Index a = 0; a < da; ++a) eq[a].add(c2 * da + a, p);
      for (Index a = 0; a < da; ++a)
        for (const auto& [a2, q] : ca.ma.act_basis(x, a).entries()) eq[a2].add(c * da + a, -q);
      for (auto& e : eq) rows.push_back(e.finish());
    }
  Subspace sub = Subspace::from_key_basis(n, kernel_basis(SparseMatrix::from_rows(n, rows)), true);
  ConvolutionAlgebra out;
  out.inclusion = sub.inclusion();
  const Index d = sub.dim();
  std::vector<std::string> labels;
  for (Index i = 0; i < d; ++i) labels.push_back("f" + std::to_string(i));
  out.alg.space = BasedSpace(labels);
  out.alg.mul = StructureTensor::zero({out.alg.space, out.alg.space}, {out.alg.space});
  auto convolve = [&](const SparseVec& f, const SparseVec& g) {
    VecBuilder r;
    for (Index c = 0; c < dc; ++c)
      for (const auto& [k, p] : C.comul_basis(c).entries()) {
        Index c1 = k / dc, c2 = k % dc;
        for (Index a = 0; a < da; ++a) {
          Scalar fa = f.at(c1 * da + a);
          if (sgn(fa) == 0) continue;
          for (Index b = 0; b < da; ++b) {
            Scalar gb = g.at(c2 * da + b);
            if (sgn(gb) == 0) continue;
            for (const auto& [e, m] : A.mul_basis(a, b).entries()) r.add(c * da + e, p * fa * gb * m);
          }
        }
      }
    return r.finish();
  };
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      SparseVec c;
      if (!sub.coordinates(convolve(sub.basis[i], sub.basis[j]), c))
        throw Error(ErrorKind::NotClosed, "convolution leaves Hom_H(C,A)");
      out.alg.mul.image[i * d + j] = c;
    }
  VecBuilder unit;
  for (Index c = 0; c < dc; ++c)
    for (const auto& [a, x] : A.unit.entries()) unit.add(c * da + a, x * C.counit.at(c));
  if (!sub.coordinates(unit.finish(), out.alg.unit))
    throw Error(ErrorKind::NotClosed, "eta o eps is not H-linear");
  return out;
}

SparseMatrix natural_map(const CoalgebraAction& ca, const ConvolutionAlgebra& conv) {
  const Index dc = ca.mc.coalg.dim(), da = ca.ma.alg.dim();
  std::vector<SparseVec> basis;
  for (Index i = 0; i < conv.inclusion.cols(); ++i) basis.push_back(conv.inclusion.col(i));
  Subspace sub = Subspace::from_key_basis(dc * da, basis, true);
  std::vector<SparseVec> cols;
  for (Index a = 0; a < da; ++a) {
    VecBuilder f;
    for (Index c = 0; c < dc; ++c)
      for (const auto& [e, x] : ca.act_basis(c, a).entries()) f.add(c * da + e, x);
    SparseVec coords;
    if (!sub.coordinates(f.finish(), coords))
      throw Error(ErrorKind::IllDefined, "natural map image of " + ca.ma.alg.space.labels[a] + " is not H-linear");
    cols.push_back(coords);
  }
  return SparseMatrix::from_columns(sub.dim(), std::move(cols));
}

Terms iterated_coaction_m(const SAYDModule& m, Index basis_elem, int n) {
  Terms t = Terms::basis({basis_elem});
  MultiIndex two({m.hopf.dim(), m.dim()});
  auto coact = [&](Index b) -> const SparseVec& { return m.coact_basis(b); };
  for (int k = 0; k < n; ++k) t = t.map_slot(static_cast<Index>(k), coact, two);
  return t;
}

Terms iterated_coaction_b(const ComoduleAlgebra& b, Index basis_elem, int n) {
  Terms t = Terms::basis({basis_elem});
  MultiIndex two({b.hopf.dim(), b.alg.dim()});
  auto coact = [&](Index x) -> const SparseVec& { return b.coact_basis(x); };
  for (int k = 0; k < n; ++k) t = t.map_slot(static_cast<Index>(k), coact, two);
  return t;
}

}  // namespace hc
