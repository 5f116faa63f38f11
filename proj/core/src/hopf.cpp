#include "hopfcyc/hopf.hpp"

#include <sstream>

#include "hopfcyc/errors.hpp"

namespace hc {

void ValidationReport::merge(const ValidationReport& o, const std::string& prefix) {
  for (const auto& v : o.violations) violations.push_back({prefix + v.law, v.where, v.discrepancy});
}

bool ValidationReport::has_law(const std::string& law) const {
  for (const auto& v : violations)
    if (v.law == law) return true;
  return false;
}

std::string ValidationReport::to_text() const {
  std::ostringstream os;
  if (violations.empty()) {
    os << "valid\n";
    return os.str();
  }
  os << violations.size() << " violation(s)\n";
  for (const auto& v : violations) os << "  " << v.law << " at " << v.where << ": " << v.discrepancy << '\n';
  return os.str();
}

std::string format_vector(const SparseVec& v, const BasedSpace& space) {
  if (v.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : v.entries()) {
    if (!first) os << " + ";
    first = false;
    os << to_string(c) << '*' << (i < space.dim() ? space.labels[i] : "#" + std::to_string(i));
  }
  return os.str();
}

std::string format_tuple(const BasedSpace& space, const std::vector<Index>& idx) {
  std::string s = "(";
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k) s += ",";
    s += space.labels.at(idx[k]);
  }
  return s + ")";
}

// ----------------------------------------------------------------- algebra

SparseVec AlgebraData::multiply(const SparseVec& a, const SparseVec& b) const {
  VecBuilder out;
  for (const auto& [i, x] : a.entries())
    for (const auto& [j, y] : b.entries()) out.add(mul_basis(i, j), x * y);
  return out.finish();
}

SparseVec AlgebraData::product(const std::vector<SparseVec>& factors) const {
  SparseVec r = unit;
  for (const auto& f : factors) r = multiply(r, f);
  return r;
}

SparseMatrix AlgebraData::left_mult(const SparseVec& a) const {
  std::vector<SparseVec> cols;
  for (Index j = 0; j < dim(); ++j) cols.push_back(multiply(a, SparseVec::unit(j)));
  return SparseMatrix::from_columns(dim(), std::move(cols));
}

HopfData trivial_hopf() {
  HopfData h;
  h.alg = trivial_algebra();
  h.coalg.space = h.alg.space;
  h.coalg.comul = StructureTensor::zero({h.alg.space}, {h.alg.space, h.alg.space});
  h.coalg.comul.image[0] = SparseVec::unit(0);
  h.coalg.counit = SparseVec::unit(0);
  h.antipode = SparseMatrix::identity(1);
  h.antipode_inv = SparseMatrix::identity(1);
  return h;
}

AlgebraData trivial_algebra() {
  AlgebraData a;
  a.space = BasedSpace({"1"});
  a.mul = StructureTensor::zero({a.space, a.space}, {a.space});
  a.mul.image[0] = SparseVec::unit(0);
  a.unit = SparseVec::unit(0);
  return a;
}

ValidationReport validate_algebra(const AlgebraData& a) {
  ValidationReport r;
  const Index d = a.dim();
  if (a.mul.image.size() != d * d) {
    r.add("shape", "mul", "expected " + std::to_string(d * d) + " products");
    return r;
  }
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      for (Index k = 0; k < d; ++k) {
        SparseVec lhs = a.multiply(a.mul_basis(i, j), SparseVec::unit(k));
        SparseVec rhs = a.multiply(SparseVec::unit(i), a.mul_basis(j, k));
        SparseVec diff = lhs - rhs;
        if (!diff.empty()) r.add("associativity", format_tuple(a.space, {i, j, k}), format_vector(diff, a.space));
      }
  for (Index i = 0; i < d; ++i) {
    SparseVec e = SparseVec::unit(i);
    SparseVec l = a.multiply(a.unit, e) - e;
    if (!l.empty()) r.add("left unit", format_tuple(a.space, {i}), format_vector(l, a.space));
    SparseVec rr = a.multiply(e, a.unit) - e;
    if (!rr.empty()) r.add("right unit", format_tuple(a.space, {i}), format_vector(rr, a.space));
  }
  return r;
}

namespace {

BasedSpace square(const BasedSpace& s) { return tensor_space(s, s); }

}  // namespace

ValidationReport validate_coalgebra(const CoalgebraData& c) {
  ValidationReport r;
  const Index d = c.dim();
  MultiIndex two = MultiIndex::power(d, 2), three = MultiIndex::power(d, 3);
  auto delta = [&](Index i) -> const SparseVec& { return c.comul_basis(i); };
  BasedSpace s3 = tensor_space(square(c.space), c.space);
  for (Index i = 0; i < d; ++i) {
    Terms t = Terms::basis({i}).map_slot(0, delta, two);
    SparseVec left = t.map_slot(0, delta, two).to_vector(three);
    SparseVec right = t.map_slot(1, delta, two).to_vector(three);
    SparseVec diff = left - right;
    if (!diff.empty()) r.add("coassociativity", format_tuple(c.space, {i}), format_vector(diff, s3));
    VecBuilder lc, rc;
    for (const auto& [coef, idx] : t.items) {
      lc.add(idx[1], coef * c.counit.at(idx[0]));
      rc.add(idx[0], coef * c.counit.at(idx[1]));
    }
    SparseVec e = SparseVec::unit(i);
    SparseVec dl = lc.finish() - e;
    if (!dl.empty()) r.add("left counit", format_tuple(c.space, {i}), format_vector(dl, c.space));
    SparseVec dr = rc.finish() - e;
    if (!dr.empty()) r.add("right counit", format_tuple(c.space, {i}), format_vector(dr, c.space));
  }
  return r;
}

namespace {

// Product in H (x) H.
SparseVec mul2(const AlgebraData& a, const SparseVec& x, const SparseVec& y) {
  const Index d = a.dim();
  VecBuilder out;
  for (const auto& [i, p] : x.entries())
    for (const auto& [j, q] : y.entries()) {
      Index i0 = i / d, i1 = i % d, j0 = j / d, j1 = j % d;
      for (const auto& [k0, u] : a.mul_basis(i0, j0).entries())
        for (const auto& [k1, v] : a.mul_basis(i1, j1).entries()) out.add(k0 * d + k1, p * q * u * v);
    }
  return out.finish();
}

}  // namespace

std::optional<SparseMatrix> invert_matrix(const SparseMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const Index n = m.rows();
  auto rows = m.row_vectors();
  std::vector<SparseVec> aug;
  for (Index i = 0; i < n; ++i) {
    SparseVec v = rows[i];
    v.add_scaled(SparseVec::unit(n + i), Scalar(1));
    aug.push_back(v);
  }
  auto red = rref_of(aug, 2 * n);
  if (red.size() < n) return std::nullopt;
  std::vector<SparseVec> inv_rows;
  for (Index k = 0; k < n; ++k) {
    if (red[k].lead() != k) return std::nullopt;
    std::vector<SparseVec::Entry> e;
    for (const auto& [j, x] : red[k].entries())
      if (j >= n) e.emplace_back(j - n, x);
      else if (j != k) return std::nullopt;
    inv_rows.push_back(SparseVec::from_pairs(std::move(e)));
  }
  return SparseMatrix::from_rows(n, inv_rows);
}

ValidationReport validate_hopf(const HopfData& h) {
  ValidationReport r;
  r.merge(validate_algebra(h.alg), "algebra: ");
  r.merge(validate_coalgebra(h.coalg), "coalgebra: ");
  const Index d = h.dim();
  const BasedSpace& s = h.space();
  if (h.coalg.space.dim() != d || h.antipode.rows() != d || h.antipode.cols() != d) {
    r.add("shape", "hopf", "algebra, coalgebra and antipode dimensions disagree");
    return r;
  }
  BasedSpace s2 = square(s);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      SparseVec lhs = h.coalg.comul.matrix().apply(h.alg.mul_basis(i, j));
      SparseVec rhs = mul2(h.alg, h.coalg.comul_basis(i), h.coalg.comul_basis(j));
      SparseVec diff = lhs - rhs;
      if (!diff.empty()) r.add("comultiplicativity", format_tuple(s, {i, j}), format_vector(diff, s2));
      Scalar e = h.coalg.counit_of(h.alg.mul_basis(i, j)) - h.coalg.counit.at(i) * h.coalg.counit.at(j);
      if (sgn(e) != 0) r.add("counit multiplicativity", format_tuple(s, {i, j}), to_string(e));
    }
  {
    SparseVec lhs = h.coalg.comul.matrix().apply(h.alg.unit);
    SparseVec rhs;
    for (const auto& [i, x] : h.alg.unit.entries())
      for (const auto& [j, y] : h.alg.unit.entries()) rhs.add_scaled(SparseVec::unit(i * d + j), x * y);
    if (!(lhs == rhs)) r.add("unit coproduct", "(1)", format_vector(lhs - rhs, s2));
    Scalar e = h.coalg.counit_of(h.alg.unit) - 1;
    if (sgn(e) != 0) r.add("unit counit", "(1)", to_string(e));
  }
  for (Index i = 0; i < d; ++i) {
    VecBuilder left, right;
    for (const auto& [k, c] : h.coalg.comul_basis(i).entries()) {
      Index a = k / d, b = k % d;
      left.add(h.alg.multiply(h.antipode.col(a), SparseVec::unit(b)), c);
      right.add(h.alg.multiply(SparseVec::unit(a), h.antipode.col(b)), c);
    }
    SparseVec target = h.alg.unit * h.coalg.counit.at(i);
    SparseVec dl = left.finish() - target;
    if (!dl.empty()) r.add("antipode left", format_tuple(s, {i}), format_vector(dl, s));
    SparseVec dr = right.finish() - target;
    if (!dr.empty()) r.add("antipode right", format_tuple(s, {i}), format_vector(dr, s));
  }
  if (h.antipode_inv.rows() != d || h.antipode_inv.cols() != d) {
    r.add("antipode inverse", "shape", "missing or wrong shape");
  } else {
    SparseMatrix id = SparseMatrix::identity(d);
    SparseMatrix a = compose(h.antipode_inv, h.antipode) - id;
    SparseMatrix b = compose(h.antipode, h.antipode_inv) - id;
    for (Index j = 0; j < d; ++j) {
      if (!a.col(j).empty()) r.add("antipode inverse (S^-1 S)", format_tuple(s, {j}), format_vector(a.col(j), s));
      if (!b.col(j).empty()) r.add("antipode inverse (S S^-1)", format_tuple(s, {j}), format_vector(b.col(j), s));
    }
  }
  return r;
}

ValidationReport validate_modular_pair_structure(const ModularPair& mp) {
  ValidationReport r;
  const HopfData& h = mp.hopf;
  const Index d = h.dim();
  const BasedSpace& s = h.space();
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      Scalar e = mp.delta.dot(h.alg.mul_basis(i, j)) - mp.delta.at(i) * mp.delta.at(j);
      if (sgn(e) != 0) r.add("character multiplicativity", format_tuple(s, {i, j}), to_string(e));
    }
  if (Scalar e = mp.delta.dot(h.alg.unit) - 1; sgn(e) != 0) r.add("character unit", "(1)", to_string(e));
  SparseVec dsig = h.coalg.comul.matrix().apply(mp.sigma);
  SparseVec ss;
  for (const auto& [i, x] : mp.sigma.entries())
    for (const auto& [j, y] : mp.sigma.entries()) ss.add_scaled(SparseVec::unit(i * d + j), x * y);
  if (!(dsig == ss)) r.add("group-like coproduct", "(sigma)", format_vector(dsig - ss, square(s)));
  if (Scalar e = h.coalg.counit_of(mp.sigma) - 1; sgn(e) != 0) r.add("group-like counit", "(sigma)", to_string(e));
  if (Scalar e = mp.delta.dot(mp.sigma) - 1; sgn(e) != 0) r.add("delta(sigma) = 1", "(sigma)", to_string(e));
  return r;
}

Terms coproduct_terms(const CoalgebraData& c, Index basis_elem, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "iterated coproduct needs n >= 1");
  MultiIndex two = MultiIndex::power(c.dim(), 2);
  auto delta = [&](Index i) -> const SparseVec& { return c.comul_basis(i); };
  Terms t = Terms::basis({basis_elem});
  for (int k = 1; k < n; ++k) t = t.map_slot(0, delta, two);
  return t;
}

StructureTensor iterated_coproduct(const CoalgebraData& c, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "iterated coproduct needs n >= 1");
  const Index d = c.dim();
  MultiIndex two = MultiIndex::power(d, 2);
  MultiIndex outmi = MultiIndex::power(d, n);
  auto delta = [&](Index i) -> const SparseVec& { return c.comul_basis(i); };
  StructureTensor t = StructureTensor::zero({c.space}, std::vector<BasedSpace>(static_cast<std::size_t>(n), c.space));
  for (Index i = 0; i < d; ++i) {
    SparseVec left = coproduct_terms(c, i, n).to_vector(outmi);
    Terms alt = Terms::basis({i});
    for (int k = 1; k < n; ++k) alt = alt.map_slot(static_cast<Index>(k - 1), delta, two);
    if (!(alt.to_vector(outmi) == left))
      throw Error(ErrorKind::BracketingMismatch, "iterated coproduct of " + c.space.labels[i] + " depends on bracketing");
    t.image[i] = std::move(left);
  }
  return t;
}

SparseMatrix twisted_antipode(const ModularPair& mp) {
  const HopfData& h = mp.hopf;
  const Index d = h.dim();
  std::vector<SparseVec> cols;
  for (Index i = 0; i < d; ++i) {
    VecBuilder b;
    for (const auto& [k, c] : h.coalg.comul_basis(i).entries()) b.add(h.antipode.col(k % d), c * mp.delta.at(k / d));
    cols.push_back(b.finish());
  }
  return SparseMatrix::from_columns(d, std::move(cols));
}

namespace {

SparseMatrix ad_sigma(const ModularPair& mp) {
  const HopfData& h = mp.hopf;
  SparseVec inv = h.antipode.apply(mp.sigma);
  std::vector<SparseVec> cols;
  for (Index i = 0; i < h.dim(); ++i) cols.push_back(h.alg.product({mp.sigma, SparseVec::unit(i), inv}));
  return SparseMatrix::from_columns(h.dim(), std::move(cols));
}

}  // namespace

bool literal_involution_holds(const ModularPair& mp) { return twisted_antipode(mp) == ad_sigma(mp); }

bool squared_involution_holds(const ModularPair& mp) {
  SparseMatrix t = twisted_antipode(mp);
  return compose(t, t) == ad_sigma(mp);
}

}  // namespace hc
