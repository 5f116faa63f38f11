#include "hopfcyc/cohomology.hpp"

#include <sstream>

#include "hopfcyc/errors.hpp"

namespace hc {

namespace {

std::size_t sz(int n) { return static_cast<std::size_t>(n); }

SparseMatrix signed_sum(const std::vector<SparseMatrix>& ops, Index rows, Index cols) {
  SparseMatrix r = SparseMatrix::zero(rows, cols);
  for (std::size_t i = 0; i < ops.size(); ++i) r = r + (i % 2 == 0 ? ops[i] : ops[i] * Scalar(-1));
  return r;
}

std::vector<SparseVec> columns(const SparseMatrix& m) {
  std::vector<SparseVec> v;
  v.reserve(m.cols());
  for (Index j = 0; j < m.cols(); ++j) v.push_back(m.col(j));
  return v;
}

// Classes of ker(next) modulo im(prev), one echelon representative each.
std::vector<SparseVec> class_representatives(const SparseMatrix& next, const SparseMatrix* prev, Index dim) {
  Echelon e(dim);
  if (prev)
    for (Index j = 0; j < prev->cols(); ++j) e.insert(prev->col(j));
  std::vector<SparseVec> reps;
  for (auto& v : kernel_basis(next))
    if (e.insert(v)) reps.push_back(std::move(v));
  return reps;
}

}  // namespace

std::vector<SparseMatrix> hochschild_b(const CocyclicComplex& c) {
  std::vector<SparseMatrix> b;
  for (int n = 0; n <= c.maxdeg; ++n) b.push_back(signed_sum(c.faces[sz(n)], c.dim(n + 1), c.dim(n)));
  for (int n = 0; n + 1 <= c.maxdeg; ++n)
    if (!compose(b[sz(n + 1)], b[sz(n)]).is_zero())
      throw Error(ErrorKind::NotAComplex, "b b != 0 starting in degree " + std::to_string(n));
  return b;
}

SparseMatrix cyclic_lambda(const CocyclicComplex& c, int n) {
  return n % 2 == 0 ? c.cyclic(n) : c.cyclic(n) * Scalar(-1);
}

namespace {

// B on degree n with lambda = sign * tau_{n-1} in the norm, sign = (-1)^(n-1+shift).
SparseMatrix connes_B_degree(const CocyclicComplex& c, int n, int shift) {
  const SparseMatrix& t = c.cyclic(n);
  SparseMatrix one = SparseMatrix::identity(c.dim(n));
  SparseMatrix inner = n % 2 == 0 ? one - t : one + t;
  SparseMatrix b0 = compose(c.degen(n, n - 1), compose(t, inner));
  SparseMatrix lam = (n - 1 + shift) % 2 == 0 ? c.cyclic(n - 1) : c.cyclic(n - 1) * Scalar(-1);
  SparseMatrix norm = SparseMatrix::identity(c.dim(n - 1));
  SparseMatrix p = norm;
  for (int k = 1; k < n; ++k) {
    p = compose(lam, p);
    norm = norm + p;
  }
  return compose(norm, b0);
}

bool bb_certificates(const std::vector<SparseMatrix>& b, const std::vector<SparseMatrix>& B, int maxdeg,
                     std::string& failure) {
  const int T = maxdeg + 1;
  for (int n = 2; n <= T; ++n)
    if (!compose(B[sz(n - 1)], B[sz(n)]).is_zero()) {
      failure = "B B != 0 in degree " + std::to_string(n);
      return false;
    }
  for (int n = 0; n <= maxdeg; ++n) {
    SparseMatrix s = compose(B[sz(n + 1)], b[sz(n)]);
    if (n >= 1) s = s + compose(b[sz(n - 1)], B[sz(n)]);
    if (!s.is_zero()) {
      failure = "bB + Bb != 0 in degree " + std::to_string(n);
      return false;
    }
  }
  return true;
}

}  // namespace

BBData connes_B(const CocyclicComplex& c) {
  BBData d;
  d.b = hochschild_b(c);
  const int T = c.top();
  std::string failures;
  for (int shift : {0, 1}) {
    std::vector<SparseMatrix> B{SparseMatrix::zero(0, c.dim(0))};
    for (int n = 1; n <= T; ++n) B.push_back(connes_B_degree(c, n, shift));
    std::string failure;
    if (bb_certificates(d.b, B, c.maxdeg, failure)) {
      d.B = std::move(B);
      d.placement = shift == 0 ? "norm on degree n-1 with lambda = (-1)^(n-1) tau_(n-1)"
                               : "norm on degree n-1 with lambda = (-1)^(n-2) tau_(n-1)";
      return d;
    }
    failures += " [shift " + std::to_string(shift) + ": " + failure + "]";
  }
  throw Error(ErrorKind::NotAComplex, "no placement of the norm operator gives a mixed complex:" + failures);
}

SparseMatrix total_differential(const BBData& bb, const CocyclicComplex& c, int n) {
  auto blocks = [&](int deg) {
    std::vector<int> degs;
    for (int m = deg; m >= 0; m -= 2) degs.push_back(m);
    return degs;
  };
  const auto src = blocks(n), dst = blocks(n + 1);
  std::vector<Index> dst_off;
  Index rows = 0;
  for (int m : dst) {
    dst_off.push_back(rows);
    rows += c.dim(m);
  }
  std::vector<SparseVec> cols;
  for (std::size_t k = 0; k < src.size(); ++k) {
    const int m = src[k];
    for (Index j = 0; j < c.dim(m); ++j) {
      VecBuilder v;
      for (const auto& [i, x] : bb.b[sz(m)].col(j).entries()) v.add(dst_off[k] + i, x);
      if (m >= 1)
        for (const auto& [i, x] : bb.B[sz(m)].col(j).entries()) v.add(dst_off[k + 1] + i, x);
      cols.push_back(v.finish());
    }
  }
  return SparseMatrix::from_columns(rows, std::move(cols));
}

CohomologyReport compute_cohomology(const CocyclicComplex& c) {
  BBData bb = connes_B(c);
  CohomologyReport r;
  r.maxdeg = c.maxdeg;
  r.placement = bb.placement;
  const int N = c.maxdeg;
  for (int n = 0; n <= N; ++n) {
    const SparseMatrix* prev = n >= 1 ? &bb.b[sz(n - 1)] : nullptr;
    r.hh_reps.push_back(class_representatives(bb.b[sz(n)], prev, c.dim(n)));
    r.hh.push_back(r.hh_reps.back().size());
  }
  SparseMatrix prev_d;
  for (int n = 0; n <= N; ++n) {
    SparseMatrix d = total_differential(bb, c, n);
    r.hc_reps.push_back(class_representatives(d, n >= 1 ? &prev_d : nullptr, d.cols()));
    r.hc.push_back(r.hc_reps.back().size());
    r.hc_trusted.push_back(n <= N - 2);
    prev_d = std::move(d);
  }
  // Periodic report: the last trusted degree of each parity, stable when it
  // agrees with the trusted degree two below.
  for (int parity : {0, 1}) {
    int last = -1;
    for (int n = 0; n <= N; ++n)
      if (r.hc_trusted[sz(n)] && n % 2 == parity) last = n;
    Index val = last >= 0 ? r.hc[sz(last)] : 0;
    bool stable = last >= 2 && r.hc[sz(last - 2)] == val;
    (parity == 0 ? r.hp_even : r.hp_odd) = val;
    (parity == 0 ? r.hp_even_stable : r.hp_odd_stable) = stable;
  }
  return r;
}

std::string CohomologyReport::to_text() const {
  std::ostringstream os;
  os << "cohomology-report 1\n";
  for (std::size_t n = 0; n < hh.size(); ++n) os << "HH " << n << " " << hh[n] << "\n";
  for (std::size_t n = 0; n < hc.size(); ++n)
    os << "HC " << n << " " << hc[n] << " " << (hc_trusted[n] ? "trusted" : "untrusted") << "\n";
  os << "HP even " << hp_even << " " << (hp_even_stable ? "stable" : "unstable") << "\n";
  os << "HP odd " << hp_odd << " " << (hp_odd_stable ? "stable" : "unstable") << "\n";
  return os.str();
}

std::vector<SparseVec> cyclic_cocycles(const CocyclicComplex& c, int n) {
  std::vector<SparseMatrix> b = hochschild_b(c);
  SparseMatrix one_minus = SparseMatrix::identity(c.dim(n)) - cyclic_lambda(c, n);
  std::vector<SparseVec> rows = b[sz(n)].row_vectors();
  for (auto& r : one_minus.row_vectors()) rows.push_back(std::move(r));
  return kernel_basis(SparseMatrix::from_rows(c.dim(n), rows));
}

std::vector<SparseVec> hochschild_cocycles(const CocyclicComplex& c, int n) {
  return kernel_basis(signed_sum(c.faces[sz(n)], c.dim(n + 1), c.dim(n)));
}

bool is_hochschild_coboundary(const CocyclicComplex& c, int n, const SparseVec& v) {
  if (n == 0) return v.empty();
  SparseMatrix b = signed_sum(c.faces[sz(n - 1)], c.dim(n), c.dim(n - 1));
  Echelon e(c.dim(n));
  for (const auto& col : columns(b)) e.insert(col);
  return e.contains(v);
}

bool is_cyclic_coboundary(const CocyclicComplex& c, int n, const SparseVec& v) {
  if (n == 0) return v.empty();
  SparseMatrix b = signed_sum(c.faces[sz(n - 1)], c.dim(n), c.dim(n - 1));
  SparseMatrix one_minus = SparseMatrix::identity(c.dim(n - 1)) - cyclic_lambda(c, n - 1);
  Echelon e(c.dim(n));
  for (const auto& w : kernel_basis(one_minus)) e.insert(b.apply(w));
  return e.contains(v);
}

}  // namespace hc
