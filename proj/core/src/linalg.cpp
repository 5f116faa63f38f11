#include "hopfcyc/linalg.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "hopfcyc/errors.hpp"

namespace hc {

BasedSpace::BasedSpace(std::vector<std::string> l) : labels(std::move(l)) {
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) throw Error(ErrorKind::InvalidArgument, "duplicate basis label");
}

BasedSpace BasedSpace::numbered(Index dim, const std::string& prefix) {
  std::vector<std::string> l;
  l.reserve(dim);
  for (Index i = 0; i < dim; ++i) l.push_back(prefix + std::to_string(i));
  BasedSpace s;
  s.labels = std::move(l);
  return s;
}

BasedSpace tensor_space(const BasedSpace& a, const BasedSpace& b) {
  BasedSpace s;
  s.labels.reserve(a.dim() * b.dim());
  for (const auto& x : a.labels)
    for (const auto& y : b.labels) s.labels.push_back(x + "|" + y);
  return s;
}

BasedSpace tensor_power(const BasedSpace& a, int k) {
  BasedSpace s;
  s.labels = {"1"};
  for (int i = 0; i < k; ++i) s = i == 0 ? a : tensor_space(s, a);
  return s;
}

// ---------------------------------------------------------------- SparseVec

SparseVec SparseVec::unit(Index i, Scalar c) {
  SparseVec v;
  if (sgn(c) != 0) v.e_.emplace_back(i, std::move(c));
  return v;
}

SparseVec SparseVec::from_pairs(std::vector<Entry> pairs) {
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Entry& a, const Entry& b) { return a.first < b.first; });
  SparseVec v;
  v.e_.reserve(pairs.size());
  for (auto& p : pairs) {
    if (!v.e_.empty() && v.e_.back().first == p.first) {
      v.e_.back().second += p.second;
      if (sgn(v.e_.back().second) == 0) v.e_.pop_back();
    } else if (sgn(p.second) != 0) {
      v.e_.push_back(std::move(p));
    }
  }
  return v;
}

SparseVec SparseVec::from_dense(const std::vector<Scalar>& dense) {
  SparseVec v;
  for (Index i = 0; i < dense.size(); ++i)
    if (sgn(dense[i]) != 0) v.e_.emplace_back(i, dense[i]);
  return v;
}

Scalar SparseVec::at(Index i) const {
  auto it = std::lower_bound(e_.begin(), e_.end(), i,
                             [](const Entry& a, Index k) { return a.first < k; });
  if (it != e_.end() && it->first == i) return it->second;
  return Scalar(0);
}

SparseVec& SparseVec::add_scaled(const SparseVec& o, const Scalar& c) {
  if (sgn(c) == 0 || o.e_.empty()) return *this;
  std::vector<Entry> out;
  out.reserve(e_.size() + o.e_.size());
  auto a = e_.begin();
  auto b = o.e_.begin();
  while (a != e_.end() || b != o.e_.end()) {
    if (b == o.e_.end() || (a != e_.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == e_.end() || b->first < a->first) {
      out.emplace_back(b->first, b->second * c);
      ++b;
    } else {
      Scalar s = a->second + b->second * c;
      if (sgn(s) != 0) out.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  e_ = std::move(out);
  return *this;
}

SparseVec& SparseVec::scale(const Scalar& c) {
  if (sgn(c) == 0) {
    e_.clear();
    return *this;
  }
  for (auto& p : e_) p.second *= c;
  return *this;
}

SparseVec SparseVec::operator+(const SparseVec& o) const {
  SparseVec r = *this;
  r.add_scaled(o, Scalar(1));
  return r;
}

SparseVec SparseVec::operator-(const SparseVec& o) const {
  SparseVec r = *this;
  r.add_scaled(o, Scalar(-1));
  return r;
}

SparseVec SparseVec::operator*(const Scalar& c) const {
  SparseVec r = *this;
  r.scale(c);
  return r;
}

Scalar SparseVec::dot(const SparseVec& o) const {
  Scalar s(0);
  auto a = e_.begin();
  auto b = o.e_.begin();
  while (a != e_.end() && b != o.e_.end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      s += a->second * b->second;
      ++a;
      ++b;
    }
  }
  return s;
}

std::vector<Scalar> SparseVec::to_dense(Index dim) const {
  std::vector<Scalar> d(dim, Scalar(0));
  for (const auto& [i, c] : e_) d.at(i) = c;
  return d;
}

void VecBuilder::add(const SparseVec& v, const Scalar& c) {
  if (sgn(c) == 0) return;
  for (const auto& [i, x] : v.entries()) pairs_.emplace_back(i, x * c);
}

// ------------------------------------------------------------- SparseMatrix

SparseMatrix::SparseMatrix(Index rows, Index cols) : rows_(rows), cols_(cols) {}

SparseMatrix SparseMatrix::identity(Index n) {
  SparseMatrix m(n, n);
  for (Index i = 0; i < n; ++i) m.cols_[i] = SparseVec::unit(i);
  return m;
}

SparseMatrix SparseMatrix::from_columns(Index rows, std::vector<SparseVec> cols) {
  SparseMatrix m;
  m.rows_ = rows;
  for (const auto& c : cols)
    if (!c.empty() && c.max_index() >= rows) throw Error(ErrorKind::ShapeMismatch, "column entry out of range");
  m.cols_ = std::move(cols);
  return m;
}

SparseMatrix SparseMatrix::from_rows(Index cols, const std::vector<SparseVec>& rows) {
  std::vector<std::vector<SparseVec::Entry>> c(cols);
  for (Index r = 0; r < rows.size(); ++r)
    for (const auto& [j, x] : rows[r].entries()) {
      if (j >= cols) throw Error(ErrorKind::ShapeMismatch, "row entry out of range");
      c[j].emplace_back(r, x);
    }
  SparseMatrix m(rows.size(), cols);
  for (Index j = 0; j < cols; ++j) m.cols_[j] = SparseVec::from_pairs(std::move(c[j]));
  return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Scalar>>& rows) {
  Index ncols = rows.empty() ? 0 : rows.front().size();
  std::vector<SparseVec> rv;
  for (const auto& r : rows) {
    if (r.size() != ncols) throw Error(ErrorKind::ShapeMismatch, "ragged dense matrix");
    rv.push_back(SparseVec::from_dense(r));
  }
  return from_rows(ncols, rv);
}

void SparseMatrix::set_col(Index j, SparseVec v) {
  if (!v.empty() && v.max_index() >= rows_) throw Error(ErrorKind::ShapeMismatch, "column entry out of range");
  cols_.at(j) = std::move(v);
}

std::size_t SparseMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& c : cols_) n += c.nnz();
  return n;
}

bool SparseMatrix::is_zero() const {
  for (const auto& c : cols_)
    if (!c.empty()) return false;
  return true;
}

SparseVec SparseMatrix::apply(const SparseVec& v) const {
  if (!v.empty() && v.max_index() >= cols()) throw Error(ErrorKind::ShapeMismatch, "vector longer than matrix width");
  VecBuilder b;
  for (const auto& [j, x] : v.entries()) b.add(cols_[j], x);
  return b.finish();
}

std::vector<SparseVec> SparseMatrix::row_vectors() const {
  std::vector<std::vector<SparseVec::Entry>> r(rows_);
  for (Index j = 0; j < cols(); ++j)
    for (const auto& [i, x] : cols_[j].entries()) r[i].emplace_back(j, x);
  std::vector<SparseVec> out;
  out.reserve(rows_);
  for (auto& e : r) out.push_back(SparseVec::from_pairs(std::move(e)));
  return out;
}

SparseMatrix SparseMatrix::transpose() const { return from_columns(cols(), row_vectors()); }

SparseMatrix SparseMatrix::operator+(const SparseMatrix& o) const {
  if (rows_ != o.rows_ || cols() != o.cols()) throw Error(ErrorKind::ShapeMismatch, "matrix sum");
  SparseMatrix r = *this;
  for (Index j = 0; j < cols(); ++j) r.cols_[j].add_scaled(o.cols_[j], Scalar(1));
  return r;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& o) const {
  if (rows_ != o.rows_ || cols() != o.cols()) throw Error(ErrorKind::ShapeMismatch, "matrix difference");
  SparseMatrix r = *this;
  for (Index j = 0; j < cols(); ++j) r.cols_[j].add_scaled(o.cols_[j], Scalar(-1));
  return r;
}

SparseMatrix SparseMatrix::operator*(const Scalar& c) const {
  SparseMatrix r = *this;
  for (auto& col : r.cols_) col.scale(c);
  return r;
}

std::string SparseMatrix::serialize() const {
  std::ostringstream os;
  os << rows_ << ' ' << cols() << '\n';
  auto rows = row_vectors();
  for (Index i = 0; i < rows.size(); ++i)
    for (const auto& [j, x] : rows[i].entries()) os << i << ' ' << j << ' ' << to_string(x) << '\n';
  return os.str();
}

SparseMatrix SparseMatrix::parse(const std::string& text) {
  std::istringstream is(text);
  Index r = 0, c = 0;
  if (!(is >> r >> c)) throw Error(ErrorKind::ParseError, "matrix header");
  std::vector<std::vector<SparseVec::Entry>> cols(c);
  Index i = 0, j = 0;
  std::string val;
  while (is >> i >> j >> val) {
    if (i >= r || j >= c) throw Error(ErrorKind::ParseError, "matrix entry out of range");
    cols[j].emplace_back(i, parse_scalar(val));
  }
  if (!is.eof()) throw Error(ErrorKind::ParseError, "malformed matrix entry");
  SparseMatrix m(r, c);
  for (Index k = 0; k < c; ++k) m.cols_[k] = SparseVec::from_pairs(std::move(cols[k]));
  return m;
}

SparseMatrix compose(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::ShapeMismatch, "compose: inner dimensions differ");
  std::vector<SparseVec> cols;
  cols.reserve(b.cols());
  for (Index j = 0; j < b.cols(); ++j) cols.push_back(a.apply(b.col(j)));
  return SparseMatrix::from_columns(a.rows(), std::move(cols));
}

SparseMatrix tensor_kron(const SparseMatrix& a, const SparseMatrix& b) {
  std::vector<SparseVec> cols;
  cols.reserve(a.cols() * b.cols());
  for (Index j = 0; j < a.cols(); ++j)
    for (Index l = 0; l < b.cols(); ++l) {
      std::vector<SparseVec::Entry> e;
      for (const auto& [i, x] : a.col(j).entries())
        for (const auto& [k, y] : b.col(l).entries()) e.emplace_back(i * b.rows() + k, x * y);
      cols.push_back(SparseVec::from_pairs(std::move(e)));
    }
  return SparseMatrix::from_columns(a.rows() * b.rows(), std::move(cols));
}

SparseMatrix matrix_power(const SparseMatrix& a, int k) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::ShapeMismatch, "power of non-square matrix");
  SparseMatrix r = SparseMatrix::identity(a.rows());
  for (int i = 0; i < k; ++i) r = compose(a, r);
  return r;
}

// ---------------------------------------------------------------- Echelon

namespace {

using IntRow = std::vector<std::pair<Index, Integer>>;

void make_primitive(IntRow& v) {
  if (v.empty()) return;
  Integer g = 0;
  for (const auto& p : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), p.second.get_mpz_t());
    if (g == 1) break;
  }
  if (v.front().second < 0) g = -g;
  if (g != 1)
    for (auto& p : v) mpz_divexact(p.second.get_mpz_t(), p.second.get_mpz_t(), g.get_mpz_t());
}

IntRow to_int_row(const SparseVec& v) {
  Integer l = 1;
  for (const auto& [i, x] : v.entries()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntRow r;
  r.reserve(v.nnz());
  for (const auto& [i, x] : v.entries()) {
    Integer n = x.get_num() * (l / x.get_den());
    r.emplace_back(i, std::move(n));
  }
  make_primitive(r);
  return r;
}

// a*v - b*w
IntRow combine(const Integer& a, const IntRow& v, const Integer& b, const IntRow& w) {
  IntRow out;
  out.reserve(v.size() + w.size());
  auto x = v.begin();
  auto y = w.begin();
  while (x != v.end() || y != w.end()) {
    if (y == w.end() || (x != v.end() && x->first < y->first)) {
      out.emplace_back(x->first, a * x->second);
      ++x;
    } else if (x == v.end() || y->first < x->first) {
      out.emplace_back(y->first, -b * y->second);
      ++y;
    } else {
      Integer s = a * x->second - b * y->second;
      if (s != 0) out.emplace_back(x->first, std::move(s));
      ++x;
      ++y;
    }
  }
  return out;
}

}  // namespace

Echelon::IntRow Echelon::reduce(IntRow v) const {
  while (!v.empty()) {
    Index p = v.front().first;
    long r = pivot_row_[p];
    if (r < 0) return v;
    const IntRow& row = rows_[static_cast<Index>(r)];
    Integer g = gcd(row.front().second, v.front().second);
    Integer a = row.front().second / g;
    Integer b = v.front().second / g;
    v = combine(a, v, b, row);
    make_primitive(v);
  }
  return v;
}

bool Echelon::insert(const SparseVec& v) {
  if (!v.empty() && v.max_index() >= dim_) throw Error(ErrorKind::ShapeMismatch, "echelon vector out of range");
  IntRow r = reduce(to_int_row(v));
  if (r.empty()) return false;
  pivot_row_[r.front().first] = static_cast<long>(rows_.size());
  rows_.push_back(std::move(r));
  return true;
}

bool Echelon::contains(const SparseVec& v) const {
  if (!v.empty() && v.max_index() >= dim_) return false;
  return reduce(to_int_row(v)).empty();
}

std::vector<SparseVec> Echelon::rref() const {
  std::vector<Index> order;
  for (Index p = 0; p < dim_; ++p)
    if (pivot_row_[p] >= 0) order.push_back(p);
  std::vector<SparseVec> out;
  out.reserve(order.size());
  for (Index p : order) {
    const IntRow& r = rows_[static_cast<Index>(pivot_row_[p])];
    std::vector<SparseVec::Entry> e;
    e.reserve(r.size());
    for (const auto& [i, x] : r) {
      Scalar s(x, r.front().second);
      s.canonicalize();
      e.emplace_back(i, std::move(s));
    }
    out.push_back(SparseVec::from_pairs(std::move(e)));
  }
  for (Index k = out.size(); k-- > 0;) {
    Index p = order[k];
    for (Index j = 0; j < k; ++j) {
      Scalar c = out[j].at(p);
      if (sgn(c) != 0) out[j].add_scaled(out[k], -c);
    }
  }
  return out;
}

std::vector<SparseVec> rref_of(const std::vector<SparseVec>& vectors, Index dim) {
  Echelon e(dim);
  for (const auto& v : vectors) e.insert(v);
  return e.rref();
}

std::vector<SparseVec> kernel_basis(const SparseMatrix& m) {
  auto rows = rref_of(m.row_vectors(), m.cols());
  std::vector<long> pivot_of_col(m.cols(), -1);
  for (Index r = 0; r < rows.size(); ++r) pivot_of_col[rows[r].lead()] = static_cast<long>(r);
  std::vector<SparseVec> out;
  for (Index f = 0; f < m.cols(); ++f) {
    if (pivot_of_col[f] >= 0) continue;
    std::vector<SparseVec::Entry> e;
    e.emplace_back(f, Scalar(1));
    for (const auto& row : rows) {
      Scalar c = row.at(f);
      if (sgn(c) != 0) e.emplace_back(row.lead(), -c);
    }
    out.push_back(SparseVec::from_pairs(std::move(e)));
  }
  return out;
}

Index image_rank(const SparseMatrix& m) {
  Echelon e(m.rows());
  for (Index j = 0; j < m.cols(); ++j) e.insert(m.col(j));
  return e.rank();
}

std::vector<SparseVec> right_echelon(const std::vector<SparseVec>& vectors, Index dim) {
  auto flip = [dim](const SparseVec& v) {
    std::vector<SparseVec::Entry> e;
    for (const auto& [i, x] : v.entries()) e.emplace_back(dim - 1 - i, x);
    return SparseVec::from_pairs(std::move(e));
  };
  std::vector<SparseVec> flipped;
  flipped.reserve(vectors.size());
  for (const auto& v : vectors) flipped.push_back(flip(v));
  auto r = rref_of(flipped, dim);
  std::vector<SparseVec> out;
  for (auto it = r.rbegin(); it != r.rend(); ++it) out.push_back(flip(*it));
  return out;
}

Index quotient_dim(const std::vector<SparseVec>& big, const std::vector<SparseVec>& small, Index dim) {
  Echelon b(dim);
  for (const auto& v : big) b.insert(v);
  Echelon s(dim);
  for (Index k = 0; k < small.size(); ++k) {
    if (!b.contains(small[k]))
      throw Error(ErrorKind::SubspaceNotContained, "vector " + std::to_string(k) + " of the small set lies outside span(big)");
    s.insert(small[k]);
  }
  return b.rank() - s.rank();
}

// --------------------------------------------------------------- Subspace

Subspace Subspace::from_key_basis(Index ambient, std::vector<SparseVec> basis, bool trailing_keys) {
  Subspace s;
  s.ambient = ambient;
  for (const auto& v : basis) s.keys.push_back(trailing_keys ? v.max_index() : v.lead());
  s.basis = std::move(basis);
  return s;
}

Subspace Subspace::whole(Index ambient) {
  Subspace s;
  s.ambient = ambient;
  for (Index i = 0; i < ambient; ++i) {
    s.basis.push_back(SparseVec::unit(i));
    s.keys.push_back(i);
  }
  return s;
}

bool Subspace::coordinates(const SparseVec& v, SparseVec& out) const {
  std::vector<SparseVec::Entry> e;
  VecBuilder recon;
  for (Index k = 0; k < keys.size(); ++k) {
    Scalar c = v.at(keys[k]);
    if (sgn(c) != 0) {
      e.emplace_back(k, c);
      recon.add(basis[k], c);
    }
  }
  out = SparseVec::from_pairs(std::move(e));
  return recon.finish() == v;
}

SparseMatrix Subspace::inclusion() const { return SparseMatrix::from_columns(ambient, basis); }

// --------------------------------------------------------------- Quotient

Quotient Quotient::make(Index ambient, const std::vector<SparseVec>& relations) {
  Quotient q;
  q.ambient = ambient;
  q.relation_rref = rref_of(relations, ambient);
  q.pivot_pos.assign(ambient, -1);
  for (const auto& r : q.relation_rref) {
    q.pivot_pos[r.lead()] = static_cast<long>(q.pivots.size());
    q.pivots.push_back(r.lead());
  }
  q.complement_pos.assign(ambient, -1);
  for (Index i = 0; i < ambient; ++i)
    if (q.pivot_pos[i] < 0) {
      q.complement_pos[i] = static_cast<long>(q.complement.size());
      q.complement.push_back(i);
    }
  return q;
}

SparseVec Quotient::project(const SparseVec& v) const {
  // rref rows vanish at every pivot but their own, so one pass suffices.
  VecBuilder b;
  for (const auto& [i, x] : v.entries()) {
    if (i >= ambient) throw Error(ErrorKind::ShapeMismatch, "quotient projection out of range");
    b.add(i, x);
    long k = pivot_pos[i];
    if (k >= 0) b.add(relation_rref[static_cast<Index>(k)], -x);
  }
  SparseVec w = b.finish();
  std::vector<SparseVec::Entry> e;
  for (const auto& [i, x] : w.entries()) {
    long pos = complement_pos[i];
    if (pos < 0) throw Error(ErrorKind::IllDefined, "quotient reduction left a pivot entry");
    e.emplace_back(static_cast<Index>(pos), x);
  }
  return SparseVec::from_pairs(std::move(e));
}

SparseMatrix Quotient::projection() const {
  std::vector<SparseVec> cols;
  cols.reserve(ambient);
  for (Index i = 0; i < ambient; ++i) cols.push_back(project(SparseVec::unit(i)));
  return SparseMatrix::from_columns(dim(), std::move(cols));
}

SparseMatrix Quotient::section() const {
  std::vector<SparseVec> cols;
  for (Index i : complement) cols.push_back(SparseVec::unit(i));
  return SparseMatrix::from_columns(ambient, std::move(cols));
}

bool Quotient::in_relations(const SparseVec& v) const { return project(v).empty(); }

}  // namespace hc
