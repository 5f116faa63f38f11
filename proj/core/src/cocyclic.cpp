#include "hopfcyc/cocyclic.hpp"

#include <sstream>

#include "hopfcyc/errors.hpp"

namespace hc {

const SparseMatrix& CocyclicComplex::face(int n, int i) const {
  return faces.at(static_cast<std::size_t>(n)).at(static_cast<std::size_t>(i));
}

const SparseMatrix& CocyclicComplex::degen(int n, int j) const {
  return degens.at(static_cast<std::size_t>(n)).at(static_cast<std::size_t>(j));
}

namespace {

std::string where_of(int n, int i = -1, int j = -1) {
  std::string s = "(n=" + std::to_string(n);
  if (i >= 0) s += ",i=" + std::to_string(i);
  if (j >= 0) s += ",j=" + std::to_string(j);
  return s + ")";
}

std::string describe_difference(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    return "shape " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
           std::to_string(b.rows()) + "x" + std::to_string(b.cols());
  SparseMatrix d = a - b;
  for (Index c = 0; c < d.cols(); ++c)
    if (!d.col(c).empty()) {
      const auto& [r, x] = d.col(c).entries().front();
      return std::to_string(d.nnz()) + " entries differ, first (" + std::to_string(r) + "," + std::to_string(c) +
             ") by " + to_string(x);
    }
  return "";
}

void expect_equal(ValidationReport& r, const char* law, const std::string& where, const SparseMatrix& a,
                  const SparseMatrix& b) {
  if (a.rows() == b.rows() && a.cols() == b.cols() && a == b) return;
  r.add(law, where, describe_difference(a, b));
}

}  // namespace

ValidationReport check_cocyclic(const CocyclicComplex& c) {
  ValidationReport r;
  const int N = c.maxdeg;
  const int T = c.top();
  // d_j d_i = d_i d_{j-1}, i < j, starting at degree n
  for (int n = 0; n + 1 <= N; ++n)
    for (int j = 0; j <= n + 2; ++j)
      for (int i = 0; i < j; ++i)
        expect_equal(r, "ds", where_of(n, i, j), compose(c.face(n + 1, j), c.face(n, i)),
                     compose(c.face(n + 1, i), c.face(n, j - 1)));
  // s_j s_i = s_i s_{j+1}, i <= j, starting at degree n
  for (int n = 2; n <= T; ++n)
    for (int j = 0; j <= n - 2; ++j)
      for (int i = 0; i <= j; ++i)
        expect_equal(r, "ds", where_of(n, i, j), compose(c.degen(n - 1, j), c.degen(n, i)),
                     compose(c.degen(n - 1, i), c.degen(n, j + 1)));
  // s_j d_i at degree n
  for (int n = 0; n <= N; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n + 1; ++i) {
        SparseMatrix lhs = compose(c.degen(n + 1, j), c.face(n, i));
        SparseMatrix rhs;
        if (i < j)
          rhs = compose(c.face(n - 1, i), c.degen(n, j - 1));
        else if (i == j || i == j + 1)
          rhs = SparseMatrix::identity(c.dim(n));
        else
          rhs = compose(c.face(n - 1, i - 1), c.degen(n, j));
        expect_equal(r, "sd", where_of(n, i, j), lhs, rhs);
      }
  // t_n d_i = d_{i-1} t_{n-1}, t_n d_0 = d_n, with d_i : n-1 -> n
  for (int n = 1; n <= N + 1; ++n) {
    expect_equal(r, "ci", where_of(n, 0), compose(c.cyclic(n), c.face(n - 1, 0)), c.face(n - 1, n));
    for (int i = 1; i <= n; ++i)
      expect_equal(r, "ci", where_of(n, i), compose(c.cyclic(n), c.face(n - 1, i)),
                   compose(c.face(n - 1, i - 1), c.cyclic(n - 1)));
  }
  // t_n s_i = s_{i-1} t_{n+1}, t_n s_0 = s_n t_{n+1}^2, with s_i : n+1 -> n
  for (int n = 0; n + 1 <= T; ++n) {
    expect_equal(r, "cj", where_of(n, -1, 0), compose(c.cyclic(n), c.degen(n + 1, 0)),
                 compose(c.degen(n + 1, n), compose(c.cyclic(n + 1), c.cyclic(n + 1))));
    for (int i = 1; i <= n; ++i)
      expect_equal(r, "cj", where_of(n, -1, i), compose(c.cyclic(n), c.degen(n + 1, i)),
                   compose(c.degen(n + 1, i - 1), c.cyclic(n + 1)));
  }
  for (int n = 0; n <= T; ++n)
    expect_equal(r, "ce", where_of(n), matrix_power(c.cyclic(n), n + 1), SparseMatrix::identity(c.dim(n)));
  return r;
}

CocyclicComplex constant_complex(int maxdeg) {
  CocyclicComplex c;
  c.maxdeg = maxdeg;
  const int T = maxdeg + 1;
  for (int n = 0; n <= T; ++n) {
    c.spaces.push_back(BasedSpace({"1"}));
    c.tau.push_back(SparseMatrix::identity(1));
    c.faces.emplace_back();
    c.degens.emplace_back();
    if (n <= maxdeg)
      for (int i = 0; i <= n + 1; ++i) c.faces.back().push_back(SparseMatrix::identity(1));
    for (int j = 0; j < n; ++j) c.degens.back().push_back(SparseMatrix::identity(1));
  }
  c.certificate = "constant";
  return c;
}

// ------------------------------------------------------------ bicocyclic

int BicocyclicComplex::maxdeg() const { return std::min(first.maxdeg, second.maxdeg); }

SparseMatrix BicocyclicComplex::hface(int p, int q, int i) const {
  return tensor_kron(first.face(p, i), SparseMatrix::identity(second.dim(q)));
}
SparseMatrix BicocyclicComplex::hdegen(int p, int q, int j) const {
  return tensor_kron(first.degen(p, j), SparseMatrix::identity(second.dim(q)));
}
SparseMatrix BicocyclicComplex::htau(int p, int q) const {
  return tensor_kron(first.cyclic(p), SparseMatrix::identity(second.dim(q)));
}
SparseMatrix BicocyclicComplex::vface(int p, int q, int i) const {
  return tensor_kron(SparseMatrix::identity(first.dim(p)), second.face(q, i));
}
SparseMatrix BicocyclicComplex::vdegen(int p, int q, int j) const {
  return tensor_kron(SparseMatrix::identity(first.dim(p)), second.degen(q, j));
}
SparseMatrix BicocyclicComplex::vtau(int p, int q) const {
  return tensor_kron(SparseMatrix::identity(first.dim(p)), second.cyclic(q));
}

BicocyclicComplex tensor_bicocyclic(const CocyclicComplex& c1, const CocyclicComplex& c2) {
  return BicocyclicComplex{c1, c2};
}

namespace {

CocyclicComplex diagonal_shell(const CocyclicComplex& c1, const CocyclicComplex& c2) {
  CocyclicComplex d;
  d.maxdeg = std::min(c1.maxdeg, c2.maxdeg);
  for (int n = 0; n <= d.top(); ++n) {
    d.spaces.push_back(tensor_space(c1.spaces[static_cast<std::size_t>(n)], c2.spaces[static_cast<std::size_t>(n)]));
    d.faces.emplace_back();
    d.degens.emplace_back();
  }
  return d;
}

}  // namespace

CocyclicComplex diagonal(const BicocyclicComplex& b) {
  CocyclicComplex d = diagonal_shell(b.first, b.second);
  for (int n = 0; n <= d.top(); ++n) {
    auto& fs = d.faces[static_cast<std::size_t>(n)];
    if (n <= d.maxdeg)
      for (int i = 0; i <= n + 1; ++i) fs.push_back(compose(b.hface(n, n + 1, i), b.vface(n, n, i)));
    for (int j = 0; j < n; ++j)
      d.degens[static_cast<std::size_t>(n)].push_back(compose(b.hdegen(n, n - 1, j), b.vdegen(n, n, j)));
    d.tau.push_back(compose(b.htau(n, n), b.vtau(n, n)));
  }
  d.certificate = "diagonal";
  return d;
}

CocyclicComplex product_complex(const CocyclicComplex& c1, const CocyclicComplex& c2) {
  CocyclicComplex d = diagonal_shell(c1, c2);
  for (int n = 0; n <= d.top(); ++n) {
    auto& fs = d.faces[static_cast<std::size_t>(n)];
    if (n <= d.maxdeg)
      for (int i = 0; i <= n + 1; ++i) fs.push_back(tensor_kron(c1.face(n, i), c2.face(n, i)));
    for (int j = 0; j < n; ++j)
      d.degens[static_cast<std::size_t>(n)].push_back(tensor_kron(c1.degen(n, j), c2.degen(n, j)));
    d.tau.push_back(tensor_kron(c1.cyclic(n), c2.cyclic(n)));
  }
  d.certificate = "product";
  return d;
}

ValidationReport check_bicocyclic(const BicocyclicComplex& b, int limit) {
  ValidationReport r;
  const int lp = std::min(limit, b.first.maxdeg), lq = std::min(limit, b.second.maxdeg);
  for (int p = 0; p <= lp; ++p)
    for (int q = 0; q <= lq; ++q) {
      const std::string w = "(p=" + std::to_string(p) + ",q=" + std::to_string(q) + ")";
      expect_equal(r, "commute tau", w, compose(b.htau(p, q), b.vtau(p, q)), compose(b.vtau(p, q), b.htau(p, q)));
      for (int i = 0; i <= p + 1; ++i)
        for (int k = 0; k <= q + 1; ++k)
          expect_equal(r, "commute faces", w, compose(b.hface(p, q + 1, i), b.vface(p, q, k)),
                       compose(b.vface(p + 1, q, k), b.hface(p, q, i)));
      for (int i = 0; i <= p + 1; ++i)
        expect_equal(r, "commute face tau", w, compose(b.hface(p, q, i), b.vtau(p, q)),
                     compose(b.vtau(p + 1, q), b.hface(p, q, i)));
      for (int k = 0; k <= q + 1; ++k)
        expect_equal(r, "commute tau face", w, compose(b.vface(p, q, k), b.htau(p, q)),
                     compose(b.htau(p, q + 1), b.vface(p, q, k)));
      for (int j = 0; j < p; ++j)
        for (int k = 0; k < q; ++k)
          expect_equal(r, "commute degeneracies", w, compose(b.hdegen(p, q - 1, j), b.vdegen(p, q, k)),
                       compose(b.vdegen(p - 1, q, k), b.hdegen(p, q, j)));
    }
  ValidationReport rows = check_cocyclic(b.first);
  ValidationReport cols = check_cocyclic(b.second);
  r.merge(rows, "horizontal ");
  r.merge(cols, "vertical ");
  return r;
}

// ------------------------------------------------------------ dumps

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

namespace {

constexpr const char* kDumpHeader = "hopfcyc-complex 1";

void dump_matrix(std::ostringstream& os, const std::string& tag, const SparseMatrix& m) {
  os << tag << "\n" << m.serialize() << "end\n";
}

}  // namespace

std::string dump_complex(const CocyclicComplex& c, const std::string& key) {
  std::ostringstream os;
  os << kDumpHeader << "\nkey " << key << "\nmaxdeg " << c.maxdeg << "\n";
  os << "certificate " << c.certificate.size() << "\n" << c.certificate << "\n";
  for (int n = 0; n <= c.top(); ++n) {
    os << "space " << n << " " << c.dim(n) << "\n";
    for (const auto& l : c.spaces[static_cast<std::size_t>(n)].labels) os << l << "\n";
  }
  for (int n = 0; n <= c.top(); ++n) {
    const auto& fs = c.faces[static_cast<std::size_t>(n)];
    for (std::size_t i = 0; i < fs.size(); ++i) dump_matrix(os, "face " + std::to_string(n) + " " + std::to_string(i), fs[i]);
    const auto& ds = c.degens[static_cast<std::size_t>(n)];
    for (std::size_t j = 0; j < ds.size(); ++j)
      dump_matrix(os, "degen " + std::to_string(n) + " " + std::to_string(j), ds[j]);
    dump_matrix(os, "tau " + std::to_string(n), c.cyclic(n));
  }
  for (std::size_t n = 0; n < c.embed.size(); ++n) dump_matrix(os, "embed " + std::to_string(n), c.embed[n]);
  for (std::size_t n = 0; n < c.project.size(); ++n) dump_matrix(os, "project " + std::to_string(n), c.project[n]);
  os << "done\n";
  return os.str();
}

bool load_complex(const std::string& text, const std::string& key, CocyclicComplex& out) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != kDumpHeader) return false;
  if (!std::getline(is, line) || line != "key " + key) return false;
  CocyclicComplex c;
  std::string word;
  if (!(is >> word >> c.maxdeg) || word != "maxdeg") return false;
  std::size_t certlen = 0;
  if (!(is >> word >> certlen) || word != "certificate") return false;
  is.get();
  c.certificate.resize(certlen);
  is.read(c.certificate.data(), static_cast<std::streamsize>(certlen));
  const int T = c.maxdeg + 1;
  c.faces.resize(static_cast<std::size_t>(T + 1));
  c.degens.resize(static_cast<std::size_t>(T + 1));
  for (int n = 0; n <= T; ++n) {
    int deg = 0;
    Index d = 0;
    if (!(is >> word >> deg >> d) || word != "space" || deg != n) return false;
    std::getline(is, line);
    std::vector<std::string> labels(d);
    for (auto& l : labels) std::getline(is, l);
    c.spaces.emplace_back(labels);
  }
  auto read_matrix = [&](SparseMatrix& m) {
    std::string body, l;
    while (std::getline(is, l) && l != "end") body += l + "\n";
    m = SparseMatrix::parse(body);
  };
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line == "done") {
      out = std::move(c);
      return true;
    }
    std::istringstream hs(line);
    std::string tag;
    int n = 0, i = 0;
    hs >> tag >> n;
    SparseMatrix m;
    read_matrix(m);
    if (tag == "face" && hs >> i) {
      c.faces[static_cast<std::size_t>(n)].push_back(m);
    } else if (tag == "degen" && hs >> i) {
      c.degens[static_cast<std::size_t>(n)].push_back(m);
    } else if (tag == "tau") {
      c.tau.push_back(m);
    } else if (tag == "embed") {
      c.embed.push_back(m);
    } else if (tag == "project") {
      c.project.push_back(m);
    } else {
      return false;
    }
  }
  return false;
}

bool same_complex(const CocyclicComplex& a, const CocyclicComplex& b) {
  return a.maxdeg == b.maxdeg && a.spaces == b.spaces && a.faces == b.faces && a.degens == b.degens &&
         a.tau == b.tau && a.embed == b.embed && a.project == b.project && a.certificate == b.certificate;
}

// ------------------------------------------------------------ builders

namespace {

std::size_t sz(int n) { return static_cast<std::size_t>(n); }

// Smallest prefix of the basis (skipping the unit) generating H as an algebra.
std::vector<Index> algebra_generators(const AlgebraData& a) {
  const Index d = a.dim();
  std::vector<Index> gens;
  auto span_of = [&](const std::vector<Index>& g) {
    Echelon e(d);
    std::vector<SparseVec> frontier{a.unit};
    e.insert(a.unit);
    while (!frontier.empty()) {
      std::vector<SparseVec> next;
      for (const auto& v : frontier)
        for (Index x : g) {
          SparseVec w = a.multiply(v, SparseVec::unit(x));
          if (e.insert(w)) next.push_back(w);
        }
      frontier = std::move(next);
    }
    return e;
  };
  Echelon cur = span_of(gens);
  for (Index x = 0; x < d && cur.rank() < d; ++x) {
    if (cur.contains(SparseVec::unit(x))) continue;
    gens.push_back(x);
    cur = span_of(gens);
  }
  return gens;
}

// Kronecker product of vectors over spaces of the given dimensions.
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

std::vector<Index> repeat_dims(Index first, Index d, int k) {
  std::vector<Index> v{first};
  for (int i = 0; i < k; ++i) v.push_back(d);
  return v;
}

// h acting diagonally on the pure tensor x of length k through Delta into k
// factors; for k = 0 the result is eps(h).
template <class Act>
SparseVec diagonal_action(const CoalgebraData& hc, Index h, const std::vector<Index>& x, Index d, Act act) {
  const int k = static_cast<int>(x.size());
  if (k == 0) return SparseVec::unit(0, hc.counit.at(h));
  Terms t = coproduct_terms(hc, h, k);
  std::vector<Index> dims(x.size(), d);
  VecBuilder out;
  for (const auto& [c, hs] : t.items) {
    std::vector<SparseVec> parts;
    parts.reserve(x.size());
    for (std::size_t s = 0; s < x.size(); ++s) parts.push_back(act(hs[s], x[s]));
    out.add(kron_all(parts, dims), c);
  }
  return out.finish();
}

SparseVec vector_diagonal_action(const CoalgebraData& hc, const SparseVec& h, const std::vector<Index>& x, Index d,
                                 const std::function<SparseVec(Index, Index)>& act) {
  VecBuilder out;
  for (const auto& [i, c] : h.entries()) out.add(diagonal_action(hc, i, x, d, act), c);
  return out.finish();
}

// op given per ambient basis element, as a full ambient matrix.
SparseMatrix ambient_matrix(Index rows, Index cols, const std::function<SparseVec(Index)>& op) {
  std::vector<SparseVec> c;
  c.reserve(cols);
  for (Index j = 0; j < cols; ++j) c.push_back(op(j));
  return SparseMatrix::from_columns(rows, std::move(c));
}

SparseMatrix descend(const Quotient& src, const Quotient& dst, const SparseMatrix& op, const std::string& name) {
  for (const auto& r : src.relation_rref)
    if (!dst.project(op.apply(r)).empty())
      throw Error(ErrorKind::IllDefined, name + " does not preserve the balancing relations");
  std::vector<SparseVec> cols;
  cols.reserve(src.dim());
  for (Index j : src.complement) cols.push_back(dst.project(op.col(j)));
  return SparseMatrix::from_columns(dst.dim(), std::move(cols));
}

void shape_complex(CocyclicComplex& c, int maxdeg) {
  c.maxdeg = maxdeg;
  c.faces.assign(sz(maxdeg + 2), {});
  c.degens.assign(sz(maxdeg + 2), {});
  c.tau.assign(sz(maxdeg + 2), SparseMatrix());
}

}  // namespace

CocyclicComplex build_coalgebra_complex(const ModuleCoalgebra& mc, const SAYDModule& m, int maxdeg) {
  if (maxdeg < 0) throw Error(ErrorKind::InvalidArgument, "negative truncation degree");
  const HopfData& h = mc.hopf;
  const CoalgebraData& C = mc.coalg;
  const Index dm = m.dim(), dc = C.dim();
  const int T = maxdeg + 1;
  const std::vector<Index> gens = algebra_generators(h.alg);
  auto mi = [&](int n) { return MultiIndex(repeat_dims(dm, dc, n + 1)); };
  auto act = [&](Index x, Index c) { return mc.act_basis(x, c); };

  std::vector<Quotient> q;
  CocyclicComplex out;
  shape_complex(out, maxdeg);
  for (int n = 0; n <= T; ++n) {
    MultiIndex idx = mi(n);
    std::vector<SparseVec> rel;
    for (Index flat = 0; flat < idx.size(); ++flat) {
      auto t = idx.decode(flat);
      std::vector<Index> ct(t.begin() + 1, t.end());
      const Index block = idx.size() / dm;
      for (Index x : gens) {
        VecBuilder b;
        for (const auto& [mm, c] : m.ract_basis(t[0], x).entries()) b.add(mm * block + flat % block, c);
        SparseVec hc = diagonal_action(h.coalg, x, ct, dc, act);
        for (const auto& [j, c] : hc.entries()) b.add(t[0] * block + j, -c);
        SparseVec r = b.finish();
        if (!r.empty()) rel.push_back(std::move(r));
      }
    }
    q.push_back(Quotient::make(idx.size(), rel));
    BasedSpace amb = tensor_space(m.space, tensor_power(C.space, n + 1));
    std::vector<std::string> labels;
    for (Index i : q.back().complement) labels.push_back(amb.labels[i]);
    out.spaces.emplace_back(labels);
    out.embed.push_back(q.back().section());
    out.project.push_back(q.back().projection());
  }

  for (int n = 0; n <= T; ++n) {
    MultiIndex src = mi(n);
    // faces into degree n+1
    if (n <= maxdeg) {
      MultiIndex dst = mi(n + 1);
      for (int i = 0; i <= n; ++i) {
        auto op = [&](Index flat) {
          auto t = src.decode(flat);
          VecBuilder b;
          for (const auto& [k, p] : C.comul_basis(t[sz(i) + 1]).entries()) {
            std::vector<Index> u(t.begin(), t.begin() + i + 1);
            u.push_back(k / dc);
            u.push_back(k % dc);
            u.insert(u.end(), t.begin() + i + 2, t.end());
            b.add(dst.encode(u), p);
          }
          return b.finish();
        };
        out.faces[sz(n)].push_back(descend(q[sz(n)], q[sz(n + 1)], ambient_matrix(dst.size(), src.size(), op),
                                           "face " + std::to_string(i)));
      }
      auto last = [&](Index flat) {
        auto t = src.decode(flat);
        VecBuilder b;
        for (const auto& [k0, a] : m.coact_basis(t[0]).entries()) {
          Index mh = k0 / dm, m0 = k0 % dm;
          for (const auto& [k, p] : C.comul_basis(t[1]).entries())
            for (const auto& [e, r] : mc.act_basis(mh, k / dc).entries()) {
              std::vector<Index> u{m0, k % dc};
              u.insert(u.end(), t.begin() + 2, t.end());
              u.push_back(e);
              b.add(dst.encode(u), a * p * r);
            }
        }
        return b.finish();
      };
      out.faces[sz(n)].push_back(descend(q[sz(n)], q[sz(n + 1)], ambient_matrix(dst.size(), src.size(), last),
                                         "face " + std::to_string(n + 1)));
    }
    if (n >= 1) {
      MultiIndex dst = mi(n - 1);
      for (int j = 0; j < n; ++j) {
        auto op = [&](Index flat) {
          auto t = src.decode(flat);
          Scalar e = C.counit.at(t[sz(j) + 2]);
          if (sgn(e) == 0) return SparseVec();
          std::vector<Index> u(t.begin(), t.begin() + j + 2);
          u.insert(u.end(), t.begin() + j + 3, t.end());
          return SparseVec::unit(dst.encode(u), e);
        };
        out.degens[sz(n)].push_back(descend(q[sz(n)], q[sz(n - 1)], ambient_matrix(dst.size(), src.size(), op),
                                            "degeneracy " + std::to_string(j)));
      }
    }
    auto rot = [&](Index flat) {
      auto t = src.decode(flat);
      VecBuilder b;
      for (const auto& [k0, a] : m.coact_basis(t[0]).entries()) {
        Index mh = k0 / dm, m0 = k0 % dm;
        for (const auto& [e, r] : mc.act_basis(mh, t[1]).entries()) {
          std::vector<Index> u{m0};
          u.insert(u.end(), t.begin() + 2, t.end());
          u.push_back(e);
          b.add(src.encode(u), a * r);
        }
      }
      return b.finish();
    };
    out.tau[sz(n)] = descend(q[sz(n)], q[sz(n)], ambient_matrix(src.size(), src.size(), rot), "tau");
  }
  out.certificate = "coalgebra complex: M (x)_H C^(n+1) as quotient by m.h (x) c - m (x) h.c, generators " +
                    std::to_string(gens.size());
  return out;
}

CocyclicComplex build_ans_complex(const ModularPair& mp, int maxdeg) {
  if (maxdeg < 0) throw Error(ErrorKind::InvalidArgument, "negative truncation degree");
  const HopfData& h = mp.hopf;
  const Index d = h.dim();
  const int T = maxdeg + 1;
  const SparseMatrix st = twisted_antipode(mp);
  auto mult = [&](Index a, Index b) { return h.alg.mul_basis(a, b); };
  CocyclicComplex out;
  shape_complex(out, maxdeg);
  for (int n = 0; n <= T; ++n) out.spaces.push_back(tensor_power(h.space(), n));
  for (int n = 0; n <= T; ++n) {
    MultiIndex src = MultiIndex::power(d, n);
    if (n <= maxdeg) {
      MultiIndex dst = MultiIndex::power(d, n + 1);
      // d_0 inserts 1 in front
      out.faces[sz(n)].push_back(ambient_matrix(dst.size(), src.size(), [&](Index flat) {
        auto t = src.decode(flat);
        std::vector<SparseVec> parts{h.alg.unit};
        for (Index x : t) parts.push_back(SparseVec::unit(x));
        return kron_all(parts, std::vector<Index>(sz(n + 1), d));
      }));
      for (int j = 1; j <= n; ++j)
        out.faces[sz(n)].push_back(ambient_matrix(dst.size(), src.size(), [&](Index flat) {
          auto t = src.decode(flat);
          VecBuilder b;
          for (const auto& [k, p] : h.coalg.comul_basis(t[sz(j - 1)]).entries()) {
            std::vector<Index> u(t.begin(), t.begin() + j - 1);
            u.push_back(k / d);
            u.push_back(k % d);
            u.insert(u.end(), t.begin() + j, t.end());
            b.add(dst.encode(u), p);
          }
          return b.finish();
        }));
      // d_{n+1} appends sigma
      out.faces[sz(n)].push_back(ambient_matrix(dst.size(), src.size(), [&](Index flat) {
        auto t = src.decode(flat);
        std::vector<SparseVec> parts;
        for (Index x : t) parts.push_back(SparseVec::unit(x));
        parts.push_back(mp.sigma);
        return kron_all(parts, std::vector<Index>(sz(n + 1), d));
      }));
    }
    if (n >= 1) {
      MultiIndex dst = MultiIndex::power(d, n - 1);
      for (int i = 0; i < n; ++i)
        out.degens[sz(n)].push_back(ambient_matrix(dst.size(), src.size(), [&](Index flat) {
          auto t = src.decode(flat);
          Scalar e = h.coalg.counit.at(t[sz(i)]);
          if (sgn(e) == 0) return SparseVec();
          std::vector<Index> u(t.begin(), t.begin() + i);
          u.insert(u.end(), t.begin() + i + 1, t.end());
          return SparseVec::unit(dst.encode(u), e);
        }));
    }
    // tau_n = Delta^(n-1)(S~(h^1)) . (h^2 (x) ... (x) h^n (x) sigma)
    if (n == 0) {
      out.tau[0] = SparseMatrix::identity(1);
    } else {
      out.tau[sz(n)] = ambient_matrix(src.size(), src.size(), [&](Index flat) {
        auto t = src.decode(flat);
        VecBuilder b;
        for (const auto& [s, cs] : mp.sigma.entries()) {
          std::vector<Index> rest(t.begin() + 1, t.end());
          rest.push_back(s);
          b.add(vector_diagonal_action(h.coalg, st.col(t[0]), rest, d, mult), cs);
        }
        return b.finish();
      });
    }
  }
  out.certificate = "hopf complex on H^(x)n";
  return out;
}

namespace {

// I(m (x) h^0 (x) ... (x) h^n) = m h^0(1) (x) S(h^0(2)) . (h^1 (x) ... (x) h^n)
// for one-dimensional M, where it reads S~(h^0) . (h^1 (x) ... (x) h^n).
SparseMatrix iso_ambient(const ModularPair& mp, int n) {
  const HopfData& h = mp.hopf;
  const Index d = h.dim();
  const SparseMatrix st = twisted_antipode(mp);
  MultiIndex src = MultiIndex::power(d, n + 1);
  MultiIndex dst = MultiIndex::power(d, n);
  auto mult = [&](Index a, Index b) { return h.alg.mul_basis(a, b); };
  return ambient_matrix(dst.size(), src.size(), [&](Index flat) {
    auto t = src.decode(flat);
    std::vector<Index> rest(t.begin() + 1, t.end());
    return vector_diagonal_action(h.coalg, st.col(t[0]), rest, d, mult);
  });
}

void expect_conjugate(const SparseMatrix& lhs, const SparseMatrix& rhs, const std::string& what) {
  if (!(lhs == rhs))
    throw Error(ErrorKind::ConjugationFailure, what + ": " + describe_difference(lhs, rhs));
}

}  // namespace

HopfComplexResult build_hopf_complex(const ModularPair& mp, int maxdeg) {
  SAYDModule m = mpi_coefficients(mp);
  ValidationReport rep = validate_sayd(m);
  if (!rep.ok()) throw Error(ErrorKind::InvalidArgument, "modular pair is not in involution: " + rep.to_text());
  HopfComplexResult res;
  res.coalgebra = build_coalgebra_complex(regular_module_coalgebra(mp.hopf), m, maxdeg);
  res.ans = build_ans_complex(mp, maxdeg);
  const int T = maxdeg + 1;
  for (int n = 0; n <= T; ++n) {
    SparseMatrix amb = iso_ambient(mp, n);
    const SparseMatrix& sec = res.coalgebra.embed[sz(n)];
    // well defined on the balanced tensor product
    SparseMatrix proj = res.coalgebra.project[sz(n)];
    SparseMatrix iso = compose(amb, sec);
    if (!(compose(iso, proj) == amb))
      throw Error(ErrorKind::ConjugationFailure, "I does not vanish on balancing relations in degree " + std::to_string(n));
    if (iso.rows() != iso.cols() || image_rank(iso) != iso.cols())
      throw Error(ErrorKind::ConjugationFailure, "I is not invertible in degree " + std::to_string(n));
    res.iso.push_back(std::move(iso));
  }
  for (int n = 0; n <= T; ++n) {
    const std::string deg = " in degree " + std::to_string(n);
    if (n <= maxdeg)
      for (int i = 0; i <= n + 1; ++i)
        expect_conjugate(compose(res.iso[sz(n + 1)], res.coalgebra.face(n, i)), compose(res.ans.face(n, i), res.iso[sz(n)]),
                         "face " + std::to_string(i) + deg);
    for (int j = 0; j < n; ++j)
      expect_conjugate(compose(res.iso[sz(n - 1)], res.coalgebra.degen(n, j)), compose(res.ans.degen(n, j), res.iso[sz(n)]),
                       "degeneracy " + std::to_string(j) + deg);
    expect_conjugate(compose(res.iso[sz(n)], res.coalgebra.cyclic(n)), compose(res.ans.cyclic(n), res.iso[sz(n)]),
                     "tau" + deg);
  }
  res.certificate = "I invertible and conjugating faces, degeneracies, tau through degree " + std::to_string(T);
  return res;
}

namespace {

struct Convention {
  const char* name;
  bool antipode_on_m;  // else on the algebra slots
  bool inverse;        // S^-1 instead of S
};

const Convention kConventions[] = {
    {"phi(m h(1) (x) S(h(2)) a) = eps(h) phi(m (x) a)", false, false},
    {"phi(m S^-1(h(1)) (x) h(2) a) = eps(h) phi(m (x) a)", true, true},
    {"phi(m S(h(1)) (x) h(2) a) = eps(h) phi(m (x) a)", true, false},
    {"phi(m h(1) (x) S^-1(h(2)) a) = eps(h) phi(m (x) a)", false, true},
};

// Pullback maps of a functional complex: L_op as a matrix from the ambient
// space of the target degree to the ambient space of the source degree.
struct FunctionalOps {
  std::vector<std::vector<SparseMatrix>> faces, degens;
  std::vector<SparseMatrix> tau;
};

// Subspaces of the full dual spaces plus pullbacks; returns false with the
// failing operator name if some operator leaves the subspaces.
bool descend_functionals(const std::vector<Subspace>& sub, const FunctionalOps& ops, int maxdeg, CocyclicComplex& out,
                         std::string& failure) {
  auto push = [&](const Subspace& s, const Subspace& t, const SparseMatrix& pull, const std::string& name,
                  SparseMatrix& res) {
    SparseMatrix lt = pull.transpose();
    std::vector<SparseVec> cols;
    for (const auto& b : s.basis) {
      SparseVec c;
      if (!t.coordinates(lt.apply(b), c)) {
        failure = name;
        return false;
      }
      cols.push_back(std::move(c));
    }
    res = SparseMatrix::from_columns(t.dim(), std::move(cols));
    return true;
  };
  shape_complex(out, maxdeg);
  const int T = maxdeg + 1;
  for (int n = 0; n <= T; ++n) {
    const std::string deg = " in degree " + std::to_string(n);
    if (n <= maxdeg)
      for (std::size_t i = 0; i < ops.faces[sz(n)].size(); ++i) {
        SparseMatrix r;
        if (!push(sub[sz(n)], sub[sz(n + 1)], ops.faces[sz(n)][i], "face " + std::to_string(i) + deg, r)) return false;
        out.faces[sz(n)].push_back(std::move(r));
      }
    for (std::size_t j = 0; j < ops.degens[sz(n)].size(); ++j) {
      SparseMatrix r;
      if (!push(sub[sz(n)], sub[sz(n - 1)], ops.degens[sz(n)][j], "degeneracy " + std::to_string(j) + deg, r)) return false;
      out.degens[sz(n)].push_back(std::move(r));
    }
    if (!push(sub[sz(n)], sub[sz(n)], ops.tau[sz(n)], "tau" + deg, out.tau[sz(n)])) return false;
  }
  for (int n = 0; n <= T; ++n) {
    out.embed.push_back(sub[sz(n)].inclusion());
    std::vector<SparseVec> rows;
    for (Index k = 0; k < sub[sz(n)].dim(); ++k) rows.push_back(SparseVec::unit(sub[sz(n)].keys[k]));
    out.project.push_back(SparseMatrix::from_rows(sub[sz(n)].ambient, rows));
    out.spaces.push_back(BasedSpace::numbered(sub[sz(n)].dim(), "phi"));
  }
  return true;
}

FunctionalOps algebra_pullbacks(const ModuleAlgebra& ma, const SAYDModule& m, int maxdeg) {
  const AlgebraData& A = ma.alg;
  const HopfData& h = ma.hopf;
  const Index dm = m.dim(), da = A.dim();
  const int T = maxdeg + 1;
  auto mi = [&](int n) { return MultiIndex(repeat_dims(dm, da, n + 1)); };
  auto amb_dims = [&](int n) { return repeat_dims(dm, da, n + 1); };
  auto units = [](const std::vector<Index>& t, std::size_t from, std::size_t to) {
    std::vector<SparseVec> v;
    for (std::size_t k = from; k < to; ++k) v.push_back(SparseVec::unit(t[k]));
    return v;
  };
  FunctionalOps ops;
  ops.faces.assign(sz(T + 1), {});
  ops.degens.assign(sz(T + 1), {});
  ops.tau.assign(sz(T + 1), SparseMatrix());
  for (int n = 0; n <= T; ++n) {
    MultiIndex src = mi(n);
    if (n <= maxdeg) {
      MultiIndex tgt = mi(n + 1);
      for (int i = 0; i <= n; ++i)
        ops.faces[sz(n)].push_back(ambient_matrix(src.size(), tgt.size(), [&](Index flat) {
          auto t = tgt.decode(flat);
          std::vector<SparseVec> parts{SparseVec::unit(t[0])};
          auto before = units(t, 1, sz(i) + 1);
          parts.insert(parts.end(), before.begin(), before.end());
          parts.push_back(A.mul_basis(t[sz(i) + 1], t[sz(i) + 2]));
          auto after = units(t, sz(i) + 3, t.size());
          parts.insert(parts.end(), after.begin(), after.end());
          return kron_all(parts, amb_dims(n));
        }));
      ops.faces[sz(n)].push_back(ambient_matrix(src.size(), tgt.size(), [&](Index flat) {
        auto t = tgt.decode(flat);
        VecBuilder b;
        for (const auto& [k0, c] : m.coact_basis(t[0]).entries()) {
          Index mh = k0 / dm, m0 = k0 % dm;
          SparseVec moved = ma.act(h.antipode_inv.col(mh), SparseVec::unit(t.back()));
          std::vector<SparseVec> parts{SparseVec::unit(m0), A.multiply(moved, SparseVec::unit(t[1]))};
          auto mid = units(t, 2, t.size() - 1);
          parts.insert(parts.end(), mid.begin(), mid.end());
          b.add(kron_all(parts, amb_dims(n)), c);
        }
        return b.finish();
      }));
    }
    if (n >= 1) {
      MultiIndex tgt = mi(n - 1);
      for (int j = 0; j < n; ++j)
        ops.degens[sz(n)].push_back(ambient_matrix(src.size(), tgt.size(), [&](Index flat) {
          auto t = tgt.decode(flat);
          std::vector<SparseVec> parts{SparseVec::unit(t[0])};
          auto before = units(t, 1, sz(j) + 2);
          parts.insert(parts.end(), before.begin(), before.end());
          parts.push_back(A.unit);
          auto after = units(t, sz(j) + 2, t.size());
          parts.insert(parts.end(), after.begin(), after.end());
          return kron_all(parts, amb_dims(n));
        }));
    }
    ops.tau[sz(n)] = ambient_matrix(src.size(), src.size(), [&](Index flat) {
      auto t = src.decode(flat);
      VecBuilder b;
      for (const auto& [k0, c] : m.coact_basis(t[0]).entries()) {
        Index mh = k0 / dm, m0 = k0 % dm;
        std::vector<SparseVec> parts{SparseVec::unit(m0), ma.act(h.antipode_inv.col(mh), SparseVec::unit(t.back()))};
        auto mid = units(t, 1, t.size() - 1);
        parts.insert(parts.end(), mid.begin(), mid.end());
        b.add(kron_all(parts, amb_dims(n)), c);
      }
      return b.finish();
    });
  }
  return ops;
}

std::vector<Subspace> equivariant_subspaces(const ModuleAlgebra& ma, const SAYDModule& m, int maxdeg,
                                            const Convention& conv) {
  const HopfData& h = ma.hopf;
  const Index dm = m.dim(), da = ma.alg.dim();
  const std::vector<Index> gens = algebra_generators(h.alg);
  const SparseMatrix& s = conv.inverse ? h.antipode_inv : h.antipode;
  auto act = [&](Index x, Index a) { return ma.act_basis(x, a); };
  std::vector<Subspace> out;
  for (int n = 0; n <= maxdeg + 1; ++n) {
    MultiIndex idx(repeat_dims(dm, da, n + 1));
    const Index block = idx.size() / dm;
    std::vector<SparseVec> rows;
    for (Index x : gens) {
      Terms t2 = coproduct_terms(h.coalg, x, 2);
      for (Index flat = 0; flat < idx.size(); ++flat) {
        auto t = idx.decode(flat);
        std::vector<Index> at(t.begin() + 1, t.end());
        VecBuilder b;
        for (const auto& [c, hs] : t2.items) {
          SparseVec hm = conv.antipode_on_m ? s.col(hs[0]) : SparseVec::unit(hs[0]);
          SparseVec ha = conv.antipode_on_m ? SparseVec::unit(hs[1]) : s.col(hs[1]);
          SparseVec mv = m.ract(SparseVec::unit(t[0]), hm);
          SparseVec av = vector_diagonal_action(h.coalg, ha, at, da, act);
          for (const auto& [mm, p] : mv.entries())
            for (const auto& [aa, q] : av.entries()) b.add(mm * block + aa, c * p * q);
        }
        b.add(flat, -h.coalg.counit.at(x));
        SparseVec r = b.finish();
        if (!r.empty()) rows.push_back(std::move(r));
      }
    }
    out.push_back(Subspace::from_key_basis(idx.size(), kernel_basis(SparseMatrix::from_rows(idx.size(), rows)), true));
  }
  return out;
}

}  // namespace

CocyclicComplex build_algebra_complex(const ModuleAlgebra& ma, const SAYDModule& m, int maxdeg) {
  if (maxdeg < 0) throw Error(ErrorKind::InvalidArgument, "negative truncation degree");
  FunctionalOps ops = algebra_pullbacks(ma, m, maxdeg);
  std::string failures;
  for (const auto& conv : kConventions) {
    std::vector<Subspace> sub = equivariant_subspaces(ma, m, maxdeg, conv);
    CocyclicComplex out;
    std::string failure;
    if (descend_functionals(sub, ops, maxdeg, out, failure)) {
      out.certificate = std::string("algebra complex: equivariance ") + conv.name;
      return out;
    }
    failures += std::string("[") + conv.name + ": " + failure + "] ";
  }
  throw Error(ErrorKind::IllDefined, "no equivariance convention is preserved by the operators " + failures);
}

CocyclicComplex build_plain_complex(const AlgebraData& a, int maxdeg) {
  CocyclicComplex c = build_algebra_complex(plain_module_algebra(a), trivial_coefficients(trivial_hopf()), maxdeg);
  c.certificate = "plain cyclic complex";
  return c;
}

CocyclicComplex build_comodule_algebra_complex(const ComoduleAlgebra& ba, const SAYDModule& m, int maxdeg) {
  if (maxdeg < 0) throw Error(ErrorKind::InvalidArgument, "negative truncation degree");
  const HopfData& h = ba.hopf;
  const AlgebraData& B = ba.alg;
  const Index dm = m.dim(), db = B.dim(), dh = h.dim();
  const int T = maxdeg + 1;
  // A pullback sends a basis tensor x of the target degree to a combination of
  // (y, h) meaning phi'(x) = sum c phi(y) h. It becomes the matrix with entry
  // c (e_m h)_m' at row (y, m), column (x, m'), transposed on use.
  using Pull = std::function<std::vector<std::tuple<Scalar, Index, Index>>(const std::vector<Index>&)>;
  auto pullback = [&](int src_deg, int tgt_deg, const Pull& f) {
    MultiIndex s = MultiIndex::power(db, src_deg + 1), t = MultiIndex::power(db, tgt_deg + 1);
    return ambient_matrix(s.size() * dm, t.size() * dm, [&](Index flat) {
      Index x = flat / dm, mp = flat % dm;
      VecBuilder b;
      for (const auto& [c, y, hh] : f(t.decode(x)))
        for (Index mm = 0; mm < dm; ++mm) {
          Scalar e = m.ract_basis(mm, hh).at(mp);
          if (sgn(e) != 0) b.add(y * dm + mm, c * e);
        }
      return b.finish();
    });
  };
  auto one_index = [&]() {
    for (const auto& [i, c] : h.alg.unit.entries())
      if (c == 1 && h.alg.unit.nnz() == 1) return i;
    throw Error(ErrorKind::InvalidArgument, "comodule algebra complex needs the unit of H to be a basis vector");
  };
  const Index one = one_index();
  FunctionalOps ops;
  ops.faces.assign(sz(T + 1), {});
  ops.degens.assign(sz(T + 1), {});
  ops.tau.assign(sz(T + 1), SparseMatrix());
  for (int n = 0; n <= T; ++n) {
    MultiIndex src = MultiIndex::power(db, n + 1);
    if (n <= maxdeg) {
      MultiIndex sm = src;
      for (int i = 0; i <= n; ++i)
        ops.faces[sz(n)].push_back(pullback(n, n + 1, [&, i](const std::vector<Index>& t) {
          std::vector<std::tuple<Scalar, Index, Index>> r;
          for (const auto& [k, c] : B.mul_basis(t[sz(i)], t[sz(i) + 1]).entries()) {
            std::vector<Index> u(t.begin(), t.begin() + i);
            u.push_back(k);
            u.insert(u.end(), t.begin() + i + 2, t.end());
            r.emplace_back(c, sm.encode(u), one);
          }
          return r;
        }));
      ops.faces[sz(n)].push_back(pullback(n, n + 1, [&](const std::vector<Index>& t) {
        std::vector<std::tuple<Scalar, Index, Index>> r;
        for (const auto& [k, c] : ba.coact_basis(t.back()).entries()) {
          Index hh = k / db, b0 = k % db;
          for (const auto& [e, p] : B.mul_basis(b0, t[0]).entries()) {
            std::vector<Index> u{e};
            u.insert(u.end(), t.begin() + 1, t.end() - 1);
            r.emplace_back(c * p, sm.encode(u), hh);
          }
        }
        return r;
      }));
    }
    if (n >= 1) {
      MultiIndex sm = src;
      for (int j = 0; j < n; ++j)
        ops.degens[sz(n)].push_back(pullback(n, n - 1, [&, j](const std::vector<Index>& t) {
          std::vector<std::tuple<Scalar, Index, Index>> r;
          std::vector<Index> u(t.begin(), t.begin() + j + 1);
          u.push_back(0);
          u.insert(u.end(), t.begin() + j + 1, t.end());
          for (const auto& [k, c] : B.unit.entries()) {
            u[sz(j) + 1] = k;
            r.emplace_back(c, sm.encode(u), one);
          }
          return r;
        }));
    }
    MultiIndex sm = src;
    ops.tau[sz(n)] = pullback(n, n, [&](const std::vector<Index>& t) {
      std::vector<std::tuple<Scalar, Index, Index>> r;
      for (const auto& [k, c] : ba.coact_basis(t.back()).entries()) {
        std::vector<Index> u{k % db};
        u.insert(u.end(), t.begin(), t.end() - 1);
        r.emplace_back(c, sm.encode(u), k / db);
      }
      return r;
    });
  }
  // Colinearity: rho_M(phi(x)) = x(-1) (x) phi(x(0)) with the diagonal coaction.
  std::vector<Subspace> sub;
  for (int n = 0; n <= T; ++n) {
    MultiIndex idx = MultiIndex::power(db, n + 1);
    const Index amb = idx.size() * dm;
    std::vector<SparseVec> rows;
    for (Index x = 0; x < idx.size(); ++x) {
      auto t = idx.decode(x);
      // diagonal coaction of x as (h, y) pairs
      Terms co = Terms::basis({});
      for (Index b : t) {
        Terms next;
        for (const auto& [c, prev] : co.items)
          for (const auto& [k, p] : ba.coact_basis(b).entries()) {
            auto u = prev;
            u.push_back(k / db);
            u.push_back(k % db);
            next.items.emplace_back(c * p, std::move(u));
          }
        co = std::move(next);
      }
      std::vector<VecBuilder> eq(dh * dm);
      for (const auto& [c, u] : co.items) {
        std::vector<SparseVec> hs;
        std::vector<Index> y;
        for (std::size_t k = 0; k < u.size(); k += 2) {
          hs.push_back(SparseVec::unit(u[k]));
          y.push_back(u[k + 1]);
        }
        SparseVec hprod = h.alg.product(hs);
        Index yf = idx.encode(y);
        for (const auto& [hh, p] : hprod.entries())
          for (Index mm = 0; mm < dm; ++mm) eq[hh * dm + mm].add(yf * dm + mm, -c * p);
      }
      for (Index mm = 0; mm < dm; ++mm)
        for (const auto& [k, c] : m.coact_basis(mm).entries()) eq[k].add(x * dm + mm, c);
      for (auto& e : eq) {
        SparseVec r = e.finish();
        if (!r.empty()) rows.push_back(std::move(r));
      }
    }
    sub.push_back(Subspace::from_key_basis(amb, kernel_basis(SparseMatrix::from_rows(amb, rows)), true));
  }
  CocyclicComplex out;
  std::string failure;
  if (!descend_functionals(sub, ops, maxdeg, out, failure))
    throw Error(ErrorKind::IllDefined, "comodule algebra complex: " + failure + " leaves the colinear maps");
  out.certificate = "comodule algebra complex: colinear maps B^(n+1) -> M";
  return out;
}

}  // namespace hc
