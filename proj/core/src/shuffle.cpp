#include <algorithm>
#include <map>
#include <sstream>

#include "hopfcyc/cupprod.hpp"
#include "hopfcyc/errors.hpp"

namespace hc {

std::vector<ShufflePermutation> shuffle_set(int q, int p) {
  if (q < 0 || p < 0) throw Error(ErrorKind::InvalidArgument, "negative shuffle block");
  const int n = p + q;
  std::vector<ShufflePermutation> out;
  std::vector<int> mask(static_cast<std::size_t>(n), 0);
  std::fill(mask.begin(), mask.begin() + q, 1);
  // prev_permutation over a descending mask walks first-block subsets in
  // lexicographic order.
  do {
    ShufflePermutation s;
    s.q = q;
    s.p = p;
    for (int i = 0; i < n; ++i)
      if (mask[static_cast<std::size_t>(i)]) s.image.push_back(i + 1);
    for (int i = 0; i < n; ++i)
      if (!mask[static_cast<std::size_t>(i)]) s.image.push_back(i + 1);
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (s.image[static_cast<std::size_t>(i)] > s.image[static_cast<std::size_t>(j)]) ++inv;
    s.sign = inv % 2 == 0 ? 1 : -1;
    out.push_back(std::move(s));
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return out;
}

namespace {

// Formal words in the universal DG algebras. A letter is a symbol index and,
// for a-letters, the set of b-indices whose coaction legs act on it; legs of
// one b are ordered outermost first from left to right, so the set is enough.
using Letter = std::pair<int, std::vector<int>>;
using Mono = std::vector<Letter>;
// Normal form x0 d(x1) .. d(xk): block 0 may be empty (the unit), the others
// are differentiated monomials.
using Word = std::vector<Mono>;
using Elem = std::map<Word, Scalar>;
using Pair = std::pair<Word, Word>;  // (Omega(A) part, Omega(B) part)
using CrossElem = std::map<Pair, Scalar>;

int degree(const Word& w) { return static_cast<int>(w.size()) - 1; }

void add_to(Elem& e, const Word& w, const Scalar& c) {
  Scalar& s = e[w];
  s += c;
  if (sgn(s) == 0) e.erase(w);
}

// w . y for a degree-zero monomial y, by d(x) y = d(x y) - x d(y).
Elem times_plain(const Word& w, const Mono& y) {
  Elem out;
  if (y.empty()) {
    out[w] = Scalar(1);
    return out;
  }
  if (w.size() == 1) {
    Mono m = w[0];
    m.insert(m.end(), y.begin(), y.end());
    out[{m}] = Scalar(1);
    return out;
  }
  Word head(w.begin(), w.end() - 1);
  Mono x = w.back();
  Word first = head;
  Mono xy = x;
  xy.insert(xy.end(), y.begin(), y.end());
  first.push_back(xy);
  add_to(out, first, Scalar(1));
  for (const auto& [u, c] : times_plain(head, x)) {
    Word v = u;
    v.push_back(y);
    add_to(out, v, -c);
  }
  return out;
}

Elem multiply(const Word& w, const Word& v) {
  Elem out;
  for (const auto& [u, c] : times_plain(w, v[0])) {
    Word r = u;
    r.insert(r.end(), v.begin() + 1, v.end());
    add_to(out, r, c);
  }
  return out;
}

Word with_legs(Word w, const std::vector<int>& bs) {
  for (auto& m : w)
    for (auto& [idx, legs] : m) {
      legs.insert(legs.end(), bs.begin(), bs.end());
      std::sort(legs.begin(), legs.end());
    }
  return w;
}

std::vector<int> b_symbols(const Word& w) {
  std::vector<int> out;
  for (const auto& m : w)
    for (const auto& l : m) out.push_back(l.first);
  return out;
}

// (w # e)(w' # e') = (-1)^{|e||w'|} w e(-1)(w') # e(0) e'
CrossElem cross_multiply(const CrossElem& x, const CrossElem& y) {
  CrossElem out;
  for (const auto& [xa, cx] : x)
    for (const auto& [ya, cy] : y) {
      const Scalar sign((degree(xa.second) * degree(ya.first)) % 2 == 0 ? 1 : -1);
      Elem a = multiply(xa.first, with_legs(ya.first, b_symbols(xa.second)));
      Elem b = multiply(xa.second, ya.second);
      for (const auto& [wa, ca] : a)
        for (const auto& [wb, cb] : b) {
          Scalar& s = out[{wa, wb}];
          s += sign * cx * cy * ca * cb;
          if (sgn(s) == 0) out.erase({wa, wb});
        }
    }
  return out;
}

Letter a_letter(int i) {
  std::vector<int> legs;
  for (int j = 0; j < i; ++j) legs.push_back(j);
  return {i, legs};
}

// a^0 .. a^(s(q+1)-1) d(a^s(q+1) ..) .. d(.. a^n) # b^0 .. b^(s(1)-1) d(b^s(1) ..) .. d(.. b^n)
Pair theta(const ShufflePermutation& s) {
  const int n = s.p + s.q;
  auto blocks = [&](int from, int count, bool a) {
    std::vector<int> starts{0};
    for (int k = 0; k < count; ++k) starts.push_back(s.image[static_cast<std::size_t>(from + k)]);
    starts.push_back(n + 1);
    Word w;
    for (std::size_t k = 0; k + 1 < starts.size(); ++k) {
      Mono m;
      for (int i = starts[k]; i < starts[k + 1]; ++i) m.push_back(a ? a_letter(i) : Letter{i, {}});
      w.push_back(m);
    }
    return w;
  };
  return {blocks(s.q, s.p, true), blocks(0, s.q, false)};
}

std::string render(const Mono& m, char sym) {
  std::ostringstream os;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (k) os << ' ';
    os << sym << m[k].first;
    if (!m[k].second.empty()) {
      os << '[';
      for (std::size_t j = 0; j < m[k].second.size(); ++j) os << (j ? "," : "") << m[k].second[j];
      os << ']';
    }
  }
  return os.str();
}

std::string render(const Word& w, char sym) {
  std::string out = w[0].empty() ? "1" : render(w[0], sym);
  for (std::size_t k = 1; k < w.size(); ++k) out += " d(" + render(w[k], sym) + ")";
  return out;
}

std::string first_difference(const CrossElem& x, const CrossElem& y) {
  CrossElem d = x;
  for (const auto& [w, c] : y) {
    Scalar& s = d[w];
    s -= c;
    if (sgn(s) == 0) d.erase(w);
  }
  if (d.empty()) return "";
  const auto& [w, c] = *d.begin();
  return to_string(c) + " * " + render(w.first, 'a') + " # " + render(w.second, 'b');
}

}  // namespace

OracleResult dg_expand_oracle(int p, int q) {
  if (p < 0 || q < 0) throw Error(ErrorKind::InvalidArgument, "negative bidegree");
  if (p + q > 3) throw Error(ErrorKind::DegreeCapExceeded, "formal expansion is capped at p + q <= 3");
  const int n = p + q;
  CrossElem acc;
  acc[{Word{Mono{a_letter(0)}}, Word{Mono{Letter{0, {}}}}}] = Scalar(1);
  for (int i = 1; i <= n; ++i) {
    // d(a^i # b^i) = d(a^i) # b^i + a^i # d(b^i)
    CrossElem step;
    // legs are attached by the multiplication
    step[{Word{Mono{}, Mono{Letter{i, {}}}}, Word{Mono{Letter{i, {}}}}}] = Scalar(1);
    step[{Word{Mono{Letter{i, {}}}}, Word{Mono{}, Mono{Letter{i, {}}}}}] = Scalar(1);
    acc = cross_multiply(acc, step);
  }
  CrossElem component, sorted;
  const Scalar koszul((p * q) % 2 == 0 ? 1 : -1);
  for (const auto& [w, c] : acc)
    if (degree(w.first) == p && degree(w.second) == q) {
      component[w] = c;
      sorted[w] = koszul * c;
    }
  CrossElem shuffles;
  for (const auto& s : shuffle_set(q, p)) {
    Scalar& c = shuffles[theta(s)];
    c += Scalar(s.sign);
    if (sgn(c) == 0) shuffles.erase(theta(s));
  }
  OracleResult r;
  r.p = p;
  r.q = q;
  r.words = component.size();
  r.literal_match = component == shuffles;
  r.sorted_match = sorted == shuffles;
  r.first_difference = first_difference(sorted, shuffles);
  return r;
}

}  // namespace hc
