#include "poly.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace g2 {

namespace {

void trim(Mono& m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
}

bool desc(const Term& a, const Term& b) { return a.m > b.m; }

}  // namespace

void mono_set(Mono& m, int v, int e) {
  if (e < 0 || e > 255) throw std::overflow_error("monomial exponent out of range");
  if (v >= static_cast<int>(m.size())) {
    if (e == 0) return;
    m.resize(v + 1, 0);
  }
  m[v] = static_cast<char>(e);
  trim(m);
}

Mono mono_mul(const Mono& a, const Mono& b) {
  const Mono& lo = a.size() < b.size() ? a : b;
  Mono r = a.size() < b.size() ? b : a;
  for (size_t i = 0; i < lo.size(); ++i) {
    int e = static_cast<unsigned char>(r[i]) + static_cast<unsigned char>(lo[i]);
    if (e > 255) throw std::overflow_error("monomial exponent overflow");
    r[i] = static_cast<char>(e);
  }
  return r;
}

bool mono_divides(const Mono& a, const Mono& b) {
  if (a.size() > b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (static_cast<unsigned char>(a[i]) > static_cast<unsigned char>(b[i])) return false;
  return true;
}

Mono mono_quot(const Mono& b, const Mono& a) {
  Mono r = b;
  for (size_t i = 0; i < a.size(); ++i) r[i] = static_cast<char>(static_cast<unsigned char>(r[i]) - static_cast<unsigned char>(a[i]));
  trim(r);
  return r;
}

int mono_degree(const Mono& m) {
  int d = 0;
  for (unsigned char c : m) d += c;
  return d;
}

Poly::Poly(const mpz_class& c) {
  if (c != 0) terms.push_back({Mono(), c});
}

Poly Poly::var(int v, int e) {
  Poly p;
  Mono m;
  mono_set(m, v, e);
  p.terms.push_back({m, 1});
  return p;
}

Poly Poly::monomial(const Mono& m, const mpz_class& c) {
  Poly p;
  if (c != 0) p.terms.push_back({m, c});
  return p;
}

mpz_class Poly::const_value() const {
  if (terms.empty()) return 0;
  if (!terms[0].m.empty()) throw std::logic_error("polynomial is not constant");
  return terms[0].c;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r;
  r.terms.reserve(terms.size() + o.terms.size());
  size_t i = 0, j = 0;
  while (i < terms.size() && j < o.terms.size()) {
    int c = terms[i].m.compare(o.terms[j].m);
    if (c > 0) {
      r.terms.push_back(terms[i++]);
    } else if (c < 0) {
      r.terms.push_back(o.terms[j++]);
    } else {
      mpz_class s = terms[i].c + o.terms[j].c;
      if (s != 0) r.terms.push_back({terms[i].m, s});
      ++i, ++j;
    }
  }
  for (; i < terms.size(); ++i) r.terms.push_back(terms[i]);
  for (; j < o.terms.size(); ++j) r.terms.push_back(o.terms[j]);
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms) t.c = -t.c;
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  const Poly& a = terms.size() <= o.terms.size() ? *this : o;
  const Poly& b = terms.size() <= o.terms.size() ? o : *this;
  if (a.terms.size() == 1) {
    Poly r = b.shifted(a.terms[0].m);
    if (a.terms[0].c != 1)
      for (auto& t : r.terms) t.c *= a.terms[0].c;
    return r;
  }
  std::unordered_map<Mono, mpz_class> acc;
  acc.reserve(a.terms.size() * b.terms.size());
  for (const auto& ta : a.terms)
    for (const auto& tb : b.terms) {
      mpz_class& slot = acc[mono_mul(ta.m, tb.m)];
      mpz_addmul(slot.get_mpz_t(), ta.c.get_mpz_t(), tb.c.get_mpz_t());
    }
  Poly r;
  r.terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) r.terms.push_back({m, std::move(c)});
  std::sort(r.terms.begin(), r.terms.end(), desc);
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (terms.size() != o.terms.size()) return false;
  for (size_t i = 0; i < terms.size(); ++i)
    if (terms[i].m != o.terms[i].m || terms[i].c != o.terms[i].c) return false;
  return true;
}

Poly Poly::scaled(const mpz_class& c) const {
  if (c == 0) return Poly();
  Poly r = *this;
  if (c != 1)
    for (auto& t : r.terms) t.c *= c;
  return r;
}

Poly Poly::shifted(const Mono& m) const {
  Poly r = *this;
  if (!m.empty())
    for (auto& t : r.terms) t.m = mono_mul(t.m, m);
  return r;
}

void Poly::divexact(const mpz_class& c) {
  for (auto& t : terms) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), c.get_mpz_t());
}

mpz_class Poly::content() const {
  mpz_class g = 0;
  for (const auto& t : terms) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

int Poly::num_vars() const {
  size_t n = 0;
  for (const auto& t : terms) n = std::max(n, t.m.size());
  return static_cast<int>(n);
}

int Poly::degree(int v) const {
  int d = 0;
  for (const auto& t : terms) d = std::max(d, mono_exp(t.m, v));
  return d;
}

int Poly::total_degree() const {
  int d = 0;
  for (const auto& t : terms) d = std::max(d, mono_degree(t.m));
  return d;
}

std::vector<int> Poly::vars() const {
  std::vector<int> out;
  int n = num_vars();
  for (int v = 0; v < n; ++v)
    if (has_var(v)) out.push_back(v);
  return out;
}

Poly Poly::diff(int v) const {
  Poly r;
  for (const auto& t : terms) {
    int e = mono_exp(t.m, v);
    if (e == 0) continue;
    Mono m = t.m;
    mono_set(m, v, e - 1);
    r.terms.push_back({m, t.c * e});
  }
  // lowering one exponent keeps lexicographic order
  return r;
}

Poly Poly::pow(unsigned k) const {
  Poly r(1), b = *this;
  while (k) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

std::vector<Poly> Poly::coeffs_in(int v) const {
  std::vector<Poly> cs(degree(v) + 1);
  for (const auto& t : terms) {
    int e = mono_exp(t.m, v);
    Mono m = t.m;
    mono_set(m, v, 0);
    cs[e].terms.push_back({m, t.c});
  }
  for (auto& c : cs) std::sort(c.terms.begin(), c.terms.end(), desc);
  return cs;
}

Poly Poly::from_coeffs(int v, const std::vector<Poly>& cs) {
  Poly r;
  for (size_t e = 0; e < cs.size(); ++e) {
    Mono m;
    mono_set(m, v, static_cast<int>(e));
    r += cs[e].shifted(m);
  }
  return r;
}

void Poly::canonicalize() {
  std::sort(terms.begin(), terms.end(), desc);
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().m == t.m)
      out.back().c += t.c;
    else
      out.push_back(std::move(t));
    if (out.back().c == 0) out.pop_back();
  }
  terms = std::move(out);
}

bool divide_exact(const Poly& a, const Poly& b, Poly& q) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  q = Poly();
  if (a.is_zero()) return true;
  const Term& lb = b.lead();
  if (b.terms.size() == 1) {
    for (const auto& t : a.terms) {
      if (!mono_divides(lb.m, t.m) || !mpz_divisible_p(t.c.get_mpz_t(), lb.c.get_mpz_t())) return false;
      q.terms.push_back({mono_quot(t.m, lb.m), t.c / lb.c});
    }
    return true;
  }
  std::map<Mono, mpz_class, std::greater<Mono>> r;
  for (const auto& t : a.terms) r.emplace(t.m, t.c);
  while (!r.empty()) {
    auto it = r.begin();
    if (!mono_divides(lb.m, it->first) || !mpz_divisible_p(it->second.get_mpz_t(), lb.c.get_mpz_t())) return false;
    Mono qm = mono_quot(it->first, lb.m);
    mpz_class qc = it->second / lb.c;
    r.erase(it);
    for (size_t k = 1; k < b.terms.size(); ++k) {
      Mono m = mono_mul(qm, b.terms[k].m);
      auto [pos, fresh] = r.try_emplace(m, 0);
      mpz_submul(pos->second.get_mpz_t(), qc.get_mpz_t(), b.terms[k].c.get_mpz_t());
      if (pos->second == 0) r.erase(pos);
    }
    q.terms.push_back({std::move(qm), std::move(qc)});
  }
  return true;
}

mpz_class make_primitive(Poly& p) {
  if (p.is_zero()) return 0;
  mpz_class g = p.content();
  if (p.lead().c < 0) g = -g;
  if (g != 1) p.divexact(g);
  return g;
}

namespace {

using UPoly = std::vector<Poly>;  // coefficients in the main variable

void strip(UPoly& u) {
  while (!u.empty() && u.back().is_zero()) u.pop_back();
}

Poly content_in(const UPoly& u) {
  Poly g;
  for (const auto& c : u) {
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

UPoly pseudo_rem(UPoly a, const UPoly& b) {
  int db = static_cast<int>(b.size()) - 1;
  const Poly& lcb = b.back();
  int d = static_cast<int>(a.size()) - db;
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    Poly lca = a.back();
    int s = static_cast<int>(a.size()) - 1 - db;
    for (auto& c : a) c = c * lcb;
    for (int i = 0; i <= db; ++i) a[i + s] -= lca * b[i];
    a.pop_back();
    strip(a);
    --d;
  }
  if (d > 0) {
    Poly f = lcb.pow(d);
    for (auto& c : a) c = c * f;
  }
  return a;
}

Poly prs_gcd(UPoly a, UPoly b, int v) {
  if (a.size() < b.size()) std::swap(a, b);
  while (true) {
    UPoly r = pseudo_rem(a, b);
    if (r.empty()) return Poly::from_coeffs(v, b);
    if (r.size() == 1) return Poly(1);
    Poly c = content_in(r);
    for (auto& x : r) {
      Poly q;
      divide_exact(x, c, q);
      x = q;
    }
    a = std::move(b);
    b = std::move(r);
  }
}

}  // namespace

Poly gcd(const Poly& a0, const Poly& b0) {
  if (a0.is_zero()) {
    Poly r = b0;
    make_primitive(r);
    if (!r.is_zero()) r = r.scaled(b0.content());
    return r;
  }
  if (b0.is_zero()) return gcd(b0, a0);
  if (a0.is_const() || b0.is_const()) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a0.content().get_mpz_t(), b0.content().get_mpz_t());
    return Poly(g);
  }
  int v = std::max(a0.num_vars(), b0.num_vars()) - 1;
  while (!a0.has_var(v) && !b0.has_var(v)) --v;
  if (!a0.has_var(v)) return gcd(a0, content_in(b0.coeffs_in(v)));
  if (!b0.has_var(v)) return gcd(content_in(a0.coeffs_in(v)), b0);
  UPoly ua = a0.coeffs_in(v), ub = b0.coeffs_in(v);
  Poly ca = content_in(ua), cb = content_in(ub);
  for (auto& x : ua) {
    Poly q;
    divide_exact(x, ca, q);
    x = q;
  }
  for (auto& x : ub) {
    Poly q;
    divide_exact(x, cb, q);
    x = q;
  }
  Poly h = prs_gcd(ua, ub, v);
  make_primitive(h);
  Poly g = gcd(ca, cb) * h;
  if (!g.is_zero() && g.lead().c < 0) g = -g;
  return g;
}

}  // namespace g2
