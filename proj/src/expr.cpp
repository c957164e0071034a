#include "expr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "modp.hpp"

namespace g2 {

namespace {

// ---------- polynomial helpers --------------------------------------------

bool single_var(const Poly& f, int& v) {
  if (f.terms.size() != 1 || f.terms[0].c != 1) return false;
  const Mono& m = f.terms[0].m;
  int found = -1;
  for (size_t i = 0; i < m.size(); ++i) {
    int e = static_cast<unsigned char>(m[i]);
    if (e == 0) continue;
    if (e != 1 || found >= 0) return false;
    found = static_cast<int>(i);
  }
  if (found < 0) return false;
  v = found;
  return true;
}

int min_exp(const Poly& p, int v) {
  int k = 255;
  for (const auto& t : p.terms) k = std::min(k, mono_exp(t.m, v));
  return p.is_zero() ? 0 : k;
}

std::vector<uint64_t> random_point(int n, std::mt19937_64& rng) {
  std::vector<uint64_t> x(n);
  for (auto& v : x) v = modp::random_element(rng);
  return x;
}

uint64_t seed_of(const Poly& a, const Poly& b) {
  return 0x9e3779b97f4a7c15ULL ^ (a.size() * 1315423911ULL) ^ (b.size() << 17) ^
         static_cast<uint64_t>(a.num_vars() * 31 + b.num_vars());
}

// gcd(a, b) = 1 proven by univariate images mod p in every variable of b
bool proven_coprime(const Poly& a, const Poly& b) {
  if (a.is_const() || b.is_const()) return true;
  int v;
  if (single_var(b, v)) return min_exp(a, v) == 0;
  if (single_var(a, v)) return min_exp(b, v) == 0;
  std::mt19937_64 rng(seed_of(a, b));
  int n = std::max(a.num_vars(), b.num_vars());
  for (int w : b.vars()) {
    bool ok = false;
    for (int attempt = 0; attempt < 4 && !ok; ++attempt) {
      auto x = random_point(n, rng);
      auto ia = modp::image(a, w, x), ib = modp::image(b, w, x);
      if (modp::udeg(ia) != a.degree(w) || modp::udeg(ib) != b.degree(w)) continue;
      if (modp::udeg(modp::ugcd(ia, ib)) > 0) return false;
      ok = true;
    }
    if (!ok) return false;
  }
  return true;
}

// necessary condition for f | a, via one univariate image
bool may_divide(const Poly& f, const Poly& a) {
  std::mt19937_64 rng(seed_of(f, a) + 7);
  int n = std::max(a.num_vars(), f.num_vars());
  for (int w : f.vars()) {
    if (a.degree(w) < f.degree(w)) return false;
    auto x = random_point(n, rng);
    auto ia = modp::image(a, w, x), ib = modp::image(f, w, x);
    if (modp::udeg(ib) != f.degree(w)) continue;
    if (!modp::udivides(ib, ia)) return false;
  }
  return true;
}

void add_factor(std::vector<DenFactor>& den, Poly f, int e);

void split_monomial_content(std::vector<DenFactor>& den, Poly& f, int e) {
  int n = f.num_vars();
  Mono content;
  for (int v = 0; v < n; ++v) {
    int k = min_exp(f, v);
    if (k > 0) {
      mono_set(content, v, k);
      add_factor(den, Poly::var(v), e * k);
    }
  }
  if (!content.empty())
    for (auto& t : f.terms) t.m = mono_quot(t.m, content);
}

void add_factor(std::vector<DenFactor>& den, Poly f, int e) {
  if (e == 0) return;
  make_primitive(f);
  if (f.is_const()) return;
  int v;
  if (!single_var(f, v)) {
    split_monomial_content(den, f, e);
    if (f.is_const()) return;
  }
  for (size_t i = 0; i < den.size(); ++i) {
    if (den[i].f == f) {
      den[i].e += e;
      return;
    }
  }
  for (size_t i = 0; i < den.size(); ++i) {
    if (proven_coprime(den[i].f, f)) continue;
    Poly g = gcd(den[i].f, f);
    if (g.is_const()) continue;
    DenFactor h = den[i];
    den.erase(den.begin() + i);
    Poly hq, fq;
    divide_exact(h.f, g, hq);
    divide_exact(f, g, fq);
    add_factor(den, g, h.e);
    add_factor(den, hq, h.e);
    add_factor(den, g, e);
    add_factor(den, fq, e);
    return;
  }
  den.push_back({std::move(f), e});
}

// remove common factors of num and the denominator
void cancel(Poly& num, std::vector<DenFactor>& den) {
  for (size_t i = 0; i < den.size(); ++i) {
    auto& d = den[i];
    int v;
    if (single_var(d.f, v)) {
      int k = std::min(d.e, min_exp(num, v));
      if (k > 0) {
        Mono m;
        mono_set(m, v, k);
        for (auto& t : num.terms) t.m = mono_quot(t.m, m);
        d.e -= k;
      }
      continue;
    }
    while (d.e > 0) {
      if (proven_coprime(num, d.f)) break;
      Poly q;
      if (may_divide(d.f, num) && divide_exact(num, d.f, q)) {
        num = std::move(q);
        --d.e;
        continue;
      }
      Poly g = gcd(num, d.f);
      if (g.is_const()) break;
      // a proper common divisor: refine this factor and retry
      Poly rest;
      divide_exact(d.f, g, rest);
      int e = d.e;
      den.erase(den.begin() + i);
      add_factor(den, g, e);
      add_factor(den, rest, e);
      cancel(num, den);
      return;
    }
  }
  den.erase(std::remove_if(den.begin(), den.end(), [](const DenFactor& d) { return d.e == 0; }), den.end());
}

void reduce_radicals(const Space& sp, Poly& p) {
  if (!sp.has_radicals() || p.is_zero()) return;
  int n = std::min<int>(p.num_vars(), static_cast<int>(sp.size()));
  for (int r = 0; r < n; ++r) {
    const Symbol& s = sp.sym(r);
    if (s.kind != SymKind::Radical) continue;
    if (p.degree(r) < s.m) continue;
    std::vector<Poly> powers{Poly(1)};
    Poly out;
    std::vector<Term> keep;
    for (auto& t : p.terms) {
      int e = mono_exp(t.m, r);
      if (e < s.m) {
        keep.push_back(std::move(t));
        continue;
      }
      int q = e / s.m;
      while (static_cast<int>(powers.size()) <= q) powers.push_back(powers.back() * s.base);
      Mono m = t.m;
      mono_set(m, r, e % s.m);
      out += powers[q].shifted(m).scaled(t.c);
    }
    Poly kp;
    kp.terms = std::move(keep);
    p = kp + out;
  }
}

Poly expand(const std::vector<DenFactor>& den) {
  Poly d(1);
  for (const auto& f : den) d = d * f.f.pow(f.e);
  return d;
}

SpacePtr common(const SpacePtr& a, const SpacePtr& b) {
  if (a == b || !b) return a;
  if (!a) return b;
  if (a->extends(b.get())) return a;
  if (b->extends(a.get())) return b;
  throw DomainError("expressions belong to unrelated symbol spaces");
}

std::string var_name(const Space& sp, int v) { return sp.sym(v).name; }

std::string mono_str(const Space& sp, const Mono& m) {
  std::string s;
  for (size_t i = 0; i < m.size(); ++i) {
    int e = static_cast<unsigned char>(m[i]);
    if (!e) continue;
    if (!s.empty()) s += "*";
    s += var_name(sp, static_cast<int>(i));
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

std::string poly_str(const Space& sp, const Poly& p, const mpz_class& scale) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : p.terms) {
    mpz_class c = t.c * scale;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first)
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    first = false;
    std::string ms = mono_str(sp, t.m);
    if (ms.empty())
      s += c.get_str();
    else if (c == 1)
      s += ms;
    else
      s += c.get_str() + "*" + ms;
  }
  return s;
}

}  // namespace

// ---------- construction ---------------------------------------------------

Expr::Expr(SpacePtr sp, const mpq_class& c) : sp_(std::move(sp)) {
  if (c != 0) {
    c_ = c;
    num_ = Poly(1);
  }
}

Expr Expr::sym(SpacePtr sp, int index) {
  if (index < 0 || index >= static_cast<int>(sp->size())) throw DomainError("symbol index out of range");
  Expr e;
  e.sp_ = std::move(sp);
  e.c_ = 1;
  e.num_ = Poly::var(index);
  return e;
}

Expr Expr::sym(SpacePtr sp, const std::string& name) {
  int i = sp->index(name);
  return sym(std::move(sp), i);
}

Expr Expr::from_poly(SpacePtr sp, const Poly& p, const mpq_class& c) {
  return from_parts(std::move(sp), c, p, {});
}

Expr Expr::from_parts(SpacePtr sp, const mpq_class& c, const Poly& num, const std::vector<DenFactor>& den) {
  Expr e;
  e.sp_ = std::move(sp);
  e.c_ = c;
  e.num_ = num;
  for (const auto& d : den) {
    if (d.f.is_zero()) throw PoleError("zero denominator");
    Poly f = d.f;
    for (int v : f.vars())
      if (v < static_cast<int>(e.sp_->size()) && e.sp_->sym(v).kind == SymKind::Radical)
        throw DomainError("radical in denominator factor");
    mpz_class k = make_primitive(f);
    mpz_class kp;
    mpz_pow_ui(kp.get_mpz_t(), k.get_mpz_t(), d.e);
    e.c_ /= kp;
    add_factor(e.den_, f, d.e);
  }
  e.finish();
  return e;
}

void Expr::finish() {
  if (c_ == 0 || num_.is_zero()) {
    c_ = 0;
    num_ = Poly();
    den_.clear();
    return;
  }
  if (sp_) reduce_radicals(*sp_, num_);
  if (num_.is_zero()) {
    c_ = 0;
    den_.clear();
    return;
  }
  c_ *= make_primitive(num_);
  c_.canonicalize();
  if (!den_.empty()) cancel(num_, den_);
}

Poly Expr::den_expanded() const { return expand(den_); }

mpq_class Expr::const_value() const {
  if (!is_const()) throw DomainError("expression is not constant");
  if (c_ == 0) return 0;
  return c_ * mpq_class(num_.const_value());
}

bool Expr::has_radicals() const {
  if (!sp_ || !sp_->has_radicals()) return false;
  for (int v : num_.vars())
    if (sp_->sym(v).kind == SymKind::Radical) return true;
  return false;
}

bool Expr::depends_on(int s) const {
  if (num_.has_var(s)) return true;
  for (const auto& d : den_)
    if (d.f.has_var(s)) return true;
  return false;
}

std::vector<int> Expr::symbols() const {
  std::vector<int> out;
  int n = num_.num_vars();
  for (const auto& d : den_) n = std::max(n, d.f.num_vars());
  for (int v = 0; v < n; ++v)
    if (depends_on(v)) out.push_back(v);
  return out;
}

Expr Expr::lift(const SpacePtr& to) const {
  if (sp_ && !to->extends(sp_.get())) throw DomainError("target space does not extend the expression's space");
  Expr e = *this;
  e.sp_ = to;
  return e;
}

// ---------- arithmetic -----------------------------------------------------

Expr Expr::operator-() const {
  Expr e = *this;
  e.c_ = -e.c_;
  return e;
}

Expr Expr::operator*(const mpq_class& q) const {
  if (q == 0) return Expr(sp_, 0);
  Expr e = *this;
  e.c_ *= q;
  return e;
}

Expr operator*(const mpq_class& q, const Expr& e) { return e * q; }

Expr Expr::operator*(const Expr& o) const {
  SpacePtr sp = common(sp_, o.sp_);
  if (c_ == 0 || o.c_ == 0) return Expr(sp, 0);
  Expr r;
  r.sp_ = sp;
  r.c_ = c_ * o.c_;
  r.num_ = num_ * o.num_;
  r.den_ = den_;
  for (const auto& d : o.den_) add_factor(r.den_, d.f, d.e);
  r.finish();
  return r;
}

namespace {

bool same_den(const std::vector<DenFactor>& a, const std::vector<DenFactor>& b) {
  if (a.size() != b.size()) return false;
  for (const auto& x : a) {
    bool found = false;
    for (const auto& y : b)
      if (x.e == y.e && x.f == y.f) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

// exponents of den over a coprime base that refines it
std::vector<int> exponents_over(const std::vector<DenFactor>& den, const std::vector<Poly>& base) {
  std::vector<int> ex(base.size(), 0);
  for (const auto& d : den) {
    Poly rest = d.f;
    for (size_t i = 0; i < base.size() && !rest.is_const(); ++i) {
      Poly q;
      while (divide_exact(rest, base[i], q)) {
        rest = q;
        ex[i] += d.e;
      }
    }
    if (!rest.is_const()) throw std::logic_error("denominator base refinement failed");
  }
  return ex;
}

}  // namespace

Expr Expr::operator+(const Expr& o) const {
  SpacePtr sp = common(sp_, o.sp_);
  if (c_ == 0) return o.lift(sp);
  if (o.c_ == 0) return lift(sp);
  Expr r;
  r.sp_ = sp;
  mpz_class ga, lb;
  mpz_gcd(ga.get_mpz_t(), c_.get_num_mpz_t(), o.c_.get_num_mpz_t());
  mpz_lcm(lb.get_mpz_t(), c_.get_den_mpz_t(), o.c_.get_den_mpz_t());
  mpz_class s1 = (c_.get_num() / ga) * (lb / c_.get_den());
  mpz_class s2 = (o.c_.get_num() / ga) * (lb / o.c_.get_den());
  r.c_ = mpq_class(ga, lb);
  if (same_den(den_, o.den_)) {
    r.num_ = num_.scaled(s1) + o.num_.scaled(s2);
    r.den_ = den_;
  } else {
    std::vector<DenFactor> merged = den_;
    for (const auto& d : o.den_) add_factor(merged, d.f, d.e);
    std::vector<Poly> base;
    for (const auto& d : merged) base.push_back(d.f);
    auto e1 = exponents_over(den_, base), e2 = exponents_over(o.den_, base);
    Poly a1(1), a2(1);
    r.den_.clear();
    for (size_t i = 0; i < base.size(); ++i) {
      int l = std::max(e1[i], e2[i]);
      if (l > e1[i]) a1 = a1 * base[i].pow(l - e1[i]);
      if (l > e2[i]) a2 = a2 * base[i].pow(l - e2[i]);
      r.den_.push_back({base[i], l});
    }
    r.num_ = (num_ * a1).scaled(s1) + (o.num_ * a2).scaled(s2);
  }
  r.finish();
  return r;
}

Expr Expr::operator-(const Expr& o) const { return *this + (-o); }

Expr Expr::operator/(const Expr& o) const { return *this * o.inverse(); }

Expr Expr::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  Expr r(sp_, 1), b = *this;
  while (k) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

namespace {

// radical exponent signature of a monomial
Mono radical_part(const Space& sp, const Mono& m) {
  Mono r;
  for (size_t i = 0; i < m.size(); ++i)
    if (m[i] && sp.sym(static_cast<int>(i)).kind == SymKind::Radical) mono_set(r, static_cast<int>(i), static_cast<unsigned char>(m[i]));
  return r;
}

}  // namespace

Expr Expr::inverse() const {
  if (c_ == 0) throw PoleError("division by zero expression");
  const Space* sp = sp_.get();
  if (!has_radicals()) {
    Expr r;
    r.sp_ = sp_;
    r.c_ = 1 / c_;
    r.num_ = expand(den_);
    add_factor(r.den_, num_, 1);
    r.finish();
    return r;
  }
  // numerator = R * P with a single radical monomial R
  Mono rad = radical_part(*sp, num_.terms[0].m);
  bool monomial = true;
  for (const auto& t : num_.terms)
    if (radical_part(*sp, t.m) != rad) {
      monomial = false;
      break;
    }
  if (monomial) {
    Poly P = num_;
    for (auto& t : P.terms) t.m = mono_quot(t.m, rad);
    // 1/r^e = r^(m-e) / base
    Mono up;
    std::vector<DenFactor> den{{P, 1}};
    for (size_t i = 0; i < rad.size(); ++i) {
      int e = static_cast<unsigned char>(rad[i]);
      if (!e) continue;
      const Symbol& s = sp->sym(static_cast<int>(i));
      mono_set(up, static_cast<int>(i), s.m - e);
      den.push_back({s.base, 1});
    }
    return from_parts(sp_, 1 / c_, expand(den_).shifted(up), den);
  }
  // general case: solve (this) * x = 1 over the radical monomial basis
  std::vector<int> rads;
  for (int v : num_.vars())
    if (sp->sym(v).kind == SymKind::Radical) rads.push_back(v);
  std::vector<Mono> basis{Mono()};
  for (int r : rads) {
    std::vector<Mono> nb;
    for (const auto& b : basis)
      for (int k = 0; k < sp->sym(r).m; ++k) {
        Mono m = b;
        mono_set(m, r, k);
        nb.push_back(m);
      }
    basis = nb;
  }
  size_t n = basis.size();
  auto coords = [&](const Poly& p) {
    std::vector<Expr> col(n, Expr(sp_, 0));
    std::map<Mono, Poly> parts;
    for (const auto& t : p.terms) {
      Mono rp = radical_part(*sp, t.m);
      parts[rp].terms.push_back({mono_quot(t.m, rp), t.c});
    }
    for (auto& [rp, q] : parts) {
      q.canonicalize();
      size_t j = std::find(basis.begin(), basis.end(), rp) - basis.begin();
      col[j] = Expr::from_poly(sp_, q);
    }
    return col;
  };
  std::vector<std::vector<Expr>> M(n, std::vector<Expr>(n + 1, Expr(sp_, 0)));
  for (size_t j = 0; j < n; ++j) {
    Poly prod = num_.shifted(basis[j]);
    reduce_radicals(*sp, prod);
    auto col = coords(prod);
    for (size_t i = 0; i < n; ++i) M[i][j] = col[i];
  }
  M[0][n] = Expr(sp_, 1);
  for (size_t k = 0; k < n; ++k) {
    size_t piv = k;
    while (piv < n && M[piv][k].is_zero_nf()) ++piv;
    if (piv == n) throw PoleError("expression is a zero divisor modulo the radical relations");
    std::swap(M[k], M[piv]);
    Expr inv = M[k][k].inverse();
    for (size_t j = k; j <= n; ++j) M[k][j] = M[k][j] * inv;
    for (size_t i = 0; i < n; ++i) {
      if (i == k || M[i][k].is_zero_nf()) continue;
      Expr f = M[i][k];
      for (size_t j = k; j <= n; ++j) M[i][j] = M[i][j] - f * M[k][j];
    }
  }
  Expr x(sp_, 0);
  for (size_t j = 0; j < n; ++j) x += M[j][n] * Expr::from_poly(sp_, Poly::monomial(basis[j], 1));
  Expr r = x * from_parts(sp_, 1 / c_, expand(den_), {});
  return r;
}

bool Expr::same(const Expr& o) const {
  if (c_ != o.c_) return false;
  if (c_ == 0) return true;
  return num_ == o.num_ && expand(den_) == expand(o.den_);
}

std::string Expr::str() const {
  if (c_ == 0) return "0";
  const Space& sp = *sp_;
  Poly d = expand(den_);
  mpz_class dn = c_.get_den();
  std::string ns = poly_str(sp, num_, c_.get_num());
  if (d.is_one() && dn == 1) return ns;
  std::string ds = poly_str(sp, d, dn);
  bool simple_num = num_.size() == 1;
  bool simple_den = d.size() == 1 && (d.terms[0].m.empty() || (dn == 1 && mono_degree(d.terms[0].m) == 1));
  std::string out = simple_num ? ns : "(" + ns + ")";
  out += "/";
  out += simple_den ? ds : "(" + ds + ")";
  return out;
}

// ---------- derivations ----------------------------------------------------

namespace {

class Deriver {
 public:
  Deriver(SpacePtr sp, const Derivation& d) : sp_(std::move(sp)), d_(d) {}

  // value of the derivation on symbol s
  const Expr& rule(int s) {
    if (auto it = cache_.find(s); it != cache_.end()) return it->second;
    const Symbol& sym = sp_->sym(s);
    Expr v(sp_, 0);
    switch (sym.kind) {
      case SymKind::Coordinate:
      case SymKind::Parameter:
        if (auto it = d_.on.find(s); it != d_.on.end()) v = it->second.lift(sp_);
        break;
      case SymKind::Radical: {
        Expr db = poly(sym.base);
        if (!db.is_zero_nf())
          v = Expr::sym(sp_, s) * db * Expr::from_parts(sp_, mpq_class(1, sym.m), Poly(1), {{sym.base, 1}});
        break;
      }
      case SymKind::Exponential: {
        Expr f = Expr::from_parts(sp_, sym.fc, sym.fnum, {{sym.fden, 1}});
        Expr df = derive_expr(f);
        if (!df.is_zero_nf()) v = Expr::sym(sp_, s) * df;
        break;
      }
      case SymKind::Formal:
        for (auto [arg, next] : sym.dtable) {
          const Expr& da = rule(arg);
          if (da.is_zero_nf()) continue;
          if (next < 0) throw DomainError("derivative of " + sym.name + " beyond the declared order");
          v += da * Expr::sym(sp_, next);
        }
        break;
    }
    return cache_.emplace(s, std::move(v)).first->second;
  }

  Expr poly(const Poly& p) {
    Poly plain;  // contributions whose rule value is an integer polynomial
    Expr rest(sp_, 0);
    for (int s : p.vars()) {
      const Expr& r = rule(s);
      if (r.is_zero_nf()) continue;
      Poly dp = p.diff(s);
      if (r.den_factors().empty() && r.scalar().get_den() == 1)
        plain += dp * r.numerator().scaled(r.scalar().get_num());
      else
        rest += Expr::from_poly(sp_, dp) * r;
    }
    if (sp_->has_radicals()) reduce_radicals(*sp_, plain);
    return Expr::from_poly(sp_, plain) + rest;
  }

  Expr derive_expr(const Expr& e) {
    if (e.is_zero_nf()) return e;
    Expr dn = poly(e.numerator());
    if (e.den_factors().empty()) return dn * e.scalar();
    Expr s(sp_, 0);
    for (const auto& d : e.den_factors()) {
      Expr df = poly(d.f);
      if (df.is_zero_nf()) continue;
      s += df * Expr::from_parts(sp_, d.e, Poly(1), {{d.f, 1}});
    }
    Expr inner = dn - Expr::from_poly(sp_, e.numerator()) * s;
    return inner * Expr::from_parts(sp_, e.scalar(), Poly(1), e.den_factors());
  }

 private:
  SpacePtr sp_;
  const Derivation& d_;
  std::unordered_map<int, Expr> cache_;
};

}  // namespace

Expr derive(const Expr& e, const Derivation& d) {
  if (!e.space()) return e;
  Deriver dv(e.space(), d);
  return dv.derive_expr(e);
}

Expr partial(const Expr& e, int s) {
  const Symbol& sym = e.space()->sym(s);
  if (!sym.independent()) throw DomainError("partial derivative with respect to dependent symbol " + sym.name);
  Derivation d;
  d.on.emplace(s, Expr(e.space(), 1));
  return derive(e, d);
}

Expr partial(const Expr& e, const std::string& name) { return partial(e, e.space()->index(name)); }

// ---------- substitution and evaluation ------------------------------------

Expr substitute(const Expr& e, const std::map<int, Expr>& values, const SpacePtr& to) {
  const Space& sp = *e.space();
  std::unordered_map<int, std::vector<Expr>> powers;
  auto power = [&](int v, int k) -> const Expr& {
    auto& pw = powers[v];
    if (pw.empty()) {
      auto it = values.find(v);
      Expr base;
      if (it != values.end()) {
        base = it->second.lift(to);
      } else {
        const Symbol& s = sp.sym(v);
        if (!s.independent() && to.get() != &sp && !to->extends(&sp))
          throw DomainError("dependent symbol " + s.name + " cannot be carried over");
        base = Expr::sym(to, to->index(s.name));
      }
      pw.push_back(Expr(to, 1));
      pw.push_back(base);
    }
    while (static_cast<int>(pw.size()) <= k) pw.push_back(pw.back() * pw[1]);
    return pw[k];
  };
  auto poly = [&](const Poly& p) {
    Expr acc(to, 0);
    for (const auto& t : p.terms) {
      Expr term(to, mpq_class(t.c));
      for (size_t i = 0; i < t.m.size(); ++i)
        if (t.m[i]) term = term * power(static_cast<int>(i), static_cast<unsigned char>(t.m[i]));
      acc += term;
    }
    return acc;
  };
  if (e.is_zero_nf()) return Expr(to, 0);
  Expr num = poly(e.numerator()) * e.scalar();
  Expr den(to, 1);
  for (const auto& d : e.den_factors()) den = den * poly(d.f).pow(d.e);
  if (den.is_zero_nf()) throw PoleError("substitution makes a denominator vanish");
  return num / den;
}

mpq_class evaluate_exact(const Expr& e, const std::map<int, mpq_class>& point) {
  if (e.is_zero_nf()) return 0;
  const Space& sp = *e.space();
  auto ev = [&](const Poly& p) {
    mpq_class acc = 0;
    for (const auto& t : p.terms) {
      mpq_class v = t.c;
      for (size_t i = 0; i < t.m.size(); ++i) {
        int k = static_cast<unsigned char>(t.m[i]);
        if (!k) continue;
        if (!sp.sym(static_cast<int>(i)).independent())
          throw BranchError("exact evaluation of dependent symbol " + sp.sym(static_cast<int>(i)).name);
        auto it = point.find(static_cast<int>(i));
        if (it == point.end()) throw DomainError("no value for symbol " + sp.sym(static_cast<int>(i)).name);
        mpq_class pw;
        mpz_pow_ui(pw.get_num_mpz_t(), it->second.get_num_mpz_t(), k);
        mpz_pow_ui(pw.get_den_mpz_t(), it->second.get_den_mpz_t(), k);
        v *= pw;
      }
      acc += v;
    }
    return acc;
  };
  mpq_class d = 1;
  for (const auto& f : e.den_factors()) {
    mpq_class x = ev(f.f);
    if (x == 0) throw PoleError("denominator vanishes at the evaluation point");
    for (int k = 0; k < f.e; ++k) d *= x;
  }
  return e.scalar() * ev(e.numerator()) / d;
}

// ---------- modular sampling and zero tests --------------------------------

std::vector<uint64_t> sample_point(const Space& sp, std::mt19937_64& rng) {
  std::vector<uint64_t> x(sp.size());
  for (size_t i = 0; i < sp.size(); ++i) {
    const Symbol& s = sp.sym(static_cast<int>(i));
    if (s.kind == SymKind::Radical) {
      auto r = modp::root(modp::eval(s.base, x), s.m);
      if (!r && s.base.is_const()) {
        x[i] = 0;  // never sampled: see zero_test
        continue;
      }
      if (!r) return {};
      x[i] = *r;
    } else {
      x[i] = modp::random_element(rng);
    }
  }
  return x;
}

std::optional<uint64_t> eval_modp(const Expr& e, const std::vector<uint64_t>& point) {
  if (e.is_zero_nf()) return 0;
  uint64_t d = 1;
  for (const auto& f : e.den_factors()) d = modp::mul(d, modp::pow(modp::eval(f.f, point), f.e));
  if (d == 0) return std::nullopt;
  uint64_t n = modp::eval(e.numerator(), point);
  return modp::mul(modp::mul(n, modp::from_mpq(e.scalar())), modp::inv(d));
}

Sampled sample_zero(const Expr& e, int points, std::mt19937_64& rng) {
  int good = 0, tries = 0;
  bool all_zero = true;
  while (good < points && tries < 20 * points + 100) {
    ++tries;
    auto x = sample_point(*e.space(), rng);
    if (x.empty()) continue;
    auto v = eval_modp(e, x);
    if (!v) continue;
    ++good;
    if (*v != 0) {
      all_zero = false;
      break;
    }
  }
  if (good == 0) throw Inconclusive("every sample point hit a pole");
  return {all_zero, good};
}

ZeroTest zero_test(const Expr& e, const ZeroOptions& opt) {
  ZeroTest r;
  r.zero = e.is_zero_nf();
  if (!e.space() || (!e.has_radicals() && !opt.force_probabilistic)) return r;
  // a constant radical without a root in the field cannot be sampled; the
  // normal form alone decides (radicals of distinct squarefree bases are independent)
  for (int i : e.symbols()) {
    const Symbol& s = e.space()->sym(i);
    if (s.kind == SymKind::Radical && s.base.is_const() && !modp::root(modp::from_mpz(s.base.terms.empty() ? mpz_class(0) : s.base.terms[0].c), s.m))
      return r;
  }
  std::mt19937_64 rng(opt.seed);
  Sampled s = sample_zero(e, opt.points, rng);
  if (s.all_zero != r.zero)
    throw ZeroTestDisagreement("exact normal form says " + std::string(r.zero ? "zero" : "nonzero") +
                               " but random evaluation says " + (s.all_zero ? "zero" : "nonzero"));
  r.mode = ZeroMode::ExactAndProbabilistic;
  r.points = s.points;
  // Schwartz-Zippel: each point fails with probability <= deg / p
  int deg = e.numerator().total_degree();
  for (const auto& d : e.den_factors()) deg += d.f.total_degree() * d.e;
  double per = std::log2(std::max(deg, 1)) - std::log2(static_cast<double>(modp::P));
  r.log2_bound = s.all_zero ? per * s.points : 0;
  return r;
}

bool is_zero(const Expr& e) { return zero_test(e).zero; }

}  // namespace g2
