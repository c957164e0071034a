#include "binform.hpp"

#include <algorithm>
#include <sstream>

namespace g2 {

mpz_class binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

mpz_class factorial(int n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

SpacePtr frame_space(int n) {
  std::vector<std::string> names;
  for (const char* pre : {"theta", "v", "w", "z"})
    for (int i = 1; i <= n + 1; ++i) names.push_back(pre + std::to_string(i));
  return Space::make(names);
}

BinaryForm<Expr> frame_form(const SpacePtr& sp, const std::string& prefix, int n) {
  std::vector<Expr> c;
  for (int i = 1; i <= n + 1; ++i) c.push_back(Expr::sym(sp, prefix + std::to_string(i)));
  return BinaryForm<Expr>(c);
}

namespace {

void require_even(int n) {
  if (n < 2 || n % 2) throw DomainError("I0 is defined for even degree n >= 2, got " + std::to_string(n));
}

// 2 sum_{i<k} (-1)^i binom(2k, i) t_{i+1} t_{2k+1-i} + binom(2k, k) (-1)^k t_{k+1}^2
template <class R, class Coef>
R closed_form(int n, Coef t, R zero) {
  int k = n / 2;
  R s = zero;
  for (int i = 0; i < k; ++i) {
    mpq_class w = 2 * mpq_class(binomial(n, i)) * (i % 2 ? -1 : 1);
    s = s + R(w * (t(i + 1) * t(n + 1 - i)));
  }
  mpq_class w = mpq_class(binomial(n, k)) * (k % 2 ? -1 : 1);
  return s + R(w * (t(k + 1) * t(k + 1)));
}

Expr closed_form_in(const SpacePtr& sp, const std::string& prefix, int n) {
  return closed_form<Expr>(n, [&](int i) { return Expr::sym(sp, prefix + std::to_string(i)); }, Expr(sp, 0));
}

mpq_class ratio(const Expr& a, const Expr& b, const char* what) {
  Expr r = a / b;
  if (!r.is_const()) throw Error(std::string(what) + " is not proportional to the reference");
  return r.const_value();
}

}  // namespace

I0Result invariant_I0(int n) {
  require_even(n);
  SpacePtr sp = frame_space(n);
  I0Result r;
  r.closed_form = closed_form_in(sp, "theta", n);
  r.closed_over_I0 = 2;
  r.I0 = r.closed_form * mpq_class(1, 2);
  auto Q = frame_form(sp, "theta", n);
  r.transvectant_over_I0 = ratio(transvectant(Q, Q, n).c[0], r.I0, "<Q,Q>_n");
  return r;
}

mpq_class I0_value(const BinaryForm<mpq_class>& Q) {
  int n = Q.degree();
  require_even(n);
  mpq_class v = closed_form<mpq_class>(n, [&](int i) { return Q.c[i - 1]; }, mpq_class(0));
  return v / 2;
}

std::pair<int, int> signature(std::vector<std::vector<mpq_class>> a) {
  // congruence diagonalization over Q
  int n = static_cast<int>(a.size()), pos = 0, neg = 0;
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n && piv < 0; ++i)
      if (a[i][i] != 0) piv = i;
    if (piv < 0) {
      // all remaining diagonal entries vanish: fold a nonzero off-diagonal one in
      int pi = -1, pj = -1;
      for (int i = k; i < n && pi < 0; ++i)
        for (int j = i + 1; j < n; ++j)
          if (a[i][j] != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi < 0) break;
      for (int t = 0; t < n; ++t) a[pi][t] += a[pj][t];
      for (int t = 0; t < n; ++t) a[t][pi] += a[t][pj];
      piv = pi;
    }
    std::swap(a[k], a[piv]);
    for (auto& row : a) std::swap(row[k], row[piv]);
    mpq_class d = a[k][k];
    (d > 0 ? pos : neg)++;
    for (int i = k + 1; i < n; ++i) {
      mpq_class f = a[i][k] / d;
      if (f == 0) continue;
      for (int j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      for (int j = k; j < n; ++j) a[j][i] -= f * a[j][k];
    }
  }
  return {pos, neg};
}

namespace {

std::map<int, mpq_class> unit_point(const SpacePtr& sp, int n, const std::vector<std::pair<std::string, int>>& ones) {
  std::map<int, mpq_class> pt;
  for (size_t i = 0; i < sp->size(); ++i) pt[static_cast<int>(i)] = 0;
  (void)n;
  for (const auto& [pre, i] : ones) pt[sp->index(pre + std::to_string(i))] += 1;
  return pt;
}

// rename prefix a -> b (simultaneously for a list of pairs)
Expr rename(const Expr& e, int n, const std::vector<std::pair<std::string, std::string>>& pairs) {
  const SpacePtr& sp = e.space();
  std::map<int, Expr> m;
  for (const auto& [a, b] : pairs)
    for (int i = 1; i <= n + 1; ++i) m.emplace(sp->index(a + std::to_string(i)), Expr::sym(sp, b + std::to_string(i)));
  for (size_t i = 0; i < sp->size(); ++i) m.emplace(static_cast<int>(i), Expr::sym(sp, static_cast<int>(i)));
  return substitute(e, m, sp);
}

}  // namespace

MetricResult polarized_metric(int n) {
  require_even(n);
  SpacePtr sp = frame_space(n);
  MetricResult r;
  r.g = transvectant(frame_form(sp, "v", n), frame_form(sp, "w", n), n).c[0];
  r.symmetric = is_zero(r.g - rename(r.g, n, {{"v", "w"}, {"w", "v"}}));
  Expr gvv = rename(r.g, n, {{"w", "v"}});
  r.constant = ratio(gvv, closed_form_in(sp, "v", n) * mpq_class(1, 2), "g(V,V)");
  r.gram.assign(n + 1, std::vector<mpq_class>(n + 1));
  for (int i = 1; i <= n + 1; ++i)
    for (int j = 1; j <= n + 1; ++j) r.gram[i - 1][j - 1] = evaluate_exact(r.g, unit_point(sp, n, {{"v", i}, {"w", j}}));
  std::tie(r.positive, r.negative) = signature(r.gram);
  return r;
}

std::string ThreeForm::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, c] : comp) {
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    mpq_class a = abs(c);
    if (a != 1) os << a << "*";
    os << "theta" << t[0] << "^theta" << t[1] << "^theta" << t[2];
  }
  return first ? "0" : os.str();
}

ThreeForm printed_three_form() {
  // th4 ^ th1 ^ th7 = -th147, th4 ^ th2 ^ th6 = -th246, th4 ^ th3 ^ th5 = -th345
  ThreeForm f;
  f.comp[{2, 3, 7}] = 3;
  f.comp[{1, 5, 6}] = 3;
  f.comp[{1, 4, 7}] = -1;
  f.comp[{2, 4, 6}] = -6;
  f.comp[{3, 4, 5}] = 15;
  return f;
}

Expr trilinear_of(const SpacePtr& sp, const ThreeForm& f) {
  Expr s(sp, 0);
  auto v = [&](const char* p, int i) { return Expr::sym(sp, p + std::to_string(i)); };
  static const int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  for (const auto& [t, c] : f.comp) {
    for (int k = 0; k < 6; ++k) {
      Expr term = v("v", t[perm[k][0]]) * v("w", t[perm[k][1]]) * v("z", t[perm[k][2]]);
      s += (k < 3 ? c : mpq_class(-c)) * term;
    }
  }
  return s;
}

PhiResult phi_trilinear() {
  const int n = 6;
  SpacePtr sp = frame_space(n);
  PhiResult r;
  auto XY = transvectant(frame_form(sp, "v", n), frame_form(sp, "w", n), 3);
  r.phi = transvectant(XY, frame_form(sp, "z", n), 6).c[0];
  for (int a = 1; a <= 7; ++a)
    for (int b = a + 1; b <= 7; ++b)
      for (int c = b + 1; c <= 7; ++c) {
        mpq_class v = evaluate_exact(r.phi, unit_point(sp, n, {{"v", a}, {"w", b}, {"z", c}}));
        if (v != 0) r.extracted.comp[{a, b, c}] = v;
      }
  // antisymmetric under the two generating transpositions, and equal to the
  // alternating form rebuilt from its components
  bool swap_vw = is_zero(r.phi + rename(r.phi, n, {{"v", "w"}, {"w", "v"}}));
  bool swap_wz = is_zero(r.phi + rename(r.phi, n, {{"w", "z"}, {"z", "w"}}));
  r.alternating = swap_vw && swap_wz && is_zero(r.phi - trilinear_of(sp, r.extracted));
  ThreeForm pf = printed_three_form();
  r.constant = 0;
  bool prop = pf.comp.size() == r.extracted.comp.size();
  for (const auto& [t, c] : pf.comp) {
    auto it = r.extracted.comp.find(t);
    if (it == r.extracted.comp.end()) {
      prop = false;
      break;
    }
    mpq_class k = it->second / c;
    if (r.constant == 0) r.constant = k;
    else if (k != r.constant) prop = false;
  }
  if (!prop) throw Error("extracted three-form is not proportional to the reference three-form");
  return r;
}

BinaryForm<mpq_class> act(const std::array<mpq_class, 4>& A, const BinaryForm<mpq_class>& Q) {
  // X1 -> a X1 + c X2, X2 -> b X1 + d X2; polynomials in X1 with X2 = 1
  const mpq_class &a = A[0], &b = A[1], &c = A[2], &d = A[3];
  int n = Q.degree();
  auto power = [&](const mpq_class& s, const mpq_class& t, int e) {
    // (s X1 + t)^e
    std::vector<mpq_class> p(e + 1);
    for (int j = 0; j <= e; ++j) {
      mpq_class v = mpq_class(binomial(e, j));
      for (int q = 0; q < j; ++q) v *= s;
      for (int q = 0; q < e - j; ++q) v *= t;
      p[j] = v;
    }
    return p;
  };
  std::vector<mpq_class> out(n + 1);
  for (int i = 0; i <= n; ++i) {
    auto p1 = power(a, c, i), p2 = power(b, d, n - i);
    mpq_class w = Q.raw(i);
    for (size_t x = 0; x < p1.size(); ++x)
      for (size_t y = 0; y < p2.size(); ++y) out[x + y] += w * p1[x] * p2[y];
  }
  return BinaryForm<mpq_class>::from_raw(out);
}

Equianharmonic equianharmonic_check(const std::vector<mpq_class>& c, const num::Real& tol) {
  if (c.size() != 5) throw DomainError("equianharmonic_check needs a quartic (5 coefficients)");
  using namespace num;
  Equianharmonic r;
  BinaryForm<mpq_class> Q(c);
  r.I0 = I0_value(Q);
  r.I0_zero = r.I0 == 0;
  // q(x) = Q(1, x), x = X2/X1: coefficient of x^j is binom(4, j) c_{4-j}
  std::vector<mpq_class> q(5);
  for (int j = 0; j <= 4; ++j) q[j] = mpq_class(binomial(4, j)) * c[4 - j];
  while (!q.empty() && q.back() == 0) q.pop_back();
  int deg = static_cast<int>(q.size()) - 1;
  if (deg < 3) throw DomainError("repeated root at infinity");
  r.root_at_infinity = deg == 3;
  // exact repeated-root test: gcd(q, q') over Q
  mpz_class lcm = 1;
  for (const auto& x : q) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Poly> zc;
  for (const auto& x : q) zc.push_back(Poly(mpz_class(x * lcm)));
  Poly qp = Poly::from_coeffs(0, zc);
  if (gcd(qp, qp.diff(0)).total_degree() > 0) throw DomainError("quartic has a repeated root");
  std::vector<Complex> cc;
  for (const auto& x : q) cc.push_back(Complex(to_real(x)));
  r.roots = poly_roots(cc);
  Real sep = -1;
  for (size_t i = 0; i < r.roots.size(); ++i)
    for (size_t j = i + 1; j < r.roots.size(); ++j) {
      Real s = abs(r.roots[i] - r.roots[j]);
      if (sep < 0 || s < sep) sep = s;
    }
  if (sep < Real("1e-20")) throw Inconclusive("roots too close to separate reliably");
  const auto& z = r.roots;
  if (r.root_at_infinity) r.cross_ratio = (z[0] - z[2]) / (z[1] - z[2]);
  else r.cross_ratio = (z[0] - z[2]) * (z[1] - z[3]) / ((z[0] - z[3]) * (z[1] - z[2]));
  const Complex& l = r.cross_ratio;
  r.residual = abs(l * l - l + Complex(1));
  r.equianharmonic = r.residual < tol;
  return r;
}

}  // namespace g2
