#include "curves.hpp"

#include <random>

#include "binform.hpp"
#include "expr.hpp"
#include "extalg.hpp"

namespace g2::curves {

using num::Complex;
using num::Real;

void CuspidalSexticFamily::validate() const {
  if (num::abs(p1 - p2) == 0) throw DomainError("degenerate family: p1 = p2");
  if (num::abs(p3) == 0) throw DomainError("degenerate family: p3 = 0");
}

CuspidalSexticFamily CuspidalSexticFamily::rational(const std::array<mpq_class, 4>& q, const mpq_class& p1,
                                                    const mpq_class& p2, const mpq_class& p3) {
  CuspidalSexticFamily f;
  for (int i = 0; i < 4; ++i) f.q[i] = Complex(num::to_real(q[i]));
  f.p1 = Complex(num::to_real(p1));
  f.p2 = Complex(num::to_real(p2));
  f.p3 = Complex(num::to_real(p3));
  f.validate();
  return f;
}

Complex CuspidalSexticFamily::Q(const Complex& x, int derivative) const {
  Complex s;
  for (int a = derivative; a < 4; ++a) {
    long fall = 1;
    for (int j = 0; j < derivative; ++j) fall *= a - j;
    s += q[a] * Complex(fall) * num::pow(x, a - derivative);
  }
  return s;
}

Complex CuspidalSexticFamily::P(const Complex& x) const { return p3 * (x - p2) * (x - p1); }

Complex CuspidalSexticFamily::implicit(const Complex& x, const Complex& y) const {
  Complex u = y + Q(x);
  return u * u + num::pow(P(x), 3);
}

CuspidalSexticFamily random_family(uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
  auto rq = [&] {
    mpq_class r(num(rng), den(rng));
    r.canonicalize();
    return r;
  };
  std::array<mpq_class, 4> q{rq(), rq(), rq(), rq()};
  mpq_class p1 = rq(), p2 = rq(), p3 = rq();
  while (abs(p1 - p2) < 1) p2 = rq();
  while (p3 == 0) p3 = rq();
  return CuspidalSexticFamily::rational(q, p1, p2, p3);
}

CurvePoint parametrize(const CuspidalSexticFamily& f, const Complex& lambda, int branch) {
  f.validate();
  Complex l2 = lambda * lambda, den = l2 + Complex(1);
  if (num::abs(den) < Real("1e-40")) throw PoleError("the parametrization has poles at lambda = +-i");
  Complex x = (f.p1 + f.p2 * l2) / den;
  Complex p32 = f.p3 * num::sqrt(f.p3);
  Complex y = Complex(branch) * p32 * num::pow(f.p1 - f.p2, 3) * num::pow(lambda, 3) / num::pow(den, 3) - f.Q(x);
  return {x, y};
}

GenusCount genus_count() {
  GenusCount g;
  g.arithmetic = (g.degree - 1) * (g.degree - 2) / 2;
  // two double points and the quadruple point at infinity
  g.delta = {1, 1, 8};
  g.genus = g.arithmetic;
  for (int d : g.delta) g.genus -= d;
  return g;
}

Complex cusp_ode_rhs(const Complex& y4, const Complex& y5, const Complex& y6) {
  if (num::abs(y4) == 0) throw PoleError("y4 = 0");
  return Complex(num::to_real(mpq_class(21, 5))) * y6 * y5 / y4 -
         Complex(num::to_real(mpq_class(84, 25))) * num::pow(y5, 3) / (y4 * y4);
}

namespace {

// g = P sigma with sigma^2 = P and its x-derivatives, exact
struct Branch {
  SpacePtr sp;
  std::array<Expr, 8> g;
  bool symbolic_zero = false;
};

const Branch& branch_data() {
  static const Branch b = [] {
    Branch r;
    auto sp0 = Space::make({"x"}, {"p1", "p2", "p3"});
    Poly P = Poly::var(3) * (Poly::var(0) - Poly::var(2)) * (Poly::var(0) - Poly::var(1));
    r.sp = sp0->with_radical("sigma", 2, P);
    r.g[0] = parse(r.sp, "p3*(x - p2)*(x - p1)*sigma");
    for (int k = 1; k < 8; ++k) r.g[k] = partial(r.g[k - 1], "x");
    Expr R = r.g[7] - r.g[6] * r.g[5] / r.g[4] * mpq_class(21, 5) + r.g[5].pow(3) / r.g[4].pow(2) * mpq_class(84, 25);
    r.symbolic_zero = R.is_zero_nf();
    return r;
  }();
  return b;
}

}  // namespace

OdeSample ode_residual_at(const CuspidalSexticFamily& f, const Complex& x, int branch, const Real& guard) {
  f.validate();
  if (num::abs(x - f.p1) < guard || num::abs(x - f.p2) < guard)
    throw BranchError("evaluation point too close to a branch point");
  const Branch& b = branch_data();
  std::vector<Complex> val(b.sp->size());
  val[b.sp->index("x")] = x;
  val[b.sp->index("p1")] = f.p1;
  val[b.sp->index("p2")] = f.p2;
  val[b.sp->index("p3")] = f.p3;
  val[b.sp->index("sigma")] = num::sqrt(f.P(x));
  Complex ib = Complex(branch) * num::I;
  OdeSample s;
  s.x = x;
  for (int k = 0; k < 8; ++k) s.y[k] = ib * eval_complex(b.g[k], val) - f.Q(x, k);
  s.residual = num::abs(s.y[7] - cusp_ode_rhs(s.y[4], s.y[5], s.y[6]));
  return s;
}

OdeResidualReport ode_residual_check(const CuspidalSexticFamily& f, int branch, int points, uint64_t seed) {
  f.validate();
  OdeResidualReport rep;
  rep.symbolic_zero = branch_data().symbolic_zero;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(-400, 400);
  Real guard = num::abs(f.p1 - f.p2) / 4;
  rep.max_residual = 0;
  while (static_cast<int>(rep.samples.size()) < points) {
    Complex x(Real(d(rng)) / 100, Real(d(rng)) / 100);
    if (num::abs(x - f.p1) < guard || num::abs(x - f.p2) < guard) continue;
    auto s = ode_residual_at(f, x, branch, guard);
    rep.max_residual = std::max(rep.max_residual, s.residual);
    rep.samples.push_back(s);
  }
  return rep;
}

namespace {

// dF/dt for F = (y + Q(x))^2 + P(x)^3, t = (p1, p2, p3, q0, .., q3)
struct Implicit {
  SpacePtr sp;
  std::array<Expr, 7> dF;
};

const Implicit& implicit_data() {
  static const Implicit d = [] {
    Implicit r;
    r.sp = Space::make({"x", "y"}, {"p1", "p2", "p3", "q0", "q1", "q2", "q3"});
    Expr F = parse(r.sp, "(y + q0 + q1*x + q2*x^2 + q3*x^3)^2 + (p3*(x - p2)*(x - p1))^3");
    const char* t[] = {"p1", "p2", "p3", "q0", "q1", "q2", "q3"};
    for (int a = 0; a < 7; ++a) r.dF[a] = partial(F, t[a]);
    return r;
  }();
  return d;
}

// small dense complex solve
std::vector<Complex> solve(std::vector<std::vector<Complex>> A, std::vector<Complex> b) {
  int n = static_cast<int>(b.size());
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int i = c + 1; i < n; ++i)
      if (num::abs(A[i][c]) > num::abs(A[p][c])) p = i;
    std::swap(A[p], A[c]);
    std::swap(b[p], b[c]);
    if (num::abs(A[c][c]) == 0) throw DomainError("singular interpolation system");
    for (int i = c + 1; i < n; ++i) {
      Complex m = A[i][c] / A[c][c];
      for (int j = c; j < n; ++j) A[i][j] -= m * A[c][j];
      b[i] -= m * b[c];
    }
  }
  std::vector<Complex> x(n);
  for (int i = n - 1; i >= 0; --i) {
    Complex s = b[i];
    for (int j = i + 1; j < n; ++j) s -= A[i][j] * x[j];
    x[i] = s / A[i][i];
  }
  return x;
}

}  // namespace

NormalSection normal_section(const CuspidalSexticFamily& f, const std::array<Complex, 7>& dt) {
  f.validate();
  const Implicit& im = implicit_data();
  const SpacePtr& sp = im.sp;
  auto cleared = [&](const Complex& l) {
    CurvePoint c = parametrize(f, l, 1);
    std::vector<Complex> val(sp->size());
    val[sp->index("x")] = c.x;
    val[sp->index("y")] = c.y;
    val[sp->index("p1")] = f.p1;
    val[sp->index("p2")] = f.p2;
    val[sp->index("p3")] = f.p3;
    for (int a = 0; a < 4; ++a) val[sp->index("q" + std::to_string(a))] = f.q[a];
    Complex s;
    for (int a = 0; a < 7; ++a) s += eval_complex(im.dF[a], val) * dt[a];
    return s * num::pow(l * l + Complex(1), 6) / num::pow(l, 3);
  };
  // degree 6 fit through 7 values, checked at 3 more
  std::vector<std::vector<Complex>> A;
  std::vector<Complex> rhs;
  auto node = [](int k) { return Complex(Real(k + 1) / 3, Real(k % 3) / 5); };
  for (int k = 0; k < 7; ++k) {
    Complex l = node(k);
    std::vector<Complex> row;
    for (int e = 0; e <= 6; ++e) row.push_back(num::pow(l, e));
    A.push_back(row);
    rhs.push_back(cleared(l));
  }
  auto c = solve(A, rhs);  // c[e] multiplies l^e
  NormalSection ns;
  ns.fit_residual = 0;
  Real scale = 0;
  for (const auto& z : c) scale = std::max(scale, num::abs(z));
  for (int k = 7; k < 10; ++k) {
    Complex l = node(k), p;
    for (int e = 6; e >= 0; --e) p = p * l + c[e];
    Real err = num::abs(p - cleared(l));
    ns.fit_residual = std::max(ns.fit_residual, scale == 0 ? err : Real(err / scale));
  }
  for (int j = 1; j <= 7; ++j)
    ns.v[j - 1] = c[7 - j] / Complex(num::to_real(mpq_class(binomial(6, j - 1))));
  return ns;
}

CoframeConsistency coframe_consistency_check(const CuspidalSexticFamily& f, const std::string& coframe,
                                             const Real& tol) {
  f.validate();
  CoframeConsistency rep;
  rep.fit_residual = 0;
  for (int a = 0; a < 7; ++a) {
    std::array<Complex, 7> dt;
    dt[a] = Complex(1);
    auto ns = normal_section(f, dt);
    rep.fit_residual = std::max(rep.fit_residual, ns.fit_residual);
    for (int j = 0; j < 7; ++j) rep.v[j][a] = ns.v[j];
  }

  Coframe cf = coframe_catalog(coframe);
  const SpacePtr& sp = cf.chart()->sp;
  std::vector<Complex> val(sp->size());
  val[sp->index("p1")] = f.p1;
  val[sp->index("p2")] = f.p2;
  val[sp->index("p3")] = f.p3;
  for (int a = 0; a < 4; ++a) val[sp->index("q" + std::to_string(a))] = f.q[a];
  // a^5 = p1 - p2, b^10 = p3; the parametrization uses sqrt(p3) = b^5
  val[sp->index("a")] = num::root(f.p1 - f.p2, 5, 0);
  // principal tenth root: b^5 is the principal square root
  val[sp->index("b")] = num::root(f.p3, 10, 0);
  for (int j = 0; j < 7; ++j)
    for (int a = 0; a < 7; ++a) rep.theta[j][a] = eval_complex(cf.theta(j + 1).coeff(Mask(1) << a), val);

  rep.misfit = 0;
  rep.spread = 0;
  for (int j = 0; j < 7; ++j) {
    Complex vt, tt;
    Real vv = 0;
    for (int a = 0; a < 7; ++a) {
      vt += rep.v[j][a] * rep.theta[j][a].conj();
      tt += rep.theta[j][a] * rep.theta[j][a].conj();
      vv = std::max(vv, num::abs(rep.v[j][a]));
    }
    if (num::abs(tt) == 0 || vv == 0) {
      rep.misfit = Real(1);
      continue;
    }
    rep.factor[j] = vt / tt;
    for (int a = 0; a < 7; ++a)
      rep.misfit = std::max(rep.misfit, Real(num::abs(rep.v[j][a] - rep.factor[j] * rep.theta[j][a]) / vv));
  }
  for (int j = 1; j < 7; ++j)
    if (num::abs(rep.factor[0]) != 0)
      rep.spread = std::max(rep.spread, Real(num::abs(rep.factor[j] - rep.factor[0]) / num::abs(rep.factor[0])));
  rep.proportional = rep.misfit < tol && rep.spread < tol && rep.fit_residual < tol;
  return rep;
}

}  // namespace g2::curves
