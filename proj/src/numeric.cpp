#include "numeric.hpp"

#include <algorithm>
#include <sstream>

#include "errors.hpp"

namespace g2::num {

Complex Complex::operator/(const Complex& o) const {
  Real d = o.re * o.re + o.im * o.im;
  if (d == 0) throw PoleError("complex division by zero");
  return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
}

std::string Complex::str(int digits) const {
  std::ostringstream os;
  os.precision(digits);
  os << re << (im < 0 ? " - " : " + ") << boost::multiprecision::abs(im) << "i";
  return os.str();
}

Real to_real(const mpq_class& q) {
  return Real(q.get_num().get_str()) / Real(q.get_den().get_str());
}

Real abs(const Complex& z) { return boost::multiprecision::hypot(z.re, z.im); }
Real arg(const Complex& z) { return boost::multiprecision::atan2(z.im, z.re); }
Complex polar(const Real& r, const Real& t) { return {r * boost::multiprecision::cos(t), r * boost::multiprecision::sin(t)}; }

Complex sqrt(const Complex& z) { return root(z, 2, 0); }

Complex root(const Complex& z, int m, int k) {
  Real r = abs(z);
  if (r == 0) return {};
  Real two_pi = 2 * boost::math::constants::pi<Real>();
  return polar(boost::multiprecision::pow(r, Real(1) / m), (arg(z) + two_pi * k) / m);
}

Complex pow(const Complex& z, int k) {
  if (k < 0) return Complex(1) / pow(z, -k);
  Complex r(1), b = z;
  for (; k; k >>= 1, b = b * b)
    if (k & 1) r = r * b;
  return r;
}

Complex exp(const Complex& z) { return polar(boost::multiprecision::exp(z.re), z.im); }

std::vector<Complex> poly_roots(const std::vector<Complex>& c0) {
  int d = static_cast<int>(c0.size()) - 1;
  if (d < 1 || abs(c0.back()) == 0) throw DomainError("poly_roots needs a nonconstant polynomial");
  std::vector<Complex> c(c0.size());
  for (int i = 0; i <= d; ++i) c[i] = c0[i] / c0[d];
  // initial guesses on a circle that encloses the roots (Cauchy bound)
  Real bound = 0;
  for (int i = 0; i < d; ++i) bound = std::max(bound, abs(c[i]));
  bound += 1;
  std::vector<Complex> z(d);
  for (int k = 0; k < d; ++k) z[k] = polar(bound / 2, Real(2 * k + 1) * boost::math::constants::pi<Real>() / d + Real("0.4"));
  Real eps = std::numeric_limits<Real>::epsilon() * 1000;
  for (int it = 0; it < 500; ++it) {
    Real move = 0;
    for (int k = 0; k < d; ++k) {
      Complex p = c[d], dp = 0;
      for (int i = d - 1; i >= 0; --i) {
        dp = dp * z[k] + p;
        p = p * z[k] + c[i];
      }
      if (abs(p) == 0) continue;
      Complex ratio = p / dp, s = 0;
      for (int j = 0; j < d; ++j)
        if (j != k) s += Complex(1) / (z[k] - z[j]);
      Complex w = ratio / (Complex(1) - ratio * s);
      z[k] -= w;
      move = std::max(move, abs(w) / std::max(Real(1), abs(z[k])));
    }
    if (move < eps) return z;
  }
  throw Inconclusive("root iteration did not converge");
}

std::vector<Real> sym_eigenvalues(std::vector<std::vector<Real>> a) {
  int n = static_cast<int>(a.size());
  Real eps = std::numeric_limits<Real>::epsilon();
  for (int sweep = 0; sweep < 100; ++sweep) {
    Real off = 0, total = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        total += a[i][j] * a[i][j];
        if (i != j) off += a[i][j] * a[i][j];
      }
    if (off <= eps * eps * total) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (a[p][q] == 0) continue;
        Real theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        Real t = (theta < 0 ? -1 : 1) / (boost::multiprecision::abs(theta) + boost::multiprecision::sqrt(theta * theta + 1));
        Real cs = 1 / boost::multiprecision::sqrt(t * t + 1), sn = t * cs;
        for (int k = 0; k < n; ++k) {
          Real akp = a[k][p], akq = a[k][q];
          a[k][p] = cs * akp - sn * akq;
          a[k][q] = sn * akp + cs * akq;
        }
        for (int k = 0; k < n; ++k) {
          Real apk = a[p][k], aqk = a[q][k];
          a[p][k] = cs * apk - sn * aqk;
          a[q][k] = sn * apk + cs * aqk;
        }
      }
  }
  std::vector<Real> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace g2::num
