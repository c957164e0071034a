#pragma once
// Binary forms in the binomial convention
//   Q = sum_i binom(n, i) c_i X1^i X2^(n-i),   c_i = theta^(i+1),
// transvectants over any coefficient ring, and the invariants built from them.
//
// A coefficient ring R needs R + R, R * R and mpq_class * R.

#include <gmpxx.h>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "expr.hpp"
#include "numeric.hpp"

namespace g2 {

mpz_class binomial(int n, int k);
mpz_class factorial(int n);

template <class R>
struct BinaryForm {
  std::vector<R> c;
  BinaryForm() = default;
  explicit BinaryForm(std::vector<R> cs) : c(std::move(cs)) {
    if (c.empty()) throw DomainError("a binary form needs at least one coefficient");
  }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  // coefficient of X1^i X2^(n-i)
  R raw(int i) const { return R(mpq_class(binomial(degree(), i)) * c[i]); }
  static BinaryForm from_raw(const std::vector<R>& a) {
    int n = static_cast<int>(a.size()) - 1;
    std::vector<R> c;
    for (int i = 0; i <= n; ++i) c.push_back(R(mpq_class(1, binomial(n, i)) * a[i]));
    return BinaryForm(c);
  }
};

namespace detail {
// d^a/dX1^a d^b/dX2^b of X1^i X2^(n-i): falling factorials
inline mpz_class fall(int x, int k) {
  mpz_class r = 1;
  for (int j = 0; j < k; ++j) r *= x - j;
  return r;
}
}  // namespace detail

// <Q, R>_p = 1/p! sum_i (-1)^i binom(p, i) d^pQ/dX1^(p-i) dX2^i  d^pR/dX1^i dX2^(p-i)
template <class R>
BinaryForm<R> transvectant(const BinaryForm<R>& Q, const BinaryForm<R>& S, int p) {
  int n = Q.degree(), m = S.degree();
  if (p < 0 || p > std::min(n, m)) throw DomainError("transvectant order out of range");
  R zero = R(mpq_class(0) * Q.c[0]);
  std::vector<R> out(n + m - 2 * p + 1, zero);
  std::vector<R> qa, sa;
  for (int a = 0; a <= n; ++a) qa.push_back(Q.raw(a));
  for (int b = 0; b <= m; ++b) sa.push_back(S.raw(b));
  for (int i = 0; i <= p; ++i) {
    mpq_class w(binomial(p, i), factorial(p));
    w.canonicalize();
    if (i % 2) w = -w;
    // X1 exponent a in Q loses p-i, b in S loses i
    for (int a = p - i; a <= n - i; ++a) {
      mpz_class fa = detail::fall(a, p - i) * detail::fall(n - a, i);
      for (int b = i; b <= m - p + i; ++b) {
        mpz_class fb = detail::fall(b, i) * detail::fall(m - b, p - i);
        mpq_class k = w * mpq_class(fa * fb);
        out[a + b - p] = out[a + b - p] + R(k * (qa[a] * sa[b]));
      }
    }
  }
  return BinaryForm<R>::from_raw(out);
}

// Frame symbols theta1..theta(n+1), v1.., w1.., z1..
SpacePtr frame_space(int n);
BinaryForm<Expr> frame_form(const SpacePtr& sp, const std::string& prefix, int n);

struct I0Result {
  Expr I0;                  // t1 t_{n+1} - ... normalized with leading coefficient 1
  Expr closed_form;         // the classical closed form, 2 I0
  mpq_class closed_over_I0;     // 2
  mpq_class transvectant_over_I0;  // <Q,Q>_n / I0
};
I0Result invariant_I0(int n);

// I0 of a form with rational coefficients (leading coefficient-1 normalization)
mpq_class I0_value(const BinaryForm<mpq_class>& Q);

struct MetricResult {
  Expr g;                 // <X, Y>_n in v, w
  mpq_class constant;     // g(V, V) / I0(V)
  bool symmetric = false;
  std::vector<std::vector<mpq_class>> gram;  // in the theta basis
  int positive = 0, negative = 0;
};
MetricResult polarized_metric(int n);
std::pair<int, int> signature(std::vector<std::vector<mpq_class>> a);

using Triple = std::array<int, 3>;  // 1-based, increasing
struct ThreeForm {
  std::map<Triple, mpq_class> comp;
  std::string str() const;
};
ThreeForm printed_three_form();  // 3(th237 + th156) + th4 ^ (th17 + 6 th26 - 15 th35)

struct PhiResult {
  Expr phi;              // <<X, Y>_3, Z>_6 in v, w, z
  ThreeForm extracted;   // coefficients of v_a w_b z_c, a < b < c
  mpq_class constant;    // extracted / printed
  bool alternating = false;
};
PhiResult phi_trilinear();
// trilinear value of a three-form on the frame symbols v, w, z
Expr trilinear_of(const SpacePtr& sp, const ThreeForm& f);

struct Equianharmonic {
  mpq_class I0;
  bool I0_zero = false;
  std::vector<num::Complex> roots;  // in x = X2/X1; a root at infinity is dropped
  bool root_at_infinity = false;
  num::Complex cross_ratio;
  num::Real residual;  // |lambda^2 - lambda + 1|
  bool equianharmonic = false;
};
// quartic given by c_0..c_4 in the binomial convention
Equianharmonic equianharmonic_check(const std::vector<mpq_class>& c, const num::Real& tol = num::Real("1e-9"));

// substitution action (A.Q)(X) = Q(X A) on rational forms
BinaryForm<mpq_class> act(const std::array<mpq_class, 4>& A, const BinaryForm<mpq_class>& Q);

}  // namespace g2
