#pragma once
// Example 1 from the curve side: the sextics (y + Q(x))^2 + P(x)^3 = 0 with
// Q cubic and P = p3 (x - p2)(x - p1), their rational parametrization, the
// seventh order ODE they solve, and the coframe read off their normal sections.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"
#include "numeric.hpp"

namespace g2::curves {

struct CuspidalSexticFamily {
  std::array<num::Complex, 4> q;  // Q = q0 + q1 x + q2 x^2 + q3 x^3
  num::Complex p1, p2, p3;
  // throws DomainError when p1 = p2 or p3 = 0
  void validate() const;
  static CuspidalSexticFamily rational(const std::array<mpq_class, 4>& q, const mpq_class& p1, const mpq_class& p2,
                                       const mpq_class& p3);
  num::Complex Q(const num::Complex& x, int derivative = 0) const;
  num::Complex P(const num::Complex& x) const;
  // (y + Q)^2 + P^3
  num::Complex implicit(const num::Complex& x, const num::Complex& y) const;
};

// random rational parameters with |p1 - p2| >= 1 and p3 != 0
CuspidalSexticFamily random_family(uint64_t seed);

struct CurvePoint {
  num::Complex x, y;
};
// x = (p1 + p2 l^2)/(l^2 + 1), y = s p3^(3/2) (p1 - p2)^3 l^3/(l^2 + 1)^3 - Q(x),
// p3^(3/2) on the principal square root and s = branch = +-1. PoleError at l = +-i.
CurvePoint parametrize(const CuspidalSexticFamily& f, const num::Complex& lambda, int branch = 1);

struct GenusCount {
  int degree = 6;
  int arithmetic = 0;        // (d-1)(d-2)/2
  std::vector<int> delta;    // delta invariants of the singular points, taken as given
  int genus = 0;
  bool delta_transcribed = true;  // the 8 at infinity is not recomputed
};
GenusCount genus_count();

// y7 = 21/5 y6 y5 / y4 - 84/25 y5^3 / y4^2
num::Complex cusp_ode_rhs(const num::Complex& y4, const num::Complex& y5, const num::Complex& y6);

struct OdeSample {
  num::Complex x;
  std::array<num::Complex, 8> y;  // y, y', .., y^(7)
  num::Real residual;
};
struct OdeResidualReport {
  std::vector<OdeSample> samples;
  num::Real max_residual;
  bool symbolic_zero = false;  // the residual of P^(3/2) reduces to 0 exactly
};
// y = -Q + branch * i * P sigma, sigma^2 = P, with all derivatives built
// symbolically in x and evaluated at 50 digits. Throws BranchError when x is
// closer than guard to p1 or p2.
OdeSample ode_residual_at(const CuspidalSexticFamily& f, const num::Complex& x, int branch,
                          const num::Real& guard = num::Real("0.05"));
OdeResidualReport ode_residual_check(const CuspidalSexticFamily& f, int branch, int points, uint64_t seed);

// The normal section of the variation dt = (dp1, dp2, dp3, dq0, .., dq3):
// sum_a dF/dt_a dt_a along the parametrization, cleared by l^3 / (l^2 + 1)^6,
// is a polynomial of degree 6; returned are v^1..v^7 with
//   N(l) = sum_j binom(6, j-1) v^j l^(7-j).
struct NormalSection {
  std::array<num::Complex, 7> v;
  num::Real fit_residual;  // mismatch of the degree 6 fit at extra values of l
};
NormalSection normal_section(const CuspidalSexticFamily& f, const std::array<num::Complex, 7>& dt);

struct CoframeConsistency {
  std::array<std::array<num::Complex, 7>, 7> v, theta;  // v^j and theta^j on the basis dt
  std::array<num::Complex, 7> factor;                    // v^j = factor_j theta^j
  num::Real misfit;  // largest |v^j - factor_j theta^j| / |v^j|
  num::Real spread;  // largest |factor_j - factor_1| / |factor_1|
  num::Real fit_residual;
  bool proportional = false;
};
// compares with a named coframe of the catalog ("cusp" or "cusp_printed")
CoframeConsistency coframe_consistency_check(const CuspidalSexticFamily& f, const std::string& coframe = "cusp",
                                             const num::Real& tol = num::Real("1e-20"));

}  // namespace g2::curves
