#include "curves.hpp"
#include "doctest.h"

using namespace g2;
using namespace g2::curves;
using num::Complex;
using num::Real;

namespace {

const Real tight("1e-30");

CuspidalSexticFamily simple() {
  // Q = 0, P = x^2 - 1
  return CuspidalSexticFamily::rational({0, 0, 0, 0}, 1, -1, 1);
}

std::array<Complex, 7> unit(int a, long s = 1) {
  std::array<Complex, 7> dt;
  dt[a] = Complex(s);
  return dt;
}

}  // namespace

TEST_SUITE("curves") {

TEST_CASE("family validation") {
  CHECK_THROWS_AS(CuspidalSexticFamily::rational({1, 2, 3, 4}, 2, 2, 1), DomainError);
  CHECK_THROWS_AS(CuspidalSexticFamily::rational({1, 2, 3, 4}, 2, 1, 0), DomainError);
  auto f = random_family(3);
  CHECK(num::abs(f.p1 - f.p2) >= 1);
}

TEST_CASE("parametrization") {
  auto f = CuspidalSexticFamily::rational({1, mpq_class(-2, 3), 3, mpq_class(1, 2)}, 2, -1, 3);
  auto c0 = parametrize(f, Complex(0));
  CHECK(num::abs(c0.x - f.p1) < tight);
  CHECK(num::abs(c0.y + f.Q(f.p1)) < tight);
  auto cinf = parametrize(f, Complex(Real("1e20")));
  CHECK(num::abs(cinf.x - f.p2) < Real("1e-35"));
  CHECK_THROWS_AS(parametrize(f, num::I), PoleError);
  CHECK_THROWS_AS(parametrize(f, -num::I), PoleError);
}

TEST_CASE("the parametrization lies on the sextic") {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    auto f = random_family(seed);
    for (int k = 0; k < 5; ++k) {
      Complex l(Real(k + 1) / 7 - Real(seed) / 11, Real(k) / 5);
      for (int br : {1, -1}) {
        auto c = parametrize(f, l, br);
        Real scale = 1 + num::abs(num::pow(f.P(c.x), 3));
        CHECK(num::abs(f.implicit(c.x, c.y)) / scale < tight);
      }
    }
  }
}

TEST_CASE("genus") {
  auto g = genus_count();
  CHECK(g.arithmetic == 10);
  CHECK(g.delta == std::vector<int>{1, 1, 8});
  CHECK(g.genus == 0);
  CHECK(g.delta_transcribed);
}

TEST_CASE("the family solves the cusp ODE") {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    auto f = random_family(seed);
    for (int br : {1, -1}) {
      auto r = ode_residual_check(f, br, 4, seed * 31 + br);
      CHECK(r.samples.size() == 4);
      CHECK(r.max_residual < tight);
    }
  }
  auto r = ode_residual_check(simple(), 1, 20, 5);
  CHECK(r.max_residual < tight);
  CHECK(r.symbolic_zero);
  // the sample values really are on the curve
  for (const auto& s : r.samples) CHECK(num::abs(simple().implicit(s.x, s.y[0])) < tight);
}

TEST_CASE("branch point guard") {
  auto f = simple();
  CHECK_THROWS_AS(ode_residual_at(f, Complex(Real("1.001")), 1), BranchError);
  CHECK_THROWS_AS(ode_residual_at(f, Complex(Real("-1"), Real("0.01")), 1), BranchError);
  CHECK_NOTHROW(ode_residual_at(f, Complex(Real("0.5")), 1));
}

TEST_CASE("normal sections") {
  auto f = random_family(9);
  auto z = normal_section(f, {});
  for (const auto& v : z.v) CHECK(num::abs(v) == 0);

  // q0 alone reaches theta^1, theta^3, theta^5, theta^7 only
  auto q0 = normal_section(f, unit(3));
  CHECK(q0.fit_residual < tight);
  for (int j : {0, 2, 4, 6}) CHECK(num::abs(q0.v[j]) > Real("1e-10"));
  for (int j : {1, 3, 5}) CHECK(num::abs(q0.v[j]) < tight);

  // linear in the variation
  std::array<Complex, 7> mix;
  for (int a = 0; a < 7; ++a) mix[a] = Complex(Real(a + 1) / 3, Real(a % 2));
  auto m = normal_section(f, mix);
  std::array<Complex, 7> sum;
  for (int a = 0; a < 7; ++a) {
    auto s = normal_section(f, unit(a));
    for (int j = 0; j < 7; ++j) sum[j] += mix[a] * s.v[j];
  }
  for (int j = 0; j < 7; ++j) CHECK(num::abs(m.v[j] - sum[j]) < Real("1e-35"));
}

TEST_CASE("normal sections reproduce the cusp coframe") {
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    auto f = random_family(100 + seed);
    auto r = coframe_consistency_check(f, "cusp");
    CHECK(r.fit_residual < Real("1e-20"));
    CHECK(r.misfit < Real("1e-20"));
    CHECK(r.spread < Real("1e-20"));
    CHECK(r.proportional);
  }
  auto c = coframe_consistency_check(simple(), "cusp");
  CHECK(c.proportional);
  // the common factor is -p3^(3/2) (p1 - p2)^3 / Omega = -(2^(3+12/5))
  Real want = -boost::multiprecision::pow(Real(2), Real(27) / 5);
  CHECK(num::abs(c.factor[0] - Complex(want)) < Real("1e-30"));
}

TEST_CASE("the printed theta3, theta5 prefactor is off by 2") {
  auto f = random_family(77);
  auto r = coframe_consistency_check(f, "cusp_printed");
  CHECK_FALSE(r.proportional);
  // only theta^3 and theta^5 disagree, each by exactly a factor 2
  for (int j : {0, 1, 3, 5, 6}) CHECK(num::abs(r.factor[j] - r.factor[0]) / num::abs(r.factor[0]) < Real("1e-30"));
  for (int j : {2, 4}) CHECK(num::abs(r.factor[j] - Complex(2) * r.factor[0]) / num::abs(r.factor[0]) < Real("1e-30"));
}

}
