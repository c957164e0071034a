#include <random>
#include <thread>

#include "doctest.h"
#include "jet.hpp"

using namespace g2;

TEST_SUITE("jetexpr") {

TEST_CASE("parse and render the cusp right-hand side") {
  auto sp = jet_space(6);
  Expr f = parse(sp, "21/5*u*t/s - 84/25*t^3/s^2");
  CHECK(f.str() == "(105*y4*y5*y6 - 84*y5^3)/(25*y4^2)");
  CHECK(parse(sp, f.str()).same(f));
  CHECK(parse(sp, "0").is_zero_nf());
}

TEST_CASE("partials of the cusp right-hand side") {
  auto sp = jet_space(6);
  Expr f = parse(sp, "21/5*u*t/s - 84/25*t^3/s^2");
  CHECK(is_zero(partial(f, "u") - parse(sp, "21/5*t/s")));
  CHECK(is_zero(partial(f, "s") - parse(sp, "-21/5*u*t/s^2 + 168/25*t^3/s^3")));
  CHECK(is_zero(partial(parse(sp, "y3"), "x")));
}

TEST_CASE("gcd cancellation") {
  auto sp = jet_space(2);
  Expr a = parse(sp, "(x^2 - y^2)/(x - y)");
  CHECK(a.same(parse(sp, "x + y")));
  Expr b = parse(sp, "1/(x^2-1) - 1/((x-1)*(x+1))");
  CHECK(b.is_zero_nf());
  Expr c = parse(sp, "(x*y1 + y*y1)/(x^2*y1 + 2*x*y*y1 + y^2*y1)");
  CHECK(c.same(parse(sp, "1/(x+y)")));
}

}

namespace {

std::mt19937_64 jrng(31337);

// random text over x, y, y1..y6 with small integer coefficients
std::string rnd_poly_text(int terms = 3) {
  static const char* sym[] = {"x", "y", "y1", "y2", "y3", "y4", "y5", "y6"};
  std::uniform_int_distribution<int> c(-4, 4), v(0, 7), e(0, 2), n(1, 3);
  std::string s;
  for (int t = 0; t < terms; ++t) {
    s += (t ? " + " : "") + std::string("(") + std::to_string(c(jrng)) + ")";
    for (int k = n(jrng); k > 0; --k) s += std::string("*") + sym[v(jrng)] + "^" + std::to_string(e(jrng));
  }
  return s;
}

std::string rnd_rational_text() {
  std::string d = rnd_poly_text(2);
  return "(" + rnd_poly_text() + ")/(" + d + " + 7*y3^2 + 1)";
}

std::map<int, mpq_class> rnd_point() {
  std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
  std::map<int, mpq_class> pt;
  for (int i = 0; i < 8; ++i) {
    mpq_class q(num(jrng), den(jrng));
    q.canonicalize();
    pt[i] = q;
  }
  return pt;
}

}  // namespace

TEST_SUITE("jetexpr") {

TEST_CASE("the catalog right-hand sides parse") {
  auto sp = jet_space(6);
  Expr sub = parse(sp, "7*u*s/r + 49/10*t^2/r - 28*t*s^2/r^2 + 35/2*s^4/r^3");
  CHECK(sub.den_factors().size() == 1);
  CHECK(sub.den_factors()[0].e == 3);
  CHECK(parse(sp, "y1 + p").same(parse(sp, "2*y1")));
  CHECK(parse(sp, "-y^2").same(parse(sp, "-(y^2)")));
  CHECK(parse(sp, "2^3^2").same(Expr(sp, 512)));
  CHECK(parse(sp, "y^-2*y^2").same(Expr(sp, 1)));
}

TEST_CASE("parse errors carry positions") {
  auto sp = jet_space(6);
  try {
    parse(sp, "u*(");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.pos == 3);
  }
  try {
    parse(sp, "x + y7");
    FAIL("no error");
  } catch (const UnknownSymbol& e) {
    CHECK(e.symbol == "y7");
    CHECK(e.pos == 4);
  }
  CHECK_THROWS_AS(parse(sp, ""), ParseError);
  CHECK_THROWS_AS(parse(sp, "x)"), ParseError);
  CHECK_THROWS_AS(parse(sp, "x/0"), ParseError);
  CHECK_THROWS_AS(parse(sp, "x/(y - y)"), ParseError);
  CHECK_THROWS_AS(parse(sp, "x^y"), ParseError);
  CHECK_THROWS_AS(parse(sp, "x^(1/2)"), ParseError);
  CHECK_THROWS_AS(parse(sp, "0^-1"), ParseError);
  CHECK_THROWS_AS(parse(sp, "x $ y"), ParseError);
  CHECK_THROWS_AS(parse(sp, std::string(600, '(') + "x" + std::string(600, ')')), ParseError);
  // parameters are symbols once declared
  CHECK_THROWS_AS(parse(sp, "a*x"), UnknownSymbol);
  CHECK_NOTHROW(parse(jet_space(6, {"a"}), "a*x"));
}

TEST_CASE("total derivative") {
  auto cusp = make_ode("cusp", "21/5*u*t/s - 84/25*t^3/s^2");
  const auto& sp = cusp.space();
  CHECK(is_zero(total_derivative(parse(sp, "x"), cusp) - Expr(sp, 1)));
  CHECK(total_derivative(parse(sp, "y"), cusp).same(parse(sp, "y1")));
  CHECK(is_zero(total_derivative(parse(sp, "u"), cusp) - cusp.rhs));
  CHECK(is_zero(total_derivative(parse(sp, "x*y3"), cusp) - parse(sp, "y3 + x*y4")));
  CHECK_FALSE(is_zero(cusp.rhs));
  auto low = make_ode("third", "y*y1", 3);
  CHECK(total_derivative(parse(low.space(), "y2"), low).same(parse(low.space(), "y*y1")));
}

TEST_CASE("commutator of partials with the total derivative") {
  // d_k D e - D d_k e = d_(k-1) e + F_k d_6 e
  auto ode = make_ode("cusp", "21/5*u*t/s - 84/25*t^3/s^2");
  const auto& sp = ode.space();
  for (int trial = 0; trial < 10; ++trial) {
    Expr e = parse(sp, rnd_poly_text(4));
    for (int k = 1; k <= 6; ++k) {
      Expr lhs = Fk(total_derivative(e, ode), k) - total_derivative(Fk(e, k), ode);
      Expr rhs = Fk(e, k - 1) + Fk(ode.rhs, k) * Fk(e, 6);
      CHECK(is_zero(lhs - rhs));
    }
  }
}

TEST_CASE("Leibniz rules") {
  auto ode = make_ode("sub", "7*u*s/r + 49/10*t^2/r - 28*t*s^2/r^2 + 35/2*s^4/r^3");
  const auto& sp = ode.space();
  for (int trial = 0; trial < 10; ++trial) {
    Expr a = parse(sp, rnd_rational_text()), b = parse(sp, rnd_rational_text());
    CHECK(is_zero(total_derivative(a * b, ode) - a * total_derivative(b, ode) - b * total_derivative(a, ode)));
    CHECK(is_zero(partial(a * b, "y2") - a * partial(b, "y2") - b * partial(a, "y2")));
    CHECK(is_zero(partial(a + b, "x") - partial(a, "x") - partial(b, "x")));
  }
}

TEST_CASE("normal forms: idempotence, round trip, agreement with sampling") {
  auto sp = jet_space(6);
  for (int trial = 0; trial < 40; ++trial) {
    std::string text = rnd_rational_text();
    Expr e = parse(sp, text);
    Expr again = parse(sp, e.str());
    CHECK(again.same(e));
    CHECK(again.str() == e.str());
    // exact value of the normal form equals the value of the text as written
    auto pt = rnd_point();
    CHECK(evaluate_exact(e, pt) == evaluate_text(sp, text, pt));
    // a rearranged copy is the same rational function
    Expr f = parse(sp, "(" + text + ")*(x + 2) - x*(" + text + ") - (" + text + ")*2");
    CHECK(f.is_zero_nf());
    ZeroOptions opt;
    opt.force_probabilistic = true;
    auto zf = zero_test(f, opt);
    CHECK(zf.zero);
    CHECK(zf.points >= 32);
    auto ze = zero_test(e, opt);
    CHECK(ze.zero == e.is_zero_nf());
  }
}

TEST_CASE("radicals") {
  auto base = Space::make({"x"}, {"p3"});
  auto sp = base->with_radical("w", 2, Poly::var(1));
  CHECK(is_zero(parse(sp, "w^2 - p3")));
  CHECK(parse(sp, "w^3").same(parse(sp, "p3*w")));
  CHECK_FALSE(is_zero(parse(sp, "w - p3")));
  // a radical-bearing expression is sampled on top of the normal form
  auto nz = zero_test(parse(sp, "w*x - p3"));
  CHECK_FALSE(nz.zero);
  CHECK(nz.mode == ZeroMode::ExactAndProbabilistic);
  CHECK(nz.points >= 1);  // sampling stops at the first nonzero value
  ZeroOptions opt;
  opt.force_probabilistic = true;
  auto z = zero_test(parse(sp, "(w^2 + x)*(w^2 - x) - p3^2 + x^2"), opt);
  CHECK(z.zero);
  CHECK(z.mode == ZeroMode::ExactAndProbabilistic);
  CHECK(z.points >= 32);
  CHECK(z.log2_bound < -40);
  auto tenth = base->with_radical("v", 10, Poly::var(0) - Poly::var(1));
  CHECK(parse(tenth, "v^10").same(parse(tenth, "x - p3")));
  CHECK(is_zero(parse(tenth, "v^12 - (x - p3)*v^2")));
}

TEST_CASE("exact evaluation") {
  auto sp = jet_space(6);
  Expr f = parse(sp, "21/5*u*t/s - 84/25*t^3/s^2");
  std::map<int, mpq_class> one;
  for (int i = 0; i < 8; ++i) one[i] = 1;
  CHECK(evaluate_exact(f, one) == mpq_class(21, 25));
  CHECK(evaluate_exact(Expr(sp, 0), one) == 0);
  std::map<int, mpq_class> s0 = one;
  s0[jet_index(4)] = 0;
  CHECK_THROWS_AS(evaluate_exact(f, s0), PoleError);
  // the cancelled factor still counts as written
  std::map<int, mpq_class> x1 = one;
  CHECK(evaluate_exact(parse(sp, "(x - 1)/(x - 1)"), x1) == 1);
  CHECK_THROWS_AS(evaluate_text(sp, "(x - 1)/(x - 1)", x1), PoleError);
  CHECK_THROWS_AS(evaluate_text(sp, "(x - 1)^-1", x1), PoleError);
  CHECK(evaluate_text(sp, "21/5*u*t/s - 84/25*t^3/s^2", one) == mpq_class(21, 25));
  CHECK_THROWS_AS(evaluate_text(sp, "x + ", one), ParseError);
  CHECK_THROWS_AS(evaluate_exact(f, {}), DomainError);
}

TEST_CASE("expressions are shareable across threads") {
  auto ode = make_ode("cusp", "21/5*u*t/s - 84/25*t^3/s^2");
  Expr e = parse(ode.space(), "y6^2*y5/(y4 + x)");
  Expr want = total_derivative(total_derivative(e, ode), ode);
  std::vector<std::string> got(4);
  std::vector<std::thread> ts;
  for (int t = 0; t < 4; ++t)
    ts.emplace_back([&, t] { got[t] = total_derivative(total_derivative(e, ode), ode).str(); });
  for (auto& t : ts) t.join();
  for (const auto& g : got) CHECK(g == want.str());
}

}
