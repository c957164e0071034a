#include "doctest.h"
#include "odeclass.hpp"

using namespace g2;

namespace {

// F in jet_space(6) with every partial a formal symbol, up to total order 3
Expr formal_rhs() {
  SpacePtr sp = jet_space(6);
  std::vector<int> args;
  for (int i = 0; i < 8; ++i) args.push_back(i);
  sp = sp->with_formal("F", args, 3);
  return Expr::sym(sp, "F");
}

std::map<int, mpq_class> jet_point(const SpacePtr& sp, const std::vector<mpq_class>& v) {
  std::map<int, mpq_class> pt;
  for (int i = 0; i < 8; ++i) pt[i] = v[i];
  (void)sp;
  return pt;
}

}  // namespace

TEST_SUITE("odeclass") {

TEST_CASE("general W1 against the order-7 W1 over a formal F") {
  Expr F = formal_rhs();
  OdeDefinition ode = make_ode("formal", F, 7);
  JetCalculus jc(ode);
  auto W = wunschmann_expressions(jc);
  Expr diff = mpq_class(245) * w1_general(6, F) - W[0];
  CHECK(diff.is_zero_nf());
  // not vacuous: W1 really involves third partials
  CHECK(W[0].depends_on(F.space()->index("F_y6_y6_y6")));
}

TEST_CASE("general W1 for n = 2 and F = y2^2") {
  SpacePtr sp = jet_space(2);
  Expr w = w1_general(2, parse(sp, "y2^2"));
  // D^2 F_2 - 2 F_2 D F_2 + 4/9 F_2^3 with F_2 = 2 y2, D y2 = y2^2
  CHECK(is_zero(w - parse(sp, "-4/9*y2^3")));
  CHECK(w1_general(4, Expr(jet_space(4), 0)).is_zero_nf());
  CHECK_THROWS_AS(w1_general(1, parse(jet_space(1), "y1")), DomainError);
}

TEST_CASE("Wunschmann expressions at a fixed jet point") {
  // values from an independent transcription, evaluated with exact arithmetic
  SpacePtr sp = jet_space(6);
  Expr F = parse(sp,
                 "x^2*y4 + x*y6^2 + y^2*y3 + y*y1*y2 + y*y5*y6 + y1*y4^2 + y1*y6^3/2 + 2*y2*y3*y6 - y3^2 + y5^3/3");
  JetCalculus jc(make_ode("generic", F, 7));
  auto W = wunschmann_expressions(jc);
  auto pt = jet_point(sp, {mpq_class(1, 2), mpq_class(-2, 3), 3, mpq_class(-1, 4), mpq_class(2, 5), mpq_class(5, 7),
                           mpq_class(-3, 2), mpq_class(1, 3)});
  CHECK(evaluate_exact(W[0], pt) == mpq_class("-19428912953/10584000"));
  CHECK(evaluate_exact(W[1], pt) == mpq_class("5525978650163/31752000"));
  CHECK(evaluate_exact(W[2], pt) == mpq_class("652046101493/5040000"));
  CHECK(evaluate_exact(W[3], pt) == mpq_class("-1452990487681247/408240000"));
  CHECK(evaluate_exact(W[4], pt) == mpq_class("-25358555674481941/510300000"));
}

TEST_CASE("Wunschmann conditions of the catalog") {
  for (const char* name : {"trivial", "cusp", "submax", "example2"}) {
    CAPTURE(name);
    auto r = wunschmann7(ode_catalog(name));
    CHECK(r.all_vanish());
    for (int i = 0; i < 5; ++i) CHECK(r.W[i].is_zero_nf());
  }
  auto r = wunschmann7(ode_catalog("example4"));
  CHECK(r.all_vanish());
  for (const auto& t : r.test) {
    CHECK(t.mode == ZeroMode::ExactAndProbabilistic);
    CHECK(t.points >= 64);
    CHECK(t.log2_bound < -40);
  }
}

TEST_CASE("sampling sees a nonzero radical W") {
  SpacePtr sp = jet_space(6)->with_radical("rho", 6, Poly::var(jet_index(6)));
  auto r = wunschmann7(make_ode("perturbed", parse(sp, "u*rho + y"), 7));
  CHECK_FALSE(r.vanishes(4));
  CHECK(r.test[4].mode == ZeroMode::ExactAndProbabilistic);
  CHECK(r.test[4].points >= 64);
}

TEST_CASE("the other branch of example 4") {
  auto e4 = ode_catalog("example4");
  auto neg = make_ode("example4neg", -e4.rhs, 7);
  CHECK(wunschmann7(neg).all_vanish());
}

TEST_CASE("y7 = y fails only W5") {
  auto r = wunschmann7(make_ode("lin", "y"));
  for (int i = 0; i < 4; ++i) CHECK(r.vanishes(i));
  CHECK_FALSE(r.vanishes(4));
  REQUIRE(r.W[4].is_const());
  CHECK(r.W[4].const_value() == 65883440);
  auto c = classify(make_ode("lin", "y"));
  CHECK_FALSE(c.admits_geometry());
  CHECK_FALSE(c.fg.applicable);
  CHECK(c.fg.label() == "not applicable");
}

TEST_CASE("Fernandez-Gray types") {
  auto flat = classify(ode_catalog("trivial"));
  CHECK(flat.admits_geometry());
  CHECK(flat.fg.label() == "torsion-free");

  auto cusp = classify(ode_catalog("cusp"));
  CHECK(cusp.fg.lambda.expr.is_zero_nf());
  CHECK(cusp.fg.tau3.expr.is_zero_nf());
  CHECK(cusp.fg.v11.expr.is_zero_nf());
  CHECK_FALSE(cusp.fg.tau2.vanishes());
  CHECK(cusp.fg.v3 == "not determined");
  CHECK(cusp.fg.label() == "W2+W4");

  auto sub = classify(ode_catalog("submax"));
  CHECK(sub.fg.tau2.expr.is_zero_nf());
  CHECK(sub.fg.tau3.expr.is_zero_nf());
  CHECK_FALSE(sub.fg.lambda.vanishes());
  CHECK(sub.fg.v3 == "implied zero");
  CHECK(sub.fg.label() == "W1+W4");
}

TEST_CASE("partial after total derivative differs from the reverse order") {
  auto ode = ode_catalog("cusp");
  JetCalculus jc(ode);
  Expr a = DF_then_partial(jc, {6});  // (DF)_6
  Expr b = jc.DF(6);                  // D(F_6)
  CHECK_FALSE(is_zero(a - b));
  // (DF)_6 = D(F_6) + F_5 + F_6 F_6
  CHECK(is_zero(a - b - jc.F(5) - jc.F(6) * jc.F(6)));
}

TEST_CASE("the point transformation y -> 2y") {
  // Y = 2y turns y7 = F into Y7 = 2 F(x, Y/2, ..., Y6/2)
  SpacePtr sp = jet_space(6);
  std::map<int, Expr> half;
  half.emplace(kX, Expr::sym(sp, kX));
  for (int k = 0; k <= 6; ++k) half.emplace(jet_index(k), Expr::sym(sp, jet_index(k)) * mpq_class(1, 2));
  for (const char* name : {"trivial", "cusp"}) {
    CAPTURE(name);
    auto ode = ode_catalog(name);
    auto moved = make_ode("moved", mpq_class(2) * substitute(ode.rhs, half, sp), 7);
    auto a = classify(ode), b = classify(moved);
    CHECK(a.wunschmann.all_vanish() == b.wunschmann.all_vanish());
    CHECK(a.fg.label() == b.fg.label());
    for (int i = 0; i < 5; ++i) CHECK(a.wunschmann.vanishes(i) == b.wunschmann.vanishes(i));
  }
}

TEST_CASE("catalog errors and transcription") {
  CHECK_THROWS_AS(ode_catalog("nonesuch"), DomainError);
  CHECK_THROWS_AS(wunschmann7(make_ode("six", "y1", 6)), DomainError);
  auto e2 = ode_catalog("example2");
  CHECK(e2.rhs.numerator().size() == 11);
  CHECK(e2.rhs.den_expanded().size() == 5);
}

}
