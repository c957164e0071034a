#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "liealg.hpp"

using namespace g2;
using namespace g2::lie;

namespace {

std::mt19937_64 rng(7171);

mpq_class small() {
  std::uniform_int_distribution<int> d(-3, 3);
  return d(rng);
}

HomTensor random_tensor(int q, int entries) {
  HomTensor t(q);
  std::uniform_int_distribution<int> mu(1, kDim), low(1, kM);
  for (int n = 0; n < entries; ++n) {
    std::vector<int> I;
    while (static_cast<int>(I.size()) < q) {
      int i = low(rng);
      if (std::find(I.begin(), I.end(), i) == I.end()) I.push_back(i);
    }
    t.add(mu(rng), I, small());
  }
  return t;
}

std::vector<mpq_class> bracket(int m, int n) {
  const Algebra& A = build_algebra();
  std::vector<mpq_class> v(kDim + 1);
  for (int r = 1; r <= kDim; ++r) v[r] = A.c(r, m, n);
  return v;
}

std::vector<mpq_class> unit(int mu, const mpq_class& s = 1) {
  std::vector<mpq_class> v(kDim + 1);
  v[mu] = s;
  return v;
}

// characters as Laurent polynomials in the h-weight
using Character = std::map<int, int>;

Character char_of_V(int k) {
  Character c;
  for (int w = k - 1; w >= 1 - k; w -= 2) c[w] += 1;
  return c;
}

Character times(const Character& a, const Character& b) {
  Character c;
  for (auto [x, m] : a)
    for (auto [y, n] : b) c[x + y] += m * n;
  return c;
}

// wedge^k of a module with weights listed with multiplicity
Character wedge_char(const std::vector<int>& weights, int k) {
  Character c;
  int n = static_cast<int>(weights.size());
  std::vector<int> pick(k);
  std::function<void(int, int, int)> rec = [&](int from, int depth, int sum) {
    if (depth == k) {
      c[sum] += 1;
      return;
    }
    for (int i = from; i < n; ++i) rec(i + 1, depth + 1, sum + weights[i]);
  };
  rec(0, 0, 0);
  return c;
}

// peel off highest weights
std::vector<std::pair<int, int>> clebsch_gordan(Character c) {
  std::map<int, int> parts;
  while (true) {
    int top = -1000;
    for (auto [w, m] : c)
      if (m != 0) top = std::max(top, w);
    if (top == -1000) break;
    int mult = c[top];
    REQUIRE(mult > 0);
    parts[top + 1] += mult;
    for (auto [w, m] : char_of_V(top + 1)) c[w] -= mult * m;
  }
  return {parts.begin(), parts.end()};
}

}  // namespace

TEST_SUITE("liealg") {

TEST_CASE("matrices from the slot rule") {
  const Algebra& A = build_algebra();
  for (int i = 1; i <= 7; ++i) {
    CHECK(A.e[i](i - 1, 7) == 1);
    CHECK(rank(A.e[i]) == 1);
  }
  for (int i = 0; i < 7; ++i) {
    CHECK(A.e[9](i, i) == 2 * i - 6);
    CHECK(A.e[10](i, i) == -6);
  }
  CHECK(A.e[8](0, 1) == 6);
  CHECK(A.e[8](5, 6) == 1);
  CHECK(A.e[11](1, 0) == 1);
  CHECK(A.e[11](6, 5) == 6);
}

TEST_CASE("brackets") {
  CHECK(bracket(9, 8) == unit(8, -2));
  CHECK(bracket(9, 11) == unit(11, 2));
  CHECK(bracket(11, 8) == unit(9));
  CHECK(bracket(1, 2) == unit(1, 0));
  CHECK(bracket(8, 7) == unit(6));
  CHECK(bracket(8, 6) == unit(5, 2));
  CHECK(bracket(8, 1) == unit(1, 0));
  CHECK(bracket(11, 1) == unit(2));
  for (int i = 1; i <= 7; ++i) CHECK(bracket(10, i) == unit(i, -6));
  for (int mu = 8; mu <= 11; ++mu) CHECK(bracket(10, mu) == unit(1, 0));
}

TEST_CASE("algebra integrity") {
  auto r = check_algebra();
  CHECK(r.structure_constants);
  CHECK(r.jacobi);
  CHECK(r.grading);
  CHECK(r.products);
  CHECK(r.invariance);
  CHECK(r.generated);
  CHECK(r.m_subalgebra);
  CHECK(r.all());
  CHECK_THROWS_AS(build_algebra().coords(QMat::identity(8)), DomainError);
}

TEST_CASE("hom tensors are antisymmetric") {
  HomTensor t(2);
  t.set(3, {5, 2}, 7);
  CHECK(t.get(3, {2, 5}) == -7);
  CHECK(t.get(3, {5, 2}) == 7);
  CHECK(t.get(3, {2, 2}) == 0);
  CHECK_THROWS_AS(t.set(3, {2, 2}, 1), DomainError);
  CHECK_THROWS_AS(t.get(12, {1, 2}), DomainError);
  CHECK_THROWS_AS(t.get(1, {1, 9}), DomainError);
  CHECK_THROWS_AS(t.get(1, {1}), DomainError);
  HomTensor u = t + t.scaled(-1);
  CHECK(u.is_zero());
}

TEST_CASE("differential") {
  CHECK(differential(HomTensor(1)).is_zero());
  CHECK(differential(HomTensor(0)).q == 1);
  // d on a zero-cochain: (d v)(A) = [A, v]
  HomTensor v(0);
  v.set(11, {}, 1);
  HomTensor dv = differential(v);
  CHECK(dv.get(9, {8}) == -1);  // [e8, e11] = -e9
  CHECK(dv.get(2, {1}) == -1);  // [e1, e11] = -e2
  for (int q = 0; q <= 2; ++q)
    for (int trial = 0; trial < 5; ++trial) CHECK(differential(differential(random_tensor(q, 6))).is_zero());
  CHECK_THROWS_AS(differential(HomTensor(8)), DomainError);
}

TEST_CASE("the adjoint of the differential") {
  for (int trial = 0; trial < 40; ++trial) {
    auto k = random_tensor(2, 8);
    auto b = random_tensor(1, 5);
    CHECK(inner(adjoint(k), b) == inner(k, differential(b)));
  }
  for (int trial = 0; trial < 10; ++trial) {
    auto k = random_tensor(1, 6);
    auto b = random_tensor(0, 3);
    CHECK(inner(adjoint(k), b) == inner(k, differential(b)));
  }
  CHECK(adjoint(HomTensor(2)).is_zero());
}

TEST_CASE("the printed normality operator") {
  CHECK(codifferential(HomTensor(2)).is_zero());
  CHECK_THROWS_AS(codifferential(HomTensor(1)), DomainError);

  // one entry K^6_78 = 1, expanded by hand
  HomTensor k(2);
  k.set(6, {7, 8}, 1);
  HomTensor want(1);
  want.set(7, {7}, 24);
  want.set(8, {8}, 24);
  want.set(6, {6}, -12);
  CHECK(codifferential(k) == want);

  // with first factor 2 the operator is the adjoint up to the weights -2 p_mu / p_i;
  // with the printed 4 no such relation holds
  const Algebra& A = build_algebra();
  std::set<mpq_class> ratios4;
  for (int trial = 0; trial < 10; ++trial) {
    auto K = random_tensor(2, 10);
    auto adj = adjoint(K), two = codifferential(K, 2), four = codifferential(K);
    for (int mu = 1; mu <= kDim; ++mu)
      for (int i = 1; i <= kM; ++i) {
        mpq_class w = -2 * A.p[mu] / A.p[i] * adj.get(mu, {i});
        CHECK(two.get(mu, {i}) == w);
        if (w != 0) ratios4.insert(four.get(mu, {i}) / w);
      }
  }
  CHECK(ratios4.size() > 1);
}

TEST_CASE("filtration condition") {
  CHECK(hom1_components().size() == 43);
  CHECK(hom1_check(HomTensor(2)).empty());
  HomTensor k(2);
  k.set(1, {6, 7}, 1);
  auto v = hom1_check(k);
  REQUIRE(v.size() == 1);
  CHECK(v[0].mu == 1);
  CHECK(v[0].i == 6);
  CHECK(v[0].j == 7);
  // K^7_67 is allowed
  HomTensor ok(2);
  ok.set(7, {6, 7}, 1);
  CHECK(hom1_check(ok).empty());
  CHECK_THROWS_AS(hom1_check(HomTensor(1)), DomainError);

  std::set<std::array<int, 3>> listed, graded;
  for (auto [mu, i, j] : hom1_components()) listed.insert({mu, std::min(i, j), std::max(i, j)});
  for (auto c : hom1_from_grading()) graded.insert(c);
  CHECK(listed == graded);
}

TEST_CASE("modules close") {
  Module V = standard_module();
  CHECK(closes(V));
  CHECK(closes(dual(V)));
  CHECK(closes(exterior_power(dual(V), 2)));
  CHECK(closes(exterior_power(dual(V), 3)));
  CHECK(closes(symmetric_square(dual(V))));
  CHECK(closes(torsion_module()));
  CHECK(torsion_module().dim == 147);
  CHECK(exterior_power(V, 0).dim == 1);
  CHECK_THROWS_AS(exterior_power(V, 8), DomainError);

  Module bad = V;
  bad.act[0] = bad.act[0].scaled(2);
  CHECK_FALSE(closes(bad));
  CHECK_THROWS_AS(sl2_decompose(bad), DomainError);
}

TEST_CASE("casimir") {
  Module V = standard_module();
  CHECK(casimir(V) == QMat::identity(7).scaled(48));
  CHECK(casimir(exterior_power(V, 7)).is_zero());
}

TEST_CASE("sl2 decompositions") {
  Module V = standard_module();
  Module Vd = dual(V);
  CHECK(sl2_decompose(V).str() == "V7");
  CHECK(sl2_decompose(Vd).str() == "V7");

  auto l2 = sl2_decompose(exterior_power(Vd, 2));
  CHECK(l2 == decomposition_of({{3, 1}, {7, 1}, {11, 1}}));
  auto l3 = sl2_decompose(exterior_power(Vd, 3));
  CHECK(l3 == decomposition_of({{1, 1}, {5, 1}, {7, 1}, {9, 1}, {13, 1}}));
  CHECK(l3.str() == "V1 + V5 + V7 + V9 + V13");
  auto t = sl2_decompose(torsion_module());
  CHECK(t == decomposition_of({{1, 1}, {3, 1}, {5, 3}, {7, 3}, {9, 3}, {11, 2}, {13, 2}, {15, 1}, {17, 1}}));
  CHECK(t.str() == "V1 + V3 + 3V5 + 3V7 + 3V9 + 2V11 + 2V13 + V15 + V17");
  CHECK(t.total() == 147);
  auto s2 = sl2_decompose(symmetric_square(Vd));
  CHECK(s2 == decomposition_of({{1, 1}, {5, 1}, {9, 1}, {13, 1}}));
}

TEST_CASE("decomposition in a non-weight basis") {
  // conjugate by P = 1 + N, N strictly upper triangular, P^-1 = 1 - N + N^2 - ..
  Module L2 = exterior_power(dual(standard_module()), 2);
  int n = L2.dim;
  QMat N(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) N(i, j) = small();
  QMat P = QMat::identity(n) + N, Pinv = QMat::identity(n), term = QMat::identity(n);
  for (int k = 1; k < n; ++k) {
    term = (term * N).scaled(-1);
    Pinv = Pinv + term;
  }
  REQUIRE(P * Pinv == QMat::identity(n));
  Module C = L2;
  for (int g = 0; g < 4; ++g) C.act[g] = P * L2.act[g] * Pinv;
  CHECK(sl2_decompose(C) == sl2_decompose(L2));
  Module odd = C;
  odd.act[1] = odd.act[1] + QMat::identity(n).scaled(mpq_class(1, 2));  // h no longer in the algebra
  CHECK_THROWS_AS(sl2_decompose(odd), DomainError);
}

TEST_CASE("decompositions agree with characters") {
  std::vector<int> w7;
  for (int w = -6; w <= 6; w += 2) w7.push_back(w);
  Module Vd = dual(standard_module());
  for (int k = 0; k <= 7; ++k) {
    auto d = sl2_decompose(exterior_power(Vd, k));
    CHECK(d.parts == clebsch_gordan(wedge_char(w7, k)));
    CHECK(d.total() == d.ambient);
  }
  auto t = sl2_decompose(torsion_module());
  CHECK(t.parts == clebsch_gordan(times(wedge_char(w7, 2), char_of_V(7))));
  auto v3v5 = sl2_decompose(tensor(exterior_power(Vd, 2), exterior_power(Vd, 5)));
  CHECK(v3v5.parts == clebsch_gordan(times(wedge_char(w7, 2), wedge_char(w7, 5))));
}

TEST_CASE("appendix torsion") {
  auto tt = assemble_torsion();
  CHECK(tt.terms == 127);
  CHECK(tt.T["b1"][{1, 1, 2}] == mpq_class(55, 18));
  CHECK(tt.T["L"][{1, 1, 4}] == mpq_class(-10, 3));
  CHECK(tt.T["b2"][{7, 6, 7}] == mpq_class(55, 18));

  auto r = appendixB_torsion_check();
  REQUIRE(r.spans.size() == 3);
  const int dims[] = {1, 3, 5};
  for (int n = 0; n < 3; ++n) {
    CHECK(r.spans[n].dimension == dims[n]);
    CHECK(r.spans[n].invariant);
    CHECK(r.spans[n].casimir_scalar);
    CHECK(r.spans[n].casimir == dims[n] * dims[n] - 1);
    CHECK(r.spans[n].e10_weight == 6);
    CHECK(r.spans[n].irreducible);
  }
  CHECK(r.hom1_violations.empty());
  CHECK(r.ok());
}

TEST_CASE("torsion transcription errors") {
  std::vector<std::string> t(torsion_expansions().begin(), torsion_expansions().end());
  auto twice = t;
  twice[0] += " + b1*t3^t3";
  CHECK_THROWS_AS(assemble_torsion(twice), DomainError);
  auto squared = t;
  squared[2] += " + b1*b2*t1^t2";
  CHECK_THROWS_AS(assemble_torsion(squared), DomainError);
  CHECK_THROWS_AS(assemble_torsion({t[0]}), DomainError);
  // a reversed wedge is read with its sign
  auto reversed = t;
  reversed[6] = "-55/18*b2*t7^t6";
  auto tt = assemble_torsion(reversed);
  CHECK(tt.T["b2"][{7, 6, 7}] == mpq_class(55, 18));
}

TEST_CASE("conformal weights") {
  auto r = conformal_weight_check();
  for (int n = 0; n < 3; ++n) {
    CHECK(r.metric_annihilated[n]);
    CHECK(r.phi_annihilated[n]);
  }
  CHECK(r.metric_eigen);
  CHECK(r.metric_weight == 12);
  CHECK(r.phi_eigen);
  CHECK(r.phi_weight == 18);
  CHECK(r.trace_G0 == 0);
  CHECK(r.trace_G1 == -42);
  CHECK(r.ok());
}

}
