#pragma once
// The graded algebra gl(2,R) x R^7 of the matrix connection, its Lie algebra
// cohomology complex on Hom(wedge^q m, g), and sl(2) representation theory.
//
// Basis: e1..e7 translations, e8 (Gamma_+ slot), e9 (Gamma_0), e10 (Gamma_1),
// e11 (Gamma_-).  On R^7, h = e9 = diag(-6,..,6), E = e11 raises h by 2 and
// F = e8 lowers it, [E, F] = h.  The irreducible module V^k has h-eigenvalues
// k-1, k-3, .., 1-k, so the top h-eigenvalue w labels V^(w+1).

#include <gmpxx.h>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace g2::lie {

// dense rational matrix
struct QMat {
  int rows = 0, cols = 0;
  std::vector<mpq_class> a;
  QMat() = default;
  QMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  static QMat identity(int n);
  mpq_class& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const mpq_class& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
  QMat operator+(const QMat& o) const;
  QMat operator-(const QMat& o) const;
  QMat operator*(const QMat& o) const;
  QMat scaled(const mpq_class& q) const;
  std::vector<mpq_class> apply(const std::vector<mpq_class>& v) const;
  bool is_zero() const;
  bool operator==(const QMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};
QMat commutator(const QMat& x, const QMat& y);
int rank(QMat m);
// basis of the null space, one vector per entry
std::vector<std::vector<mpq_class>> nullspace(QMat m);
// stacked on top of each other
QMat vstack(const std::vector<QMat>& ms);

constexpr int kDim = 11;  // dim g
constexpr int kM = 8;     // dim m = g_- = span(e1..e8)

struct Algebra {
  std::array<QMat, kDim + 1> e;  // 8x8 matrices, 1-based
  std::array<int, kDim + 1> grade{};
  std::array<mpq_class, kDim + 1> p;  // (e_mu, e_mu)
  // [e_m, e_n] = sum_r c(r, m, n) e_r
  const mpq_class& c(int r, int m, int n) const { return c_[r][m][n]; }
  // coordinates of an 8x8 matrix in the basis; throws DomainError outside the span
  std::vector<mpq_class> coords(const QMat& x) const;

  std::array<std::array<std::array<mpq_class, kDim + 1>, kDim + 1>, kDim + 1> c_;
};

// the matrices are read off the printed connection matrix by setting one slot
// to 1 and the others to 0
const Algebra& build_algebra();
// the printed connection matrix, entry strings in the slot names th1..th7, G+, G0, G1, G-
const std::array<std::array<const char*, 8>, 8>& connection_matrix();

struct AlgebraReport {
  bool structure_constants = false;  // matrix commutators reproduce c
  bool jacobi = false;
  bool grading = false;
  bool products = false;      // diagonal values 1,6,15,20,15,6,1,1,2,1,1
  bool invariance = false;    // ([A,X],Y) = (X,[tau A,Y]) with tau(e9,e10,e11) = (e9,e10,e8)
  bool generated = false;     // g_-1 = span(e7, e8) generates m
  bool m_subalgebra = false;  // [m, m] in m
  bool all() const { return structure_constants && jacobi && grading && products && invariance && generated && m_subalgebra; }
};
AlgebraReport check_algebra();

// K^mu_{i1..iq}, mu in 1..11, i in 1..8, antisymmetric in the lower indices.
// Stored on increasing lower index lists.
struct HomTensor {
  int q = 0;
  std::map<std::pair<int, std::vector<int>>, mpq_class> comp;

  HomTensor() = default;
  explicit HomTensor(int q_) : q(q_) {}
  mpq_class get(int mu, std::vector<int> lower) const;
  void set(int mu, std::vector<int> lower, const mpq_class& v);
  void add(int mu, std::vector<int> lower, const mpq_class& v);
  bool is_zero() const;
  HomTensor operator+(const HomTensor& o) const;
  HomTensor scaled(const mpq_class& s) const;
  bool operator==(const HomTensor& o) const;
};

// (d alpha)(A1..Aq+1) = sum_i (-1)^(i+1) [A_i, alpha(..^A_i..)]
//                     + sum_{i<j} (-1)^(i+j) alpha([A_i,A_j], ..^A_i..^A_j..)
HomTensor differential(const HomTensor& alpha);
// (a, b) = sum over increasing index lists I of sum_mu p_mu / prod p_I a^mu_I b^mu_I
mpq_class inner(const HomTensor& a, const HomTensor& b);
// the formal adjoint of differential for inner, arity q+1 -> q
HomTensor adjoint(const HomTensor& kappa);
// the displayed normality operator on arity 2: component (mu, i) is
//   f sum_{nu,j} p_nu/(p_i p_j) K^nu_ij c^nu_{j mu} + sum_{j,k} p_mu/(p_j p_k) K^mu_jk c^i_jk
// with f = 4 as printed
HomTensor codifferential(const HomTensor& kappa, const mpq_class& first_factor = 4);

struct Component {
  int mu, i, j;
  mpq_class value;
};
// the components whose vanishing is listed as the filtration condition, in
// listed order
const std::vector<std::array<int, 3>>& hom1_components();
std::vector<Component> hom1_check(const HomTensor& kappa);
// the same list from the grading: alpha(g_a, g_b) inside g_(a+b+1) + ...
std::vector<std::array<int, 3>> hom1_from_grading();

// A finite-dimensional module given by the action matrices of e8, e9, e10, e11
struct Module {
  int dim = 0;
  std::vector<std::string> labels;
  std::array<QMat, 4> act;  // e8, e9, e10, e11
  const QMat& of(int mu) const { return act.at(mu - 8); }
};
Module standard_module();  // R^7 from the 7x7 block
Module dual(const Module& m);
Module exterior_power(const Module& m, int k);
Module symmetric_square(const Module& m);
Module tensor(const Module& a, const Module& b);
// commutators of the four actions against the structure constants
bool closes(const Module& m);

struct Decomposition {
  std::vector<std::pair<int, int>> parts;  // (k, multiplicity of V^k), increasing k
  int ambient = 0;
  int total() const;
  std::string str() const;  // "V1 + V3 + 3V5"
  bool operator==(const Decomposition& o) const { return parts == o.parts; }
};
// weight-space counting for h and highest-weight counting for E; both must
// agree.  Throws DomainError when the actions do not close or h is not
// diagonalizable with integer eigenvalues.
Decomposition sl2_decompose(const Module& m);
Decomposition decomposition_of(const std::vector<std::pair<int, int>>& parts);

// Casimir h^2 + 2EF + 2FE, eigenvalue k^2 - 1 on V^k
QMat casimir(const Module& m);

// Torsion of the normal solution with formal lambda, a1..a3, b1..b5, as a
// coefficient tensor per symbol on the 147-dimensional module wedge^2 V* x V
struct TorsionTable {
  std::vector<std::string> symbols;                       // L a1 a2 a3 b1 .. b5
  std::map<std::string, std::vector<mpq_class>> coeff;    // per symbol, in module order
  std::map<std::string, std::map<std::array<int, 3>, mpq_class>> T;  // (i, k, l), k < l
  int terms = 0;
};
// the seven torsion expansions, wedges written t_k^t_l
const std::array<const char*, 7>& torsion_expansions();
// throws DomainError on a repeated index or a term that is not symbol x wedge
TorsionTable assemble_torsion();
TorsionTable assemble_torsion(const std::vector<std::string>& expansions);
Module torsion_module();  // wedge^2 V* x V with labels "k,l;i"

struct SpanReport {
  std::string name;
  std::vector<std::string> symbols;
  int dimension = 0;
  bool invariant = false;  // closed under e8..e11
  mpq_class casimir;       // eigenvalue on the span
  bool casimir_scalar = false;
  mpq_class e10_weight;
  bool irreducible = false;  // dimension k with Casimir k^2 - 1 and a single highest weight
};
struct AppendixBReport {
  int terms = 0;
  std::vector<SpanReport> spans;  // lambda, a, b
  std::vector<Component> hom1_violations;
  bool ok() const;
};
AppendixBReport appendixB_torsion_check();

struct ConformalWeightReport {
  std::array<bool, 3> metric_annihilated{};  // e8, e9, e11
  std::array<bool, 3> phi_annihilated{};
  mpq_class metric_weight, phi_weight;  // e10 eigenvalues, 0 when not eigen
  bool metric_eigen = false, phi_eigen = false;
  mpq_class trace_G0, trace_G1;  // trace of the 7x7 block in the slots
  bool ok() const;
};
ConformalWeightReport conformal_weight_check();

}  // namespace g2::lie
