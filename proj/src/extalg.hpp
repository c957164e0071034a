#pragma once
// Exterior calculus on coordinate charts, the G2 algebra of the theta frame,
// the Fernandez-Gray torsion solver and the coframes of the examples.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "binform.hpp"
#include "expr.hpp"
#include "numeric.hpp"

namespace g2 {

// multi-indices are bit masks over a basis of at most 32 one-forms
using Mask = uint32_t;
int popcount(Mask m);
// e_a ^ e_b = sign * e_(a|b); 0 when a and b overlap
int wedge_sign(Mask a, Mask b);
std::vector<Mask> masks_of_degree(int n, int k);  // increasing numeric order
std::string mask_str(Mask m, const std::string& prefix = "");

// Alternating forms with coefficients in C over an abstract basis of size n.
template <class C>
struct Alt {
  int n = 7;
  int deg = 0;
  std::map<Mask, C> t;

  Alt() = default;
  Alt(int n_, int deg_) : n(n_), deg(deg_) {}

  void add(Mask m, const C& c) {
    auto it = t.find(m);
    if (it == t.end()) t.emplace(m, c);
    else it->second = it->second + c;
  }
  Alt operator+(const Alt& o) const {
    Alt r = *this;
    for (const auto& [m, c] : o.t) r.add(m, c);
    return r;
  }
  Alt scaled(const mpq_class& q) const {
    Alt r(n, deg);
    for (const auto& [m, c] : t) r.t.emplace(m, C(q * c));
    return r;
  }
  Alt operator-(const Alt& o) const { return *this + o.scaled(-1); }
};

template <class C>
Alt<C> wedge(const Alt<C>& a, const Alt<C>& b) {
  Alt<C> r(a.n, a.deg + b.deg);
  for (const auto& [ma, ca] : a.t)
    for (const auto& [mb, cb] : b.t) {
      int s = wedge_sign(ma, mb);
      if (s) r.add(ma | mb, C(mpq_class(s) * (ca * cb)));
    }
  return r;
}

using QForm = Alt<mpq_class>;  // constant coefficients in the theta frame
using EForm = Alt<Expr>;       // function coefficients in the theta frame

// theta^I from a list of indices in the given (possibly unsorted) order
QForm theta_monomial(const std::vector<int>& idx, const mpq_class& c = 1);
QForm sum(std::initializer_list<QForm> fs);
bool equal(const QForm& a, const QForm& b);
std::string qform_str(const QForm& f, const std::string& prefix = "theta");

// The G2 data of the theta frame: I0 = th1 th7 - 6 th2 th6 + 15 th3 th5 - 10 th4^2.
namespace frame {
// phi of the binary-form construction, written as printed (unsorted wedges)
QForm phi();
// the second printed expansion, already in increasing order
QForm phi_alt();
// printed dual four-form
QForm star_phi_printed();
// inverse metric (theta basis)
const std::vector<std::vector<mpq_class>>& inverse_metric();
// Hodge star of I0 with orientation e1..e7 positive, which is -theta^{1..7};
// * = sqrt(10) * star_r with star_r rational
QForm star_r(const QForm& a);
EForm star_r(const EForm& a);
// * for the metric s * I0 on k-forms is s^((7-2k)/2) sqrt(10) star_r; returns the
// rational factor when it is rational, nullopt otherwise
std::optional<mpq_class> star_factor(int k, const mpq_class& s);
// psi = star_r(phi)
QForm psi();
}  // namespace frame

// Charts and forms on them
struct Chart {
  SpacePtr sp;              // coordinates, then parameters and adjoined symbols
  std::vector<int> coords;  // symbols whose differentials span the forms
  int dim() const { return static_cast<int>(coords.size()); }
  std::string coord_name(int k) const { return sp->sym(coords[k]).name; }
};
using ChartPtr = std::shared_ptr<const Chart>;
ChartPtr make_chart(const SpacePtr& sp, const std::vector<std::string>& coords);
// same coordinates in an extended space
ChartPtr rehome(const ChartPtr& ch, const SpacePtr& sp);

class Form {
 public:
  Form() = default;
  Form(ChartPtr ch, int degree);
  static Form function(ChartPtr ch, const Expr& f);
  static Form dx(ChartPtr ch, int k);
  static Form dx(ChartPtr ch, const std::string& coord);

  const ChartPtr& chart() const { return ch_; }
  int degree() const { return a_.deg; }
  const std::map<Mask, Expr>& terms() const { return a_.t; }
  const EForm& alt() const { return a_; }
  Expr coeff(Mask m) const;
  void add_term(Mask m, const Expr& c);

  Form operator+(const Form& o) const;
  Form operator-(const Form& o) const;
  Form operator-() const { return *this * mpq_class(-1); }
  Form operator*(const Expr& f) const;
  Form operator*(const mpq_class& q) const;
  Form lift(const ChartPtr& to) const;

  // every coefficient zero-tested; first nonzero coefficient reported through `which`
  bool is_zero(const ZeroOptions& opt = {}, Mask* which = nullptr) const;
  ZeroTest zero_test(const ZeroOptions& opt = {}) const;  // weakest of the coefficient tests
  std::string str() const;

 private:
  ChartPtr ch_;
  EForm a_;
  void check(const Form& o) const;
};

Form wedge(const Form& a, const Form& b);
Form d(const Form& a);
Form d(const ChartPtr& ch, const Expr& f);
// V in chart coordinates: components along d/dx_k
Form contract(const std::vector<Expr>& V, const Form& a);

// A coframe theta^1..theta^7 on a 7-dimensional chart
class Coframe {
 public:
  Coframe() = default;
  Coframe(std::string name, ChartPtr ch, std::array<Form, 7> theta);

  const std::string& name() const { return name_; }
  const ChartPtr& chart() const { return ch_; }
  const Form& theta(int i) const { return th_[i - 1]; }  // 1-based
  const std::optional<Expr>& conformal() const { return conformal_; }
  void set_conformal(const Expr& e) { conformal_ = e; }

  const Expr& det() const { return det_; }  // theta^{1..7} = det dx^{1..7}
  Form theta_wedge(Mask m) const;           // theta^I as a chart form
  EForm frame_components(const Form& w) const;
  Form from_frame(const EForm& a) const;
  Form from_frame(const QForm& a) const;
  Form phi() const { return from_frame(frame::phi()); }
  Form psi() const { return from_frame(frame::psi()); }
  Coframe lift(const ChartPtr& to) const;

 private:
  std::string name_;
  ChartPtr ch_;
  std::array<Form, 7> th_;
  Expr det_, det_inv_;
  std::optional<Expr> conformal_;
  mutable std::map<Mask, Form> cache_;
};

// d phi = 0 certified twice: symbolically, and at random points mod p from the
// values of theta^i and d theta^i alone (d phi is never formed symbolically there)
struct Closedness {
  bool exact = false;
  bool sampled = false;
  int points = 0;
};
Closedness closedness(const Coframe& cf, int points = 64, uint64_t seed = 0xc105ed);

// Hodge star of the conformal metric s * I0 of the coframe; throws DomainError
// if the result would need an irrational factor
Form hodge_star(const Form& a, const Coframe& cf, const mpq_class& scale = 1);

// Fernandez-Gray torsion of phi_e = sqrt(10)/2 phi with metric I0. The solver
// works with rational rescalings ("hat" quantities):
//   lambda = lambda_hat / sqrt(10), tau2 = sqrt(10) tau2_hat, tau3 = tau3_hat / 2
// for which
//   d phi = lambda_hat psi + 3/4 Theta ^ phi + star_r tau3_hat
//   d psi = Theta ^ psi - tau2_hat ^ phi
// with psi = star_r phi.
struct FGTorsion {
  Expr lambda_hat;
  Form Theta, tau2_hat, tau3_hat;  // chart forms
  EForm Theta_f, tau2_f, tau3_f;   // theta-frame components
  bool residual_zero = false;      // both structure equations hold exactly
  int residual_checked = 0;
  // tau2_hat ^ phi = kappa star_r tau2_hat (nullopt when tau2 vanishes)
  std::optional<mpq_class> kappa;
  bool tau2_zero = false, tau3_zero = false, Theta_zero = false, lambda_zero = false;
  bool tau3_constraints = false;  // tau3 ^ phi = 0 and tau3 ^ psi = 0
  std::string type_label() const;
};
FGTorsion fg_decompose(const Coframe& cf, const ZeroOptions& opt = {});

struct RescaleReport {
  Coframe rescaled;
  FGTorsion before, after;
  bool lambda_law = false, Theta_law = false, tau2_law = false, tau3_law = false, dTheta_invariant = false;
  bool all() const { return lambda_law && Theta_law && tau2_law && tau3_law && dTheta_invariant; }
};
// theta -> e^f theta, so g -> e^(2f) g and phi -> e^(3f) phi; f a rational
// function of the chart
RescaleReport conformal_rescale(const Coframe& cf, const Expr& f, const ZeroOptions& opt = {});

// named coframes: flat, cusp, cusp_printed, example2, example4_k3
Coframe coframe_catalog(const std::string& name);
std::vector<std::string> coframe_names();

// the constant in (V _| phi)^2 ^ phi = c I0(V) theta^{1..7}
struct Prop41 {
  mpq_class c;
  bool identity = false;
};
Prop41 prop41_constant();

// the cusp coframe on p2 = p, p1 = conj(p), everything else real
struct RiemannianSample {
  num::Complex p;
  num::Real p3;
  std::array<num::Real, 4> q;
  num::Real rel_err;             // largest violation of the reality relations
  std::vector<num::Real> eigen;  // real metric in (Re p, Im p, p3, q0..q3)
};
struct RiemannianReport {
  std::vector<RiemannianSample> samples;
  num::Real worst;
  bool relations = false, positive = false;
};
RiemannianReport riemannian_continuation_check(int samples, uint64_t seed, const num::Real& tol = num::Real("1e-20"));
RiemannianSample riemannian_at(const Coframe& cusp, const num::Complex& p, const num::Real& p3,
                               const std::array<num::Real, 4>& q);

// complex value with an explicit value for every symbol of the space
num::Complex eval_complex(const Expr& e, const std::vector<num::Complex>& values);

}  // namespace g2
