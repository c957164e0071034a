#pragma once
// Exact expressions: rational functions over Q in the symbols of a Space,
// extended by the radical, exponential and formal-function symbols it declares.
//
// Representation  c * num / prod(f_i ^ e_i)
//   c      nonzero rational (zero expression: c = 0, num empty)
//   num    primitive integer polynomial, positive leading coefficient, reduced
//          so that every radical r with r^m = b appears with degree < m
//   f_i    primitive nonconstant radical-free polynomials, pairwise coprime
//          (certified by modular images or an explicit gcd split)

#include <gmpxx.h>

#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "poly.hpp"
#include "space.hpp"

namespace g2 {

struct DenFactor {
  Poly f;
  int e;
};

class Expr {
 public:
  Expr() = default;
  Expr(SpacePtr sp, const mpq_class& c);
  Expr(SpacePtr sp, long c) : Expr(std::move(sp), mpq_class(c)) {}
  static Expr sym(SpacePtr sp, int index);
  static Expr sym(SpacePtr sp, const std::string& name);
  static Expr from_poly(SpacePtr sp, const Poly& p, const mpq_class& c = 1);
  // c * num / prod(den); den entries need not be primitive or coprime
  static Expr from_parts(SpacePtr sp, const mpq_class& c, const Poly& num, const std::vector<DenFactor>& den);

  const SpacePtr& space() const { return sp_; }
  const mpq_class& scalar() const { return c_; }
  const Poly& numerator() const { return num_; }
  const std::vector<DenFactor>& den_factors() const { return den_; }
  Poly den_expanded() const;

  bool is_zero_nf() const { return c_ == 0; }  // exact normal-form test
  bool is_const() const { return den_.empty() && num_.is_const(); }
  mpq_class const_value() const;
  bool has_radicals() const;
  bool depends_on(int sym) const;
  std::vector<int> symbols() const;

  Expr operator+(const Expr& o) const;
  Expr operator-(const Expr& o) const;
  Expr operator*(const Expr& o) const;
  Expr operator/(const Expr& o) const;
  Expr operator-() const;
  Expr& operator+=(const Expr& o) { return *this = *this + o; }
  Expr& operator-=(const Expr& o) { return *this = *this - o; }
  Expr& operator*=(const Expr& o) { return *this = *this * o; }
  Expr& operator/=(const Expr& o) { return *this = *this / o; }
  Expr operator*(const mpq_class& q) const;
  Expr pow(int k) const;
  Expr inverse() const;

  // structural equality of normal forms (meaningful when radicals are independent)
  bool same(const Expr& o) const;

  // re-home into an extension of the current space
  Expr lift(const SpacePtr& to) const;

  std::string str() const;  // canonical text, parseable by parse()

 private:
  SpacePtr sp_;
  mpq_class c_ = 0;
  Poly num_;
  std::vector<DenFactor> den_;
  void finish();
};

Expr operator*(const mpq_class& q, const Expr& e);

// Derivation defined by its values on independent symbols (missing = 0);
// dependent symbols follow by the chain rule.
struct Derivation {
  std::map<int, Expr> on;
};
Expr derive(const Expr& e, const Derivation& d);
Expr partial(const Expr& e, int sym);
Expr partial(const Expr& e, const std::string& name);

// substitute independent symbols; the result lives in `to`
Expr substitute(const Expr& e, const std::map<int, Expr>& values, const SpacePtr& to);

Expr parse(const SpacePtr& sp, const std::string& text);
// exact value of the text as written: PoleError when any divisor vanishes,
// even one that cancels in the normal form
mpq_class evaluate_text(const SpacePtr& sp, const std::string& text, const std::map<int, mpq_class>& point);

// exact value at a rational point (independent symbols only); the normal form
// has cancelled common factors, so a removable singularity evaluates finitely
mpq_class evaluate_exact(const Expr& e, const std::map<int, mpq_class>& point);

// Zero testing
enum class ZeroMode { Exact, ExactAndProbabilistic, Probabilistic };
struct ZeroTest {
  bool zero = false;
  ZeroMode mode = ZeroMode::Exact;
  int points = 0;       // sample points actually evaluated
  double log2_bound = 0;  // log2 of the failure probability bound of the sampling part
};
struct ZeroOptions {
  int points = 32;
  uint64_t seed = 0x5eed;
  bool force_probabilistic = false;  // also sample radical-free expressions
};
ZeroTest zero_test(const Expr& e, const ZeroOptions& opt = {});
bool is_zero(const Expr& e);

// sampling only (no exact check); returns the number of non-pole points
// evaluated and whether all were zero
struct Sampled {
  bool all_zero;
  int points;
};
Sampled sample_zero(const Expr& e, int points, std::mt19937_64& rng);

// values for every symbol of the space mod p, radicals consistent; empty
// vector when a radical base had no root (caller resamples)
std::vector<uint64_t> sample_point(const Space& sp, std::mt19937_64& rng);
std::optional<uint64_t> eval_modp(const Expr& e, const std::vector<uint64_t>& point);

}  // namespace g2
