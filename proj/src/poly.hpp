#pragma once
// Sparse multivariate polynomials with integer coefficients.
//
// A monomial is a byte string: byte i is the exponent of variable i, with
// trailing zero bytes trimmed so every monomial has exactly one encoding.
// Plain string comparison then coincides with lexicographic order.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace g2 {

using Mono = std::string;

inline int mono_exp(const Mono& m, int v) {
  return v < static_cast<int>(m.size()) ? static_cast<unsigned char>(m[v]) : 0;
}
void mono_set(Mono& m, int v, int e);
Mono mono_mul(const Mono& a, const Mono& b);
bool mono_divides(const Mono& a, const Mono& b);
Mono mono_quot(const Mono& b, const Mono& a);
int mono_degree(const Mono& m);

struct Term {
  Mono m;
  mpz_class c;
};

class Poly {
 public:
  // strictly decreasing monomials, no zero coefficients
  std::vector<Term> terms;

  Poly() = default;
  explicit Poly(const mpz_class& c);
  explicit Poly(long c) : Poly(mpz_class(c)) {}
  static Poly var(int v, int e = 1);
  static Poly monomial(const Mono& m, const mpz_class& c);

  bool is_zero() const { return terms.empty(); }
  bool is_const() const { return terms.empty() || (terms.size() == 1 && terms[0].m.empty()); }
  bool is_one() const { return terms.size() == 1 && terms[0].m.empty() && terms[0].c == 1; }
  mpz_class const_value() const;
  size_t size() const { return terms.size(); }
  const Term& lead() const { return terms.front(); }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly scaled(const mpz_class& c) const;
  Poly shifted(const Mono& m) const;  // multiply by a monomial
  void divexact(const mpz_class& c);
  mpz_class content() const;
  int num_vars() const;  // one past the highest variable index present
  int degree(int v) const;
  int total_degree() const;
  bool has_var(int v) const { return degree(v) > 0; }
  std::vector<int> vars() const;
  Poly diff(int v) const;
  Poly pow(unsigned k) const;
  // coefficients with respect to v, indexed by degree; v removed from them
  std::vector<Poly> coeffs_in(int v) const;
  static Poly from_coeffs(int v, const std::vector<Poly>& cs);

  void canonicalize();  // sort and merge an arbitrary term list
};

// a = b*q exactly; false if b does not divide a over Z
bool divide_exact(const Poly& a, const Poly& b, Poly& q);

// content-free, positive leading coefficient; returns the removed factor
mpz_class make_primitive(Poly& p);

Poly gcd(const Poly& a, const Poly& b);

}  // namespace g2
