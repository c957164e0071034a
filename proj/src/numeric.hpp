#pragma once
// 50-digit real and complex arithmetic for the numeric certifications.

#include <boost/multiprecision/mpfr.hpp>
#include <gmpxx.h>

#include <string>
#include <vector>

namespace g2::num {

using Real = boost::multiprecision::mpfr_float_50;

struct Complex {
  Real re, im;
  Complex() : re(0), im(0) {}
  Complex(Real r, Real i = 0) : re(std::move(r)), im(std::move(i)) {}
  Complex(long r) : re(r), im(0) {}

  Complex operator+(const Complex& o) const { return {re + o.re, im + o.im}; }
  Complex operator-(const Complex& o) const { return {re - o.re, im - o.im}; }
  Complex operator-() const { return {-re, -im}; }
  Complex operator*(const Complex& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  Complex operator/(const Complex& o) const;
  Complex& operator+=(const Complex& o) { return *this = *this + o; }
  Complex& operator-=(const Complex& o) { return *this = *this - o; }
  Complex& operator*=(const Complex& o) { return *this = *this * o; }
  Complex& operator/=(const Complex& o) { return *this = *this / o; }
  Complex conj() const { return {re, -im}; }
  std::string str(int digits = 20) const;
};

inline const Complex I{Real(0), Real(1)};

Real to_real(const mpq_class& q);
Real abs(const Complex& z);
Real arg(const Complex& z);
Complex polar(const Real& r, const Real& t);
Complex sqrt(const Complex& z);                 // principal branch
Complex root(const Complex& z, int m, int k);   // |z|^(1/m) e^(i(arg z + 2 pi k)/m)
Complex pow(const Complex& z, int k);
Complex exp(const Complex& z);

// all roots of c[0] + c[1] x + ... + c[d] x^d, c[d] != 0, by Aberth iteration;
// throws Inconclusive when the iteration does not settle
std::vector<Complex> poly_roots(const std::vector<Complex>& c);

// eigenvalues of a real symmetric matrix, ascending (cyclic Jacobi)
std::vector<Real> sym_eigenvalues(std::vector<std::vector<Real>> a);

}  // namespace g2::num
