#pragma once
// Arithmetic modulo a fixed 61-bit safe prime, used for probabilistic
// identity testing and cheap coprimality certificates.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "poly.hpp"

namespace g2::modp {

// p = 2q + 1 with q prime, p = 3 mod 4
inline constexpr uint64_t P = 2305843009213691579ULL;

inline uint64_t add(uint64_t a, uint64_t b) {
  uint64_t s = a + b;
  return s >= P ? s - P : s;
}
inline uint64_t sub(uint64_t a, uint64_t b) { return a >= b ? a - b : a + P - b; }
inline uint64_t mul(uint64_t a, uint64_t b) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % P);
}
uint64_t pow(uint64_t a, uint64_t e);
uint64_t inv(uint64_t a);
uint64_t from_mpz(const mpz_class& z);
uint64_t from_mpq(const mpq_class& q);  // throws if the denominator vanishes mod P
bool is_square(uint64_t a);
// some root r with r^m = a, if one exists in the field
std::optional<uint64_t> root(uint64_t a, int m);

uint64_t eval(const Poly& f, const std::vector<uint64_t>& x);

// univariate image in variable v with the other variables fixed; index = degree
std::vector<uint64_t> image(const Poly& f, int v, const std::vector<uint64_t>& x);
int udeg(const std::vector<uint64_t>& a);
std::vector<uint64_t> ugcd(std::vector<uint64_t> a, std::vector<uint64_t> b);
bool udivides(const std::vector<uint64_t>& b, std::vector<uint64_t> a);

uint64_t random_element(std::mt19937_64& rng);

}  // namespace g2::modp
