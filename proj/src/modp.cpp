#include "modp.hpp"

#include <stdexcept>

namespace g2::modp {

uint64_t pow(uint64_t a, uint64_t e) {
  uint64_t r = 1;
  a %= P;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

uint64_t inv(uint64_t a) {
  if (a == 0) throw std::domain_error("inverse of zero mod p");
  return pow(a, P - 2);
}

uint64_t from_mpz(const mpz_class& z) {
  static_assert(sizeof(unsigned long) == 8);
  return mpz_fdiv_ui(z.get_mpz_t(), P);
}

uint64_t from_mpq(const mpq_class& q) {
  uint64_t d = from_mpz(q.get_den());
  if (d == 0) throw std::domain_error("denominator vanishes mod p");
  return mul(from_mpz(q.get_num()), inv(d));
}

bool is_square(uint64_t a) { return a == 0 || pow(a, (P - 1) / 2) == 1; }

namespace {

// inverse of an odd m modulo p-1 = 2q
uint64_t odd_exponent_inverse(uint64_t m) {
  mpz_class mm(static_cast<unsigned long>(m)), n(static_cast<unsigned long>(P - 1)), r;
  if (mpz_invert(r.get_mpz_t(), mm.get_mpz_t(), n.get_mpz_t()) == 0)
    throw std::domain_error("root degree not invertible mod p-1");
  return r.get_ui();
}

}  // namespace

std::optional<uint64_t> root(uint64_t a, int m) {
  if (a == 0) return 0;
  int k = 0;
  while (m % 2 == 0) {
    m /= 2;
    ++k;
  }
  uint64_t x = a;
  for (int i = 0; i < k; ++i) {
    if (!is_square(x)) return std::nullopt;
    uint64_t s = pow(x, (P + 1) / 4);
    // -1 is a non-residue, so exactly one of s, -s is a square
    if (i + 1 < k && !is_square(s)) s = P - s;
    x = s;
  }
  if (m > 1) x = pow(x, odd_exponent_inverse(m));
  return x;
}

uint64_t eval(const Poly& f, const std::vector<uint64_t>& x) {
  uint64_t acc = 0;
  for (const auto& t : f.terms) {
    uint64_t v = from_mpz(t.c);
    for (size_t i = 0; i < t.m.size(); ++i) {
      int e = static_cast<unsigned char>(t.m[i]);
      if (e) v = mul(v, e == 1 ? x[i] : pow(x[i], e));
    }
    acc = add(acc, v);
  }
  return acc;
}

std::vector<uint64_t> image(const Poly& f, int v, const std::vector<uint64_t>& x) {
  std::vector<uint64_t> out(f.degree(v) + 1, 0);
  for (const auto& t : f.terms) {
    uint64_t c = from_mpz(t.c);
    for (size_t i = 0; i < t.m.size(); ++i) {
      int e = static_cast<unsigned char>(t.m[i]);
      if (e && static_cast<int>(i) != v) c = mul(c, pow(x[i], e));
    }
    int d = mono_exp(t.m, v);
    out[d] = add(out[d], c);
  }
  return out;
}

int udeg(const std::vector<uint64_t>& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[i]) return i;
  return -1;
}

namespace {

void urem(std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
  int db = udeg(b);
  uint64_t il = inv(b[db]);
  for (int da = udeg(a); da >= db; da = udeg(a)) {
    uint64_t f = mul(a[da], il);
    for (int i = 0; i <= db; ++i) a[da - db + i] = sub(a[da - db + i], mul(f, b[i]));
  }
}

}  // namespace

std::vector<uint64_t> ugcd(std::vector<uint64_t> a, std::vector<uint64_t> b) {
  while (udeg(b) >= 0) {
    urem(a, b);
    std::swap(a, b);
  }
  a.resize(udeg(a) + 1);
  return a;
}

bool udivides(const std::vector<uint64_t>& b, std::vector<uint64_t> a) {
  if (udeg(b) < 0) return udeg(a) < 0;
  urem(a, b);
  return udeg(a) < 0;
}

uint64_t random_element(std::mt19937_64& rng) {
  std::uniform_int_distribution<uint64_t> d(1, P - 1);
  return d(rng);
}

}  // namespace g2::modp
