#include "liealg.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <sstream>

#include "expr.hpp"
#include "extalg.hpp"

namespace g2::lie {

// ---------------------------------------------------------------- matrices

QMat QMat::identity(int n) {
  QMat r(n, n);
  for (int i = 0; i < n; ++i) r(i, i) = 1;
  return r;
}

QMat QMat::operator+(const QMat& o) const {
  QMat r = *this;
  for (size_t k = 0; k < a.size(); ++k) r.a[k] += o.a[k];
  return r;
}

QMat QMat::operator-(const QMat& o) const {
  QMat r = *this;
  for (size_t k = 0; k < a.size(); ++k) r.a[k] -= o.a[k];
  return r;
}

QMat QMat::operator*(const QMat& o) const {
  if (cols != o.rows) throw DomainError("matrix shapes do not match");
  QMat r(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      const mpq_class& x = (*this)(i, k);
      if (x == 0) continue;
      for (int j = 0; j < o.cols; ++j)
        if (o(k, j) != 0) r(i, j) += x * o(k, j);
    }
  return r;
}

QMat QMat::scaled(const mpq_class& q) const {
  QMat r = *this;
  for (auto& x : r.a) x *= q;
  return r;
}

std::vector<mpq_class> QMat::apply(const std::vector<mpq_class>& v) const {
  std::vector<mpq_class> r(rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if ((*this)(i, j) != 0 && v[j] != 0) r[i] += (*this)(i, j) * v[j];
  return r;
}

bool QMat::is_zero() const {
  return std::all_of(a.begin(), a.end(), [](const mpq_class& x) { return x == 0; });
}

QMat commutator(const QMat& x, const QMat& y) { return x * y - y * x; }

namespace {

// reduced row echelon form in place; returns the pivot columns
std::vector<int> rref(QMat& m) {
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i)
      if (m(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
    mpq_class inv = 1 / m(r, c);
    std::vector<int> nz;
    for (int j = c; j < m.cols; ++j)
      if (m(r, j) != 0) {
        m(r, j) *= inv;
        nz.push_back(j);
      }
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      mpq_class f = m(i, c);
      for (int j : nz) m(i, j) -= f * m(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

}  // namespace

int rank(QMat m) { return static_cast<int>(rref(m).size()); }

std::vector<std::vector<mpq_class>> nullspace(QMat m) {
  auto piv = rref(m);
  std::vector<bool> is_piv(m.cols, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<std::vector<mpq_class>> out;
  for (int f = 0; f < m.cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<mpq_class> v(m.cols);
    v[f] = 1;
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(static_cast<int>(r), f);
    out.push_back(std::move(v));
  }
  return out;
}

QMat vstack(const std::vector<QMat>& ms) {
  int rows = 0, cols = ms.front().cols;
  for (const auto& m : ms) rows += m.rows;
  QMat r(rows, cols);
  int at = 0;
  for (const auto& m : ms) {
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < cols; ++j) r(at + i, j) = m(i, j);
    at += m.rows;
  }
  return r;
}

namespace {

// columns of a matrix from a list of vectors
QMat columns(const std::vector<std::vector<mpq_class>>& vs, int n) {
  QMat m(n, static_cast<int>(vs.size()));
  for (size_t j = 0; j < vs.size(); ++j)
    for (int i = 0; i < n; ++i) m(i, static_cast<int>(j)) = vs[j][i];
  return m;
}

}  // namespace

// ---------------------------------------------------------------- the algebra

const std::array<std::array<const char*, 8>, 8>& connection_matrix() {
  static const std::array<std::array<const char*, 8>, 8> m{{
      {"-6G0-6G1", "6G+", "0", "0", "0", "0", "0", "th1"},
      {"G-", "-4G0-6G1", "5G+", "0", "0", "0", "0", "th2"},
      {"0", "2G-", "-2G0-6G1", "4G+", "0", "0", "0", "th3"},
      {"0", "0", "3G-", "-6G1", "3G+", "0", "0", "th4"},
      {"0", "0", "0", "4G-", "2G0-6G1", "2G+", "0", "th5"},
      {"0", "0", "0", "0", "5G-", "4G0-6G1", "G+", "th6"},
      {"0", "0", "0", "0", "0", "6G-", "6G0-6G1", "th7"},
      {"0", "0", "0", "0", "0", "0", "0", "0"},
  }};
  return m;
}

namespace {

// "-6G0-6G1" -> {(9,-6), (10,-6)}
std::vector<std::pair<int, int>> slot_terms(const std::string& s) {
  std::vector<std::pair<int, int>> out;
  if (s == "0") return out;
  size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') sign = s[i++] == '-' ? -1 : 1;
    int coef = 0;
    bool digits = false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      coef = 10 * coef + (s[i++] - '0');
      digits = true;
    }
    if (!digits) coef = 1;
    int slot;
    if (s.compare(i, 2, "th") == 0) {
      slot = s[i + 2] - '0';
      i += 3;
    } else if (s[i] == 'G') {
      char t = s[i + 1];
      slot = t == '+' ? 8 : t == '0' ? 9 : t == '1' ? 10 : 11;
      i += 2;
    } else {
      throw DomainError("bad slot entry " + s);
    }
    out.emplace_back(slot, sign * coef);
  }
  return out;
}

Algebra make_algebra() {
  Algebra A;
  for (int mu = 1; mu <= kDim; ++mu) A.e[mu] = QMat(8, 8);
  const auto& cm = connection_matrix();
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c)
      for (auto [slot, k] : slot_terms(cm[r][c])) A.e[slot](r, c) += k;
  A.grade = {0, -7, -6, -5, -4, -3, -2, -1, -1, 0, 0, 1};
  const int p[] = {0, 1, 6, 15, 20, 15, 6, 1, 1, 2, 1, 1};
  for (int mu = 0; mu <= kDim; ++mu) A.p[mu] = p[mu];
  for (int m = 1; m <= kDim; ++m)
    for (int n = 1; n <= kDim; ++n) {
      auto x = A.coords(commutator(A.e[m], A.e[n]));
      for (int r = 1; r <= kDim; ++r) A.c_[r][m][n] = x[r];
    }
  return A;
}

}  // namespace

std::vector<mpq_class> Algebra::coords(const QMat& x) const {
  // the basis matrices have disjoint supports up to the diagonal, so solve the
  // 64 x 11 system directly
  QMat aug(64, kDim + 1);
  for (int mu = 1; mu <= kDim; ++mu)
    for (int k = 0; k < 64; ++k) aug(k, mu - 1) = e[mu].a[k];
  for (int k = 0; k < 64; ++k) aug(k, kDim) = x.a[k];
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == kDim) throw DomainError("matrix outside the algebra");
  std::vector<mpq_class> out(kDim + 1);
  for (size_t r = 0; r < piv.size(); ++r) out[piv[r] + 1] = aug(static_cast<int>(r), kDim);
  return out;
}

const Algebra& build_algebra() {
  static const Algebra A = make_algebra();
  return A;
}

AlgebraReport check_algebra() {
  const Algebra& A = build_algebra();
  AlgebraReport rep;

  rep.structure_constants = true;
  for (int m = 1; m <= kDim; ++m)
    for (int n = 1; n <= kDim; ++n) {
      QMat s(8, 8);
      for (int r = 1; r <= kDim; ++r)
        if (A.c(r, m, n) != 0) s = s + A.e[r].scaled(A.c(r, m, n));
      if (!(s == commutator(A.e[m], A.e[n])) || A.c(0, m, n) != 0) rep.structure_constants = false;
    }

  // sum over cyclic permutations of c^s_{r a} c^r_{b c}
  rep.jacobi = true;
  for (int a = 1; a <= kDim; ++a)
    for (int b = 1; b <= kDim; ++b)
      for (int c = 1; c <= kDim; ++c)
        for (int s = 1; s <= kDim; ++s) {
          mpq_class t = 0;
          for (int r = 1; r <= kDim; ++r)
            t += A.c(s, a, r) * A.c(r, b, c) + A.c(s, b, r) * A.c(r, c, a) + A.c(s, c, r) * A.c(r, a, b);
          if (t != 0) rep.jacobi = false;
        }

  rep.grading = true;
  rep.m_subalgebra = true;
  for (int m = 1; m <= kDim; ++m)
    for (int n = 1; n <= kDim; ++n)
      for (int r = 1; r <= kDim; ++r) {
        if (A.c(r, m, n) == 0) continue;
        if (A.grade[r] != A.grade[m] + A.grade[n]) rep.grading = false;
        if (m <= kM && n <= kM && r > kM) rep.m_subalgebra = false;
      }

  const int want[] = {0, 1, 6, 15, 20, 15, 6, 1, 1, 2, 1, 1};
  rep.products = true;
  for (int mu = 1; mu <= kDim; ++mu)
    if (A.p[mu] != want[mu]) rep.products = false;

  // ([A,X],Y) = (X,[tau A,Y]) on the diagonal product
  const std::map<int, int> tau{{9, 9}, {10, 10}, {11, 8}};
  rep.invariance = true;
  for (auto [a, ta] : tau)
    for (int x = 1; x <= kDim; ++x)
      for (int y = 1; y <= kDim; ++y)
        if (A.c(y, a, x) * A.p[y] != A.c(x, ta, y) * A.p[x]) rep.invariance = false;

  // span of iterated brackets of e7, e8
  std::vector<std::vector<mpq_class>> span;
  auto unit = [](int mu) {
    std::vector<mpq_class> v(kDim + 1);
    v[mu] = 1;
    return v;
  };
  span = {unit(7), unit(8)};
  std::vector<std::vector<mpq_class>> frontier = span;
  auto span_rank = [&](const std::vector<std::vector<mpq_class>>& vs) { return rank(columns(vs, kDim + 1)); };
  for (int depth = 0; depth < 8 && !frontier.empty(); ++depth) {
    std::vector<std::vector<mpq_class>> next;
    for (const auto& v : frontier)
      for (int g : {7, 8}) {
        std::vector<mpq_class> w(kDim + 1);
        for (int r = 1; r <= kDim; ++r)
          for (int n = 1; n <= kDim; ++n)
            if (v[n] != 0) w[r] += A.c(r, g, n) * v[n];
        auto cand = span;
        cand.push_back(w);
        if (span_rank(cand) > span_rank(span)) {
          span = cand;
          next.push_back(w);
        }
      }
    frontier = next;
  }
  bool inside_m = true;
  for (const auto& v : span)
    for (int mu = kM + 1; mu <= kDim; ++mu)
      if (v[mu] != 0) inside_m = false;
  rep.generated = inside_m && span_rank(span) == kM;
  return rep;
}

// ---------------------------------------------------------------- Hom tensors

namespace {

// sort, returning the permutation sign; 0 on a repeated index
int sort_sign(std::vector<int>& v) {
  int s = 1;
  for (size_t i = 1; i < v.size(); ++i)
    for (size_t j = i; j > 0 && v[j - 1] >= v[j]; --j) {
      if (v[j - 1] == v[j]) return 0;
      std::swap(v[j - 1], v[j]);
      s = -s;
    }
  return s;
}

void check_lower(const HomTensor& t, int mu, const std::vector<int>& lower) {
  if (static_cast<int>(lower.size()) != t.q) throw DomainError("wrong number of lower indices");
  if (mu < 1 || mu > kDim) throw DomainError("upper index out of range");
  for (int i : lower)
    if (i < 1 || i > kM) throw DomainError("lower index out of range");
}

// increasing q-subsets of 1..n
void subsets(int n, int q, int from, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == q) {
    out.push_back(cur);
    return;
  }
  for (int i = from; i <= n; ++i) {
    cur.push_back(i);
    subsets(n, q, i + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> subsets(int n, int q) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  subsets(n, q, 1, cur, out);
  return out;
}

}  // namespace

mpq_class HomTensor::get(int mu, std::vector<int> lower) const {
  check_lower(*this, mu, lower);
  int s = sort_sign(lower);
  if (s == 0) return 0;
  auto it = comp.find({mu, lower});
  return it == comp.end() ? mpq_class(0) : mpq_class(s * it->second);
}

void HomTensor::set(int mu, std::vector<int> lower, const mpq_class& v) {
  check_lower(*this, mu, lower);
  int s = sort_sign(lower);
  if (s == 0) {
    if (v != 0) throw DomainError("a repeated lower index forces a zero component");
    return;
  }
  if (v == 0) comp.erase({mu, lower});
  else comp[{mu, lower}] = s * v;
}

void HomTensor::add(int mu, std::vector<int> lower, const mpq_class& v) {
  if (v == 0) return;
  set(mu, lower, get(mu, lower) + v);
}

bool HomTensor::is_zero() const {
  return std::all_of(comp.begin(), comp.end(), [](const auto& kv) { return kv.second == 0; });
}

HomTensor HomTensor::operator+(const HomTensor& o) const {
  if (q != o.q) throw DomainError("arity mismatch");
  HomTensor r = *this;
  for (const auto& [k, v] : o.comp) r.add(k.first, k.second, v);
  return r;
}

HomTensor HomTensor::scaled(const mpq_class& s) const {
  HomTensor r(q);
  if (s == 0) return r;
  for (const auto& [k, v] : comp) r.comp[k] = v * s;
  return r;
}

bool HomTensor::operator==(const HomTensor& o) const { return q == o.q && (*this + o.scaled(-1)).is_zero(); }

HomTensor differential(const HomTensor& alpha) {
  const Algebra& A = build_algebra();
  int q = alpha.q;
  if (q + 1 > kM) throw DomainError("arity beyond dim m");
  HomTensor out(q + 1);
  for (const auto& I : subsets(kM, q + 1)) {
    std::vector<mpq_class> val(kDim + 1);
    // sum_i (-1)^(i+1) [A_i, alpha(.. ^A_i ..)]
    for (int i = 0; i <= q; ++i) {
      std::vector<int> rest;
      for (int t = 0; t <= q; ++t)
        if (t != i) rest.push_back(I[t]);
      int sign = i % 2 == 0 ? 1 : -1;
      for (int nu = 1; nu <= kDim; ++nu) {
        mpq_class a = alpha.get(nu, rest);
        if (a == 0) continue;
        for (int r = 1; r <= kDim; ++r)
          if (A.c(r, I[i], nu) != 0) val[r] += sign * a * A.c(r, I[i], nu);
      }
    }
    // sum_{i<j} (-1)^(i+j) alpha([A_i, A_j], ..)
    for (int i = 0; i <= q; ++i)
      for (int j = i + 1; j <= q; ++j) {
        int sign = (i + j) % 2 == 0 ? 1 : -1;
        for (int k = 1; k <= kM; ++k) {
          const mpq_class& ck = A.c(k, I[i], I[j]);
          if (ck == 0) continue;
          std::vector<int> args{k};
          for (int t = 0; t <= q; ++t)
            if (t != i && t != j) args.push_back(I[t]);
          for (int nu = 1; nu <= kDim; ++nu) {
            mpq_class a = alpha.get(nu, args);
            if (a != 0) val[nu] += sign * ck * a;
          }
        }
      }
    for (int nu = 1; nu <= kDim; ++nu)
      if (val[nu] != 0) out.set(nu, I, val[nu]);
  }
  return out;
}

namespace {

mpq_class weight(int mu, const std::vector<int>& I) {
  const Algebra& A = build_algebra();
  mpq_class w = A.p[mu];
  for (int i : I) w /= A.p[i];
  return w;
}

}  // namespace

mpq_class inner(const HomTensor& a, const HomTensor& b) {
  if (a.q != b.q) throw DomainError("arity mismatch");
  mpq_class s = 0;
  for (const auto& [k, v] : a.comp) {
    auto it = b.comp.find(k);
    if (it != b.comp.end()) s += weight(k.first, k.second) * v * it->second;
  }
  return s;
}

HomTensor adjoint(const HomTensor& kappa) {
  if (kappa.q < 1) throw DomainError("arity mismatch");
  int q = kappa.q - 1;
  HomTensor out(q);
  // (d* kappa)^mu_I = (1 / w(mu, I)) (kappa, d(e^I x e_mu))
  for (const auto& I : subsets(kM, q))
    for (int mu = 1; mu <= kDim; ++mu) {
      HomTensor basis(q);
      basis.set(mu, I, 1);
      mpq_class v = inner(kappa, differential(basis));
      if (v != 0) out.set(mu, I, v / weight(mu, I));
    }
  return out;
}

HomTensor codifferential(const HomTensor& kappa, const mpq_class& first_factor) {
  if (kappa.q != 2) throw DomainError("arity mismatch: the normality operator takes arity 2");
  const Algebra& A = build_algebra();
  HomTensor out(1);
  for (int mu = 1; mu <= kDim; ++mu)
    for (int i = 1; i <= kM; ++i) {
      mpq_class s = 0;
      for (int nu = 1; nu <= kDim; ++nu)
        for (int j = 1; j <= kM; ++j) {
          if (A.c(nu, j, mu) == 0 || i == j) continue;
          s += first_factor * A.p[nu] / (A.p[i] * A.p[j]) * kappa.get(nu, {i, j}) * A.c(nu, j, mu);
        }
      for (int j = 1; j <= kM; ++j)
        for (int k = 1; k <= kM; ++k) {
          if (j == k || A.c(i, j, k) == 0) continue;
          s += A.p[mu] / (A.p[j] * A.p[k]) * kappa.get(mu, {j, k}) * A.c(i, j, k);
        }
      if (s != 0) out.set(mu, {i}, s);
    }
  return out;
}

const std::vector<std::array<int, 3>>& hom1_components() {
  // (lower i, lower j, highest upper index); K^{1..top}_{ij}
  static const std::vector<std::array<int, 3>> list = [] {
    const int groups[15][3] = {{6, 7, 5}, {5, 7, 4}, {4, 7, 3}, {3, 7, 2}, {2, 7, 1}, {5, 6, 3}, {4, 6, 2}, {3, 6, 1},
                               {4, 5, 1}, {8, 7, 6}, {8, 6, 5}, {8, 5, 4}, {8, 4, 3}, {8, 3, 2}, {8, 2, 1}};
    std::vector<std::array<int, 3>> out;
    for (const auto& g : groups)
      for (int mu = 1; mu <= g[2]; ++mu) out.push_back({mu, g[0], g[1]});
    return out;
  }();
  return list;
}

std::vector<Component> hom1_check(const HomTensor& kappa) {
  if (kappa.q != 2) throw DomainError("arity mismatch: the filtration condition takes arity 2");
  std::vector<Component> out;
  for (const auto& [mu, i, j] : hom1_components()) {
    mpq_class v = kappa.get(mu, {i, j});
    if (v != 0) out.push_back({mu, i, j, v});
  }
  return out;
}

std::vector<std::array<int, 3>> hom1_from_grading() {
  const Algebra& A = build_algebra();
  std::vector<std::array<int, 3>> out;
  for (int i = 1; i <= kM; ++i)
    for (int j = i + 1; j <= kM; ++j)
      for (int mu = 1; mu <= kDim; ++mu)
        if (A.grade[mu] < A.grade[i] + A.grade[j] + 1) out.push_back({mu, i, j});
  return out;
}

// ---------------------------------------------------------------- modules

Module standard_module() {
  const Algebra& A = build_algebra();
  Module m;
  m.dim = 7;
  for (int i = 1; i <= 7; ++i) m.labels.push_back("e" + std::to_string(i));
  for (int k = 0; k < 4; ++k) {
    QMat b(7, 7);
    for (int r = 0; r < 7; ++r)
      for (int c = 0; c < 7; ++c) b(r, c) = A.e[8 + k](r, c);
    m.act[k] = b;
  }
  return m;
}

Module dual(const Module& m) {
  Module d;
  d.dim = m.dim;
  for (const auto& l : m.labels) d.labels.push_back(l + "*");
  for (int k = 0; k < 4; ++k) {
    QMat t(m.dim, m.dim);
    for (int r = 0; r < m.dim; ++r)
      for (int c = 0; c < m.dim; ++c) t(r, c) = -m.act[k](c, r);
    d.act[k] = t;
  }
  return d;
}

Module exterior_power(const Module& m, int k) {
  if (k < 0 || k > m.dim) throw DomainError("exterior power out of range");
  auto basis = subsets(m.dim, k);  // 1-based subsets
  std::map<std::vector<int>, int> index;
  for (size_t n = 0; n < basis.size(); ++n) index[basis[n]] = static_cast<int>(n);
  Module w;
  w.dim = static_cast<int>(basis.size());
  for (const auto& S : basis) {
    std::string l;
    for (int s : S) l += (l.empty() ? "" : "^") + m.labels[s - 1];
    w.labels.push_back(l.empty() ? "1" : l);
  }
  for (int g = 0; g < 4; ++g) {
    QMat X(w.dim, w.dim);
    const QMat& a = m.act[g];
    for (size_t col = 0; col < basis.size(); ++col) {
      const auto& S = basis[col];
      for (int t = 0; t < k; ++t)
        for (int r = 1; r <= m.dim; ++r) {
          const mpq_class& x = a(r - 1, S[t] - 1);
          if (x == 0) continue;
          std::vector<int> T = S;
          T[t] = r;
          int s = sort_sign(T);
          if (s) X(index[T], static_cast<int>(col)) += s * x;
        }
    }
    w.act[g] = X;
  }
  return w;
}

Module symmetric_square(const Module& m) {
  std::vector<std::pair<int, int>> basis;
  std::map<std::pair<int, int>, int> index;
  for (int i = 0; i < m.dim; ++i)
    for (int j = i; j < m.dim; ++j) {
      index[{i, j}] = static_cast<int>(basis.size());
      basis.emplace_back(i, j);
    }
  Module s;
  s.dim = static_cast<int>(basis.size());
  for (auto [i, j] : basis) s.labels.push_back(m.labels[i] + "." + m.labels[j]);
  for (int g = 0; g < 4; ++g) {
    QMat X(s.dim, s.dim);
    const QMat& a = m.act[g];
    for (size_t col = 0; col < basis.size(); ++col) {
      auto [i, j] = basis[col];
      for (int r = 0; r < m.dim; ++r) {
        if (a(r, i) != 0) X(index[{std::min(r, j), std::max(r, j)}], static_cast<int>(col)) += a(r, i);
        if (a(r, j) != 0) X(index[{std::min(i, r), std::max(i, r)}], static_cast<int>(col)) += a(r, j);
      }
    }
    s.act[g] = X;
  }
  return s;
}

Module tensor(const Module& a, const Module& b) {
  Module t;
  t.dim = a.dim * b.dim;
  for (const auto& la : a.labels)
    for (const auto& lb : b.labels) t.labels.push_back(la + "(x)" + lb);
  for (int g = 0; g < 4; ++g) {
    QMat X(t.dim, t.dim);
    for (int i = 0; i < a.dim; ++i)
      for (int j = 0; j < b.dim; ++j) {
        int col = i * b.dim + j;
        for (int r = 0; r < a.dim; ++r)
          if (a.act[g](r, i) != 0) X(r * b.dim + j, col) += a.act[g](r, i);
        for (int r = 0; r < b.dim; ++r)
          if (b.act[g](r, j) != 0) X(i * b.dim + r, col) += b.act[g](r, j);
      }
    t.act[g] = X;
  }
  return t;
}

bool closes(const Module& m) {
  const Algebra& A = build_algebra();
  for (int x = 8; x <= 11; ++x)
    for (int y = x + 1; y <= 11; ++y) {
      QMat want(m.dim, m.dim);
      for (int r = 1; r <= kDim; ++r) {
        const mpq_class& c = A.c(r, x, y);
        if (c == 0) continue;
        if (r < 8) return false;  // the module only carries gl(2)
        want = want + m.of(r).scaled(c);
      }
      if (!(commutator(m.of(x), m.of(y)) == want)) return false;
    }
  return true;
}

int Decomposition::total() const {
  int s = 0;
  for (auto [k, mult] : parts) s += k * mult;
  return s;
}

std::string Decomposition::str() const {
  std::ostringstream os;
  for (size_t n = 0; n < parts.size(); ++n) {
    if (n) os << " + ";
    if (parts[n].second != 1) os << parts[n].second;
    os << "V" << parts[n].first;
  }
  return parts.empty() ? "0" : os.str();
}

Decomposition decomposition_of(const std::vector<std::pair<int, int>>& parts) {
  Decomposition d;
  std::map<int, int> acc;
  for (auto [k, m] : parts) acc[k] += m;
  for (auto [k, m] : acc)
    if (m) d.parts.emplace_back(k, m);
  d.ambient = d.total();
  return d;
}

Decomposition sl2_decompose(const Module& m) {
  if (!closes(m)) throw DomainError("the action matrices do not satisfy the commutation relations");
  const QMat& h = m.of(9);
  const QMat& E = m.of(11);
  int n = m.dim;
  std::map<int, int> weight_dim;
  // a diagonal h (every module built from the standard one) gives its weight
  // spaces as coordinate subspaces
  bool diagonal = true;
  for (int i = 0; i < n && diagonal; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && h(i, j) != 0) {
        diagonal = false;
        break;
      }
  std::map<int, std::vector<int>> weight_cols;
  if (diagonal) {
    for (int i = 0; i < n; ++i) {
      if (h(i, i).get_den() != 1 || !h(i, i).get_num().fits_sint_p())
        throw DomainError("h is not diagonalizable with integer eigenvalues");
      weight_cols[static_cast<int>(h(i, i).get_num().get_si())].push_back(i);
    }
    for (const auto& [w, cols] : weight_cols) weight_dim[w] = static_cast<int>(cols.size());
  } else {
    int found = 0;
    for (int w = -(n - 1); w <= n - 1; ++w) {
      int d = n - rank(h - QMat::identity(n).scaled(w));
      if (d) weight_dim[w] = d;
      found += d;
    }
    if (found != n) throw DomainError("h is not diagonalizable with integer eigenvalues");
  }
  auto highest_count = [&](int w) {
    if (!diagonal) return n - rank(vstack({E, h - QMat::identity(n).scaled(w)}));
    const auto& cols = weight_cols[w];
    QMat sub(n, static_cast<int>(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c)
      for (int r = 0; r < n; ++r) sub(r, static_cast<int>(c)) = E(r, cols[c]);
    return static_cast<int>(cols.size()) - rank(sub);
  };
  auto wd = [&](int w) {
    auto it = weight_dim.find(w);
    return it == weight_dim.end() ? 0 : it->second;
  };
  Decomposition d;
  d.ambient = n;
  for (auto [w, dim] : weight_dim) {
    if (w < 0) continue;
    int by_weights = dim - wd(w + 2);
    if (wd(-w) != dim) throw DomainError("weight multiplicities are not symmetric");
    int highest = highest_count(w);
    if (by_weights != highest) throw DomainError("weight counting and highest weight counting disagree");
    if (by_weights) d.parts.emplace_back(w + 1, by_weights);
  }
  if (d.total() != n) throw DomainError("decomposition does not exhaust the module");
  return d;
}

QMat casimir(const Module& m) {
  const QMat &h = m.of(9), &E = m.of(11), &F = m.of(8);
  return h * h + (E * F).scaled(2) + (F * E).scaled(2);
}

// ---------------------------------------------------------------- torsion with formal parameters

const std::array<const char*, 7>& torsion_expansions() {
  static const std::array<const char*, 7> T{
      "55/18*b1*t1^t2 + 55/9*b4*t1^t3 + (55/18*b3 - 10/3*L - 3*a3)*t1^t4 + (-(55/9)*b5 + 3/2*a2)*t1^t5"
      " - 77/36*b2*t1^t6 + (-55/2*b3 + 10*L + 9*a3)*t2^t3 + (55/3*b5 - 3*a2)*t2^t4 + 55/12*b2*t2^t5",
      "55/36*b1*t1^t3 + (275/54*b4 + 1/2*a1)*t1^t4 + (-55/36*b3 - 5/3*L - a3)*t1^t5 + (-11/18*b5 + 1/2*a2)*t1^t6"
      " - 77/216*b2*t1^t7 + (-55/18*b4 - 3/2*a1)*t2^t3 + (-55/9*b3 + 2*a3 + 10/3*L)*t2^t4 - 11/18*b2*t2^t6"
      " + (275/18*b5 - 5/2*a2)*t3^t4 + 275/72*b2*t3^t5",
      "11/54*b1*t1^t4 + (22/9*b4 + 1/2*a1)*t1^t5 + (-44/45*b3 - 1/5*a3 - 2/3*L)*t1^t6 + (22/135*b5 + 1/10*a2)*t1^t7"
      " + (22/9)*b1*t2^t3 + (11/9*b4 - a1)*t2^t4 + (-11/45*b5 + 3/5*a2)*t2^t6 - 11/20*b2*t2^t7"
      " + (55/18*b3 + 10/3*L + a3)*t3^t4 + (55/9*b5 - 3/2*a2)*t3^t5 + 11/12*b2*t3^t6 + 55/18*b2*t4^t5"
      " - 11/2*b3*t2^t5",
      "-(11/24)*b1*t1^t5 + (11/15*b4 + 3/10*a1)*t1^t6 + (-11/90*b3 - 1/6*L)*t1^t7 + 11/6*b4*t2^t5"
      " + (-22/5*b3 - L)*t2^t6 + (11/15*b5 + 3/10*a2)*t2^t7 + (55/18*b4 - 3/2*a1)*t3^t4 + 5/2*L*t3^t5"
      " + 11/6*b5*t3^t6 - 11/24*b2*t3^t7 + ((55/18)*b5 - 3/2*a2)*t4^t5 + 22/9*b2*t4^t6 + 22/9*b1*t2^t4",
      "-11/20*b1*t1^t6 + (22/135*b4 + 1/10*a1)*t1^t7 + 11/12*b1*t2^t5 + (-11/45*b4 + 3/5*a1)*t2^t6"
      " + (-44/45*b3 - 2/3*L + 1/5*a3)*t2^t7 + 55/18*b1*t3^t4 + (55/9*b4 - 3/2*a1)*t3^t5 - 11/2*b3*t3^t6"
      " + (22/9*b5 + 1/2*a2)*t3^t7 + (55/18*b3 + 10/3*L - a3)*t4^t5 + (11/9*b5 - a2)*t4^t6 + 11/54*b2*t4^t7"
      " + 22/9*b2*t5^t6",
      "-(77/216)*b1*t1^t7 - 11/18*b1*t2^t6 + (-11/18*b4 + 1/2*a1)*t2^t7 + (-55/36*b3 - 5/3*L + a3)*t3^t7"
      " + (275/18*b4 - 5/2*a1)*t4^t5 + (-55/9*b3 + 10/3*L - 2*a3)*t4^t6 + (275/54*b5 + 1/2*a2)*t4^t7"
      " + (-55/18*b5 - 3/2*a2)*t5^t6 + 55/36*b2*t5^t7 + 275/72*b1*t3^t5",
      "-77/36*b1*t2^t7 + 55/12*b1*t3^t6 + (-55/9*b4 + 3/2*a1)*t3^t7 + (55/3*b4 - 3*a1)*t4^t6"
      " + (55/18*b3 - 10/3*L + 3*a3)*t4^t7 + (-55/2*b3 + 10*L - 9*a3)*t5^t6 + 55/9*b5*t5^t7 + 55/18*b2*t6^t7",
  };
  return T;
}

namespace {

int pair_index(int k, int l) {  // 1 <= k < l <= 7, lexicographic
  int n = 0;
  for (int a = 1; a < k; ++a) n += 7 - a;
  return n + (l - k - 1);
}

}  // namespace

TorsionTable assemble_torsion() {
  const auto& t = torsion_expansions();
  return assemble_torsion(std::vector<std::string>(t.begin(), t.end()));
}

TorsionTable assemble_torsion(const std::vector<std::string>& expansions) {
  if (expansions.size() != 7) throw DomainError("torsion needs seven components");
  TorsionTable tt;
  tt.symbols = {"L", "a1", "a2", "a3", "b1", "b2", "b3", "b4", "b5"};
  std::vector<std::string> wedges;
  for (int k = 1; k <= 7; ++k)
    for (int l = k + 1; l <= 7; ++l) wedges.push_back("w" + std::to_string(k) + std::to_string(l));
  std::vector<std::string> params = tt.symbols;
  params.insert(params.end(), wedges.begin(), wedges.end());
  SpacePtr sp = Space::make({}, params);

  static const std::regex wedge_re(R"(t(\d)\s*\^\s*t(\d))");
  for (const auto& s : tt.symbols) tt.coeff[s] = std::vector<mpq_class>(147);
  for (int i = 1; i <= 7; ++i) {
    std::string text = expansions[i - 1], out;
    auto begin = std::sregex_iterator(text.begin(), text.end(), wedge_re);
    size_t last = 0;
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
      int k = std::stoi((*it)[1]), l = std::stoi((*it)[2]);
      if (k == l || k < 1 || l > 7 || l < 1 || k > 7)
        throw DomainError("torsion T^" + std::to_string(i) + ": degenerate wedge t" + std::to_string(k) + "^t" + std::to_string(l));
      out += text.substr(last, it->position() - last);
      std::string w = "w" + std::to_string(std::min(k, l)) + std::to_string(std::max(k, l));
      out += k < l ? w : "(-" + w + ")";
      last = it->position() + it->length();
    }
    out += text.substr(last);
    Expr e = parse(sp, out);
    Expr rebuilt(sp, 0);
    for (const auto& s : tt.symbols) {
      Expr ds = partial(e, s);
      for (int k = 1; k <= 7; ++k)
        for (int l = k + 1; l <= 7; ++l) {
          std::string w = "w" + std::to_string(k) + std::to_string(l);
          Expr c = partial(ds, w);
          if (c.is_zero_nf()) continue;
          if (!c.is_const()) throw DomainError("torsion T^" + std::to_string(i) + ": a term is not symbol times wedge");
          mpq_class v = c.const_value();
          tt.T[s][{i, k, l}] = v;
          tt.coeff[s][pair_index(k, l) * 7 + (i - 1)] = v;
          rebuilt += Expr::sym(sp, s) * Expr::sym(sp, w) * v;
          ++tt.terms;
        }
    }
    if (!(e - rebuilt).is_zero_nf())
      throw DomainError("torsion T^" + std::to_string(i) + ": a term is not symbol times wedge");
  }
  return tt;
}

Module torsion_module() {
  Module v = standard_module();
  Module t = tensor(exterior_power(dual(v), 2), v);
  t.labels.clear();
  for (int k = 1; k <= 7; ++k)
    for (int l = k + 1; l <= 7; ++l)
      for (int i = 1; i <= 7; ++i) t.labels.push_back(std::to_string(k) + "," + std::to_string(l) + ";" + std::to_string(i));
  return t;
}

namespace {

// common eigenvalue of X on the vectors, if X v = c v for all of them
std::optional<mpq_class> eigen_on(const QMat& X, const std::vector<std::vector<mpq_class>>& vs) {
  std::optional<mpq_class> c;
  for (const auto& v : vs) {
    auto w = X.apply(v);
    for (size_t n = 0; n < v.size(); ++n) {
      if (v[n] == 0) {
        if (w[n] != 0) return std::nullopt;
        continue;
      }
      mpq_class r = w[n] / v[n];
      if (c && *c != r) return std::nullopt;
      c = r;
    }
  }
  return c;
}

}  // namespace

AppendixBReport appendixB_torsion_check() {
  TorsionTable tt = assemble_torsion();
  Module M = torsion_module();
  QMat C = casimir(M);
  AppendixBReport rep;
  rep.terms = tt.terms;

  const std::vector<std::pair<std::string, std::vector<std::string>>> groups{
      {"lambda", {"L"}}, {"a", {"a1", "a2", "a3"}}, {"b", {"b1", "b2", "b3", "b4", "b5"}}};
  for (const auto& [name, syms] : groups) {
    SpanReport s;
    s.name = name;
    s.symbols = syms;
    std::vector<std::vector<mpq_class>> vs;
    for (const auto& sym : syms) vs.push_back(tt.coeff[sym]);
    QMat S = columns(vs, M.dim);
    s.dimension = rank(S);
    s.invariant = true;
    for (int g = 8; g <= 11; ++g) {
      std::vector<std::vector<mpq_class>> ext = vs;
      for (const auto& v : vs) ext.push_back(M.of(g).apply(v));
      if (rank(columns(ext, M.dim)) != s.dimension) s.invariant = false;
    }
    if (auto c = eigen_on(C, vs)) {
      s.casimir = *c;
      s.casimir_scalar = true;
    }
    if (auto c = eigen_on(M.of(10), vs)) s.e10_weight = *c;
    // highest weight vectors in the span: the kernel of E restricted to it
    int highest = s.dimension - rank(M.of(11) * S);
    s.irreducible = s.invariant && s.casimir_scalar && highest == 1 &&
                    s.casimir == mpq_class(s.dimension * s.dimension - 1);
    rep.spans.push_back(s);
  }

  // kappa with K^i_kl = T^i_kl: a component is violated if any symbol reaches it
  for (const auto& sym : tt.symbols) {
    HomTensor K(2);
    for (const auto& [ikl, v] : tt.T[sym]) K.set(ikl[0], {ikl[1], ikl[2]}, v);
    for (const auto& c : hom1_check(K)) {
      bool seen = std::any_of(rep.hom1_violations.begin(), rep.hom1_violations.end(),
                              [&](const Component& o) { return o.mu == c.mu && o.i == c.i && o.j == c.j; });
      if (!seen) rep.hom1_violations.push_back(c);
    }
  }
  return rep;
}

bool AppendixBReport::ok() const {
  if (spans.size() != 3 || !hom1_violations.empty()) return false;
  const int dims[] = {1, 3, 5};
  for (int n = 0; n < 3; ++n)
    if (spans[n].dimension != dims[n] || !spans[n].invariant || !spans[n].irreducible) return false;
  return true;
}

// ---------------------------------------------------------------- conformal weights

ConformalWeightReport conformal_weight_check() {
  Module V = standard_module();
  Module Vd = dual(V);
  Module S2 = symmetric_square(Vd);
  Module L3 = exterior_power(Vd, 3);

  // I0 = th1 th7 - 6 th2 th6 + 15 th3 th5 - 10 th4^2 in the basis th_i th_j, i <= j
  std::vector<mpq_class> g(S2.dim);
  {
    int n = 0;
    for (int i = 0; i < 7; ++i)
      for (int j = i; j < 7; ++j, ++n) {
        if (i == 0 && j == 6) g[n] = 1;
        if (i == 1 && j == 5) g[n] = -6;
        if (i == 2 && j == 4) g[n] = 15;
        if (i == 3 && j == 3) g[n] = -10;
      }
  }
  std::vector<mpq_class> phi(L3.dim);
  {
    auto basis = subsets(7, 3);
    QForm f = frame::phi();
    for (size_t n = 0; n < basis.size(); ++n) {
      Mask m = 0;
      for (int i : basis[n]) m |= Mask(1) << (i - 1);
      auto it = f.t.find(m);
      if (it != f.t.end()) phi[n] = it->second;
    }
  }

  ConformalWeightReport rep;
  const int ann[3] = {8, 9, 11};
  auto zero = [](const std::vector<mpq_class>& v) {
    return std::all_of(v.begin(), v.end(), [](const mpq_class& x) { return x == 0; });
  };
  for (int n = 0; n < 3; ++n) {
    rep.metric_annihilated[n] = zero(S2.of(ann[n]).apply(g));
    rep.phi_annihilated[n] = zero(L3.of(ann[n]).apply(phi));
  }
  if (auto c = eigen_on(S2.of(10), {g})) {
    rep.metric_eigen = true;
    rep.metric_weight = *c;
  }
  if (auto c = eigen_on(L3.of(10), {phi})) {
    rep.phi_eigen = true;
    rep.phi_weight = *c;
  }
  const Algebra& A = build_algebra();
  for (int i = 0; i < 7; ++i) {
    rep.trace_G0 += A.e[9](i, i);
    rep.trace_G1 += A.e[10](i, i);
  }
  return rep;
}

bool ConformalWeightReport::ok() const {
  for (int n = 0; n < 3; ++n)
    if (!metric_annihilated[n] || !phi_annihilated[n]) return false;
  // A = (2/7) tr Gamma must reproduce the weight of the metric under X10
  return metric_eigen && phi_eigen && metric_weight == 12 && phi_weight == 18 && trace_G0 == 0 && trace_G1 == -42 &&
         mpq_class(-2, 7) * trace_G1 == metric_weight;
}

}  // namespace g2::lie
