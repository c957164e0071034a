#include "extalg.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <random>
#include <sstream>

#include "modp.hpp"

namespace g2 {

int popcount(Mask m) { return std::popcount(m); }

int wedge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  // transpositions needed to move every bit of b past the larger bits of a
  int inv = 0;
  for (Mask x = b; x; x &= x - 1) {
    Mask bit = x & (~x + 1);
    inv += std::popcount(a & ~(bit - 1) & ~bit);
  }
  return inv % 2 ? -1 : 1;
}

std::vector<Mask> masks_of_degree(int n, int k) {
  std::vector<Mask> out;
  for (Mask m = 0; m < (Mask(1) << n); ++m)
    if (std::popcount(m) == k) out.push_back(m);
  return out;
}

std::string mask_str(Mask m, const std::string& prefix) {
  std::string s;
  for (int i = 0; i < 32; ++i)
    if (m >> i & 1) s += (s.empty() ? "" : "^") + prefix + std::to_string(i + 1);
  return s.empty() ? "1" : s;
}

QForm theta_monomial(const std::vector<int>& idx, const mpq_class& c) {
  QForm r(7, 0);
  r.t.emplace(0, c);
  for (int i : idx) {
    QForm t(7, 1);
    t.t.emplace(Mask(1) << (i - 1), mpq_class(1));
    r = wedge(r, t);
  }
  return r;
}

QForm sum(std::initializer_list<QForm> fs) {
  QForm r = *fs.begin();
  for (auto it = fs.begin() + 1; it != fs.end(); ++it) r = r + *it;
  return r;
}

static QForm pruned(const QForm& a) {
  QForm r(a.n, a.deg);
  for (const auto& [m, c] : a.t)
    if (c != 0) r.t.emplace(m, c);
  return r;
}

bool equal(const QForm& a, const QForm& b) { return pruned(a - b).t.empty(); }

std::string qform_str(const QForm& f, const std::string& prefix) {
  // lexicographic in the index lists, as the forms are written by hand
  std::vector<std::pair<std::vector<int>, mpq_class>> terms;
  for (const auto& [m, c] : pruned(f).t) {
    std::vector<int> idx;
    for (int i = 0; i < 32; ++i)
      if (m >> i & 1) idx.push_back(i);
    terms.emplace_back(idx, c);
  }
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, c] : terms) {
    Mask m = 0;
    for (int i : idx) m |= Mask(1) << i;
    mpq_class a = abs(c);
    os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    if (a != 1) os << a.get_str() << "*";
    os << mask_str(m, prefix);
    first = false;
  }
  return first ? "0" : os.str();
}

namespace {

mpq_class det(std::vector<std::vector<mpq_class>> a) {
  int n = static_cast<int>(a.size());
  mpq_class d = 1;
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (int r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      mpq_class f = a[r][c] / a[c][c];
      for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return d;
}

using QMat = std::vector<std::vector<mpq_class>>;

QMat inverse(QMat a) {
  int n = static_cast<int>(a.size());
  QMat inv(n, std::vector<mpq_class>(n, 0));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw DomainError("singular matrix");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    mpq_class f = a[c][c];
    for (int k = 0; k < n; ++k) {
      a[c][k] /= f;
      inv[c][k] /= f;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      mpq_class g = a[r][c];
      for (int k = 0; k < n; ++k) {
        a[r][k] -= g * a[c][k];
        inv[r][k] -= g * inv[c][k];
      }
    }
  }
  return inv;
}

// star_r as a table: source mask of degree k -> list of (target mask, coefficient)
using StarTable = std::map<Mask, std::vector<std::pair<Mask, mpq_class>>>;

const StarTable& star_table(int k) {
  static std::once_flag once;
  static std::array<StarTable, 8> tables;
  std::call_once(once, [] {
    const auto& gi = frame::inverse_metric();
    const Mask full = 127;
    // sqrt|det G| = (45/4) sqrt10; orientation e^1..e^7 = -theta^1..7
    const mpq_class vol(-45, 4);
    for (int deg = 0; deg <= 7; ++deg)
      for (Mask K : masks_of_degree(7, deg))
        for (Mask I : masks_of_degree(7, deg)) {
          std::vector<int> ri, ck;
          for (int i = 0; i < 7; ++i) {
            if (I >> i & 1) ri.push_back(i);
            if (K >> i & 1) ck.push_back(i);
          }
          QMat sub(deg, std::vector<mpq_class>(deg));
          for (int r = 0; r < deg; ++r)
            for (int c = 0; c < deg; ++c) sub[r][c] = gi[ri[r]][ck[c]];
          mpq_class dt = deg ? det(sub) : mpq_class(1);
          if (dt == 0) continue;
          Mask Ic = full ^ I;
          tables[deg][K].emplace_back(Ic, mpq_class(wedge_sign(I, Ic)) * dt * vol);
        }
  });
  return tables.at(k);
}

}  // namespace

namespace frame {

QForm phi() {
  return sum({theta_monomial({2, 3, 7}, 3), theta_monomial({1, 5, 6}, 3), theta_monomial({4, 1, 7}),
              theta_monomial({4, 2, 6}, 6), theta_monomial({4, 3, 5}, -15)});
}

QForm phi_alt() {
  return sum({theta_monomial({2, 3, 7}, 3), theta_monomial({2, 4, 6}, -6), theta_monomial({1, 4, 7}, -1),
              theta_monomial({1, 5, 6}, 3), theta_monomial({3, 4, 5}, 15)});
}

QForm star_phi_printed() {
  return sum({theta_monomial({1, 4, 5, 6}, -20), theta_monomial({1, 3, 5, 7}, 5), theta_monomial({2, 3, 4, 7}, -20),
              theta_monomial({1, 2, 6, 7}, -2), theta_monomial({2, 3, 5, 6}, 30)});
}

const std::vector<std::vector<mpq_class>>& inverse_metric() {
  static const QMat gi = [] {
    QMat g(7, std::vector<mpq_class>(7, 0));
    g[0][6] = g[6][0] = mpq_class(1, 2);
    g[1][5] = g[5][1] = -3;
    g[2][4] = g[4][2] = mpq_class(15, 2);
    g[3][3] = -10;
    return inverse(g);
  }();
  return gi;
}

QForm star_r(const QForm& a) {
  QForm r(7, 7 - a.deg);
  const auto& tab = star_table(a.deg);
  for (const auto& [K, c] : a.t) {
    auto it = tab.find(K);
    if (it == tab.end()) continue;
    for (const auto& [J, q] : it->second) r.add(J, q * c);
  }
  return pruned(r);
}

EForm star_r(const EForm& a) {
  EForm r(7, 7 - a.deg);
  const auto& tab = star_table(a.deg);
  for (const auto& [K, c] : a.t) {
    auto it = tab.find(K);
    if (it == tab.end()) continue;
    for (const auto& [J, q] : it->second) r.add(J, c * q);
  }
  return r;
}

std::optional<mpq_class> star_factor(int k, const mpq_class& s) {
  if (s <= 0) throw DomainError("conformal scale must be positive");
  // (s^((7-2k)/2) sqrt10)^2 = 10 s^(7-2k)
  mpq_class sq = 10;
  int e = 7 - 2 * k;
  for (int i = 0; i < std::abs(e); ++i) sq = e > 0 ? mpq_class(sq * s) : mpq_class(sq / s);
  mpz_class n = sq.get_num(), d = sq.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpq_class r(sqrt(n), sqrt(d));
  r.canonicalize();
  return r;
}

QForm psi() { return star_r(phi()); }

}  // namespace frame

// ---------------------------------------------------------------------------
// charts and forms

ChartPtr make_chart(const SpacePtr& sp, const std::vector<std::string>& coords) {
  if (coords.size() > 31) throw DomainError("chart too large");
  auto ch = std::make_shared<Chart>();
  ch->sp = sp;
  for (const auto& c : coords) {
    int i = sp->index(c);
    if (!sp->sym(i).independent()) throw DomainError("chart coordinate '" + c + "' is not an independent symbol");
    if (std::find(ch->coords.begin(), ch->coords.end(), i) != ch->coords.end())
      throw DomainError("repeated chart coordinate '" + c + "'");
    ch->coords.push_back(i);
  }
  return ch;
}

ChartPtr rehome(const ChartPtr& ch, const SpacePtr& sp) {
  if (!sp->extends(ch->sp.get())) throw DomainError("space does not extend the chart space");
  auto r = std::make_shared<Chart>(*ch);
  r->sp = sp;
  return r;
}

Form::Form(ChartPtr ch, int degree) : ch_(std::move(ch)), a_(ch_->dim(), degree) {}

Form Form::function(ChartPtr ch, const Expr& f) {
  Form r(std::move(ch), 0);
  if (!f.is_zero_nf()) r.a_.t.emplace(0, f.lift(r.ch_->sp));
  return r;
}

Form Form::dx(ChartPtr ch, int k) {
  if (k < 0 || k >= ch->dim()) throw DomainError("coordinate index out of range");
  Form r(ch, 1);
  r.a_.t.emplace(Mask(1) << k, Expr(ch->sp, 1));
  return r;
}

Form Form::dx(ChartPtr ch, const std::string& coord) {
  int i = ch->sp->index(coord);
  auto it = std::find(ch->coords.begin(), ch->coords.end(), i);
  if (it == ch->coords.end()) throw DomainError("'" + coord + "' is not a chart coordinate");
  return dx(ch, static_cast<int>(it - ch->coords.begin()));
}

Expr Form::coeff(Mask m) const {
  auto it = a_.t.find(m);
  return it == a_.t.end() ? Expr(ch_->sp, 0) : it->second;
}

void Form::add_term(Mask m, const Expr& c) {
  if (popcount(m) != a_.deg) throw DomainError("multi-index length differs from the form degree");
  if (m >> ch_->dim()) throw DomainError("multi-index outside the chart");
  auto it = a_.t.find(m);
  Expr v = it == a_.t.end() ? c.lift(ch_->sp) : it->second + c.lift(ch_->sp);
  if (it != a_.t.end()) a_.t.erase(it);
  if (!v.is_zero_nf()) a_.t.emplace(m, v);
}

void Form::check(const Form& o) const {
  if (!ch_ || !o.ch_) throw DomainError("form without a chart");
  if (ch_->coords != o.ch_->coords || ch_->sp != o.ch_->sp) throw DomainError("chart mismatch");
}

Form Form::operator+(const Form& o) const {
  check(o);
  if (degree() != o.degree()) throw DomainError("adding forms of different degree");
  Form r = *this;
  for (const auto& [m, c] : o.a_.t) r.add_term(m, c);
  return r;
}

Form Form::operator-(const Form& o) const { return *this + (-o); }

Form Form::operator*(const Expr& f) const {
  Form r(ch_, degree());
  Expr g = f.lift(ch_->sp);
  for (const auto& [m, c] : a_.t) r.add_term(m, c * g);
  return r;
}

Form Form::operator*(const mpq_class& q) const {
  Form r(ch_, degree());
  if (q == 0) return r;
  for (const auto& [m, c] : a_.t) r.a_.t.emplace(m, c * q);
  return r;
}

Form Form::lift(const ChartPtr& to) const {
  if (to->coords != ch_->coords) throw DomainError("chart mismatch");
  Form r(to, degree());
  for (const auto& [m, c] : a_.t) r.a_.t.emplace(m, c.lift(to->sp));
  return r;
}

ZeroTest Form::zero_test(const ZeroOptions& opt) const {
  ZeroTest out;
  out.zero = true;
  for (const auto& [m, c] : a_.t) {
    ZeroTest z = g2::zero_test(c, opt);
    if (!z.zero) return z;
    if (z.mode != ZeroMode::Exact) {
      out.mode = z.mode;
      out.points = std::max(out.points, z.points);
      out.log2_bound = std::max(out.log2_bound, z.log2_bound);
    }
  }
  return out;
}

bool Form::is_zero(const ZeroOptions& opt, Mask* which) const {
  for (const auto& [m, c] : a_.t)
    if (!g2::zero_test(c, opt).zero) {
      if (which) *which = m;
      return false;
    }
  return true;
}

std::string Form::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : a_.t) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    if (m) {
      os << "*";
      bool f2 = true;
      for (int i = 0; i < ch_->dim(); ++i)
        if (m >> i & 1) {
          os << (f2 ? "" : "^") << "d" << ch_->coord_name(i);
          f2 = false;
        }
    }
  }
  return first ? "0" : os.str();
}

Form wedge(const Form& a, const Form& b) {
  if (!a.chart() || !b.chart() || a.chart()->coords != b.chart()->coords || a.chart()->sp != b.chart()->sp)
    throw DomainError("chart mismatch");
  Form r(a.chart(), a.degree() + b.degree());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      int s = wedge_sign(ma, mb);
      if (s) r.add_term(ma | mb, s > 0 ? ca * cb : -(ca * cb));
    }
  return r;
}

Form d(const Form& a) {
  const auto& ch = a.chart();
  Form r(ch, a.degree() + 1);
  for (const auto& [m, c] : a.terms())
    for (int j = 0; j < ch->dim(); ++j) {
      if (m >> j & 1) continue;
      Expr p = partial(c, ch->coords[j]);
      if (p.is_zero_nf()) continue;
      // dx_j moved past the lower differentials of m
      bool odd = std::popcount(m & ((Mask(1) << j) - 1)) % 2;
      r.add_term(m | Mask(1) << j, odd ? -p : p);
    }
  return r;
}

Form d(const ChartPtr& ch, const Expr& f) { return d(Form::function(ch, f)); }

Form contract(const std::vector<Expr>& V, const Form& a) {
  const auto& ch = a.chart();
  if (static_cast<int>(V.size()) != ch->dim()) throw DomainError("vector field size differs from the chart dimension");
  if (a.degree() == 0) return Form(ch, 0);
  Form r(ch, a.degree() - 1);
  for (const auto& [m, c] : a.terms())
    for (int j = 0; j < ch->dim(); ++j) {
      if (!(m >> j & 1) || V[j].is_zero_nf()) continue;
      bool odd = std::popcount(m & ((Mask(1) << j) - 1)) % 2;
      Expr v = c * V[j].lift(ch->sp);
      r.add_term(m & ~(Mask(1) << j), odd ? -v : v);
    }
  return r;
}

// ---------------------------------------------------------------------------
// coframes

Coframe::Coframe(std::string name, ChartPtr ch, std::array<Form, 7> theta)
    : name_(std::move(name)), ch_(std::move(ch)), th_(std::move(theta)) {
  if (ch_->dim() != 7) throw DomainError("a coframe needs a 7-dimensional chart");
  for (const auto& t : th_) {
    if (t.degree() != 1) throw DomainError("coframe entries must be one-forms");
    if (t.chart()->coords != ch_->coords || t.chart()->sp != ch_->sp) throw DomainError("chart mismatch");
  }
  Form top = th_[0];
  for (int i = 1; i < 7; ++i) top = wedge(top, th_[i]);
  det_ = top.coeff(127);
  if (zero_test(det_).zero) throw DomainError("degenerate coframe: theta^1..7 vanishes");
  det_inv_ = det_.inverse();
}

Form Coframe::theta_wedge(Mask m) const {
  auto it = cache_.find(m);
  if (it != cache_.end()) return it->second;
  Form r;
  if (m == 0) {
    r = Form::function(ch_, Expr(ch_->sp, 1));
  } else {
    int hi = 31 - std::countl_zero(m);
    Mask rest = m & ~(Mask(1) << hi);
    r = rest ? wedge(theta_wedge(rest), th_[hi]) : th_[hi];
  }
  cache_.emplace(m, r);
  return r;
}

EForm Coframe::frame_components(const Form& w) const {
  if (w.chart()->coords != ch_->coords || w.chart()->sp != ch_->sp) throw DomainError("chart mismatch");
  int k = w.degree();
  EForm out(7, k);
  for (Mask I : masks_of_degree(7, k)) {
    Mask Ic = 127 ^ I;
    Form t = theta_wedge(Ic);
    Expr top(ch_->sp, 0);
    for (const auto& [ma, ca] : w.terms()) {
      auto it = t.terms().find(127 ^ ma);
      if (it == t.terms().end()) continue;
      Expr p = ca * it->second;
      top = wedge_sign(ma, 127 ^ ma) > 0 ? top + p : top - p;
    }
    if (top.is_zero_nf()) continue;
    Expr c = top * det_inv_;
    out.t.emplace(I, wedge_sign(I, Ic) > 0 ? c : -c);
  }
  return out;
}

Form Coframe::from_frame(const EForm& a) const {
  Form r(ch_, a.deg);
  for (const auto& [m, c] : a.t)
    if (!c.is_zero_nf()) r = r + theta_wedge(m) * c;
  return r;
}

Form Coframe::from_frame(const QForm& a) const {
  Form r(ch_, a.deg);
  for (const auto& [m, c] : a.t)
    if (c != 0) r = r + theta_wedge(m) * c;
  return r;
}

Coframe Coframe::lift(const ChartPtr& to) const {
  std::array<Form, 7> th;
  for (int i = 0; i < 7; ++i) th[i] = th_[i].lift(to);
  Coframe r(name_, to, th);
  if (conformal_) r.conformal_ = conformal_->lift(to->sp);
  return r;
}

namespace {

struct Zp {
  uint64_t v = 0;
  Zp operator+(const Zp& o) const { return {modp::add(v, o.v)}; }
  Zp operator*(const Zp& o) const { return {modp::mul(v, o.v)}; }
};
Zp operator*(const mpq_class& q, const Zp& z) { return {modp::mul(modp::from_mpq(q), z.v)}; }

}  // namespace

Closedness closedness(const Coframe& cf, int points, uint64_t seed) {
  Closedness out;
  out.exact = d(cf.phi()).terms().empty();
  std::array<Form, 7> dth;
  for (int i = 0; i < 7; ++i) dth[i] = d(cf.theta(i + 1));
  const Space& sp = *cf.chart()->sp;
  std::mt19937_64 rng(seed);
  out.sampled = true;
  auto value = [&](const Form& f, const std::vector<uint64_t>& x, bool& pole) {
    Alt<Zp> a(7, f.degree());
    for (const auto& [m, c] : f.terms()) {
      auto v = eval_modp(c, x);
      if (!v) {
        pole = true;
        return a;
      }
      a.t.emplace(m, Zp{*v});
    }
    return a;
  };
  for (int tries = 0; out.points < points && tries < 4 * points; ++tries) {
    auto x = sample_point(sp, rng);
    if (x.empty()) continue;
    bool pole = false;
    std::array<Alt<Zp>, 8> th, dt;
    for (int i = 1; i <= 7; ++i) {
      th[i] = value(cf.theta(i), x, pole);
      dt[i] = value(dth[i - 1], x, pole);
    }
    if (pole) continue;
    Alt<Zp> dphi(7, 4);
    for (const auto& [m, c] : frame::phi().t) {
      std::vector<int> idx;
      for (int i = 0; i < 7; ++i)
        if (m >> i & 1) idx.push_back(i + 1);
      // d(a ^ b ^ c) = da ^ b ^ c - a ^ db ^ c + a ^ b ^ dc
      Alt<Zp> t1 = wedge(wedge(dt[idx[0]], th[idx[1]]), th[idx[2]]);
      Alt<Zp> t2 = wedge(wedge(th[idx[0]], dt[idx[1]]), th[idx[2]]);
      Alt<Zp> t3 = wedge(wedge(th[idx[0]], th[idx[1]]), dt[idx[2]]);
      dphi = dphi + (t1 + t2.scaled(-1) + t3).scaled(c);
    }
    ++out.points;
    for (const auto& [m, c] : dphi.t)
      if (c.v) out.sampled = false;
  }
  if (out.points < points) throw Inconclusive("too many sample points hit poles");
  return out;
}

Form hodge_star(const Form& a, const Coframe& cf, const mpq_class& scale) {
  auto f = frame::star_factor(a.degree(), scale);
  if (!f) throw DomainError("Hodge star needs an irrational factor for this degree and scale");
  return cf.from_frame(frame::star_r(cf.frame_components(a))) * *f;
}

// ---------------------------------------------------------------------------
// Fernandez-Gray torsion

namespace {

EForm to_eform(const QForm& q, const SpacePtr& sp) {
  EForm r(7, q.deg);
  for (const auto& [m, c] : q.t)
    if (c != 0) r.t.emplace(m, Expr(sp, c));
  return r;
}

// unknowns: lambda_hat | Theta (7) | tau2_hat (21) | tau3_hat (35)
// equations: dphi (35) | dpsi (21) | tau2^psi (7) | tau3^phi (7) | tau3^psi (1)
struct FGSystem {
  std::vector<Mask> m1, m2, m3, m4, m5, m6, m7;
  QMat L;  // left inverse, 64 x 71
  QMat R;  // M L - 1, 71 x 71
  int nu = 64, ne = 71;

  std::vector<mpq_class> apply(const std::vector<mpq_class>& x) const {
    QForm lam(7, 0), Th(7, 1), t2(7, 2), t3(7, 3);
    lam.t.emplace(0, x[0]);
    int o = 1;
    for (Mask m : m1) Th.t.emplace(m, x[o++]);
    for (Mask m : m2) t2.t.emplace(m, x[o++]);
    for (Mask m : m3) t3.t.emplace(m, x[o++]);
    QForm phi = frame::phi(), psi = frame::psi();
    QForm e1 = wedge(lam, psi) + wedge(Th, phi).scaled(mpq_class(3, 4)) + frame::star_r(t3);
    QForm e2 = wedge(Th, psi) - wedge(t2, phi);
    QForm e3 = wedge(t2, psi), e4 = wedge(t3, phi), e5 = wedge(t3, psi);
    std::vector<mpq_class> out;
    auto push = [&](const QForm& f, const std::vector<Mask>& ms) {
      for (Mask m : ms) {
        auto it = f.t.find(m);
        out.push_back(it == f.t.end() ? mpq_class(0) : it->second);
      }
    };
    push(e1, m4);
    push(e2, m5);
    push(e3, m6);
    push(e4, m6);
    push(e5, m7);
    return out;
  }

  FGSystem() {
    m1 = masks_of_degree(7, 1);
    m2 = masks_of_degree(7, 2);
    m3 = masks_of_degree(7, 3);
    m4 = masks_of_degree(7, 4);
    m5 = masks_of_degree(7, 5);
    m6 = masks_of_degree(7, 6);
    m7 = masks_of_degree(7, 7);
    QMat M(ne, std::vector<mpq_class>(nu, 0));
    for (int j = 0; j < nu; ++j) {
      std::vector<mpq_class> x(nu, 0);
      x[j] = 1;
      auto col = apply(x);
      for (int i = 0; i < ne; ++i) M[i][j] = col[i];
    }
    QMat MtM(nu, std::vector<mpq_class>(nu, 0));
    for (int a = 0; a < nu; ++a)
      for (int b = 0; b < nu; ++b)
        for (int i = 0; i < ne; ++i)
          if (M[i][a] != 0 && M[i][b] != 0) MtM[a][b] += M[i][a] * M[i][b];
    QMat inv = inverse(MtM);  // throws if the system is not injective
    L.assign(nu, std::vector<mpq_class>(ne, 0));
    for (int a = 0; a < nu; ++a)
      for (int i = 0; i < ne; ++i)
        for (int b = 0; b < nu; ++b)
          if (M[i][b] != 0) L[a][i] += inv[a][b] * M[i][b];
    R.assign(ne, std::vector<mpq_class>(ne, 0));
    for (int i = 0; i < ne; ++i) {
      for (int k = 0; k < ne; ++k)
        for (int a = 0; a < nu; ++a)
          if (M[i][a] != 0) R[i][k] += M[i][a] * L[a][k];
      R[i][i] -= 1;
    }
  }
};

const FGSystem& fg_system() {
  static const FGSystem s;
  return s;
}

Expr combine(const std::vector<mpq_class>& row, const std::vector<Expr>& b, const SpacePtr& sp) {
  // group by denominator-free accumulation: plain left fold is fine at this size
  Expr acc(sp, 0);
  for (size_t i = 0; i < b.size(); ++i)
    if (row[i] != 0 && !b[i].is_zero_nf()) acc += b[i] * row[i];
  return acc;
}

bool all_zero(const EForm& f, const ZeroOptions& opt) {
  for (const auto& [m, c] : f.t)
    if (!zero_test(c, opt).zero) return false;
  return true;
}

}  // namespace

std::string FGTorsion::type_label() const {
  std::string s;
  auto add = [&](bool nz, const char* w) {
    if (nz) s += (s.empty() ? "" : "+") + std::string(w);
  };
  add(!lambda_zero, "W1");
  add(!tau2_zero, "W2");
  add(!tau3_zero, "W3");
  add(!Theta_zero, "W4");
  return s.empty() ? "torsion-free" : s;
}

FGTorsion fg_decompose(const Coframe& cf, const ZeroOptions& opt) {
  const FGSystem& S = fg_system();
  const SpacePtr& sp = cf.chart()->sp;
  EForm dphi = cf.frame_components(d(cf.phi()));
  EForm dpsi = cf.frame_components(d(cf.psi()));
  std::vector<Expr> b;
  auto push = [&](const EForm& f, const std::vector<Mask>& ms) {
    for (Mask m : ms) {
      auto it = f.t.find(m);
      b.push_back(it == f.t.end() ? Expr(sp, 0) : it->second);
    }
  };
  push(dphi, S.m4);
  push(dpsi, S.m5);
  while (static_cast<int>(b.size()) < S.ne) b.push_back(Expr(sp, 0));

  FGTorsion T;
  T.residual_zero = true;
  for (int i = 0; i < S.ne; ++i) {
    Expr r = combine(S.R[i], b, sp);
    ++T.residual_checked;
    if (!zero_test(r, opt).zero) {
      T.residual_zero = false;
      break;
    }
  }
  if (!T.residual_zero) throw DomainError("inconsistent torsion system: the form is not a G2 form of this coframe");

  std::vector<Expr> x;
  for (int a = 0; a < S.nu; ++a) x.push_back(combine(S.L[a], b, sp));
  T.lambda_hat = x[0];
  T.Theta_f = EForm(7, 1);
  T.tau2_f = EForm(7, 2);
  T.tau3_f = EForm(7, 3);
  int o = 1;
  for (Mask m : S.m1) T.Theta_f.t.emplace(m, x[o++]);
  for (Mask m : S.m2) T.tau2_f.t.emplace(m, x[o++]);
  for (Mask m : S.m3) T.tau3_f.t.emplace(m, x[o++]);
  T.Theta = cf.from_frame(T.Theta_f);
  T.tau2_hat = cf.from_frame(T.tau2_f);
  T.tau3_hat = cf.from_frame(T.tau3_f);

  T.lambda_zero = zero_test(T.lambda_hat, opt).zero;
  T.Theta_zero = all_zero(T.Theta_f, opt);
  T.tau2_zero = all_zero(T.tau2_f, opt);
  T.tau3_zero = all_zero(T.tau3_f, opt);
  T.tau3_constraints = all_zero(wedge(T.tau3_f, to_eform(frame::phi(), sp)), opt) &&
                       all_zero(wedge(T.tau3_f, to_eform(frame::psi(), sp)), opt);
  if (!T.tau2_zero) {
    EForm w = wedge(T.tau2_f, to_eform(frame::phi(), sp));
    EForm s = frame::star_r(T.tau2_f);
    for (const auto& [m, c] : s.t) {
      if (zero_test(c, opt).zero) continue;
      auto it = w.t.find(m);
      Expr ratio = (it == w.t.end() ? Expr(sp, 0) : it->second) / c;
      if (ratio.is_const()) {
        mpq_class k = ratio.const_value();
        EForm diff = w - s.scaled(k);
        if (all_zero(diff, opt)) T.kappa = k;
      }
      break;
    }
  }
  return T;
}

RescaleReport conformal_rescale(const Coframe& cf, const Expr& f, const ZeroOptions& opt) {
  const ChartPtr& ch = cf.chart();
  Expr fl = f.lift(ch->sp);
  if (fl.has_radicals()) throw DomainError("conformal exponent must be free of radicals");
  std::string name = "ef";
  while (ch->sp->find(name)) name += "_";
  SpacePtr sp2 = ch->sp->with_exponential(name, fl.scalar(), fl.numerator(), fl.den_expanded());
  ChartPtr ch2 = rehome(ch, sp2);
  Expr E = Expr::sym(sp2, name);
  Coframe base = cf.lift(ch2);
  std::array<Form, 7> th;
  for (int i = 0; i < 7; ++i) th[i] = base.theta(i + 1) * E;
  RescaleReport rep;
  rep.rescaled = Coframe(cf.name() + "*exp(f)", ch2, th);
  rep.rescaled.set_conformal(cf.conformal() ? cf.conformal()->lift(sp2) * E : E);
  rep.before = fg_decompose(base, opt);
  rep.after = fg_decompose(rep.rescaled, opt);
  const auto& A = rep.before;
  const auto& B = rep.after;
  rep.lambda_law = zero_test(B.lambda_hat * E - A.lambda_hat, opt).zero;
  rep.Theta_law = (B.Theta - A.Theta - d(ch2, fl) * mpq_class(4)).is_zero(opt);
  rep.tau2_law = (B.tau2_hat - A.tau2_hat * E).is_zero(opt);
  rep.tau3_law = (B.tau3_hat - A.tau3_hat * (E * E)).is_zero(opt);
  rep.dTheta_invariant = (d(B.Theta) - d(A.Theta)).is_zero(opt);
  return rep;
}

// ---------------------------------------------------------------------------
// catalog

namespace {

Coframe flat() {
  auto sp = Space::make({"t1", "t2", "t3", "t4", "t5", "t6", "t7"});
  auto ch = make_chart(sp, {"t1", "t2", "t3", "t4", "t5", "t6", "t7"});
  std::array<Form, 7> th;
  for (int i = 0; i < 7; ++i) th[i] = Form::dx(ch, i);
  return Coframe("flat", ch, th);
}

Coframe cusp(const mpq_class& c3, const std::string& name) {
  auto sp0 = Space::make({"p1", "p2", "p3", "q0", "q1", "q2", "q3"});
  // a^5 = p1 - p2 and b^10 = p3, so Omega = a^-12 b^-9
  Poly base_a = Poly::var(0) - Poly::var(1);
  auto sp = sp0->with_radical("a", 5, base_a)->with_radical("b", 10, Poly::var(2));
  auto ch = make_chart(sp, {"p1", "p2", "p3", "q0", "q1", "q2", "q3"});
  auto P = [&](const char* s) { return parse(sp, s); };
  auto dx = [&](const char* s) { return Form::dx(ch, s); };
  Expr Om = P("a^(-12)*b^(-9)");
  Expr p1 = P("p1"), p2 = P("p2");
  std::array<Form, 7> th;
  Form s1(ch, 1), s7(ch, 1);
  for (int al = 0; al < 4; ++al) {
    Form dq = dx(("q" + std::to_string(al)).c_str());
    s1 = s1 + dq * p2.pow(al);
    s7 = s7 + dq * p1.pow(al);
  }
  th[0] = s1 * (Om * mpq_class(-2));
  th[6] = s7 * (Om * mpq_class(-2));
  Expr w = Om * P("(p2 - p1)^2*p3*b^5") * mpq_class(1, 2);
  th[1] = dx("p2") * (-w);
  th[5] = dx("p1") * w;
  th[2] = (dx("q0") * P("3") + dx("q1") * P("2*p2 + p1") + dx("q2") * P("2*p1*p2 + p2^2") + dx("q3") * P("3*p1*p2^2")) *
          (Om * mpq_class(-c3));
  th[4] = (dx("q0") * P("3") + dx("q1") * P("2*p1 + p2") + dx("q2") * P("2*p1*p2 + p1^2") + dx("q3") * P("3*p2*p1^2")) *
          (Om * mpq_class(-c3));
  th[3] = d(ch, P("p3*(p2 - p1)")) * (Om * P("(p2 - p1)^2*b^5") * mpq_class(-3, 20));
  return Coframe(name, ch, th);
}

Coframe example2() {
  auto sp = Space::make({"r0", "r1", "r2", "s0", "s1", "s2", "s3"});
  auto ch = make_chart(sp, {"r0", "r1", "r2", "s0", "s1", "s2", "s3"});
  // r3 = 1
  auto r = [&](int a) { return a == 3 ? Expr(sp, 1) : Expr::sym(sp, "r" + std::to_string(a)); };
  auto dr = [&](int a) { return a == 3 ? Form(ch, 1) : Form::dx(ch, "r" + std::to_string(a)); };
  auto s = [&](int b) { return Expr::sym(sp, "s" + std::to_string(b)); };
  auto ds = [&](int b) { return Form::dx(ch, "s" + std::to_string(b)); };
  std::array<Form, 7> th;
  for (int i = 0; i <= 6; ++i) {
    Form t(ch, 1);
    for (int al = 0; al <= 3; ++al) {
      int be = i - al;
      if (be < 0 || be > 3) continue;
      t = t + ds(be) * r(al) - dr(al) * s(be);
    }
    th[i] = t * mpq_class(1, binomial(6, i));
  }
  return Coframe("example2", ch, th);
}

Coframe example4() {
  auto sp = Space::make({"t1", "t2", "t3", "t4", "t5", "t6", "t7"});
  auto ch = make_chart(sp, {"t1", "t2", "t3", "t4", "t5", "t6", "t7"});
  Expr t7 = Expr::sym(sp, "t7");
  auto dt = [&](int i) { return Form::dx(ch, i - 1); };
  std::array<Form, 7> th;
  // n^n / (n-1)! at n = 6
  mpq_class c(46656, 120);
  c.canonicalize();
  th[0] = dt(7) * (-c) + dt(1) * t7;
  for (int i = 1; i <= 5; ++i) th[i] = (dt(i) + dt(i + 1) * t7) * mpq_class(1, binomial(6, i));
  th[6] = dt(6);
  return Coframe("example4_k3", ch, th);
}

}  // namespace

std::vector<std::string> coframe_names() { return {"flat", "cusp", "cusp_printed", "example2", "example4_k3"}; }

Coframe coframe_catalog(const std::string& name) {
  if (name == "flat") return flat();
  // the printed theta^3, theta^5 carry -Omega/15; phi is closed only with -2 Omega/15
  if (name == "cusp") return cusp(mpq_class(2, 15), "cusp");
  if (name == "cusp_printed") return cusp(mpq_class(1, 15), "cusp_printed");
  if (name == "example2") return example2();
  if (name == "example4_k3" || name == "example4") return example4();
  throw DomainError("unknown coframe '" + name + "'");
}

// ---------------------------------------------------------------------------

Prop41 prop41_constant() {
  // V in the theta frame of the flat chart, components v1..v7
  auto sp = Space::make({"t1", "t2", "t3", "t4", "t5", "t6", "t7"}, {"v1", "v2", "v3", "v4", "v5", "v6", "v7"});
  auto ch = make_chart(sp, {"t1", "t2", "t3", "t4", "t5", "t6", "t7"});
  std::array<Form, 7> th;
  for (int i = 0; i < 7; ++i) th[i] = Form::dx(ch, i);
  Coframe cf("flat", ch, th);
  std::vector<Expr> V;
  for (int i = 1; i <= 7; ++i) V.push_back(Expr::sym(sp, "v" + std::to_string(i)));
  Form phi = cf.phi();
  Form a = contract(V, phi);
  Form lhs = wedge(wedge(a, a), phi);
  Expr I0 = parse(sp, "v1*v7 - 6*v2*v6 + 15*v3*v5 - 10*v4^2");
  Expr top = lhs.coeff(127);
  Prop41 r;
  Expr ratio = top / I0;
  if (ratio.is_const()) {
    r.c = ratio.const_value();
    r.identity = r.c != 0 && (lhs - cf.theta_wedge(127) * (I0 * r.c)).is_zero();
  }
  return r;
}

num::Complex eval_complex(const Expr& e, const std::vector<num::Complex>& values) {
  auto poly = [&](const Poly& p) {
    num::Complex s;
    for (const auto& t : p.terms) {
      num::Complex m(num::Real(t.c.get_str()));
      for (int v = 0; v < static_cast<int>(t.m.size()); ++v) {
        int k = mono_exp(t.m, v);
        if (k) m = m * num::pow(values.at(v), k);
      }
      s += m;
    }
    return s;
  };
  if (e.is_zero_nf()) return {};
  num::Complex den(1);
  for (const auto& f : e.den_factors()) den = den * num::pow(poly(f.f), f.e);
  if (num::abs(den) == 0) throw PoleError("denominator vanishes at the evaluation point");
  return num::Complex(num::to_real(e.scalar())) * poly(e.numerator()) / den;
}

RiemannianSample riemannian_at(const Coframe& cusp, const num::Complex& p, const num::Real& p3,
                               const std::array<num::Real, 4>& q) {
  using num::Complex;
  using num::Real;
  const SpacePtr& sp = cusp.chart()->sp;
  if (p.im == 0) throw DomainError("degenerate point: p1 = p2");
  if (p3 <= 0) throw DomainError("p3 must be positive");
  std::vector<Complex> val(sp->size());
  val[sp->index("p1")] = (p).conj();
  val[sp->index("p2")] = p;
  val[sp->index("p3")] = Complex(p3);
  for (int i = 0; i < 4; ++i) val[sp->index("q" + std::to_string(i))] = Complex(q[i]);
  // a^5 = p1 - p2 = -2i Im p: a = -i (2 Im p)^(1/5) with the real fifth root
  Real y2 = 2 * p.im;
  Real r5 = boost::multiprecision::pow(boost::multiprecision::abs(y2), Real(1) / 5);
  if (y2 < 0) r5 = -r5;
  val[sp->index("a")] = Complex(Real(0), -r5);
  val[sp->index("b")] = Complex(boost::multiprecision::pow(p3, Real(1) / 10));

  // components in the real basis dX, dY, dp3, dq0..dq3 with dp2 = dX + i dY, dp1 = dX - i dY
  std::array<std::array<Complex, 7>, 7> th;
  for (int i = 0; i < 7; ++i) {
    std::array<Complex, 7> c;
    for (int j = 0; j < 7; ++j) c[j] = eval_complex(cusp.theta(i + 1).coeff(Mask(1) << j), val);
    // chart order p1, p2, p3, q0..q3
    th[i][0] = c[0] + c[1];
    th[i][1] = Complex(Real(0), Real(1)) * (c[1] - c[0]);
    for (int j = 2; j < 7; ++j) th[i][j] = c[j];
  }
  RiemannianSample s{p, p3, q, Real(0), {}};
  Real scale = 0;
  for (const auto& row : th)
    for (const auto& z : row) scale = std::max(scale, num::abs(z));
  for (int j = 0; j < 7; ++j) {
    s.rel_err = std::max(s.rel_err, num::abs(th[6][j] - (th[0][j]).conj()));
    s.rel_err = std::max(s.rel_err, num::abs(th[5][j] + (th[1][j]).conj()));
    s.rel_err = std::max(s.rel_err, num::abs(th[2][j] - (th[4][j]).conj()));
    s.rel_err = std::max(s.rel_err, num::Real(boost::multiprecision::abs(th[3][j].re)));
  }
  s.rel_err /= scale;
  // I0 = th1 th7 - 6 th2 th6 + 15 th3 th5 - 10 th4^2, polarized
  std::vector<std::vector<Real>> g(7, std::vector<Real>(7));
  Real imag = 0;
  for (int a = 0; a < 7; ++a)
    for (int b = 0; b < 7; ++b) {
      auto pol = [&](int i, int j) { return (th[i][a] * th[j][b] + th[i][b] * th[j][a]) * Complex(Real("0.5")); };
      Complex v = pol(0, 6) - pol(1, 5) * Complex(6) + pol(2, 4) * Complex(15) - th[3][a] * th[3][b] * Complex(10);
      g[a][b] = v.re;
      imag = std::max(imag, num::Real(boost::multiprecision::abs(v.im)));
    }
  s.rel_err = std::max(s.rel_err, num::Real(imag / (scale * scale)));
  s.eigen = num::sym_eigenvalues(g);
  return s;
}

RiemannianReport riemannian_continuation_check(int samples, uint64_t seed, const num::Real& tol) {
  Coframe cf = coframe_catalog("cusp");
  RiemannianReport rep;
  rep.relations = rep.positive = true;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> u(-40, 40), pos(1, 40);
  auto rnd = [&](bool positive) {
    int n = positive ? pos(rng) : u(rng);
    return num::Real(n) / 8;
  };
  for (int k = 0; k < samples; ++k) {
    num::Complex p(rnd(false), rnd(true) * (k % 2 ? 1 : -1));
    std::array<num::Real, 4> q{rnd(false), rnd(false), rnd(false), rnd(false)};
    auto s = k == 0 ? riemannian_at(cf, num::Complex(num::Real(1), num::Real(1)), num::Real(1), {0, 0, 0, 0})
                    : riemannian_at(cf, p, rnd(true), q);
    rep.worst = std::max(rep.worst, s.rel_err);
    if (s.rel_err > tol) rep.relations = false;
    if (s.eigen.front() <= 0) rep.positive = false;
    rep.samples.push_back(std::move(s));
  }
  return rep;
}

}  // namespace g2
