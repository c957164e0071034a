#include "odeclass.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "modp.hpp"

namespace g2 {

JetCalculus::JetCalculus(OdeDefinition ode) : ode_(std::move(ode)) {}

const Expr& JetCalculus::partial_seq(std::vector<int> ks) {
  std::sort(ks.begin(), ks.end());
  auto it = partials_.find(ks);
  if (it != partials_.end()) return it->second;
  Expr e = ode_.rhs;
  if (!ks.empty()) {
    std::vector<int> rest(ks.begin(), ks.end() - 1);
    e = Fk(partial_seq(rest), ks.back());
  }
  return partials_.emplace(ks, std::move(e)).first->second;
}

const Expr& JetCalculus::F(int k) { return partial_seq({k}); }
const Expr& JetCalculus::F(int k, int l) { return partial_seq({k, l}); }
const Expr& JetCalculus::F(int k, int l, int m) { return partial_seq({k, l, m}); }

const Expr& JetCalculus::DF(int k) {
  auto it = df_.find(k);
  if (it != df_.end()) return it->second;
  return df_.emplace(k, D(F(k))).first->second;
}

const Expr& JetCalculus::D2(int k) {
  auto it = d2_.find(k);
  if (it != d2_.end()) return it->second;
  return d2_.emplace(k, D(DF(k))).first->second;
}

Expr w1_general(int n, const Expr& F) {
  if (n < 2) throw DomainError("w1_general needs n >= 2");
  OdeDefinition ode = make_ode("w1", F, n + 1);
  JetCalculus jc(ode);
  mpq_class N(n);
  Expr Fn = jc.F(n), Fn1 = jc.F(n - 1), Fn2 = jc.F(n - 2);
  return jc.D2(n) - mpq_class(6 / (N + 1)) * Fn * jc.DF(n) + mpq_class(4 / ((N + 1) * (N + 1))) * Fn.pow(3) -
         mpq_class(6 / N) * jc.DF(n - 1) + mpq_class(12 / (N * (N + 1))) * Fn * Fn1 +
         mpq_class(12 / (N * (N - 1))) * Fn2;
}

namespace {

mpq_class Q(long v) { return mpq_class(v); }

// The five Wunschmann formulas over any value type T with (mpq * T), (T * T) and a
// sum; `a` supplies F_k, D F_k, D^2 F_k and powers.
template <class T, class Access>
std::array<T, 5> w_formulas(Access& a) {
  T w1 = a.sum({
      Q(245)*a.D2(6),
      -Q(245)*a.DF(5),
      Q(98)*a.F(4),
      -Q(210)*a.DF(6)*a.F(6),
      Q(70)*a.F(5)*a.F(6),
      Q(20)*a.pw(a.F(6),3),
  });
  T w2 = a.sum({
      Q(6860)*a.D2(5),
      -Q(10976)*a.DF(4),
      Q(6615)*a.pw(a.DF(6),2),
      Q(6860)*a.F(3),
      -Q(8330)*a.DF(6)*a.F(5),
      Q(1715)*a.pw(a.F(5),2),
      -Q(1960)*a.DF(5)*a.F(6),
      Q(1568)*a.F(4)*a.F(6),
      -Q(1890)*a.DF(6)*a.pw(a.F(6),2),
      Q(1190)*a.F(5)*a.pw(a.F(6),2),
      Q(135)*a.pw(a.F(6),4),
  });
  T w3 = a.sum({
      Q(9604)*a.D2(4),
      -Q(24010)*a.DF(3),
      Q(15435)*a.DF(5)*a.DF(6),
      Q(24010)*a.F(2),
      -Q(14749)*a.DF(6)*a.F(4),
      -Q(5145)*a.DF(5)*a.F(5),
      Q(4459)*a.F(4)*a.F(5),
      -Q(2744)*a.DF(4)*a.F(6),
      Q(6615)*a.pw(a.DF(6),2)*a.F(6),
      Q(3430)*a.F(3)*a.F(6),
      -Q(6615)*a.DF(6)*a.F(5)*a.F(6),
      Q(1470)*a.pw(a.F(5),2)*a.F(6),
      -Q(2205)*a.DF(5)*a.pw(a.F(6),2),
      Q(2107)*a.F(4)*a.pw(a.F(6),2),
      -Q(1890)*a.DF(6)*a.pw(a.F(6),3),
      Q(945)*a.F(5)*a.pw(a.F(6),3),
      Q(135)*a.pw(a.F(6),5),
  });
  T w4 = a.sum({
      Q(336140)*a.D2(3),
      -Q(1344560)*a.DF(2),
      Q(180075)*a.pw(a.DF(5),2),
      Q(432180)*a.DF(4)*a.DF(6),
      Q(2352980)*a.F(1),
      -Q(624260)*a.DF(6)*a.F(3),
      -Q(216090)*a.DF(5)*a.F(4),
      Q(64827)*a.pw(a.F(4),2),
      -Q(144060)*a.DF(4)*a.F(5),
      Q(154350)*a.pw(a.DF(6),2)*a.F(5),
      Q(192080)*a.F(3)*a.F(5),
      -Q(102900)*a.DF(6)*a.pw(a.F(5),2),
      Q(17150)*a.pw(a.F(5),3),
      -Q(96040)*a.DF(3)*a.F(6),
      Q(308700)*a.DF(5)*a.DF(6)*a.F(6),
      Q(192080)*a.F(2)*a.F(6),
      -Q(246960)*a.DF(6)*a.F(4)*a.F(6),
      -Q(154350)*a.DF(5)*a.F(5)*a.F(6),
      Q(113190)*a.F(4)*a.F(5)*a.F(6),
      -Q(61740)*a.DF(4)*a.pw(a.F(6),2),
      Q(132300)*a.pw(a.DF(6),2)*a.pw(a.F(6),2),
      Q(89180)*a.F(3)*a.pw(a.F(6),2),
      -Q(176400)*a.DF(6)*a.F(5)*a.pw(a.F(6),2),
      Q(47775)*a.pw(a.F(5),2)*a.pw(a.F(6),2),
      -Q(44100)*a.DF(5)*a.pw(a.F(6),3),
      Q(35280)*a.F(4)*a.pw(a.F(6),3),
      -Q(37800)*a.DF(6)*a.pw(a.F(6),4),
      Q(22050)*a.F(5)*a.pw(a.F(6),4),
      Q(2700)*a.pw(a.F(6),6),
  });
  T w5 = a.sum({
      Q(2352980)*a.D2(2),
      -Q(16470860)*a.DF(1),
      Q(1512630)*a.DF(4)*a.DF(5),
      Q(2268945)*a.DF(3)*a.DF(6),
      -Q(5126135)*a.DF(6)*a.F(2),
      -Q(1512630)*a.DF(5)*a.F(3),
      -Q(907578)*a.DF(4)*a.F(4),
      Q(648270)*a.pw(a.DF(6),2)*a.F(4),
      Q(907578)*a.F(3)*a.F(4),
      -Q(756315)*a.DF(3)*a.F(5),
      Q(1080450)*a.DF(5)*a.DF(6)*a.F(5),
      Q(1596665)*a.F(2)*a.F(5),
      -Q(1080450)*a.DF(6)*a.F(4)*a.F(5),
      -Q(360150)*a.DF(5)*a.pw(a.F(5),2),
      Q(288120)*a.F(4)*a.pw(a.F(5),2),
      -Q(672280)*a.DF(2)*a.F(6),
      Q(540225)*a.pw(a.DF(5),2)*a.F(6),
      Q(1296540)*a.DF(4)*a.DF(6)*a.F(6),
      Q(2352980)*a.F(1)*a.F(6),
      -Q(1620675)*a.DF(6)*a.F(3)*a.F(6),
      -Q(864360)*a.DF(5)*a.F(4)*a.F(6),
      Q(324135)*a.pw(a.F(4),2)*a.F(6),
      -Q(648270)*a.DF(4)*a.F(5)*a.F(6),
      Q(926100)*a.pw(a.DF(6),2)*a.F(5)*a.F(6),
      Q(756315)*a.F(3)*a.F(5)*a.F(6),
      -Q(771750)*a.DF(6)*a.pw(a.F(5),2)*a.F(6),
      Q(154350)*a.pw(a.F(5),3)*a.F(6),
      -Q(324135)*a.DF(3)*a.pw(a.F(6),2),
      Q(926100)*a.DF(5)*a.DF(6)*a.pw(a.F(6),2),
      Q(732305)*a.F(2)*a.pw(a.F(6),2),
      -Q(926100)*a.DF(6)*a.F(4)*a.pw(a.F(6),2),
      -Q(617400)*a.DF(5)*a.F(5)*a.pw(a.F(6),2),
      Q(524790)*a.F(4)*a.F(5)*a.pw(a.F(6),2),
      -Q(185220)*a.DF(4)*a.pw(a.F(6),3),
      Q(396900)*a.pw(a.DF(6),2)*a.pw(a.F(6),3),
      Q(231525)*a.F(3)*a.pw(a.F(6),3),
      -Q(661500)*a.DF(6)*a.F(5)*a.pw(a.F(6),3),
      Q(209475)*a.pw(a.F(5),2)*a.pw(a.F(6),3),
      -Q(132300)*a.DF(5)*a.pw(a.F(6),4),
      Q(119070)*a.F(4)*a.pw(a.F(6),4),
      -Q(113400)*a.DF(6)*a.pw(a.F(6),5),
      Q(75600)*a.F(5)*a.pw(a.F(6),5),
      Q(8100)*a.pw(a.F(6),7),
      Q(65883440)*a.F(0),
  });
  return {w1, w2, w3, w4, w5};
}

// exact: values are normal forms in the jet space of the ODE
struct ExprAccess {
  JetCalculus& jc;
  std::map<std::pair<const Expr*, int>, Expr> powers;
  const Expr& F(int k) { return jc.F(k); }
  const Expr& DF(int k) { return jc.DF(k); }
  const Expr& D2(int k) { return jc.D2(k); }
  // F_k and DF_k live in the caches of jc, so their addresses identify them
  const Expr& pw(const Expr& e, int n) {
    auto it = powers.find({&e, n});
    if (it == powers.end()) it = powers.emplace(std::make_pair(&e, n), e.pow(n)).first;
    return it->second;
  }
  Expr sum(std::initializer_list<Expr> terms) {
    Expr s(jc.DF(6).space(), 0);
    for (const Expr& t : terms) s += t;
    return s;
  }
};

// one residue mod p with a crude degree bound, for evaluating the formulas
// at a sample point without ever forming the symbolic sums
struct ModVal {
  uint64_t v = 0;
  int deg = 0;
  ModVal operator*(const ModVal& o) const { return {modp::mul(v, o.v), deg + o.deg}; }
  friend ModVal operator*(const mpq_class& q, const ModVal& x) { return {modp::mul(modp::from_mpq(q), x.v), x.deg}; }
};

struct ModAccess {
  std::array<ModVal, 7> f, df, d2;
  ModVal F(int k) const { return f[k]; }
  ModVal DF(int k) const { return df[k]; }
  ModVal D2(int k) const { return d2[k]; }
  ModVal pw(const ModVal& x, int n) const { return {modp::pow(x.v, n), x.deg * n}; }
  ModVal sum(std::initializer_list<ModVal> terms) const {
    ModVal s;
    for (const ModVal& t : terms) {
      s.v = modp::add(s.v, t.v);
      s.deg += t.deg;  // common denominators multiply
    }
    return s;
  }
};

int degree_bound(const Expr& e) {
  int d = e.numerator().total_degree();
  for (const auto& f : e.den_factors()) d += f.f.total_degree() * f.e;
  return d;
}


// Independent of the normal forms of W: evaluate F_k, D F_k, D^2 F_k at random
// points mod p (radicals consistent) and combine them with the formulas there.
void sample_wunschmann(JetCalculus& jc, WunschmannReport& r, const ZeroOptions& opt) {
  const Space& sp = *jc.DF(6).space();
  for (int k = 2; k <= 6; ++k) jc.D2(k);
  int rad = 1;
  for (size_t i = 0; i < sp.size(); ++i)
    if (sp.sym(static_cast<int>(i)).kind == SymKind::Radical) rad *= sp.sym(static_cast<int>(i)).m;
  std::mt19937_64 rng(opt.seed);
  std::array<bool, 5> all_zero{true, true, true, true, true};
  std::array<int, 5> deg{};
  int good = 0, tries = 0;
  while (good < opt.points && tries < 20 * opt.points + 100) {
    ++tries;
    auto x = sample_point(sp, rng);
    if (x.empty()) continue;
    ModAccess a;
    bool pole = false;
    auto load = [&](const Expr& e, ModVal& out) {
      auto v = eval_modp(e.lift(sp.shared_from_this()), x);
      if (!v) pole = true;
      out = {v.value_or(0), degree_bound(e)};
    };
    for (int k = 0; k <= 6; ++k) {
      load(jc.F(k), a.f[k]);
      load(jc.DF(k), a.df[k]);
      if (k >= 2) load(jc.D2(k), a.d2[k]);
    }
    if (pole) continue;
    ++good;
    auto w = w_formulas<ModVal>(a);
    for (int i = 0; i < 5; ++i) {
      if (w[i].v != 0) all_zero[i] = false;
      deg[i] = std::max(deg[i], w[i].deg);
    }
  }
  if (good == 0) throw Inconclusive("every sample point hit a pole");
  for (int i = 0; i < 5; ++i) {
    ZeroTest& t = r.test[i];
    if (all_zero[i] != t.zero)
      throw ZeroTestDisagreement("W" + std::to_string(i + 1) + ": normal form and random evaluation disagree");
    t.mode = ZeroMode::ExactAndProbabilistic;
    t.points = good;
    // heuristic Schwartz-Zippel bound: degree of the cleared numerator times
    // the degree of the radical extension, per point
    double per = std::log2(std::max(deg[i] * rad, 1)) - std::log2(static_cast<double>(modp::P));
    t.log2_bound = all_zero[i] ? per * good : 0;
  }
}

}  // namespace

std::array<Expr, 5> wunschmann_expressions(JetCalculus& jc) {
  if (jc.ode().order != 7) throw DomainError("the Wunschmann conditions here are for 7th order ODEs");
  ExprAccess a{jc, {}};
  return w_formulas<Expr>(a);
}

bool WunschmannReport::all_vanish() const {
  for (const ZeroTest& t : test)
    if (!t.zero) return false;
  return true;
}

WunschmannReport wunschmann7(const OdeDefinition& ode, ZeroOptions opt) {
  if (ode.order != 7) throw DomainError("wunschmann7 needs a 7th order ODE, got order " + std::to_string(ode.order));
  if (ode.space()->has_radicals()) opt.points = std::max(opt.points, 64);
  JetCalculus jc(ode);
  WunschmannReport r;
  r.W = wunschmann_expressions(jc);
  for (int i = 0; i < 5; ++i) r.test[i] = zero_test(r.W[i], opt);
  if (ode.space()->has_radicals()) sample_wunschmann(jc, r, opt);
  return r;
}

Expr DF_then_partial(JetCalculus& jc, const std::vector<int>& ks) {
  Expr e = jc.D(jc.ode().rhs);
  for (int k : ks) e = Fk(e, k);
  return e;
}

std::array<Expr, 5> fg_witnesses(JetCalculus& jc) {
  const Expr &F5 = jc.F(5), &F6 = jc.F(6);
  const Expr &F55 = jc.F(5, 5), &F64 = jc.F(6, 4), &F65 = jc.F(6, 5), &F66 = jc.F(6, 6);
  const Expr &F666 = jc.F(6, 6, 6), &F665 = jc.F(6, 6, 5), &F664 = jc.F(6, 6, 4), &F655 = jc.F(6, 5, 5);
  using q = mpq_class;
  // F66 (9 (D F6) - 9/7 F6^2 - 15 F5) + 12 F65 F6 + 14 F55 - 84/5 F64
  Expr lambda = F66 * (q(9) * jc.DF(6) - q(9, 7) * F6.pow(2) - q(15) * F5) + q(12) * F65 * F6 + q(14) * F55 -
                q(84, 5) * F64;
  // 21 D(F66) + 14 F65 + 15 F6 F66
  Expr tau2 = q(21) * jc.D(F66) + q(14) * F65 + q(15) * F6 * F66;
  Expr tau3 = F66;
  // (DF)_66 and (DF)_6 differentiate D(F), not D(F_6)
  Expr DF_6 = DF_then_partial(jc, {6});
  Expr DF_66 = Fk(DF_6, 6);
  Expr v7 = DF_66 * F66 + q(3, 2) * DF_6 * F666 - q(12, 7) * F666 * F6.pow(2) - q(4) * F666 * F5 +
            q(2) * F665 * F6 - q(14, 5) * F664 + q(7, 3) * F655 - q(4, 3) * F66 * F65 -
            q(16, 7) * F66.pow(2) * F6;
  Expr v11 = F666;
  return {lambda, tau2, tau3, v7, v11};
}

std::string FGTypeReport::label() const {
  if (!applicable) return "not applicable";
  if (classes.empty()) return "torsion-free";
  std::string s;
  for (const auto& c : classes) s += (s.empty() ? "" : "+") + c;
  return s;
}

FGTypeReport fg_conditions(const OdeDefinition& ode, const WunschmannReport& w, ZeroOptions opt) {
  FGTypeReport r;
  if (ode.order != 7) throw DomainError("fg_conditions needs a 7th order ODE");
  if (!w.all_vanish()) {
    std::string bad;
    for (int i = 0; i < 5; ++i)
      if (!w.vanishes(i)) bad += (bad.empty() ? "W" : ", W") + std::to_string(i + 1);
    r.reason = "no GL(2) geometry: " + bad + " nonzero";
    return r;
  }
  if (ode.space()->has_radicals()) opt.points = std::max(opt.points, 64);
  r.applicable = true;
  JetCalculus jc(ode);
  auto e = fg_witnesses(jc);
  const char* names[] = {"lambda", "tau2", "tau3", "dTheta_V7", "dTheta_V11"};
  Witness* slots[] = {&r.lambda, &r.tau2, &r.tau3, &r.v7, &r.v11};
  for (int i = 0; i < 5; ++i) *slots[i] = Witness{names[i], e[i], zero_test(e[i], opt)};
  r.v3 = r.tau2.vanishes() ? "implied zero" : "not determined";
  if (!r.lambda.vanishes()) r.classes.push_back("W1");
  if (!r.tau2.vanishes()) r.classes.push_back("W2");
  if (!r.tau3.vanishes()) r.classes.push_back("W3");
  // the Lee form has no witness of its own; it is gauged away only when dTheta
  // vanishes together with the other torsion
  bool all = r.lambda.vanishes() && r.tau2.vanishes() && r.tau3.vanishes() && r.v7.vanishes() && r.v11.vanishes();
  if (!all) r.classes.push_back("W4");
  return r;
}

const std::vector<CatalogEntry>& ode_catalog_entries() {
  static const std::vector<CatalogEntry> entries{
      {"trivial", "flat model y7 = 0, torsion-free", "0"},
      {"cusp", "cuspidal sextics (Example 1), type W2+W4", "21/5*u*t/s - 84/25*t^3/s^2"},
      {"submax", "submaximal symmetry, type W1+W4", "7*u*s/r + 49/10*t^2/r - 28*t*s^2/r^2 + 35/2*s^4/r^3"},
      {"example2", "curves of bidegree (1,3) (Example 2)",
       "(420*q^2*u^2 + 2520*q*s*t^2 - 1680*q*r*u*t - 2100*q*s^2*u - 504*p*t^3 + 1680*r^2*t^2 - 6300*t*r*s^2"
       " + 840*t*u*p*s + 2625*s^4 - 280*u^2*r*p + 2800*u*r^2*s)"
       " / (360*q^2*t - 1200*r*q*s - 240*r*t*p + 800*r^3 + 300*s^2*p)"},
      {"example4_k3", "y7 = y6^(7/6) with rho^6 = y6 (Example 4, k = 3)", "u*rho"},
  };
  return entries;
}

OdeDefinition ode_catalog(const std::string& name0) {
  std::string name = name0;
  if (name == "cuspidal_sextic") name = "cusp";
  if (name == "submaximal") name = "submax";
  if (name == "example4") name = "example4_k3";
  if (name == "flat") name = "trivial";
  for (const auto& e : ode_catalog_entries()) {
    if (e.name != name) continue;
    SpacePtr sp = jet_space(6);
    if (name == "example4_k3") sp = sp->with_radical("rho", 6, Poly::var(jet_index(6)));
    return make_ode(name, parse(sp, e.text), 7);
  }
  throw DomainError("unknown catalog ODE '" + name0 + "'");
}

ClassificationReport classify(const OdeDefinition& ode, ZeroOptions opt) {
  auto t0 = std::chrono::steady_clock::now();
  ClassificationReport r;
  r.name = ode.name;
  r.rhs = ode.rhs.str();
  r.wunschmann = wunschmann7(ode, opt);
  r.fg = fg_conditions(ode, r.wunschmann, opt);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace g2
