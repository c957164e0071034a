#include "papercheck.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

#include "binform.hpp"
#include "curves.hpp"
#include "errors.hpp"
#include "extalg.hpp"
#include "liealg.hpp"
#include "odeclass.hpp"

namespace g2::check {

bool SuiteResult::pass() const {
  if (claims.empty()) return false;
  if (limit_seconds > 0 && seconds > limit_seconds) return false;
  return passed() == static_cast<int>(claims.size());
}

int SuiteResult::passed() const {
  return static_cast<int>(std::count_if(claims.begin(), claims.end(), [](const Claim& c) { return c.pass; }));
}

namespace {

using num::Real;

std::string sci(const Real& r) { return r.str(3, std::ios_base::scientific); }

std::string q(const mpq_class& v) { return v.get_str(); }

std::string yes(bool b) { return b ? "yes" : "no"; }

// collects claims; an exception inside one claim fails that claim only
class Recorder {
 public:
  explicit Recorder(std::vector<Claim>& out) : out_(out) {}
  void operator()(const std::string& id, const std::function<Claim()>& f) {
    try {
      Claim c = f();
      c.id = id;
      out_.push_back(c);
    } catch (const std::exception& e) {
      out_.push_back({id, false, std::string("error: ") + e.what()});
    }
  }

 private:
  std::vector<Claim>& out_;
};

ZeroOptions zero_opts(const Options& o) {
  ZeroOptions z;
  z.points = std::max(o.points, 64);
  z.seed = o.seed;
  return z;
}

void wunschmann(Recorder& rec, const Options& o) {
  for (const char* name : {"trivial", "cusp", "submax", "example2"}) {
    rec(std::string("W1..W5 = 0 for ") + name, [&] {
      auto r = wunschmann7(ode_catalog(name), zero_opts(o));
      int exact = 0;
      for (int i = 0; i < 5; ++i) exact += r.W[i].is_zero_nf();
      return Claim{"", exact == 5, std::to_string(exact) + "/5 identically zero"};
    });
  }
  rec("W1..W5 = 0 for example4_k3 (sampled)", [&] {
    auto r = wunschmann7(ode_catalog("example4_k3"), zero_opts(o));
    int pts = 1 << 30;
    double bound = -1e9;
    for (const auto& t : r.test) {
      pts = std::min(pts, t.points);
      bound = std::max(bound, t.log2_bound);
    }
    bool ok = r.all_vanish() && pts >= 64 && bound < -40;
    std::ostringstream s;
    s << "all zero " << yes(r.all_vanish()) << ", " << pts << " points, failure bound 2^" << bound;
    return Claim{"", ok, s.str()};
  });
  rec("W5 = 65883440 for y7 = y", [&] {
    auto r = wunschmann7(make_ode("linear", "y"), zero_opts(o));
    bool first4 = r.vanishes(0) && r.vanishes(1) && r.vanishes(2) && r.vanishes(3);
    std::string w5 = r.W[4].is_const() ? r.W[4].const_value().get_str() : r.W[4].str();
    return Claim{"", first4 && w5 == "65883440", "W1..W4 zero " + yes(first4) + ", W5 = " + w5};
  });
}

void fg_types(Recorder& rec, const Options& o) {
  rec("trivial: torsion-free", [&] {
    auto c = classify(ode_catalog("trivial"), zero_opts(o));
    bool ok = c.fg.applicable && c.fg.lambda.vanishes() && c.fg.tau2.vanishes() && c.fg.tau3.vanishes() &&
              c.fg.label() == "torsion-free";
    return Claim{"", ok, c.fg.label()};
  });
  rec("submax: W1+W4", [&] {
    auto c = classify(ode_catalog("submax"), zero_opts(o));
    bool ok = c.fg.tau2.expr.is_zero_nf() && c.fg.tau3.expr.is_zero_nf() && !c.fg.lambda.vanishes() &&
              c.fg.label() == "W1+W4";
    return Claim{"", ok, c.fg.label() + ", dTheta V3 " + c.fg.v3};
  });
  rec("cusp: W2+W4", [&] {
    auto c = classify(ode_catalog("cusp"), zero_opts(o));
    bool ok = c.fg.lambda.expr.is_zero_nf() && c.fg.tau3.expr.is_zero_nf() && !c.fg.tau2.vanishes() &&
              c.fg.label() == "W2+W4";
    return Claim{"", ok, c.fg.label()};
  });
}

void w1_general_check(Recorder& rec, const Options&) {
  rec("245 w1_general(6, F) - W1(F) = 0 for formal F", [] {
    SpacePtr sp = jet_space(6);
    std::vector<int> args;
    for (int i = 0; i < 8; ++i) args.push_back(i);
    sp = sp->with_formal("F", args, 3);
    Expr F = Expr::sym(sp, "F");
    JetCalculus jc(make_ode("formal", F, 7));
    auto W = wunschmann_expressions(jc);
    Expr diff = mpq_class(245) * w1_general(6, F) - W[0];
    bool third = W[0].depends_on(sp->index("F_y6_y6_y6"));
    return Claim{"", diff.is_zero_nf() && third, "difference zero, W1 involves third partials " + yes(third)};
  });
}

void invariants(Recorder& rec, const Options&) {
  rec("I0 at n = 6, termwise", [] {
    auto r = invariant_I0(6);
    Expr printed = parse(r.I0.space(), "theta1*theta7 - 6*theta2*theta6 + 15*theta3*theta5 - 10*theta4^2");
    bool ok = (r.I0 - printed).is_zero_nf();
    return Claim{"", ok, "<Q,Q>_6 / I0 = " + q(r.transvectant_over_I0)};
  });
  rec("transvectant three-form up to one constant", [] {
    auto r = phi_trilinear();
    auto printed = printed_three_form();
    bool ok = r.alternating && r.constant != 0 && r.extracted.comp.size() == printed.comp.size();
    for (const auto& [t, c] : printed.comp) {
      auto it = r.extracted.comp.find(t);
      ok = ok && it != r.extracted.comp.end() && it->second == r.constant * c;
    }
    return Claim{"", ok, "constant " + q(r.constant)};
  });
  rec("second expansion of phi after reordering", [] {
    bool ok = equal(frame::phi(), frame::phi_alt()) && printed_three_form().str() == qform_str(frame::phi());
    return Claim{"", ok, qform_str(frame::phi_alt())};
  });
  rec("hodge_star(phi) is the printed dual", [] {
    auto flat = coframe_catalog("flat");
    mpq_class s(40, 9);
    Form st = hodge_star(flat.phi(), flat, s);
    bool ok = (st - flat.from_frame(frame::star_phi_printed())).is_zero();
    return Claim{"", ok, "metric representative " + q(s) + " I0"};
  });
}

void prop41(Recorder& rec, const Options&) {
  rec("(V _| phi)^2 ^ phi = c I0(V) vol", [] {
    auto r = prop41_constant();
    return Claim{"", r.identity && r.c != 0, "c = " + q(r.c)};
  });
}

void closed_cusp(Recorder& rec, const Options& o) {
  rec("d phi = 0 for the cusp coframe", [&] {
    auto c = closedness(coframe_catalog("cusp"), std::max(o.points, 64), o.seed);
    bool ok = c.exact && c.sampled && c.points >= 64;
    return Claim{"", ok,
                 "symbolic " + yes(c.exact) + ", sampled " + yes(c.sampled) + " at " + std::to_string(c.points) +
                     " points mod p; theta3, theta5 prefactor -2 Omega/15"};
  });
  rec("the -Omega/15 prefactor is not closed", [&] {
    auto c = closedness(coframe_catalog("cusp_printed"), std::max(o.points, 64), o.seed);
    return Claim{"", !c.exact && !c.sampled, "symbolic " + yes(c.exact) + ", sampled " + yes(c.sampled)};
  });
  rec("curve normal sections agree with -2 Omega/15", [&] {
    auto f = curves::random_family(o.seed);
    auto r = curves::coframe_consistency_check(f, "cusp");
    return Claim{"", r.proportional, "spread " + sci(r.spread) + ", misfit " + sci(r.misfit)};
  });
}

void phi_dphi(Recorder& rec, const Options& o) {
  for (const char* name : {"example2", "example4_k3"}) {
    rec(std::string("phi ^ d phi = 0 for ") + name, [&] {
      auto cf = coframe_catalog(name);
      Form phi = cf.phi();
      Form dphi = d(phi);
      bool exact = wedge(phi, dphi).is_zero();
      ZeroOptions z = zero_opts(o);
      z.force_probabilistic = true;
      bool sampled = wedge(phi, dphi).is_zero(z);
      return Claim{"", exact && sampled,
                   "symbolic " + yes(exact) + ", sampled " + yes(sampled) + ", d phi = 0 " + yes(dphi.is_zero())};
    });
  }
}

void riemannian(Recorder& rec, const Options& o) {
  rec("reality relations and positive metric", [&] {
    auto r = riemannian_continuation_check(10, o.seed);
    bool ok = r.samples.size() >= 10 && r.relations && r.positive && r.worst < Real("1e-20");
    return Claim{"", ok,
                 std::to_string(r.samples.size()) + " samples, worst " + sci(r.worst) + ", positive " +
                     yes(r.positive)};
  });
}

void rep_theory(Recorder& rec, const Options&) {
  using namespace lie;
  auto V = dual(standard_module());
  auto expect = [&](const std::string& id, const Module& m, const Decomposition& want) {
    rec(id, [&] {
      auto d = sl2_decompose(m);
      return Claim{"", d == want, d.str()};
    });
  };
  auto l2w = decomposition_of({{3, 1}, {7, 1}, {11, 1}});
  auto l3w = decomposition_of({{1, 1}, {5, 1}, {7, 1}, {9, 1}, {13, 1}});
  expect("wedge^2 = V3 + V7 + V11", exterior_power(V, 2), l2w);
  expect("wedge^3 = V1 + V5 + V7 + V9 + V13", exterior_power(V, 3), l3w);
  expect("torsion space, 147 dimensions", torsion_module(),
         decomposition_of({{1, 1}, {3, 1}, {5, 3}, {7, 3}, {9, 3}, {11, 2}, {13, 2}, {15, 1}, {17, 1}}));
  // W1 = V1 and W3 are the 1 and 27 dimensional parts of wedge^3, W4 = V7
  // is common to both, W2 is the 14 dimensional part of wedge^2
  rec("W-branching W1 = V1, W2 = V3 + V11, W3 = V5 + V9 + V13, W4 = V7", [&] {
    auto l2 = sl2_decompose(exterior_power(V, 2));
    auto l3 = sl2_decompose(exterior_power(V, 3));
    auto minus = [](Decomposition a, int k) {
      for (auto& [kk, m] : a.parts)
        if (kk == k) --m;
      std::erase_if(a.parts, [](const auto& p) { return p.second == 0; });
      a.ambient -= k;
      return a;
    };
    auto w2 = minus(l2, 7);
    auto w3 = minus(minus(l3, 1), 7);
    bool ok = w2 == decomposition_of({{3, 1}, {11, 1}}) && w3 == decomposition_of({{5, 1}, {9, 1}, {13, 1}}) &&
              w2.total() == 14 && w3.total() == 27;
    return Claim{"", ok, "W2 = " + w2.str() + ", W3 = " + w3.str()};
  });
}

void torsion_solution(Recorder& rec, const Options&) {
  rec("lambda, a, b span V1, V3, V5; no filtration violations", [] {
    auto r = lie::appendixB_torsion_check();
    std::ostringstream s;
    s << r.terms << " terms;";
    for (const auto& sp : r.spans) s << " " << sp.name << ": dim " << sp.dimension << " invariant " << yes(sp.invariant);
    s << "; violations " << r.hom1_violations.size();
    bool dims = r.spans.size() == 3 && r.spans[0].dimension == 1 && r.spans[1].dimension == 3 &&
                r.spans[2].dimension == 5;
    return Claim{"", r.ok() && dims && r.hom1_violations.empty(), s.str()};
  });
}

void algebra(Recorder& rec, const Options& o) {
  rec("structure constants, Jacobi, grading, products", [] {
    auto r = lie::check_algebra();
    std::string s = "jacobi " + yes(r.jacobi) + ", grading " + yes(r.grading) + ", products " + yes(r.products) +
                    ", invariance " + yes(r.invariance);
    return Claim{"", r.all(), s};
  });
  rec("codifferential adjoint to the differential, 100 tensors", [&] {
    using namespace lie;
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<int> mu(1, kDim), low(1, kM), c(-3, 3);
    auto random_tensor = [&](int arity, int entries) {
      HomTensor t(arity);
      for (int n = 0; n < entries; ++n) {
        std::vector<int> I;
        while (static_cast<int>(I.size()) < arity) {
          int i = low(rng);
          if (std::find(I.begin(), I.end(), i) == I.end()) I.push_back(i);
        }
        t.add(mu(rng), I, c(rng));
      }
      return t;
    };
    int good = 0, nonzero = 0;
    for (int trial = 0; trial < 100; ++trial) {
      int arity = 1 + trial % 2;
      auto k = random_tensor(arity + 1, 40), b = random_tensor(arity, 25);
      mpq_class lhs = inner(adjoint(k), b);
      good += lhs == inner(k, differential(b));
      nonzero += lhs != 0;
    }
    return Claim{"", good == 100, std::to_string(good) + "/100 equal, " + std::to_string(nonzero) + " nonzero"};
  });
}

void curve_suite(Recorder& rec, const Options& o) {
  rec("parametrization and ODE residuals, 20 families, both branches", [&] {
    Real worst_curve = 0, worst_ode = 0;
    int runs = 0;
    for (uint64_t k = 0; k < 20; ++k) {
      auto f = curves::random_family(o.seed + k);
      for (int br : {1, -1}) {
        for (int j = 0; j < 4; ++j) {
          num::Complex l(Real(j + 1) / 3 - Real(k) / 13, Real(j) / 4 - Real(1) / 7);
          auto c = curves::parametrize(f, l, br);
          Real scale = 1 + num::abs(num::pow(f.P(c.x), 3));
          worst_curve = std::max<Real>(worst_curve, num::abs(f.implicit(c.x, c.y)) / scale);
        }
        auto r = curves::ode_residual_check(f, br, 4, o.seed * 7 + k * 2 + (br > 0));
        worst_ode = std::max(worst_ode, r.max_residual);
        ++runs;
      }
    }
    bool ok = runs == 40 && worst_curve < Real("1e-30") && worst_ode < Real("1e-30");
    return Claim{"", ok, "curve " + sci(worst_curve) + ", ODE " + sci(worst_ode) + " at 50 digits"};
  });
  rec("genus 10 - 1 - 1 - 8 = 0", [] {
    auto g = curves::genus_count();
    return Claim{"", g.arithmetic == 10 && g.genus == 0, "arithmetic genus " + std::to_string(g.arithmetic) +
                                                                ", delta invariants transcribed"};
  });
}

void conformal(Recorder& rec, const Options&) {
  rec("e8, e9, e11 annihilate I0 and phi; e10 weights 12, 18; trace -42 G1", [] {
    auto r = lie::conformal_weight_check();
    std::string s = "weights " + q(r.metric_weight) + ", " + q(r.phi_weight) + "; trace " + q(r.trace_G0) + " G0 + " +
                    q(r.trace_G1) + " G1";
    return Claim{"", r.ok() && r.metric_weight == 12 && r.phi_weight == 18 && r.trace_G1 == -42 && r.trace_G0 == 0,
                 s};
  });
}

using Runner = void (*)(Recorder&, const Options&);

struct Entry {
  SuiteInfo info;
  Runner run;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> r{
      {{"wunschmann", "Wunschmann conditions of the catalog", 60}, wunschmann},
      {{"fg-types", "Fernandez-Gray types", 0}, fg_types},
      {{"w1-general", "general W1 against the order-7 W1", 0}, w1_general_check},
      {{"invariants", "I0, phi and its dual", 0}, invariants},
      {{"nullness", "contraction identity for null vectors", 0}, prop41},
      {{"closedness", "closed cusp structure", 600}, closed_cusp},
      {{"phi-dphi", "phi ^ d phi = 0 examples", 600}, phi_dphi},
      {{"riemannian", "Riemannian real form of the cusp structure", 0}, riemannian},
      {{"rep-theory", "sl(2) decompositions", 30}, rep_theory},
      {{"torsion", "normal torsion with formal parameters", 0}, torsion_solution},
      {{"algebra", "graded algebra and its cochain complex", 0}, algebra},
      {{"curves", "cuspidal sextic certification", 60}, curve_suite},
      {{"conformal-weight", "conformal weights of I0 and phi", 0}, conformal},
  };
  return r;
}

}  // namespace

const std::vector<SuiteInfo>& suites() {
  static const std::vector<SuiteInfo> s = [] {
    std::vector<SuiteInfo> v;
    for (const auto& e : registry()) v.push_back(e.info);
    return v;
  }();
  return s;
}

bool is_suite(const std::string& name) {
  return std::any_of(suites().begin(), suites().end(), [&](const SuiteInfo& s) { return s.name == name; });
}

SuiteResult run_suite(const std::string& name, const Options& opt) {
  for (const auto& e : registry()) {
    if (e.info.name != name) continue;
    SuiteResult r;
    r.name = e.info.name;
    r.title = e.info.title;
    r.limit_seconds = e.info.limit_seconds;
    auto t0 = std::chrono::steady_clock::now();
    Recorder rec(r.claims);
    e.run(rec, opt);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }
  throw DomainError("unknown suite '" + name + "'");
}

std::vector<SuiteResult> run_suites(const std::string& which, const Options& opt) {
  std::vector<std::string> names;
  if (which == "all") {
    for (const auto& s : suites()) names.push_back(s.name);
  } else {
    if (!is_suite(which)) throw DomainError("unknown suite '" + which + "'");
    names.push_back(which);
  }
  std::vector<SuiteResult> out(names.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < names.size(); i = next++) out[i] = run_suite(names[i], opt);
  };
  int n = std::clamp(opt.threads, 1, static_cast<int>(names.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace g2::check
