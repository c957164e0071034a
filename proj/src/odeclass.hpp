#pragma once
// Contact invariants of 7th order ODEs: the Wunschmann conditions, the
// Fernandez-Gray torsion conditions, and the classification pipeline.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jet.hpp"

namespace g2 {

// Partials F_k, total derivatives and their caches for one ODE.
class JetCalculus {
 public:
  explicit JetCalculus(OdeDefinition ode);
  const OdeDefinition& ode() const { return ode_; }
  const Expr& F(int k);             // dF/dy_k, k = 0..n (y_0 = y)
  const Expr& F(int k, int l);      // second partials
  const Expr& F(int k, int l, int m);
  const Expr& DF(int k);            // D(F_k)
  const Expr& D2(int k);            // D(D(F_k))
  Expr D(const Expr& e) const { return total_derivative(e, ode_); }

 private:
  OdeDefinition ode_;
  std::map<std::vector<int>, Expr> partials_;
  std::map<int, Expr> df_, d2_;
  const Expr& partial_seq(std::vector<int> ks);
};

// the general order-(n+1) W1, all six terms
Expr w1_general(int n, const Expr& F);

struct WunschmannReport {
  std::array<Expr, 5> W;
  std::array<ZeroTest, 5> test;
  bool vanishes(int i) const { return test[i].zero; }
  bool all_vanish() const;
};

// The five order-7 Wunschmann expressions, zero-tested. Radical-bearing ODEs are
// sampled at opt.points points (at least 64 here) on top of the exact test.
WunschmannReport wunschmann7(const OdeDefinition& ode, ZeroOptions opt = {});
std::array<Expr, 5> wunschmann_expressions(JetCalculus& jc);

struct Witness {
  std::string name;
  Expr expr;
  ZeroTest test;
  bool vanishes() const { return test.zero; }
};

struct FGTypeReport {
  bool applicable = false;
  std::string reason;  // when not applicable
  Witness lambda, tau2, tau3, v7, v11;
  std::string v3;  // "implied zero" or "not determined"
  std::vector<std::string> classes;  // subset of W1..W4
  std::string label() const;         // "W2+W4" or "torsion-free"
};

FGTypeReport fg_conditions(const OdeDefinition& ode, const WunschmannReport& w, ZeroOptions opt = {});
// witnesses only, no precondition
std::array<Expr, 5> fg_witnesses(JetCalculus& jc);

// (DF)_{k...}: partials taken after the total derivative
Expr DF_then_partial(JetCalculus& jc, const std::vector<int>& ks);

struct CatalogEntry {
  std::string name;
  std::string citation;
  std::string text;
};
const std::vector<CatalogEntry>& ode_catalog_entries();
OdeDefinition ode_catalog(const std::string& name);

struct ClassificationReport {
  std::string name;
  std::string rhs;
  WunschmannReport wunschmann;
  FGTypeReport fg;
  bool admits_geometry() const { return wunschmann.all_vanish(); }
  double seconds = 0;
};

ClassificationReport classify(const OdeDefinition& ode, ZeroOptions opt = {});

}  // namespace g2
