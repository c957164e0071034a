#pragma once
// Jet coordinates x, y, y1..yn and ODEs y^(n+1) = F(x, y, ..., yn).

#include <string>
#include <vector>

#include "expr.hpp"

namespace g2 {

// coordinates x, y, y1..yn (indices 0, 1, 2..n+1); for n >= 1 the aliases
// p, q, r, s, t, u name y1..y6 where present
SpacePtr jet_space(int n, const std::vector<std::string>& params = {});
inline int jet_index(int k) { return k + 1; }  // index of y_k, y_0 = y
inline constexpr int kX = 0;

struct OdeDefinition {
  std::string name;
  int order = 7;  // n + 1
  Expr rhs;
  int n() const { return order - 1; }
  const SpacePtr& space() const { return rhs.space(); }
};

// rhs parsed in jet_space(order - 1)
OdeDefinition make_ode(const std::string& name, const std::string& rhs, int order = 7);
OdeDefinition make_ode(const std::string& name, const Expr& rhs, int order = 7);

Expr total_derivative(const Expr& e, const OdeDefinition& ode);

// partial derivative by y_k
Expr Fk(const Expr& e, int k);

}  // namespace g2
