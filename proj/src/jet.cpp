#include "jet.hpp"

namespace g2 {

SpacePtr jet_space(int n, const std::vector<std::string>& params) {
  if (n < 0) throw DomainError("negative jet order");
  std::vector<std::string> c{"x", "y"};
  for (int k = 1; k <= n; ++k) c.push_back("y" + std::to_string(k));
  SpacePtr sp = Space::make(c, params);
  const char* alias = "pqrstu";
  for (int k = 1; k <= std::min(n, 6); ++k)
    if (!sp->find(std::string(1, alias[k - 1]))) sp = sp->with_alias(std::string(1, alias[k - 1]), "y" + std::to_string(k));
  return sp;
}

OdeDefinition make_ode(const std::string& name, const std::string& rhs, int order) {
  if (order < 1) throw DomainError("ODE order must be positive");
  return make_ode(name, parse(jet_space(order - 1), rhs), order);
}

OdeDefinition make_ode(const std::string& name, const Expr& rhs, int order) {
  if (order < 1) throw DomainError("ODE order must be positive");
  const Space& sp = *rhs.space();
  // the jet coordinates must be the leading symbols x, y, y1..yn and nothing of higher order
  if (sp.size() < static_cast<size_t>(order + 1) || sp.sym(0).name != "x" || sp.sym(1).name != "y")
    throw DomainError("ODE right-hand side must live in a jet space of order " + std::to_string(order - 1));
  for (int k = 1; k < order; ++k)
    if (sp.sym(jet_index(k)).name != "y" + std::to_string(k)) throw DomainError("malformed jet space");
  if (auto hi = sp.find("y" + std::to_string(order)); hi && rhs.depends_on(*hi))
    throw DomainError("right-hand side uses y" + std::to_string(order));
  return {name, order, rhs};
}

Expr total_derivative(const Expr& e0, const OdeDefinition& ode) {
  SpacePtr sp = ode.space()->extends(e0.space().get()) ? ode.space() : e0.space();
  Expr e = e0.lift(sp);
  Derivation d;
  int n = ode.n();
  d.on.emplace(kX, Expr(sp, 1));
  for (int k = 0; k < n; ++k) d.on.emplace(jet_index(k), Expr::sym(sp, jet_index(k + 1)));
  d.on.emplace(jet_index(n), ode.rhs);
  return derive(e, d);
}

Expr Fk(const Expr& e, int k) { return partial(e, jet_index(k)); }

}  // namespace g2
