#include "space.hpp"

#include <algorithm>
#include <functional>

#include "errors.hpp"

namespace g2 {

SpacePtr Space::make(const std::vector<std::string>& coords, const std::vector<std::string>& params) {
  auto s = std::shared_ptr<Space>(new Space());
  for (const auto& c : coords) s->add({c, SymKind::Coordinate});
  for (const auto& p : params) s->add({p, SymKind::Parameter});
  return s;
}

std::shared_ptr<Space> Space::clone() const {
  auto s = std::shared_ptr<Space>(new Space(*this));
  s->parent_ = shared_from_this();
  return s;
}

void Space::add(Symbol s) {
  if (names_.count(s.name) || aliases_.count(s.name)) throw DomainError("duplicate symbol name " + s.name);
  if (s.name.empty()) throw DomainError("empty symbol name");
  if (s.kind == SymKind::Radical) ++nrad_;
  if (!s.independent()) ++ndep_;
  names_[s.name] = static_cast<int>(syms_.size());
  syms_.push_back(std::move(s));
}

std::optional<int> Space::find(const std::string& name) const {
  if (auto it = names_.find(name); it != names_.end()) return it->second;
  if (auto it = aliases_.find(name); it != aliases_.end()) return it->second;
  return std::nullopt;
}

int Space::index(const std::string& name) const {
  if (auto i = find(name)) return *i;
  throw UnknownSymbol(name, 0);
}

bool Space::extends(const Space* other) const {
  for (const Space* s = this; s; s = s->parent_.get())
    if (s == other) return true;
  return false;
}

SpacePtr Space::with_params(const std::vector<std::string>& names) const {
  auto s = clone();
  for (const auto& n : names) s->add({n, SymKind::Parameter});
  return s;
}

SpacePtr Space::with_coords(const std::vector<std::string>& names) const {
  auto s = clone();
  for (const auto& n : names) s->add({n, SymKind::Coordinate});
  return s;
}

SpacePtr Space::with_alias(const std::string& alias, const std::string& target) const {
  auto s = clone();
  if (s->names_.count(alias) || s->aliases_.count(alias)) throw DomainError("alias clashes: " + alias);
  s->aliases_[alias] = index(target);
  return s;
}

SpacePtr Space::with_radical(const std::string& name, int m, const Poly& base) const {
  if (m < 2) throw DomainError("radical degree must be at least 2");
  if (base.is_zero()) throw DomainError("radical of zero");
  for (int v : base.vars())
    if (v >= static_cast<int>(syms_.size()) || !syms_[v].independent())
      throw DomainError("radical base must use independent symbols only");
  auto s = clone();
  Symbol r{name, SymKind::Radical};
  r.m = m;
  r.base = base;
  s->add(std::move(r));
  return s;
}

SpacePtr Space::with_exponential(const std::string& name, const mpq_class& c, const Poly& num, const Poly& den) const {
  if (den.is_zero()) throw PoleError("exponent with zero denominator");
  auto s = clone();
  Symbol e{name, SymKind::Exponential};
  e.fc = c;
  e.fnum = num;
  e.fden = den;
  s->add(std::move(e));
  return s;
}

std::string Space::formal_name(const std::string& fname, const std::vector<std::string>& args) {
  std::string n = fname;
  for (const auto& a : args) n += "_" + a;
  return n;
}

SpacePtr Space::with_formal(const std::string& fname, const std::vector<int>& args, int order) const {
  auto s = clone();
  // enumerate nondecreasing index sequences into args, by total order
  std::map<std::vector<int>, int> idx;
  std::vector<std::vector<int>> level{{}};
  for (int k = 0; k <= order; ++k) {
    std::vector<std::vector<int>> next;
    for (const auto& a : level) {
      std::vector<std::string> nm;
      for (int j : a) nm.push_back(syms_.at(args[j]).name);
      Symbol f{formal_name(fname, nm), SymKind::Formal};
      idx[a] = static_cast<int>(s->syms_.size());
      s->add(std::move(f));
      int start = a.empty() ? 0 : a.back();
      for (int j = start; j < static_cast<int>(args.size()); ++j) {
        auto b = a;
        b.push_back(j);
        next.push_back(b);
      }
    }
    level = std::move(next);
  }
  for (auto& [a, i] : idx) {
    for (int j = 0; j < static_cast<int>(args.size()); ++j) {
      auto b = a;
      b.push_back(j);
      std::sort(b.begin(), b.end());
      auto it = idx.find(b);
      s->syms_[i].dtable.push_back({args[j], it == idx.end() ? -1 : it->second});
    }
  }
  return s;
}

}  // namespace g2
