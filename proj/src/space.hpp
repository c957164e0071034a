#pragma once
// Symbol tables. A Space is an immutable ordered list of symbols; spaces are
// grown by extension, and an extension keeps the indices of its parent so
// expressions from the parent remain valid in the child unchanged.

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "poly.hpp"

namespace g2 {

enum class SymKind { Coordinate, Parameter, Radical, Exponential, Formal };

struct Symbol {
  Symbol() = default;
  Symbol(std::string n, SymKind k) : name(std::move(n)), kind(k) {}
  std::string name;
  SymKind kind = SymKind::Coordinate;
  // Radical: s^m = base, base an integer polynomial in earlier independent symbols
  int m = 0;
  Poly base;
  // Exponential: s = exp(fc * fnum / fden) with fnum, fden in earlier symbols
  mpq_class fc;
  Poly fnum, fden;
  // Formal function derivative: argument symbol -> symbol of the next partial (-1: truncated)
  std::vector<std::pair<int, int>> dtable;

  bool independent() const { return kind == SymKind::Coordinate || kind == SymKind::Parameter; }
};

class Space;
using SpacePtr = std::shared_ptr<const Space>;

class Space : public std::enable_shared_from_this<Space> {
 public:
  static SpacePtr make(const std::vector<std::string>& coords, const std::vector<std::string>& params = {});

  size_t size() const { return syms_.size(); }
  const Symbol& sym(int i) const { return syms_.at(i); }
  std::optional<int> find(const std::string& name) const;  // honours aliases
  int index(const std::string& name) const;                 // throws if absent
  bool extends(const Space* other) const;                   // other is this or an ancestor
  bool has_radicals() const { return nrad_ > 0; }
  bool has_dependent() const { return ndep_ > 0; }
  const SpacePtr& parent() const { return parent_; }

  // new spaces; the receiver is unchanged
  SpacePtr with_params(const std::vector<std::string>& names) const;
  SpacePtr with_coords(const std::vector<std::string>& names) const;
  SpacePtr with_alias(const std::string& alias, const std::string& target) const;
  SpacePtr with_radical(const std::string& name, int m, const Poly& base) const;
  SpacePtr with_exponential(const std::string& name, const mpq_class& c, const Poly& num, const Poly& den) const;
  // all partials of a formal function of `args` up to total order `order`;
  // named F, F_a, F_a_b, ... with argument names in argument order
  SpacePtr with_formal(const std::string& fname, const std::vector<int>& args, int order) const;

  // name of the formal partial of fname for the given argument multiset
  static std::string formal_name(const std::string& fname, const std::vector<std::string>& args);

 private:
  Space() = default;
  std::shared_ptr<Space> clone() const;
  void add(Symbol s);

  std::vector<Symbol> syms_;
  std::unordered_map<std::string, int> names_;
  std::unordered_map<std::string, int> aliases_;
  SpacePtr parent_;
  int nrad_ = 0, ndep_ = 0;
};

}  // namespace g2
