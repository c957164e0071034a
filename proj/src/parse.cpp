// Recursive-descent parser for the expression grammar:
//
//   expr   = term { ("+" | "-") term }
//   term   = unary { ("*" | "/") unary }
//   unary  = ("+" | "-") unary | power
//   power  = atom [ "^" unary ]
//   atom   = integer | identifier | "(" expr ")"
//
// a/b rational literals are ordinary divisions of integers. Exponents must
// evaluate to integer constants.

#include <cctype>
#include <cstdlib>
#include <optional>

#include "expr.hpp"

namespace g2 {

namespace {

// Builds values of type V through Ops: the normal-form builder below, or exact
// evaluation of the text as written.
template <class V, class Ops>
class Parser {
 public:
  Parser(const SpacePtr& sp, const std::string& s, Ops& ops) : sp_(sp), s_(s), ops_(ops) {}

  V run() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("empty expression", pos_);
    V e = expr();
    skip();
    if (pos_ < s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return e;
  }

 private:
  const SpacePtr& sp_;
  const std::string& s_;
  Ops& ops_;
  size_t pos_ = 0;
  int depth_ = 0;

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  V expr() {
    if (++depth_ > 500) throw ParseError("expression nested too deeply", pos_);
    V e = term();
    while (true) {
      if (eat('+'))
        e = e + term();
      else if (eat('-'))
        e = e - term();
      else
        break;
    }
    --depth_;
    return e;
  }

  V term() {
    V e = unary();
    while (true) {
      if (eat('*')) {
        e = e * unary();
      } else if (eat('/')) {
        size_t at = pos_;
        V d = unary();
        e = ops_.div(e, d, at);
      } else {
        break;
      }
    }
    return e;
  }

  V unary() {
    if (++depth_ > 500) throw ParseError("expression nested too deeply", pos_);
    V e;
    if (eat('-'))
      e = -unary();
    else if (eat('+'))
      e = unary();
    else
      e = power();
    --depth_;
    return e;
  }

  V power() {
    V b = atom();
    if (!eat('^')) return b;
    size_t at = pos_;
    V ex = unary();
    auto k = ops_.constant_of(ex);
    if (!k) throw ParseError("exponent must be an integer constant", at);
    if (k->get_den() != 1 || abs(*k) > 10000) throw ParseError("exponent must be a small integer", at);
    return ops_.pow(b, static_cast<int>(k->get_num().get_si()), at);
  }

  V atom() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return ops_.integer(mpz_class(s_.substr(st, pos_ - st)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t st = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string id = s_.substr(st, pos_ - st);
      auto i = sp_->find(id);
      if (!i) throw UnknownSymbol(id, st);
      return ops_.symbol(*i);
    }
    if (c == '(') {
      ++pos_;
      V e = expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }
};

struct ExprOps {
  SpacePtr sp;
  Expr integer(const mpz_class& z) { return Expr(sp, mpq_class(z)); }
  Expr symbol(int i) { return Expr::sym(sp, i); }
  Expr div(const Expr& a, const Expr& b, size_t at) {
    if (b.is_zero_nf()) throw ParseError("division by zero", at);
    return a / b;
  }
  std::optional<mpq_class> constant_of(const Expr& e) {
    if (!e.is_const()) return std::nullopt;
    return e.const_value();
  }
  Expr pow(const Expr& b, int n, size_t at) {
    if (n < 0 && b.is_zero_nf()) throw ParseError("negative power of zero", at);
    return b.pow(n);
  }
};

// exact value with every intermediate denominator checked
struct ValueOps {
  const Space& sp;
  const std::map<int, mpq_class>& point;
  mpq_class integer(const mpz_class& z) { return mpq_class(z); }
  mpq_class symbol(int i) {
    if (!sp.sym(i).independent()) throw BranchError("exact evaluation of dependent symbol " + sp.sym(i).name);
    auto it = point.find(i);
    if (it == point.end()) throw DomainError("no value for symbol " + sp.sym(i).name);
    return it->second;
  }
  mpq_class div(const mpq_class& a, const mpq_class& b, size_t at) {
    if (b == 0) throw PoleError("division by zero at position " + std::to_string(at));
    return a / b;
  }
  std::optional<mpq_class> constant_of(const mpq_class& v) { return v; }
  mpq_class pow(const mpq_class& b, int n, size_t at) {
    if (n < 0 && b == 0) throw PoleError("negative power of zero at position " + std::to_string(at));
    mpq_class r = 1, x = n < 0 ? mpq_class(1 / b) : b;
    for (int k = 0; k < std::abs(n); ++k) r *= x;
    return r;
  }
};

}  // namespace

Expr parse(const SpacePtr& sp, const std::string& text) {
  ExprOps ops{sp};
  return Parser<Expr, ExprOps>(sp, text, ops).run();
}

mpq_class evaluate_text(const SpacePtr& sp, const std::string& text, const std::map<int, mpq_class>& point) {
  parse(sp, text);  // the same syntax and symbol errors as parse
  ValueOps ops{*sp, point};
  return Parser<mpq_class, ValueOps>(sp, text, ops).run();
}

}  // namespace g2
