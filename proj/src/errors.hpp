#pragma once
#include <stdexcept>
#include <string>

namespace g2 {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  size_t pos;
  ParseError(const std::string& msg, size_t p)
      : Error("parse error at position " + std::to_string(p) + ": " + msg), pos(p) {}
};

struct UnknownSymbol : Error {
  std::string symbol;
  size_t pos;
  UnknownSymbol(const std::string& s, size_t p)
      : Error("unknown symbol '" + s + "' at position " + std::to_string(p)), symbol(s), pos(p) {}
};

// evaluation hit a zero denominator, or a zero denominator was built
struct PoleError : Error {
  using Error::Error;
};

// precondition of an operation violated
struct DomainError : Error {
  using Error::Error;
};

struct BranchError : Error {
  using Error::Error;
};

// every random sample point landed on a pole
struct Inconclusive : Error {
  using Error::Error;
};

// exact and probabilistic zero tests gave different answers
struct ZeroTestDisagreement : Error {
  using Error::Error;
};

}  // namespace g2
