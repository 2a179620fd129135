#pragma once

// Surface expression language: parser, canonical printer and evaluator over
// scalars, vectors, families, classes and tensor elements.
//
//   expr    := sum ('==' sum)?
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?
//   primary := INT | NAME | NAME '(' args ')' | '(' expr ')' | '[' args ']'
//            | 'fam' '(' 'tail' '=' '[' args ']' ('*' gphase(c, 1/m))* (';' INT '->' expr (',' ...)*)? ')'

#include <string>
#include <variant>
#include <vector>

#include "gitp/innerprod.hpp"
#include "gitp/staralgebra.hpp"

namespace gitp {

/// Parse or evaluation error located at a byte offset of the source.
class ExprError : public Error {
 public:
  ExprError(const std::string& what, std::size_t position)
      : Error(what + " at " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class SyntaxError : public ExprError {
 public:
  using ExprError::ExprError;
};

class TypeMismatch : public ExprError {
 public:
  TypeMismatch(const std::string& expected, const std::string& actual, std::size_t position)
      : ExprError("type mismatch: expected " + expected + ", got " + actual, position) {}
};

struct Expr {
  enum class Kind { kNumber, kName, kCall, kNeg, kBinary, kList, kFamily };

  Kind kind = Kind::kNumber;
  std::string text;  ///< literal, name, callee or operator
  std::vector<Expr> args;  ///< operands, call arguments, list items or family tail
  std::size_t pos = 0;
  // Family literals only.
  std::vector<Expr> phase_turns;
  std::vector<long> phase_bases;
  std::vector<std::size_t> override_index;
  std::vector<Expr> override_values;

  friend bool operator==(const Expr&, const Expr&) = default;
};

Expr parse(const std::string& text);
/// Canonical print with minimal parentheses; parse(print(e)) prints back identically.
std::string print(const Expr& e);

using Value = std::variant<bool, Cyc, Vec, CycMatrix, CoordFamily, ClassId, TensorElement, GroupAlgebraElement,
                           std::vector<TensorElement>>;

std::string type_name(const Value& v);
/// Printed values parse back to equal values (families over unweighted spaces).
std::string to_string(const Value& v);

/// "C", "C^n", "M2", "C[Zn]" (also "Zn").
CoordinateAlgebra algebra_by_name(const std::string& name);

/// Evaluates expressions; products and involutions use the given coordinate
/// algebra, whose coordinate spaces are attached to families of matching
/// dimension.
class Evaluator {
 public:
  explicit Evaluator(CoordinateAlgebra alg = CoordinateAlgebra::scalars()) : alg_(std::move(alg)) {}

  const CoordinateAlgebra& algebra() const { return alg_; }
  Value eval(const Expr& e) const;
  Value eval(const std::string& text) const { return eval(parse(text)); }

 private:
  Value call(const Expr& e) const;
  Value binary(const Expr& e) const;
  CoordFamily family(const Expr& e) const;
  SpaceFamily spaces_for(const std::vector<int>& dims) const;

  CoordinateAlgebra alg_;
};

}  // namespace gitp
