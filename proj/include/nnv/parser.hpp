#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "nnv/formula.hpp"

namespace nnv {

// The seven input languages share one grammar; a dialect picks the allowed
// subset (checked after parsing by check_dialect, see logic_transform.hpp).
enum class Dialect { Lra, Nnl, ExistsLra, ExistsNnl, Reach, NnlPlus, Ref };

const char* dialect_name(Dialect d);
std::optional<Dialect> dialect_from_name(std::string_view name);

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg), position(pos) {}
};

// Grammar (UTF-8 text, whitespace-insensitive):
//   variables  [a-zA-Z_][a-zA-Z0-9_']*   ('$' is reserved for generated names)
//   terms      c | c*x | x | t + t       (REF additionally: t * t, e^(t))
//   atoms      t <= t | t < t | t = t | t != t | ispow2(x) | N(x,..) = (y,..)
//   formulas   !f | f && f | f || f | f => f | f <=> f
//              | exists x. f | forall x. f | (f)
// Quantifier bodies extend as far right as possible. '!' on a network atom
// parses to its negated-atom node.
Formula parse_formula(std::string_view text);

// parse + dialect check in one step.
Formula parse_formula(std::string_view text, Dialect dialect);

Term parse_term(std::string_view text);

// Canonical text; parse(print(f)) reproduces f node for node.
std::string print_formula(const Formula& f);
std::string print_term(const Term& t);

}  // namespace nnv
