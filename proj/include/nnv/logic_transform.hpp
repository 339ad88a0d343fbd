#pragma once

#include <optional>
#include <vector>

#include "nnv/formula.hpp"
#include "nnv/parser.hpp"

namespace nnv {

// Rewrites surface sugar into core nodes, preserving semantics:
//   t1 = t2    ->  t1 <= t2 && t2 <= t1
//   t1 != t2   ->  t1 < t2 || t2 < t1
//   a => b     ->  !a || b
//   a <=> b    ->  (!a || b) && (!b || a)
//   forall x.f ->  !exists x.!f
//   !NnAtom    ->  NegNnAtom (and back for double negation)
// Lt is first-class and survives.
Formula expand_abbrev(const Formula& f);

// Additionally rewrites t1 < t2 into !(t2 <= t1) so the atom basis is <= only.
Formula expand_strict(const Formula& f);

// Negation normal form with complemented atoms: =>/<=> are eliminated,
// negation is pushed through connectives and quantifiers and absorbed into
// atoms (!(a <= b) becomes b < a, != pairs with =, network atoms flip to
// their negated node). Only ispow2 keeps an explicit '!'.
Formula to_nnf(const Formula& f);

// Removes double negations recursively.
Formula simplify_neg(const Formula& f);

// Fresh-name supply. fresh() returns the hint when unclaimed, otherwise
// primed variants, otherwise a generated '$'-name which the surface grammar
// cannot collide with.
class NameSupply {
 public:
  NameSupply() = default;
  explicit NameSupply(std::set<std::string> used) : used_(std::move(used)) {}
  void reserve(const std::string& name) { used_.insert(name); }
  std::string fresh(const std::string& hint);

 private:
  std::set<std::string> used_;
  long counter_ = 0;
};

// Prenex form with the quantifier prefix spelled as an "exists x." /
// "!exists x." chain: reading the prefix left to right around the matrix
// reproduces an equivalent sentence with no other negations above quantifiers.
struct PrenexStep {
  bool negated;  // true = "!exists var."
  std::string var;
};

struct Prenex {
  std::vector<PrenexStep> prefix;  // variables pairwise distinct
  Formula matrix;                  // quantifier-free
};

Prenex to_prenex(const Formula& f);
Formula prenex_to_formula(const Prenex& p);

// First dialect violation, or nullopt when f belongs to the dialect.
// Validation is up to abbreviation expansion: sugar that expands into the
// dialect is accepted.
std::optional<std::string> dialect_violation(const Formula& f, Dialect d);
void check_dialect(const Formula& f, Dialect d);  // throws std::invalid_argument

}  // namespace nnv
