#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "nnv/ffnn.hpp"

namespace nnv {

// ---------------------------------------------------------------------------
// Terms. Linear terms cover every logic dialect here; Product and Exp only
// appear in formulas over the exponential field and are rejected elsewhere by
// the dialect validators.
// ---------------------------------------------------------------------------

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

enum class TermKind { Const, Scaled, Sum, Product, Exp };

struct TermNode {
  TermKind kind;
  Rational value;   // Const value, or Scaled coefficient
  std::string var;  // Scaled
  Term lhs, rhs;    // Sum/Product children; Exp uses lhs only
};

Term t_const(Rational c);
Term t_var(const std::string& name);  // shorthand for 1*name
Term t_scaled(Rational c, const std::string& name);
Term t_sum(Term a, Term b);
Term t_sum(const std::vector<Term>& ts);  // empty sum = 0
Term t_product(Term a, Term b);
Term t_exp(Term a);

bool term_equal(const Term& a, const Term& b);
bool term_is_linear(const Term& t);  // no Product/Exp anywhere

// ---------------------------------------------------------------------------
// Formulas. Core nodes: Le, Lt, Not, Or, And, Exists, NnAtom, NegNnAtom,
// IsPow2. Eq/Neq/Implies/Iff/Forall are surface sugar which expand_abbrev
// eliminates.
// ---------------------------------------------------------------------------

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

enum class Fk {
  Le, Lt, Eq, Neq,          // atoms over terms
  Not, Or, And, Implies, Iff,
  Exists, Forall,
  NnAtom, NegNnAtom,        // Name(x1..xm) = (y1..yn), possibly negated
  IsPow2
};

struct FormulaNode {
  Fk kind;
  Term t1, t2;
  Formula f1, f2;
  std::string var;                    // quantified variable, or IsPow2 argument
  std::string net;                    // NnAtom network name
  std::vector<std::string> ins, outs; // NnAtom variable tuples
};

Formula f_le(Term a, Term b);
Formula f_lt(Term a, Term b);
Formula f_eq(Term a, Term b);
Formula f_neq(Term a, Term b);
Formula f_not(Formula f);
Formula f_or(Formula a, Formula b);
Formula f_and(Formula a, Formula b);
Formula f_implies(Formula a, Formula b);
Formula f_iff(Formula a, Formula b);
Formula f_exists(const std::string& var, Formula f);
Formula f_forall(const std::string& var, Formula f);
Formula f_exists_all(const std::vector<std::string>& vars, Formula f);
Formula f_forall_all(const std::vector<std::string>& vars, Formula f);
Formula f_nn(const std::string& net, std::vector<std::string> ins,
             std::vector<std::string> outs);
Formula f_neg_nn(const std::string& net, std::vector<std::string> ins,
                 std::vector<std::string> outs);
Formula f_ispow2(const std::string& var);

// 0 <= 0 and its negation.
Formula f_true();
Formula f_false();

// And/Or over a list; empty list gives the neutral element.
Formula f_and_all(const std::vector<Formula>& fs);
Formula f_or_all(const std::vector<Formula>& fs);

bool formula_equal(const Formula& a, const Formula& b);

bool is_atom(const Formula& f);  // Le/Lt/Eq/Neq/NnAtom/NegNnAtom/IsPow2
bool is_quantifier_free(const Formula& f);

std::set<std::string> term_vars(const Term& t);
std::set<std::string> free_vars(const Formula& f);
std::set<std::string> all_vars(const Formula& f);  // free and bound

// Renames free occurrences of a variable (terms, atoms, tuples alike).
Term rename_var(const Term& t, const std::string& from, const std::string& to);
Formula rename_free_var(const Formula& f, const std::string& from, const std::string& to);

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

using Interpretation = std::map<std::string, Rational>;
using NetworkBinding = std::map<std::string, Ffnn>;

// Exact evaluation; throws on unbound variables and on Exp (transcendental).
Rational eval_term(const Term& t, const Interpretation& I);
// Float evaluation; additionally handles Exp.
double eval_term_float(const Term& t, const std::map<std::string, double>& I);

// Truth of a quantifier-free formula under I. Network atoms evaluate their
// network exactly and compare componentwise; throws on quantifiers, unbound
// variables/networks, or float-only activations inside an atom.
bool holds(const Formula& f, const Interpretation& I, const NetworkBinding& nets = {});

}  // namespace nnv
