#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nnv/buchi.hpp"
#include "nnv/ffnn.hpp"
#include "nnv/formula.hpp"
#include "nnv/logic_transform.hpp"
#include "nnv/rational.hpp"

// Decision procedure for linear real arithmetic by automata over aligned
// binary words. Every rational tuple is spelled as a k-track word (see
// wf_codec.hpp); a relation over tuples becomes a Büchi automaton over those
// words, and the logical connectives become automaton operations. Quantifier
// elimination then walks the prenex prefix from the inside out, projecting
// one track per variable, until a 0-track automaton remains whose
// nonemptiness is the truth value of the sentence.
//
// Track indices are 1-based here, matching how variables x_1..x_k number the
// rows of a word. Constructions that need scratch values allocate tracks
// k+1, k+2, ... internally and project back down to k, so caller indices must
// stay within 1..k; repeated indices are allowed and mean what they say
// (e.g. add(k, i, j, j) relates dec(w_i) = 2 * dec(w_j)).
//
// Every automaton built here accepts all spellings of the tuples in its
// relation: leading-zero padding and both digit tails of terminating
// expansions are folded in by construction or restored with
// leading_zero_closure after projections.

namespace nnv {

// L = WF^k, the aligned well-formed words. k = 0 yields the automaton
// accepting the unique empty-column word.
Buchi wf_automaton(int k);

// dec(w_i) = dec(w_j), resp. dec(w_i) = -dec(w_j). Deterministic, so their
// complements stay linear in size.
Buchi eq_automaton(int k, int i, int j);
Buchi neg_automaton(int k, int i, int j);

// dec(w_i) <= dec(w_j), assembled as x_j = x_i + d for a nonnegative scratch
// track d.
Buchi le_automaton(int k, int i, int j);

// Digit-level addition dec(w_i) = dec(w_i1) + dec(w_i2): the sum track must
// be spelled so that a single carry bit per column reconciles it with the
// operands. Value-correct words can fail this when the operand tails and the
// sum tail pick different spellings of one number; add_automaton closes the
// gap by comparing against a freshly spelled sum on a scratch track.
Buchi add_bitwise_automaton(int k, int i, int i1, int i2);
Buchi add_automaton(int k, int i, int i1, int i2);

// dec(w_i) = sum of dec(w_j) over parts (empty sum = 0).
Buchi add_n_automaton(int k, int i, const std::vector<int>& parts);

// dec(w_i) = a * dec(w_j) for a rational constant a, by repeated doubling
// along the binary digits of the numerator and a cross-multiplied scratch
// pair for the denominator.
Buchi mult_automaton(int k, int i, const Rational& a, int j);

// dec(w_i) = b: accepts exactly the spellings of the constant.
Buchi const_automaton(int k, int i, const Rational& b);

// dec(w_i) is 1, 2, 4, 8, ...
Buchi power_of_two_automaton(int k, int i);

// The distinct terms of a quantifier-free matrix, variables first. Indices
// are 1-based and double as track numbers: a word over size() tracks carries
// the variable values followed by every derived term value.
struct TermTable {
  std::vector<Term> terms;
  std::size_t num_vars = 0;

  std::size_t size() const { return terms.size(); }
  std::size_t index_of(const Term& t) const;  // throws if absent
};

// Collects variables (in the given order) and all composite terms of the
// matrix. Rejects quantifiers, network atoms, nonlinear terms, and variables
// outside the given list.
TermTable build_term_table(const Formula& matrix,
                           const std::vector<std::string>& vars);

// A_term: words whose derived tracks carry exactly the values of their terms
// evaluated on the variable tracks. Intersection of one arithmetic atom per
// composite term; WF^m when there are none.
Buchi build_term_automaton(const Formula& matrix, const TermTable& table);

// B_phi: evaluates the matrix over the term tracks. Sound only relative to
// A_term: for words of L(A_term), acceptance coincides with satisfaction of
// the matrix under the track assignment.
Buchi compile_matrix(const Formula& matrix, const TermTable& table);

// A_phi over the variable tracks alone: spellings of exactly the satisfying
// assignments of the matrix.
Buchi formula_automaton(const Formula& matrix, const TermTable& table);

// Walks the prenex prefix from the innermost step outward: projection for an
// existential step, complement within the well-formed words for a negated
// one. Returns the 0-track automaton of the closed sentence.
Buchi eliminate_quantifiers(const std::vector<PrenexStep>& prefix,
                            const Buchi& a_phi);

// Truth of a closed sentence of linear real arithmetic, optionally with the
// power-of-two predicate. Throws on free variables and nonlinear terms.
bool decide_sentence(const Formula& sentence);

// Truth of a closed sentence over id/relu networks: lowers the network atoms
// to arithmetic first, then decides.
bool decide_nnl_sentence(const Formula& phi, const NetworkBinding& nets);

// Satisfying values for the leading existential block, decoded from an
// accepted lasso and validated before returning. Ground sentences yield an
// empty assignment when true; std::nullopt means the sentence is false.
// Throws if the outermost quantifier is universal.
std::optional<Interpretation> witness_exists(const Formula& phi,
                                             const NetworkBinding& nets = {});

}  // namespace nnv
