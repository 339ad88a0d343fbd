#pragma once

#include <array>
#include <string>
#include <vector>

#include "nnv/compile_nn.hpp"
#include "nnv/formula.hpp"

namespace nnv {

// CNF with exactly three literals per clause. Literal +i / -i is variable i
// (1-based) positive / negated; 0 is not a literal.
struct Cnf3 {
  int num_vars = 0;
  std::vector<std::array<int, 3>> clauses;
};

// DIMACS cnf text: 'c' comment lines, one 'p cnf <vars> <clauses>' header,
// then whitespace-separated literals with 0 terminating each clause. Clauses
// of length other than three, literals out of range, and clause-count
// mismatches are rejected.
Cnf3 parse_dimacs(const std::string& text);

// A reachability query: does some input satisfying the input constraints map
// to an output satisfying the output constraints? Constraints are <=/< atoms
// over x1..xm respectively y1..yn (equalities allowed as sugar).
struct ReachInstance {
  Ffnn network;
  std::vector<Formula> input_constraints;
  std::vector<Formula> output_constraints;
};

// The instance as a closed existential sentence
//   exists x̄ ȳ. name(x̄) = (ȳ) && <input constraints> && <output constraints>.
Formula reach_formula(const ReachInstance& inst,
                      const std::string& name = "N");

// Reduces 3SAT to reachability of a two-layer relu network. Inputs r1..rm are
// unconstrained; the outputs demand y1 = #clauses (every clause satisfied
// under the rounded reading) and zi = 0 (each ri is exactly 0 or 1, since
// relu(r - 1/2) + relu(1/2 - r) - 1/2 vanishes only there). The instance is
// satisfiable iff the CNF is.
ReachInstance sat3_to_reach(const Cnf3& cnf);

}  // namespace nnv
