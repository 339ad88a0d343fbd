#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nnv/formula.hpp"

namespace nnv {

// Parameters for the named correctness properties. Only the fields a property
// needs have to be set; build_spec reports which one is missing.
struct SpecParams {
  int m = 0;                // input arity
  int n = 0;                // output arity (defaults per property when 0)
  std::vector<int> K;       // fairness: 1-based input positions that must agree
  std::optional<Rational> epsilon;  // robustness: perturbation budget
  Formula region;           // optional input-region constraint over x1..xm
  std::string net = "N";
  std::string net2 = "M";   // equivalence: the second network
};

// x is one of ys:  x = y1 || ... || x = yn
Formula elem_of(const Term& x, const std::vector<Term>& ys);

// x = max(ys):  x is one of ys and every yi <= x
Formula is_max(const Term& x, const std::vector<Term>& ys);

// The positions of ys holding the maximum are exactly the 1-based set K.
Formula argmax_is(const std::vector<Term>& ys, const std::vector<int>& K);

// argmax(ys) = argmax(zs), spelled as a disjunction over all candidate sets.
Formula argmax_eq(const std::vector<Term>& ys, const std::vector<Term>& zs);

// Builds the sentence for a named property:
//   max               network computes the maximum of its inputs
//   sorted            output is a sorted permutation of the input
//   perm_invariant    all input permutations share one output tuple
//   perm_equivariant  permuting inputs permutes outputs the same way
//   fairness          equal non-protected inputs give equal argmax
//   robustness        L1-close inputs (within epsilon) give equal argmax
//   equivalence       two networks agree on argmax over the region
//   injective         distinct inputs give distinct outputs
//   surjective        every output tuple is hit
//   xor               network computes exclusive-or on {0,1} inputs
// Permutation properties enumerate all m! orders and require m <= 6.
Formula build_spec(const std::string& name, const SpecParams& params);

}  // namespace nnv
