#pragma once

#include <map>
#include <string>

#include "nnv/formula.hpp"

namespace nnv {

// Satisfaction checking for the quantified formulas the compilers emit, used
// by tests: existential variables are treated as unknowns and solved from the
// conjuncts that define them (v = t with one unknown, network atoms with
// known inputs, single-neuron atoms inverted from a known output, e^t = c).
// Conjunctions are swept to a fixpoint so definition order does not matter;
// disjunctions commit the first branch that checks out, which is enough for
// the emitted case-splits since their guards are mutually exclusive. Throws
// std::runtime_error when an unknown remains undetermined, rather than
// guessing.

// Float semantics; comparisons and equalities hold within the eps residual.
bool residual_holds_float(const Formula& f,
                          const std::map<std::string, double>& inputs,
                          const NetworkBinding& nets = {}, double eps = 1e-9);

// Exact rational semantics; rejects Exp terms and float-only activations.
bool transparent_holds_exact(const Formula& f, const Interpretation& inputs,
                             const NetworkBinding& nets = {});

}  // namespace nnv
