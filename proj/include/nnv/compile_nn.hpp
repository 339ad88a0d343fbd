#pragma once

#include <set>
#include <string>
#include <vector>

#include "nnv/formula.hpp"

namespace nnv {

// Draws fresh variable names "$<stem><n>". The '$' prefix is rejected by the
// surface grammar, so generated names can never capture user variables.
class FreshVarPool {
 public:
  FreshVarPool() = default;
  explicit FreshVarPool(std::set<std::string> used) : used_(std::move(used)) {}

  std::string fresh(const std::string& stem);
  std::vector<std::string> fresh_block(const std::string& stem, int count);

 private:
  std::set<std::string> used_;
  long counter_ = 1;
};

// b + sum of row[j]*xs[j], with zero coefficients skipped.
Term affine_term(const Vec& row, const Rational& bias,
                 const std::vector<std::string>& xs);

// The defining formula of a network: (x̄,ȳ) satisfies it iff eval(net,x̄)=ȳ.
// Layers are chained through an existential block of intermediate tuples;
// relu neurons case-split through a fresh existential each. Only id/relu
// activations are translatable to linear arithmetic.
Formula nn_to_lra(const Ffnn& net, const std::vector<std::string>& xvars,
                  const std::vector<std::string>& yvars, FreshVarPool& pool);
Formula nn_to_lra(const Ffnn& net, const std::vector<std::string>& xvars,
                  const std::vector<std::string>& yvars);

// Replaces every network atom in phi by the network's defining formula, and
// every negated atom N(x̄)=(ȳ) by ∃z̄.(φ_N(x̄,z̄) ∧ ⋁ yi≠zi). Free variables
// are preserved. exists_nnl_lower additionally reassembles the result into a
// single leading existential block over a quantifier-free matrix.
Formula nnl_lower(const Formula& phi, const NetworkBinding& nets);
Formula exists_nnl_lower(const Formula& phi, const NetworkBinding& nets);

// Like nnl_lower, but in the dialect extended with the power-of-two
// predicate, which passes through lowering untouched.
Formula nnl_plus_lower(const Formula& phi, const NetworkBinding& nets);

// Like nnl_lower, but into the exponential-field dialect: nlrelu, sigmoid and
// tanh neurons are characterized through equations over e^t terms (sigmoid z
// gives y*(1 + e^z) = e^z, tanh gives y*(e^(2*z) + 1) = e^(2*z) - 1, nlrelu
// gives e^y = z + 1 on the active branch). heaviside and softmax have no such
// characterization and are rejected with the offending layer index.
Formula nnlstar_to_ref(const Formula& phi, const NetworkBinding& nets);

// Functionally equal network where every layer except the last is relu. Each
// id neuron t splits into relu(t) and relu(-t); consumers read the pair with
// signed weights, using t = relu(t) - relu(-t).
Ffnn id_to_relu(const Ffnn& net);

}  // namespace nnv
