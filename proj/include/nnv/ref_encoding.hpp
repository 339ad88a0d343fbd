#pragma once

#include <string>

#include "nnv/compile_nn.hpp"
#include "nnv/formula.hpp"

namespace nnv {

// Single-neuron support networks (weight 1, bias 0) the exponential-free
// encodings lean on: "$sigma", "$tanh", "$eta" (natural-log relu). The
// reserved names keep them apart from user networks; formulas mentioning
// them print fine but are not meant to be reparsed.
NetworkBinding ref_support_nets();

// ln x = y, for x > 0, without exponential terms: on x >= 1 via the
// shifted nlrelu atom $eta(x-1) = y, on 0 < x < 1 assembled from inverse
// atoms as ln x = logit(x) - 2*atanh(x) + ln(1+x).
Formula phi_ln(const std::string& x, const std::string& y, FreshVarPool& pool);

// e^x = y, the same relation read the other way.
Formula phi_exp(const std::string& x, const std::string& y,
                FreshVarPool& pool);

// x*y = z across all nine sign patterns; any zero factor forces z = 0, the
// nonzero patterns route |x|*|y| = e^(ln|x| + ln|y|) and restore the sign.
Formula phi_mult(const std::string& x, const std::string& y,
                 const std::string& z, FreshVarPool& pool);

struct NnlStarLowering {
  Formula formula;
  NetworkBinding support;  // the networks the formula's atoms refer to
};

// Eliminates products and exponentials from a formula over the exponential
// field: each comparison t1 <= t2 becomes an existential block with one tape
// variable per distinct subterm, constrained bottom-up (z_t + z_t' = z_{t+t'}
// for sums, phi_mult/phi_exp for the rest) and compared at the roots.
NnlStarLowering ref_to_nnlstar(const Formula& phi);

}  // namespace nnv
