#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nnv/linalg.hpp"

namespace nnv {

// id, relu and heaviside are exactly evaluable over rationals; the others are
// float-mode only.
enum class Activation { Id, Relu, NlRelu, Sigmoid, Tanh, Heaviside, Softmax };

bool exact_activation(Activation f);
std::string_view activation_name(Activation f);
std::optional<Activation> activation_from_name(std::string_view name);

struct Layer {
  Mat weights;  // out_dim x in_dim
  Vec bias;     // out_dim
  Activation act = Activation::Id;

  int in_dim() const { return cols(weights); }
  int out_dim() const { return rows(weights); }
};

struct Ffnn {
  std::vector<Layer> layers;

  int in_dim() const;
  int out_dim() const;
};

// Throws std::invalid_argument on ragged matrices, bias/row mismatches, or a
// broken dimension chain.
void check_wellformed(const Ffnn& net);

// f(W·x + b). The exact overload throws on float-only activations.
Vec eval_layer(const Layer& layer, const Vec& x);
DVec eval_layer(const Layer& layer, const DVec& x);

Vec eval(const Ffnn& net, const Vec& x);
DVec eval(const Ffnn& net, const DVec& x);

// Feeds first's output into second; requires out(first) = in(second).
Ffnn concat(const Ffnn& first, const Ffnn& second);

// All maximizing indices, 1-based. classify picks the smallest of them on the
// network output.
std::vector<int> argmax_set(const Vec& y);
std::vector<int> argmax_set(const DVec& y);
int classify(const Ffnn& net, const Vec& x);

// result[i] = x[pi[i]] with pi a 0-based bijection on {0..n-1}.
Vec apply_permutation(const std::vector<int>& pi, const Vec& x);

// Bits needed to write p/q with sign and binary-encoded magnitudes:
// 1 + ceil(log2(|p|+1) + 1) + ceil(log2(q+1) + 1).
long encoded_size(const Rational& q);
// Sum of entry sizes over all weights and biases.
long encoded_size(const Ffnn& net);

namespace examples {

// Two-layer ReLU net computing max(x1, x2) via max(x1-x2, 0) + x2.
Ffnn max_net();

// Same shape as max_net but with small decimal weights; used wherever tests
// need a net whose behaviour is not described by a closed form.
Ffnn decimal_net();

}  // namespace examples

}  // namespace nnv
