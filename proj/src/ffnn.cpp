#include "nnv/ffnn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nnv {

bool exact_activation(Activation f) {
  switch (f) {
    case Activation::Id:
    case Activation::Relu:
    case Activation::Heaviside:
      return true;
    default:
      return false;
  }
}

std::string_view activation_name(Activation f) {
  switch (f) {
    case Activation::Id: return "id";
    case Activation::Relu: return "relu";
    case Activation::NlRelu: return "nlrelu";
    case Activation::Sigmoid: return "sigmoid";
    case Activation::Tanh: return "tanh";
    case Activation::Heaviside: return "heaviside";
    case Activation::Softmax: return "softmax";
  }
  return "?";
}

std::optional<Activation> activation_from_name(std::string_view name) {
  for (Activation f : {Activation::Id, Activation::Relu, Activation::NlRelu,
                       Activation::Sigmoid, Activation::Tanh, Activation::Heaviside,
                       Activation::Softmax})
    if (activation_name(f) == name) return f;
  return std::nullopt;
}

int Ffnn::in_dim() const {
  if (layers.empty()) throw std::invalid_argument("empty network");
  return layers.front().in_dim();
}

int Ffnn::out_dim() const {
  if (layers.empty()) throw std::invalid_argument("empty network");
  return layers.back().out_dim();
}

void check_wellformed(const Ffnn& net) {
  if (net.layers.empty()) throw std::invalid_argument("network needs at least one layer");
  for (std::size_t k = 0; k < net.layers.size(); ++k) {
    const Layer& l = net.layers[k];
    check_rectangular(l.weights);
    if (l.out_dim() == 0 || l.in_dim() == 0)
      throw std::invalid_argument("layer with zero dimension");
    if (static_cast<int>(l.bias.size()) != l.out_dim())
      throw std::invalid_argument("bias length does not match weight rows");
    if (k + 1 < net.layers.size() && net.layers[k + 1].in_dim() != l.out_dim())
      throw std::invalid_argument("layer dimension chain broken");
  }
}

namespace {

Vec apply_exact(Activation f, Vec z) {
  switch (f) {
    case Activation::Id:
      return z;
    case Activation::Relu:
      for (auto& v : z)
        if (v < 0) v = 0;
      return z;
    case Activation::Heaviside:
      for (auto& v : z) v = (v > 0) ? 1 : 0;
      return z;
    default:
      throw std::invalid_argument(std::string("activation '") +
                                  std::string(activation_name(f)) +
                                  "' is float-mode only");
  }
}

DVec apply_float(Activation f, DVec z) {
  switch (f) {
    case Activation::Id:
      return z;
    case Activation::Relu:
      for (auto& v : z) v = std::max(0.0, v);
      return z;
    case Activation::Heaviside:
      for (auto& v : z) v = v > 0 ? 1.0 : 0.0;
      return z;
    case Activation::NlRelu:
      for (auto& v : z) v = std::log1p(std::max(0.0, v));
      return z;
    case Activation::Sigmoid:
      for (auto& v : z) v = 1.0 / (1.0 + std::exp(-v));
      return z;
    case Activation::Tanh:
      for (auto& v : z) v = std::tanh(v);
      return z;
    case Activation::Softmax: {
      double m = *std::max_element(z.begin(), z.end());
      double sum = 0;
      for (auto& v : z) {
        v = std::exp(v - m);
        sum += v;
      }
      for (auto& v : z) v /= sum;
      return z;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

Vec eval_layer(const Layer& layer, const Vec& x) {
  return apply_exact(layer.act, vec_add(mat_vec(layer.weights, x), layer.bias));
}

DVec eval_layer(const Layer& layer, const DVec& x) {
  return apply_float(layer.act, vec_add(mat_vec(layer.weights, x), to_doubles(layer.bias)));
}

Vec eval(const Ffnn& net, const Vec& x) {
  Vec y = x;
  for (const Layer& l : net.layers) y = eval_layer(l, y);
  return y;
}

DVec eval(const Ffnn& net, const DVec& x) {
  DVec y = x;
  for (const Layer& l : net.layers) y = eval_layer(l, y);
  return y;
}

Ffnn concat(const Ffnn& first, const Ffnn& second) {
  if (first.out_dim() != second.in_dim())
    throw std::invalid_argument("concat: output/input dimensions do not match");
  Ffnn out = first;
  out.layers.insert(out.layers.end(), second.layers.begin(), second.layers.end());
  return out;
}

namespace {

template <typename V>
std::vector<int> argmax_set_impl(const V& y) {
  if (y.empty()) throw std::invalid_argument("argmax of empty vector");
  auto best = *std::max_element(y.begin(), y.end());
  std::vector<int> out;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (y[i] == best) out.push_back(static_cast<int>(i) + 1);
  return out;
}

}  // namespace

std::vector<int> argmax_set(const Vec& y) { return argmax_set_impl(y); }
std::vector<int> argmax_set(const DVec& y) { return argmax_set_impl(y); }

int classify(const Ffnn& net, const Vec& x) {
  return argmax_set(eval(net, x)).front();
}

Vec apply_permutation(const std::vector<int>& pi, const Vec& x) {
  if (pi.size() != x.size()) throw std::invalid_argument("permutation arity mismatch");
  std::vector<bool> seen(pi.size(), false);
  for (int p : pi) {
    if (p < 0 || p >= static_cast<int>(pi.size()) || seen[p])
      throw std::invalid_argument("not a permutation");
    seen[p] = true;
  }
  Vec y(x.size());
  for (std::size_t i = 0; i < pi.size(); ++i) y[i] = x[pi[i]];
  return y;
}

namespace {

// ceil(log2(n)) for n >= 1, exact over big integers.
long ceil_log2(const mpz_class& n) {
  if (n <= 1) return 0;
  mpz_class m = n - 1;
  return static_cast<long>(mpz_sizeinbase(m.get_mpz_t(), 2));
}

}  // namespace

long encoded_size(const Rational& q) {
  mpz_class num = abs(q.get_num());
  mpz_class den = q.get_den();
  // 1 + ceil(log2(|p|+1) + 1) + ceil(log2(q+1) + 1); the inner +1 folds into
  // a doubling under the ceiling.
  return 1 + ceil_log2(2 * (num + 1)) + ceil_log2(2 * (den + 1));
}

long encoded_size(const Ffnn& net) {
  long total = 0;
  for (const Layer& l : net.layers) {
    for (const auto& row : l.weights)
      for (const auto& w : row) total += encoded_size(w);
    for (const auto& b : l.bias) total += encoded_size(b);
  }
  return total;
}

namespace examples {

namespace {

Vec rv(std::initializer_list<const char*> entries) {
  Vec v;
  for (const char* e : entries) v.push_back(parse_rational_or_throw(e));
  return v;
}

}  // namespace

Ffnn max_net() {
  Ffnn net;
  net.layers.push_back({{rv({"1", "-1"}), rv({"0", "1"}), rv({"0", "-1"})},
                        rv({"0", "0", "0"}),
                        Activation::Relu});
  net.layers.push_back({{rv({"1", "1", "-1"})}, rv({"0"}), Activation::Id});
  return net;
}

Ffnn decimal_net() {
  Ffnn net;
  net.layers.push_back({{rv({"0.33", "0.2"}), rv({"-0.1", "1.13"}), rv({"1.03", "-1.03"})},
                        rv({"0", "0", "0"}),
                        Activation::Relu});
  net.layers.push_back({{rv({"0.24", "0.84", "0.97"})}, rv({"0.07"}), Activation::Id});
  return net;
}

}  // namespace examples

}  // namespace nnv
