#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "nnv/compile_nn.hpp"
#include "nnv/logic_transform.hpp"
#include "nnv/parser.hpp"
#include "nnv/witness_check.hpp"
#include "test_util.hpp"

using namespace nnv;

namespace {

Ffnn net_of(std::vector<Layer> layers) {
  Ffnn net;
  net.layers = std::move(layers);
  check_wellformed(net);
  return net;
}

Ffnn unit_net(Rational w, Rational b, Activation act) {
  return net_of({Layer{{{w}}, {b}, act}});
}

bool msg_contains(const std::exception& e, const std::string& what) {
  return std::string(e.what()).find(what) != std::string::npos;
}

Ffnn random_id_relu_net(std::mt19937_64& gen, int max_layers = 3,
                        int max_dim = 4) {
  int nlayers = (int)testutil::random_int(gen, 1, max_layers);
  int in = (int)testutil::random_int(gen, 1, max_dim);
  Ffnn net;
  for (int l = 0; l < nlayers; ++l) {
    int out = (int)testutil::random_int(gen, 1, max_dim);
    Layer layer;
    layer.act = testutil::random_int(gen, 0, 1) ? Activation::Relu
                                                : Activation::Id;
    layer.weights = zero_mat(out, in);
    layer.bias = zero_vec(out);
    for (int i = 0; i < out; ++i) {
      layer.bias[i] = testutil::random_small_rational(gen);
      for (int j = 0; j < in; ++j)
        layer.weights[i][j] = testutil::random_small_rational(gen);
    }
    net.layers.push_back(std::move(layer));
    in = out;
  }
  return net;
}

std::vector<std::string> var_block(const std::string& stem, int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

Interpretation point_of(const Vec& x, const Vec& y) {
  Interpretation I;
  for (std::size_t i = 0; i < x.size(); ++i)
    I["x" + std::to_string(i + 1)] = x[i];
  for (std::size_t j = 0; j < y.size(); ++j)
    I["y" + std::to_string(j + 1)] = y[j];
  return I;
}

}  // namespace

TEST_CASE("network formulas: id and relu clauses") {
  Ffnn id2 = unit_net(2, 1, Activation::Id);
  CHECK(print_formula(nn_to_lra(id2, {"x"}, {"y"})) == "y = 1 + 2*x");

  Ffnn relu1 = unit_net(1, 0, Activation::Relu);
  Formula phi = nn_to_lra(relu1, {"x"}, {"y"});
  CHECK(transparent_holds_exact(phi, {{"x", -3}, {"y", 0}}));
  CHECK_FALSE(transparent_holds_exact(phi, {{"x", -3}, {"y", -3}}));
  CHECK(transparent_holds_exact(phi, {{"x", 2}, {"y", 2}}));
  CHECK_FALSE(transparent_holds_exact(phi, {{"x", 2}, {"y", 0}}));

  Formula maxf = nn_to_lra(examples::max_net(), {"x1", "x2"}, {"y1"});
  CHECK(transparent_holds_exact(maxf, {{"x1", 3}, {"x2", 2}, {"y1", 3}}));
  CHECK_FALSE(transparent_holds_exact(maxf, {{"x1", 3}, {"x2", 2}, {"y1", 2}}));

  CHECK_THROWS_AS(nn_to_lra(examples::max_net(), {"a"}, {"b"}),
                  std::invalid_argument);
  try {
    nn_to_lra(unit_net(1, 0, Activation::Sigmoid), {"x"}, {"y"});
    FAIL("expected a rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(msg_contains(e, "layer 1"));
    CHECK(msg_contains(e, "sigmoid"));
  }
}

TEST_CASE("network formulas agree with evaluation on random nets") {
  auto gen = testutil::rng(511);
  for (int iter = 0; iter < 500; ++iter) {
    Ffnn net = random_id_relu_net(gen);
    Vec x;
    for (int i = 0; i < net.in_dim(); ++i)
      x.push_back(testutil::random_small_rational(gen));
    Vec y = eval(net, x);
    Formula phi =
        nn_to_lra(net, var_block("x", net.in_dim()), var_block("y", net.out_dim()));
    CHECK(transparent_holds_exact(phi, point_of(x, y)));

    Vec bad = y;
    int j = (int)testutil::random_int(gen, 0, net.out_dim() - 1);
    Rational delta = 0;
    while (delta == 0) delta = testutil::random_small_rational(gen);
    bad[j] += delta;
    CHECK_FALSE(transparent_holds_exact(phi, point_of(x, bad)));
  }
}

TEST_CASE("atom lowering substitutes the defining formula") {
  NetworkBinding nets{{"N", examples::max_net()}};

  Formula lowered = nnl_lower(parse_formula("N(a, b) = (c)"), nets);
  CHECK(formula_equal(lowered,
                      nn_to_lra(examples::max_net(), {"a", "b"}, {"c"})));
  CHECK(free_vars(lowered) == std::set<std::string>{"a", "b", "c"});
  CHECK_FALSE(dialect_violation(lowered, Dialect::Lra).has_value());

  // negated atom: true outputs exist and differ somewhere
  NetworkBinding idnet{{"M", unit_net(1, 0, Activation::Id)}};
  Formula diff = nnl_lower(parse_formula("!M(r) = (s)"), idnet);
  CHECK(transparent_holds_exact(diff, {{"r", 2}, {"s", 3}}));
  CHECK_FALSE(transparent_holds_exact(diff, {{"r", 2}, {"s", 2}}));

  // identical atoms share one lowered subformula
  Formula twice = nnl_lower(parse_formula("N(a, b) = (c) && N(a, b) = (c)"), nets);
  CHECK(twice->f1.get() == twice->f2.get());

  // a quantified sentence stays in the arithmetic dialect
  Formula closed =
      nnl_lower(parse_formula("forall u. N(u, u) = (v) => 0 <= v"), nets);
  CHECK_FALSE(dialect_violation(closed, Dialect::Lra).has_value());

  CHECK_THROWS_AS(nnl_lower(parse_formula("Q(a) = (b)"), nets),
                  std::invalid_argument);
  CHECK_THROWS_AS(nnl_lower(parse_formula("ispow2(x)"), nets),
                  std::invalid_argument);
}

TEST_CASE("existential sentences lower to a single existential block") {
  NetworkBinding nets{{"N", unit_net(2, -1, Activation::Relu)}};
  Formula phi = parse_formula("exists r. N(r) = (s) && r = 2", Dialect::ExistsNnl);
  Formula lowered = exists_nnl_lower(phi, nets);

  Formula body = lowered;
  while (body->kind == Fk::Exists) body = body->f1;
  CHECK(is_quantifier_free(body));
  CHECK_FALSE(dialect_violation(lowered, Dialect::ExistsLra).has_value());
  CHECK(free_vars(lowered) == std::set<std::string>{"s"});

  CHECK(transparent_holds_exact(lowered, {{"s", 3}}, nets));
  CHECK_FALSE(transparent_holds_exact(lowered, {{"s", 4}}, nets));

  CHECK_THROWS_AS(exists_nnl_lower(parse_formula("forall x. N(x) = (y)"), nets),
                  std::invalid_argument);
}

TEST_CASE("id neurons split into signed relu pairs") {
  // single id neuron feeding weight 3: relu(t)*3 + relu(-t)*(-3)
  Ffnn chain = net_of({Layer{{{Rational(1)}}, {Rational(0)}, Activation::Id},
                       Layer{{{Rational(3)}}, {Rational(0)}, Activation::Id}});
  Ffnn split = id_to_relu(chain);
  REQUIRE(split.layers.size() == 2);
  CHECK(split.layers[0].act == Activation::Relu);
  CHECK(split.layers[0].out_dim() == 2);
  CHECK(eval(split, Vec{-2}) == Vec{-6});
  CHECK(eval(chain, Vec{-2}) == Vec{-6});

  // already-relu hidden layers are left alone
  Ffnn maxn = examples::max_net();
  Ffnn same = id_to_relu(maxn);
  REQUIRE(same.layers.size() == maxn.layers.size());
  for (std::size_t l = 0; l < maxn.layers.size(); ++l) {
    CHECK(same.layers[l].weights == maxn.layers[l].weights);
    CHECK(same.layers[l].bias == maxn.layers[l].bias);
    CHECK(same.layers[l].act == maxn.layers[l].act);
  }

  auto gen = testutil::rng(902);
  for (int i = 0; i < 500; ++i) {
    Vec x{testutil::random_small_rational(gen),
          testutil::random_small_rational(gen)};
    CHECK(eval(maxn, x) == eval(same, x));
  }

  // random nets: exact agreement plus the structural guarantee
  for (int iter = 0; iter < 200; ++iter) {
    Ffnn net = random_id_relu_net(gen);
    Ffnn rewritten = id_to_relu(net);
    for (std::size_t l = 0; l + 1 < rewritten.layers.size(); ++l)
      CHECK(rewritten.layers[l].act == Activation::Relu);
    for (int k = 0; k < 3; ++k) {
      Vec x;
      for (int i = 0; i < net.in_dim(); ++i)
        x.push_back(testutil::random_small_rational(gen));
      CHECK(eval(net, x) == eval(rewritten, x));
    }
  }

  CHECK_THROWS_AS(id_to_relu(unit_net(1, 0, Activation::Sigmoid)),
                  std::invalid_argument);
}

TEST_CASE("star-dialect formulas characterize smooth activations") {
  Formula atom = parse_formula("N(x) = (y)");

  NetworkBinding sig{{"N", unit_net(1, 0, Activation::Sigmoid)}};
  Formula fsig = nnlstar_to_ref(atom, sig);
  CHECK(residual_holds_float(fsig, {{"x", 0.0}, {"y", 0.5}}));
  CHECK_FALSE(residual_holds_float(fsig, {{"x", 0.0}, {"y", 0.6}}));

  NetworkBinding th{{"N", unit_net(1, 0, Activation::Tanh)}};
  Formula ftanh = nnlstar_to_ref(atom, th);
  CHECK(residual_holds_float(ftanh, {{"x", 0.0}, {"y", 0.0}}));
  CHECK_FALSE(residual_holds_float(ftanh, {{"x", 0.0}, {"y", 0.1}}));

  NetworkBinding nl{{"N", unit_net(1, 0, Activation::NlRelu)}};
  Formula fnl = nnlstar_to_ref(atom, nl);
  CHECK(residual_holds_float(fnl, {{"x", 3.0}, {"y", std::log(4.0)}}));
  CHECK_FALSE(residual_holds_float(fnl, {{"x", 3.0}, {"y", std::log(4.0) + 1e-3}}));

  // a two-layer mix checked against float evaluation
  Ffnn mix = net_of({Layer{{{Rational(2)}, {Rational(-1)}},
                           {Rational(0), Rational(1, 2)},
                           Activation::Sigmoid},
                     Layer{{{Rational(1), Rational(3)}}, {Rational(-1)},
                           Activation::Id}});
  Formula fmix = nnlstar_to_ref(atom, {{"N", mix}});
  auto gen = testutil::rng(77);
  for (int i = 0; i < 50; ++i) {
    double x = (double)testutil::random_int(gen, -300, 300) / 100.0;
    DVec y = eval(mix, DVec{x});
    CHECK(residual_holds_float(fmix, {{"x", x}, {"y", y[0]}}, {}, 1e-7));
    CHECK_FALSE(residual_holds_float(fmix, {{"x", x}, {"y", y[0] + 0.01}}, {}, 1e-7));
  }

  try {
    nnlstar_to_ref(atom, {{"N", unit_net(1, 0, Activation::Softmax)}});
    FAIL("expected a rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(msg_contains(e, "layer 1"));
    CHECK(msg_contains(e, "softmax"));
  }
  CHECK_THROWS_AS(
      nnlstar_to_ref(atom, {{"N", unit_net(1, 0, Activation::Heaviside)}}),
      std::invalid_argument);
}
