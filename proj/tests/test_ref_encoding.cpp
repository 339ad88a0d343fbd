#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "nnv/parser.hpp"
#include "nnv/logic_transform.hpp"
#include "nnv/ref_encoding.hpp"
#include "nnv/witness_check.hpp"
#include "test_util.hpp"

using namespace nnv;

namespace {

// Ground truth for the encodings comes from the C library.
double ln(double x) { return std::log(x); }

double random_magnitude(std::mt19937_64& gen, double lo = 0.05,
                        double hi = 20.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(gen);
}

bool ln_ok(const Formula& f, const NetworkBinding& nets, double x, double y) {
  return residual_holds_float(f, {{"x", x}, {"y", y}}, nets);
}

}  // namespace

TEST_CASE("support networks compute their activation") {
  NetworkBinding nets = ref_support_nets();
  CHECK(eval(nets.at("$sigma"), DVec{0.0})[0] == doctest::Approx(0.5));
  CHECK(eval(nets.at("$tanh"), DVec{0.0})[0] == doctest::Approx(0.0));
  CHECK(eval(nets.at("$eta"), DVec{3.0})[0] == doctest::Approx(ln(4.0)));
  CHECK(eval(nets.at("$eta"), DVec{-2.0})[0] == doctest::Approx(0.0));
}

TEST_CASE("log encoding matches the library log in both regions") {
  FreshVarPool pool;
  Formula f = phi_ln("x", "y", pool);
  NetworkBinding nets = ref_support_nets();

  CHECK(ln_ok(f, nets, 1.0, 0.0));
  CHECK(ln_ok(f, nets, 4.0, ln(4.0)));

  auto gen = testutil::rng(31);
  for (int i = 0; i < 1000; ++i) {
    double above = random_magnitude(gen, 1.0, 50.0);
    CHECK(ln_ok(f, nets, above, ln(above)));
    double below = random_magnitude(gen, 1e-3, 0.999);
    CHECK(ln_ok(f, nets, below, ln(below)));
  }

  CHECK_FALSE(ln_ok(f, nets, 2.0, ln(2.0) + 1e-4));
  CHECK_FALSE(ln_ok(f, nets, 0.5, ln(0.5) - 1e-4));
  CHECK_FALSE(ln_ok(f, nets, -1.0, 0.0));
  CHECK_FALSE(ln_ok(f, nets, 0.0, 0.0));
}

TEST_CASE("exp encoding matches the library exp in both regions") {
  FreshVarPool pool;
  Formula f = phi_exp("x", "y", pool);
  NetworkBinding nets = ref_support_nets();

  CHECK(ln_ok(f, nets, 0.0, 1.0));

  auto gen = testutil::rng(32);
  for (int i = 0; i < 1000; ++i) {
    double up = random_magnitude(gen, 0.0, 4.0);
    CHECK(ln_ok(f, nets, up, std::exp(up)));
    double down = random_magnitude(gen, 0.01, 6.0);
    CHECK(ln_ok(f, nets, -down, std::exp(-down)));
  }

  CHECK_FALSE(ln_ok(f, nets, 1.0, std::exp(1.0) * 1.001));
  CHECK_FALSE(ln_ok(f, nets, 1.0, -1.0));
}

TEST_CASE("product encoding covers all nine sign regions") {
  FreshVarPool pool;
  Formula f = phi_mult("x", "y", "z", pool);
  NetworkBinding nets = ref_support_nets();
  auto check_point = [&](double x, double y, double z) {
    return residual_holds_float(f, {{"x", x}, {"y", y}, {"z", z}}, nets);
  };

  auto gen = testutil::rng(33);
  const std::pair<int, int> signs[] = {{1, 1}, {-1, 1}, {1, -1}, {-1, -1}};
  for (auto [sx, sy] : signs) {
    for (int i = 0; i < 1000; ++i) {
      double x = sx * random_magnitude(gen);
      double y = sy * random_magnitude(gen);
      CHECK(check_point(x, y, x * y));
    }
    for (int i = 0; i < 50; ++i) {
      double x = sx * random_magnitude(gen);
      double y = sy * random_magnitude(gen);
      CHECK_FALSE(check_point(x, y, x * y + 0.01));
      CHECK_FALSE(check_point(x, y, -x * y - 0.01));
    }
  }
  // zero patterns: (0,0), (0,±), (±,0)
  CHECK(check_point(0.0, 0.0, 0.0));
  for (int i = 0; i < 1000; ++i) {
    double v = random_magnitude(gen);
    CHECK(check_point(0.0, v, 0.0));
    CHECK(check_point(0.0, -v, 0.0));
    CHECK(check_point(v, 0.0, 0.0));
    CHECK(check_point(-v, 0.0, 0.0));
  }
  CHECK_FALSE(check_point(0.0, 3.0, 0.5));
  CHECK_FALSE(check_point(3.0, 0.0, -0.5));
  CHECK_FALSE(check_point(0.0, 0.0, 1.0));
}

TEST_CASE("comparisons flatten to tape variables") {
  NnlStarLowering low = ref_to_nnlstar(parse_formula("x*y = z", Dialect::Ref));
  auto at = [&](double x, double y, double z) {
    return residual_holds_float(low.formula, {{"x", x}, {"y", y}, {"z", z}},
                                low.support);
  };
  CHECK(at(2.0, 3.0, 6.0));
  CHECK_FALSE(at(2.0, 3.0, 7.0));
  CHECK(at(5.0, 0.0, 0.0));
  CHECK_FALSE(at(5.0, 0.0, 1.0));

  NnlStarLowering expf =
      ref_to_nnlstar(parse_formula("e^(x) = y", Dialect::Ref));
  CHECK(residual_holds_float(expf.formula, {{"x", 0.0}, {"y", 1.0}},
                             expf.support));
  CHECK_FALSE(residual_holds_float(expf.formula, {{"x", 0.0}, {"y", 2.0}},
                                   expf.support));

  // repeated subterms share one tape variable: x, x*x, 1, x*x + 1
  NnlStarLowering shared =
      ref_to_nnlstar(parse_formula("x*x <= x*x + 1", Dialect::Ref));
  int tapes = 0;
  for (const std::string& v : all_vars(shared.formula))
    if (v.rfind("$t", 0) == 0) ++tapes;
  CHECK(tapes == 4);
  CHECK(residual_holds_float(shared.formula, {{"x", 3.0}}, shared.support));

  // connectives and quantifiers pass through
  NnlStarLowering wrapped =
      ref_to_nnlstar(parse_formula("!(x*x < x)", Dialect::Ref));
  CHECK(residual_holds_float(wrapped.formula, {{"x", 3.0}}, wrapped.support));

  // the result is free of exponentials and of non-linear products
  CHECK(print_formula(wrapped.formula).find("e^") == std::string::npos);
  CHECK_FALSE(dialect_violation(shared.formula, Dialect::Nnl).has_value());

  CHECK_THROWS_AS(ref_to_nnlstar(parse_formula("N(x) = (y)")),
                  std::invalid_argument);
  CHECK_THROWS_AS(ref_to_nnlstar(parse_formula("ispow2(x)")),
                  std::invalid_argument);
}
