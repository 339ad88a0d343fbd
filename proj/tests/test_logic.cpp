#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nnv/logic_transform.hpp"
#include "nnv/parser.hpp"
#include "nnv/spec_library.hpp"
#include "test_util.hpp"

using namespace nnv;

namespace {

const std::vector<std::string> kPool = {"x", "y", "z", "u", "v1", "w'"};

Term random_term(std::mt19937_64& gen, int depth, bool allow_ref) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : (allow_ref ? 4 : 2));
  std::uniform_int_distribution<std::size_t> var(0, kPool.size() - 1);
  switch (pick(gen)) {
    case 0: return t_const(testutil::random_small_rational(gen));
    case 1: return t_scaled(testutil::random_small_rational(gen), kPool[var(gen)]);
    case 2: return t_sum(random_term(gen, depth - 1, allow_ref),
                         random_term(gen, depth - 1, allow_ref));
    case 3: return t_product(random_term(gen, depth - 1, allow_ref),
                             random_term(gen, depth - 1, allow_ref));
    default: return t_exp(random_term(gen, depth - 1, allow_ref));
  }
}

// Mirrors the parser's normalization: negating a network atom flips its node
// instead of stacking a Not.
Formula not_of(const Formula& f) {
  if (f->kind == Fk::NnAtom) return f_neg_nn(f->net, f->ins, f->outs);
  if (f->kind == Fk::NegNnAtom) return f_nn(f->net, f->ins, f->outs);
  return f_not(f);
}

Formula random_formula(std::mt19937_64& gen, int depth, bool allow_ref) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 3 : 11);
  std::uniform_int_distribution<std::size_t> var(0, kPool.size() - 1);
  auto term = [&] { return random_term(gen, depth - 1, allow_ref); };
  auto sub = [&] { return random_formula(gen, depth - 1, allow_ref); };
  switch (pick(gen)) {
    case 0: return f_le(term(), term());
    case 1: return f_lt(term(), term());
    case 2: {
      std::uniform_int_distribution<int> arity(1, 3);
      std::vector<std::string> ins, outs;
      for (int i = arity(gen); i > 0; --i) ins.push_back(kPool[var(gen)]);
      for (int i = arity(gen); i > 0; --i) outs.push_back(kPool[var(gen)]);
      Formula atom = f_nn("N", ins, outs);
      return std::uniform_int_distribution<int>(0, 1)(gen) ? atom : not_of(atom);
    }
    case 3: return f_ispow2(kPool[var(gen)]);
    case 4: return f_eq(term(), term());
    case 5: return f_neq(term(), term());
    case 6: return not_of(sub());
    case 7: return f_or(sub(), sub());
    case 8: return f_and(sub(), sub());
    case 9: return f_implies(sub(), sub());
    case 10: return f_iff(sub(), sub());
    default: {
      Formula body = sub();
      const std::string& v = kPool[var(gen)];
      return std::uniform_int_distribution<int>(0, 1)(gen) ? f_exists(v, body)
                                                           : f_forall(v, body);
    }
  }
}

Interpretation random_interp(std::mt19937_64& gen) {
  Interpretation I;
  for (const auto& v : kPool) I[v] = testutil::random_small_rational(gen);
  return I;
}

Formula strip_foralls(Formula f) {
  while (f->kind == Fk::Forall) f = f->f1;
  return f;
}

Ffnn net_of(std::vector<Layer> layers) {
  Ffnn net;
  net.layers = std::move(layers);
  check_wellformed(net);
  return net;
}

}  // namespace

TEST_CASE("parser produces the expected shapes") {
  Formula f = parse_formula("exists z. x < z && z < y");
  REQUIRE(f->kind == Fk::Exists);
  CHECK(f->var == "z");
  REQUIRE(f->f1->kind == Fk::And);
  CHECK(f->f1->f1->kind == Fk::Lt);
  CHECK(f->f1->f2->kind == Fk::Lt);

  Formula g = parse_formula("N(x1,x2) = (y1)");
  REQUIRE(g->kind == Fk::NnAtom);
  CHECK(g->net == "N");
  CHECK(g->ins == std::vector<std::string>{"x1", "x2"});
  CHECK(g->outs == std::vector<std::string>{"y1"});

  CHECK(parse_formula("!N(x) = (y)")->kind == Fk::NegNnAtom);
  CHECK(parse_formula("!!N(x) = (y)")->kind == Fk::NnAtom);

  Formula h = parse_formula("x <= 0 && y <= 0 || z <= 0");
  REQUIRE(h->kind == Fk::Or);
  CHECK(h->f1->kind == Fk::And);

  Formula imp = parse_formula("x <= 0 => y <= 0 => z <= 0");
  REQUIRE(imp->kind == Fk::Implies);
  CHECK(imp->f2->kind == Fk::Implies);

  Formula prime = parse_formula("exists x'. x' <= x");
  CHECK(prime->var == "x'");

  Term t = parse_term("1/2*x + -3*y + 7");
  Interpretation I{{"x", rat(1, 3)}, {"y", rat(2, 3)}};
  CHECK(eval_term(t, I) == rat(1, 3) * rat(1, 2) - 2 + 7);
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(parse_formula("x <= "), ParseError);
  CHECK_THROWS_AS(parse_formula("exists . x <= 0"), ParseError);
  CHECK_THROWS_AS(parse_formula("x <= 0 extra"), ParseError);
  CHECK_THROWS_AS(parse_formula("$gen <= 0"), ParseError);
  CHECK_THROWS_AS(parse_formula("forall exists. x <= 0"), ParseError);
  CHECK_THROWS_AS(parse_term("x + + y"), ParseError);
  CHECK_THROWS_AS(parse_term("(x"), ParseError);
}

TEST_CASE("print/parse round trip on random formulas") {
  auto gen = testutil::rng(77);
  for (int i = 0; i < 500; ++i) {
    bool allow_ref = i % 3 == 0;
    Formula f = random_formula(gen, 4, allow_ref);
    std::string s = print_formula(f);
    CAPTURE(s);
    Formula g = parse_formula(s);
    CHECK(formula_equal(f, g));
    CHECK(print_formula(g) == s);
  }
}

TEST_CASE("holds evaluates atoms, sugar, and network atoms") {
  NetworkBinding nets{{"N", examples::max_net()}};
  Interpretation I{{"x1", 3}, {"x2", 2}, {"y1", 3}};
  CHECK(holds(parse_formula("N(x1,x2) = (y1)"), I, nets));
  CHECK(holds(parse_formula("!N(x1,x2) = (x2)"), I, nets));
  CHECK_FALSE(holds(parse_formula("N(x1,x2) = (x2)"), I, nets));

  Interpretation J{{"x", rat(1, 2)}, {"y", rat(3, 2)}};
  CHECK(holds(parse_formula("x != y"), J));
  CHECK(holds(parse_formula("x < y <=> x <= y"), J));
  CHECK(holds(parse_formula("x = 1/2 => y = 3/2"), J));
  CHECK_FALSE(holds(parse_formula("y <= x"), J));

  for (int v : {1, 2, 4, 1024})
    CHECK(holds(f_ispow2("p"), {{"p", v}}));
  CHECK_FALSE(holds(f_ispow2("p"), {{"p", 0}}));
  CHECK_FALSE(holds(f_ispow2("p"), {{"p", 3}}));
  CHECK_FALSE(holds(f_ispow2("p"), {{"p", -2}}));
  CHECK_FALSE(holds(f_ispow2("p"), {{"p", rat(1, 2)}}));

  CHECK_THROWS(holds(parse_formula("exists x. x <= 0"), {}));
  CHECK_THROWS(holds(parse_formula("N(x1) = (y1)"), I, {}));
}

TEST_CASE("expand_abbrev eliminates sugar without changing meaning") {
  Formula eq = expand_abbrev(parse_formula("x = y"));
  REQUIRE(eq->kind == Fk::And);
  CHECK(eq->f1->kind == Fk::Le);
  CHECK(eq->f2->kind == Fk::Le);

  Formula neq = expand_abbrev(parse_formula("x != y"));
  REQUIRE(neq->kind == Fk::Or);
  CHECK(neq->f1->kind == Fk::Lt);

  Formula fa = expand_abbrev(parse_formula("forall q. q = 0"));
  REQUIRE(fa->kind == Fk::Not);
  REQUIRE(fa->f1->kind == Fk::Exists);
  CHECK(fa->f1->f1->kind == Fk::Not);

  Formula mx = is_max(t_var("x"), {t_var("y1"), t_var("y2")});
  CHECK(print_formula(mx) == "(x = y1 || x = y2) && (y1 <= x && y2 <= x)");

  std::vector<Formula> corpus = {
      parse_formula("x = y => y = x"),
      parse_formula("x < y <=> !(y <= x)"),
      parse_formula("x != y || x + y = 2*z"),
      expand_abbrev(mx),
      mx,
      parse_formula("ispow2(u) => 1 <= u"),
  };
  auto gen = testutil::rng(78);
  for (int i = 0; i < 200; ++i) {
    Interpretation I = random_interp(gen);
    I["x"] = testutil::random_int(gen, -2, 2);
    I["y1"] = I["x"];
    I["y2"] = testutil::random_int(gen, -2, 2);
    for (const Formula& f : corpus) {
      CAPTURE(print_formula(f));
      CHECK(holds(f, I) == holds(expand_abbrev(f), I));
      CHECK(holds(f, I) == holds(expand_strict(f), I));
      CHECK(is_quantifier_free(expand_abbrev(f)));
    }
  }
}

TEST_CASE("expand_strict leaves <= as the only comparison") {
  Formula f = expand_strict(parse_formula("x < y"));
  REQUIRE(f->kind == Fk::Not);
  REQUIRE(f->f1->kind == Fk::Le);
  CHECK(print_formula(f) == "!(y <= x)");
}

TEST_CASE("to_nnf pushes negation into atoms") {
  CHECK(print_formula(to_nnf(parse_formula("!(x <= y)"))) == "y < x");
  CHECK(print_formula(to_nnf(parse_formula("!(x = y)"))) == "x != y");
  CHECK(print_formula(to_nnf(parse_formula("!!(x < y)"))) == "x < y");
  CHECK(print_formula(to_nnf(parse_formula("!(x = 0 && y = 0)"))) ==
        "x != 0 || y != 0");
  CHECK(to_nnf(parse_formula("!N(x) = (y)"))->kind == Fk::NegNnAtom);
  CHECK(to_nnf(f_not(parse_formula("!N(x) = (y)")))->kind == Fk::NnAtom);
  CHECK(print_formula(to_nnf(parse_formula("!(exists x. 0 < x)"))) ==
        "forall x. x <= 0");
  CHECK(print_formula(to_nnf(parse_formula("!ispow2(u)"))) == "!ispow2(u)");

  // Only ispow2 may keep a negation; nothing else survives below one.
  auto nnf_shape = [](auto&& self, const Formula& f) -> bool {
    switch (f->kind) {
      case Fk::Not: return f->f1->kind == Fk::IsPow2;
      case Fk::Implies:
      case Fk::Iff: return false;
      case Fk::And:
      case Fk::Or: return self(self, f->f1) && self(self, f->f2);
      case Fk::Exists:
      case Fk::Forall: return self(self, f->f1);
      default: return true;
    }
  };

  std::vector<Formula> corpus = {
      parse_formula("!(x = y => y = x)"),
      parse_formula("!(x < y <=> !(y <= x))"),
      parse_formula("x != y || !(x + y = 2*z)"),
      parse_formula("!(ispow2(u) => 1 <= u)"),
      parse_formula("!(x <= y && (y < z || x = z))"),
  };
  auto gen = testutil::rng(79);
  for (int i = 0; i < 200; ++i) {
    Interpretation I = random_interp(gen);
    for (const Formula& f : corpus) {
      Formula g = to_nnf(f);
      CAPTURE(print_formula(f));
      CAPTURE(print_formula(g));
      CHECK(nnf_shape(nnf_shape, g));
      CHECK(holds(f, I) == holds(g, I));
    }
  }
}

TEST_CASE("fresh names extend with primes then generated ids") {
  NameSupply supply(std::set<std::string>{"y"});
  CHECK(supply.fresh("x") == "x");
  CHECK(supply.fresh("x") == "x'");
  CHECK(supply.fresh("x") == "x''");
  CHECK(supply.fresh("x") == "x'''");
  CHECK(supply.fresh("x") == "$x0");
  CHECK(supply.fresh("y") == "y'");
}

TEST_CASE("prenex form alternates negated existential blocks") {
  Prenex p = to_prenex(parse_formula("forall x. forall y. x + y <= 0"));
  REQUIRE(p.prefix.size() == 2);
  CHECK(p.prefix[0].negated);
  CHECK(p.prefix[0].var == "x");
  CHECK_FALSE(p.prefix[1].negated);
  CHECK(p.prefix[1].var == "y");
  REQUIRE(p.matrix->kind == Fk::Not);
  CHECK(p.matrix->f1->kind == Fk::Le);

  Prenex q = to_prenex(parse_formula("!(exists x1. exists x2. x1 <= x2)"));
  REQUIRE(q.prefix.size() == 2);
  CHECK(q.prefix[0].negated);
  CHECK_FALSE(q.prefix[1].negated);
  CHECK(q.matrix->kind == Fk::Le);

  Prenex d = to_prenex(
      parse_formula("forall x. forall y. (x < y => exists z. (x < z && z < y))"));
  REQUIRE(d.prefix.size() == 3);
  CHECK(d.prefix[0].negated);
  CHECK_FALSE(d.prefix[1].negated);
  CHECK(d.prefix[2].negated);
  CHECK(d.prefix[2].var == "z");
  REQUIRE(d.matrix->kind == Fk::Or);

  // Already-prenex input keeps its prefix verbatim.
  Prenex e = to_prenex(parse_formula("exists x. exists y. x <= y"));
  REQUIRE(e.prefix.size() == 2);
  CHECK_FALSE(e.prefix[0].negated);
  CHECK(e.prefix[0].var == "x");
  CHECK(e.prefix[1].var == "y");
  CHECK(e.matrix->kind == Fk::Le);

  // Colliding binder names get separated.
  Prenex c = to_prenex(parse_formula("(exists x. x <= 0) && (exists x. 0 <= x)"));
  REQUIRE(c.prefix.size() == 2);
  CHECK(c.prefix[0].var == "x");
  CHECK(c.prefix[1].var == "x'");
  CHECK(print_formula(c.matrix) == "x <= 0 && 0 <= x'");

  // Free variables are never captured by renamed binders.
  Prenex fr = to_prenex(parse_formula("x <= 0 && exists x. 1 <= x"));
  CHECK(fr.prefix.size() == 1);
  CHECK(fr.prefix[0].var == "x'");
  CHECK(print_formula(fr.matrix) == "x <= 0 && 1 <= x'");
}

TEST_CASE("prenexing is idempotent through prenex_to_formula") {
  std::vector<std::string> corpus = {
      "forall x. forall y. (x < y => exists z. (x < z && z < y))",
      "exists x. x = 2*y && !(x <= 0)",
      "(forall x. x <= y) => (exists y. y <= x)",
      "!(forall a. exists b. a + b = 0)",
  };
  for (const auto& text : corpus) {
    Prenex p = to_prenex(parse_formula(text));
    CHECK(is_quantifier_free(p.matrix));
    Prenex q = to_prenex(prenex_to_formula(p));
    REQUIRE(q.prefix.size() == p.prefix.size());
    for (std::size_t i = 0; i < p.prefix.size(); ++i) {
      CHECK(q.prefix[i].negated == p.prefix[i].negated);
      CHECK(q.prefix[i].var == p.prefix[i].var);
    }
    CHECK(formula_equal(q.matrix, p.matrix));
  }
}

TEST_CASE("dialect validation accepts and rejects the right fragments") {
  auto ok = [](const std::string& text, Dialect d) {
    auto v = dialect_violation(parse_formula(text), d);
    CAPTURE(text);
    CAPTURE(v ? *v : "");
    CHECK_FALSE(v.has_value());
  };
  auto bad = [](const std::string& text, Dialect d) {
    CAPTURE(text);
    CHECK(dialect_violation(parse_formula(text), d).has_value());
    CHECK_THROWS_AS(parse_formula(text, d), std::invalid_argument);
  };

  ok("forall x. forall y. (x < y => exists z. (x < z && z < y))", Dialect::Lra);
  ok("x = y => y = x", Dialect::Lra);
  bad("N(x) = (y)", Dialect::Lra);
  bad("ispow2(x)", Dialect::Lra);
  bad("x * y <= 1", Dialect::Lra);

  ok("forall x. exists y. N(x) = (y)", Dialect::Nnl);
  bad("ispow2(x)", Dialect::Nnl);
  ok("ispow2(x) && N(x) = (y)", Dialect::NnlPlus);
  bad("x * x <= 1", Dialect::NnlPlus);

  ok("exists x. exists y. (x <= y && !(y <= x))", Dialect::ExistsLra);
  ok("exists x. (x = 3 || x != 4)", Dialect::ExistsLra);
  bad("exists x. !(x <= 0 && 0 <= x)", Dialect::ExistsLra);
  bad("forall x. x <= 0", Dialect::ExistsLra);
  bad("exists x. exists y. (x <= y && N(x) = (y))", Dialect::ExistsLra);
  ok("exists x. (N(x) = (y) && !N(y) = (x))", Dialect::ExistsNnl);
  bad("exists x. !(N(x) = (y) && x <= 0)", Dialect::ExistsNnl);

  ok("exists x1. exists x2. (N(x1,x2) = (y1) && x1 <= 1 && 0 <= x1 && y1 <= 5)",
     Dialect::Reach);
  ok("exists x1. (N(x1) = (y1) && x1 = 1)", Dialect::Reach);
  bad("exists x1. (N(x1) = (y1) && M(y1) = (z1))", Dialect::Reach);
  bad("exists x1. (N(x1) = (y1) && x1 <= y1)", Dialect::Reach);
  bad("exists x1. (N(x1) = (y1) && (x1 <= 0 || 1 <= x1))", Dialect::Reach);
  bad("exists x1. x1 <= 0", Dialect::Reach);

  ok("x * y + e^(z) <= 1", Dialect::Ref);
  ok("e^(x) = y", Dialect::Ref);
  bad("N(x) = (y)", Dialect::Ref);
  bad("ispow2(x)", Dialect::Ref);

  CHECK(dialect_from_name("exists-lra") == Dialect::ExistsLra);
  CHECK(dialect_name(Dialect::NnlPlus) == std::string("nnl+"));
}

TEST_CASE("argmax helpers pick out maximal positions") {
  std::vector<Term> ys = {t_var("a1"), t_var("a2"), t_var("a3"), t_var("a4")};
  std::vector<Term> zs = {t_var("b1"), t_var("b2"), t_var("b3"), t_var("b4")};
  Interpretation I{{"a1", 3}, {"a2", 7}, {"a3", 4}, {"a4", 7},
                   {"b1", 0}, {"b2", 9}, {"b3", 0}, {"b4", 9}};
  CHECK(holds(argmax_is(ys, {2, 4}), I));
  CHECK_FALSE(holds(argmax_is(ys, {2}), I));
  CHECK_FALSE(holds(argmax_is(ys, {1}), I));
  CHECK(holds(argmax_eq(ys, zs), I));
  I["b1"] = 10;
  CHECK_FALSE(holds(argmax_eq(ys, zs), I));

  // One output: both argmaxes are {1}, so equality is vacuous.
  CHECK(holds(argmax_eq({t_var("a1")}, {t_var("b1")}), I));
}

TEST_CASE("named properties build evaluable sentences") {
  NetworkBinding nets{{"N", examples::max_net()}};

  SpecParams mp;
  mp.m = 2;
  Formula max_spec = build_spec("max", mp);
  CHECK(formula_equal(parse_formula(print_formula(max_spec)), max_spec));
  Formula body = strip_foralls(max_spec);
  CHECK(holds(body, {{"x1", 3}, {"x2", 2}, {"y1", 3}}, nets));
  CHECK(holds(body, {{"x1", 3}, {"x2", 2}, {"y1", 5}}, nets));  // premise fails

  // A net that returns its first input is not a max net: x2 wins at (2,3).
  Ffnn first = net_of({Layer{Mat{{1, 0}}, Vec{0}, Activation::Id}});
  CHECK_FALSE(holds(body, {{"x1", 2}, {"x2", 3}, {"y1", 2}},
                    {{"N", first}}));

  SpecParams ip;
  ip.m = 2;
  ip.n = 1;
  Formula inj_body = strip_foralls(build_spec("injective", ip));
  CHECK_FALSE(holds(inj_body,
                    {{"x1", 0}, {"x2", 0}, {"x1'", -1}, {"x2'", 0}, {"y1", 0}},
                    nets));
  CHECK(holds(inj_body,
              {{"x1", 0}, {"x2", 0}, {"x1'", 0}, {"x2'", 0}, {"y1", 0}}, nets));

  // Two-layer relu net computing xor on {0,1} inputs.
  Ffnn xnet = net_of({Layer{Mat{{1, 1}, {1, 1}}, Vec{0, -1}, Activation::Relu},
                      Layer{Mat{{1, -2}}, Vec{0}, Activation::Id}});
  Formula xor_body = strip_foralls(build_spec("xor", SpecParams{}));
  for (int a : {0, 1})
    for (int b : {0, 1}) {
      Interpretation I{{"x1", a}, {"x2", b}};
      I["y1"] = eval(xnet, Vec{rat(a), rat(b)})[0];
      CHECK(holds(xor_body, I, {{"N", xnet}}));
      CHECK((a ^ b) == I["y1"]);
    }

  SpecParams fp;
  fp.m = 2;
  fp.n = 2;
  fp.K = {1};
  Ffnn ident = net_of({Layer{Mat{{1, 0}, {0, 1}}, Vec{0, 0}, Activation::Id}});
  Formula fair_body = strip_foralls(build_spec("fairness", fp));
  NetworkBinding idn{{"N", ident}};
  CHECK_FALSE(holds(fair_body,
                    {{"x1", 0}, {"x2", 0}, {"x1'", 0}, {"x2'", 1},
                     {"y1", 0}, {"y2", 0}, {"y1'", 0}, {"y2'", 1}},
                    idn));
  fp.K = {1, 2};
  Formula fair_all = strip_foralls(build_spec("fairness", fp));
  CHECK(holds(fair_all,
              {{"x1", 0}, {"x2", 1}, {"x1'", 0}, {"x2'", 1},
               {"y1", 0}, {"y2", 1}, {"y1'", 0}, {"y2'", 1}},
              idn));
}

TEST_CASE("named properties validate their parameters") {
  SpecParams p;
  p.m = 7;
  p.n = 1;
  CHECK_THROWS_AS(build_spec("perm_invariant", p), std::invalid_argument);
  CHECK_THROWS_AS(build_spec("sorted", p), std::invalid_argument);

  SpecParams fair;
  fair.m = 2;
  fair.n = 2;
  CHECK_THROWS_AS(build_spec("fairness", fair), std::invalid_argument);

  SpecParams rob;
  rob.m = 2;
  rob.n = 2;
  CHECK_THROWS_AS(build_spec("robustness", rob), std::invalid_argument);
  rob.epsilon = rat(1, 10);
  Formula r = build_spec("robustness", rob);
  CHECK(formula_equal(parse_formula(print_formula(r)), r));

  CHECK_THROWS_AS(build_spec("smooth", SpecParams{}), std::invalid_argument);
  CHECK_THROWS_AS(build_spec("max", SpecParams{}), std::invalid_argument);
}

TEST_CASE("structural shapes of the quantified properties") {
  SpecParams sp;
  sp.m = 2;
  Formula srj;
  sp.n = 2;
  srj = build_spec("surjective", sp);
  REQUIRE(srj->kind == Fk::Forall);
  Formula inner = strip_foralls(srj);
  REQUIRE(inner->kind == Fk::Exists);
  while (inner->kind == Fk::Exists) inner = inner->f1;
  CHECK(inner->kind == Fk::NnAtom);

  SpecParams pi;
  pi.m = 3;
  pi.n = 1;
  Formula inv = build_spec("perm_invariant", pi);
  Prenex p = to_prenex(inv);
  REQUIRE(p.prefix.size() == 4);  // three inputs, one shared output
  CHECK(p.prefix[0].negated);
  CHECK(p.prefix[3].var == "y1");
  int atoms = 0;
  auto count = [&atoms](auto&& self, const Formula& f) -> void {
    if (f->kind == Fk::NnAtom) ++atoms;
    for (const Formula* sub : {&f->f1, &f->f2})
      if (*sub) self(self, *sub);
  };
  count(count, p.matrix);
  CHECK(atoms == 6);  // 3! permutations

  SpecParams eq;
  eq.m = 2;
  eq.n = 2;
  eq.region = parse_formula("0 <= x1 && x1 <= 1");
  Formula eqv = build_spec("equivalence", eq);
  auto vars = free_vars(eqv);
  CHECK(vars.empty());
  std::string printed = print_formula(eqv);
  CHECK(printed.find("M(x1,x2)") != std::string::npos);
  CHECK(formula_equal(parse_formula(printed), eqv));

  Formula sorted = build_spec("sorted", [] {
    SpecParams s;
    s.m = 2;
    return s;
  }());
  Formula sbody = strip_foralls(sorted);
  NetworkBinding swap{
      {"N", net_of({Layer{Mat{{0, 1}, {1, 0}}, Vec{0, 0}, Activation::Id}})}};
  CHECK(holds(sbody, {{"x1", 5}, {"x2", 1}, {"y1", 1}, {"y2", 5}}, swap));
  CHECK_FALSE(holds(sbody, {{"x1", 1}, {"x2", 5}, {"y1", 5}, {"y2", 1}}, swap));
}
