#include "nnv/ref_encoding.hpp"

#include <map>
#include <stdexcept>
#include <utility>

#include "nnv/logic_transform.hpp"
#include "nnv/parser.hpp"

namespace nnv {

NetworkBinding ref_support_nets() {
  auto unit = [](Activation act) {
    Ffnn net;
    net.layers = {Layer{{{Rational(1)}}, {Rational(0)}, act}};
    return net;
  };
  return {{"$sigma", unit(Activation::Sigmoid)},
          {"$tanh", unit(Activation::Tanh)},
          {"$eta", unit(Activation::NlRelu)}};
}

Formula phi_ln(const std::string& x, const std::string& y,
               FreshVarPool& pool) {
  Formula domain = f_lt(t_const(0), t_var(x));
  // x >= 1: ln x = eta(x - 1) directly.
  std::string w = pool.fresh("l");
  Formula big = f_implies(
      f_le(t_const(1), t_var(x)),
      f_exists(w, f_and(f_eq(t_var(w), t_sum(t_var(x), t_const(-1))),
                        f_nn("$eta", {w}, {y}))));
  // 0 < x < 1: ln x = logit(x) - 2*atanh(x) + ln(1 + x); the three pieces
  // come from inverse sigmoid/tanh atoms and a forward eta atom.
  std::string a = pool.fresh("l");
  std::string b = pool.fresh("l");
  std::string c = pool.fresh("l");
  Formula small = f_implies(
      f_lt(t_var(x), t_const(1)),
      f_exists_all(
          {a, b, c},
          f_and_all(
              {f_eq(t_var(y), t_sum({t_var(a), t_scaled(-2, b), t_var(c)})),
               f_nn("$sigma", {a}, {x}), f_nn("$tanh", {b}, {x}),
               f_nn("$eta", {x}, {c})})));
  return f_and_all({domain, big, small});
}

Formula phi_exp(const std::string& x, const std::string& y,
                FreshVarPool& pool) {
  return phi_ln(y, x, pool);
}

Formula phi_mult(const std::string& x, const std::string& y,
                 const std::string& z, FreshVarPool& pool) {
  auto pos = [](const std::string& v) { return f_lt(t_const(0), t_var(v)); };
  auto neg = [](const std::string& v) { return f_lt(t_var(v), t_const(0)); };
  auto zero = [](const std::string& v) { return f_eq(t_var(v), t_const(0)); };
  Formula z_zero = f_eq(t_var(z), t_const(0));

  // |x|*|y| = e^(ln|x| + ln|y|), fed with already-positive variables.
  auto magnitude = [&](const std::string& px, const std::string& py,
                       const std::string& target) {
    std::string a = pool.fresh("m");
    std::string b = pool.fresh("m");
    std::string s = pool.fresh("m");
    Formula body = f_and_all({phi_ln(px, a, pool), phi_ln(py, b, pool),
                              f_eq(t_sum(t_var(a), t_var(b)), t_var(s)),
                              phi_exp(s, target, pool)});
    return std::make_pair(std::vector<std::string>{a, b, s}, body);
  };
  auto negated = [&](const std::string& v) {
    std::string n = pool.fresh("m");
    return std::make_pair(n, f_eq(t_var(n), t_scaled(-1, v)));
  };

  std::vector<Formula> branches;
  branches.push_back(f_implies(f_and(zero(x), zero(y)), z_zero));
  branches.push_back(f_implies(f_and(zero(x), pos(y)), z_zero));
  branches.push_back(f_implies(f_and(zero(x), neg(y)), z_zero));
  branches.push_back(f_implies(f_and(pos(x), zero(y)), z_zero));
  branches.push_back(f_implies(f_and(neg(x), zero(y)), z_zero));
  {
    auto [vars, body] = magnitude(x, y, z);
    branches.push_back(
        f_implies(f_and(pos(x), pos(y)), f_exists_all(vars, body)));
  }
  {
    auto [xn, xdef] = negated(x);
    std::string zn = pool.fresh("m");
    auto [vars, body] = magnitude(xn, y, zn);
    vars.insert(vars.begin(), xn);
    vars.push_back(zn);
    Formula full =
        f_and_all({xdef, body, f_eq(t_var(z), t_scaled(-1, zn))});
    branches.push_back(
        f_implies(f_and(neg(x), pos(y)), f_exists_all(vars, full)));
  }
  {
    auto [yn, ydef] = negated(y);
    std::string zn = pool.fresh("m");
    auto [vars, body] = magnitude(x, yn, zn);
    vars.insert(vars.begin(), yn);
    vars.push_back(zn);
    Formula full =
        f_and_all({ydef, body, f_eq(t_var(z), t_scaled(-1, zn))});
    branches.push_back(
        f_implies(f_and(pos(x), neg(y)), f_exists_all(vars, full)));
  }
  {
    auto [xn, xdef] = negated(x);
    auto [yn, ydef] = negated(y);
    auto [vars, body] = magnitude(xn, yn, z);
    vars.insert(vars.begin(), yn);
    vars.insert(vars.begin(), xn);
    branches.push_back(f_implies(f_and(neg(x), neg(y)),
                                 f_exists_all(vars, f_and_all({xdef, ydef, body}))));
  }
  return f_and_all(branches);
}

namespace {

struct RefLowerer {
  FreshVarPool pool;
  // tape variable per distinct subterm, keyed by canonical spelling
  using Tape = std::map<std::string, std::string>;

  void collect(const Term& t, std::vector<Term>& order, Tape& tape) {
    std::string key = print_term(t);
    if (tape.count(key)) return;
    switch (t->kind) {
      case TermKind::Sum:
      case TermKind::Product:
        collect(t->lhs, order, tape);
        collect(t->rhs, order, tape);
        break;
      case TermKind::Exp:
        collect(t->lhs, order, tape);
        break;
      default:
        break;
    }
    tape.emplace(key, pool.fresh("t"));
    order.push_back(t);
  }

  Formula constraint(const Term& t, const Tape& tape) {
    const std::string& z = tape.at(print_term(t));
    switch (t->kind) {
      case TermKind::Const:
      case TermKind::Scaled:
        return f_eq(t_var(z), t);
      case TermKind::Sum:
        return f_eq(t_sum(t_var(tape.at(print_term(t->lhs))),
                          t_var(tape.at(print_term(t->rhs)))),
                    t_var(z));
      case TermKind::Product:
        return phi_mult(tape.at(print_term(t->lhs)),
                        tape.at(print_term(t->rhs)), z, pool);
      case TermKind::Exp:
        return phi_exp(tape.at(print_term(t->lhs)), z, pool);
    }
    throw std::logic_error("unhandled term node");
  }

  Formula atom(Fk kind, const Term& t1, const Term& t2) {
    std::vector<Term> order;
    Tape tape;
    collect(t1, order, tape);
    collect(t2, order, tape);
    std::vector<Formula> parts;
    Term z1 = t_var(tape.at(print_term(t1)));
    Term z2 = t_var(tape.at(print_term(t2)));
    switch (kind) {
      case Fk::Le: parts.push_back(f_le(z1, z2)); break;
      case Fk::Lt: parts.push_back(f_lt(z1, z2)); break;
      case Fk::Eq: parts.push_back(f_eq(z1, z2)); break;
      case Fk::Neq: parts.push_back(f_neq(z1, z2)); break;
      default: throw std::logic_error("not a comparison atom");
    }
    std::vector<std::string> zs;
    for (const Term& t : order) {
      zs.push_back(tape.at(print_term(t)));
      parts.push_back(constraint(t, tape));
    }
    return f_exists_all(zs, f_and_all(parts));
  }

  Formula walk(const Formula& f) {
    switch (f->kind) {
      case Fk::Le:
      case Fk::Lt:
      case Fk::Eq:
      case Fk::Neq:
        return atom(f->kind, f->t1, f->t2);
      case Fk::Not:
        return f_not(walk(f->f1));
      case Fk::Or:
        return f_or(walk(f->f1), walk(f->f2));
      case Fk::And:
        return f_and(walk(f->f1), walk(f->f2));
      case Fk::Implies:
        return f_implies(walk(f->f1), walk(f->f2));
      case Fk::Iff:
        return f_iff(walk(f->f1), walk(f->f2));
      case Fk::Exists:
        return f_exists(f->var, walk(f->f1));
      case Fk::Forall:
        return f_forall(f->var, walk(f->f1));
      default:
        throw std::logic_error("node outside the exponential-field dialect");
    }
  }
};

}  // namespace

NnlStarLowering ref_to_nnlstar(const Formula& phi) {
  check_dialect(phi, Dialect::Ref);
  RefLowerer lowerer{FreshVarPool(all_vars(phi))};
  Formula out = lowerer.walk(phi);
  if (auto v = dialect_violation(out, Dialect::Nnl))
    throw std::logic_error("lowering left a non-linear node: " + *v);
  return {std::move(out), ref_support_nets()};
}

}  // namespace nnv
