#include "nnv/formula.hpp"

#include <cmath>
#include <stdexcept>

namespace nnv {

namespace {

Term mk_term(TermNode n) { return std::make_shared<const TermNode>(std::move(n)); }
Formula mk(FormulaNode n) { return std::make_shared<const FormulaNode>(std::move(n)); }

}  // namespace

Term t_const(Rational c) { return mk_term({TermKind::Const, std::move(c), "", nullptr, nullptr}); }

Term t_var(const std::string& name) { return t_scaled(1, name); }

Term t_scaled(Rational c, const std::string& name) {
  return mk_term({TermKind::Scaled, std::move(c), name, nullptr, nullptr});
}

Term t_sum(Term a, Term b) {
  return mk_term({TermKind::Sum, 0, "", std::move(a), std::move(b)});
}

Term t_sum(const std::vector<Term>& ts) {
  if (ts.empty()) return t_const(0);
  Term acc = ts.front();
  for (std::size_t i = 1; i < ts.size(); ++i) acc = t_sum(acc, ts[i]);
  return acc;
}

Term t_product(Term a, Term b) {
  // Canonicalize constant-times-variable to the scaled-variable node so every
  // term has exactly one spelling (the parser applies the same fold).
  if (a->kind == TermKind::Const && b->kind == TermKind::Scaled && b->value == 1)
    return t_scaled(a->value, b->var);
  return mk_term({TermKind::Product, 0, "", std::move(a), std::move(b)});
}

Term t_exp(Term a) { return mk_term({TermKind::Exp, 0, "", std::move(a), nullptr}); }

bool term_equal(const Term& a, const Term& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Const: return a->value == b->value;
    case TermKind::Scaled: return a->value == b->value && a->var == b->var;
    case TermKind::Sum:
    case TermKind::Product:
      return term_equal(a->lhs, b->lhs) && term_equal(a->rhs, b->rhs);
    case TermKind::Exp: return term_equal(a->lhs, b->lhs);
  }
  return false;
}

bool term_is_linear(const Term& t) {
  switch (t->kind) {
    case TermKind::Const:
    case TermKind::Scaled: return true;
    case TermKind::Sum: return term_is_linear(t->lhs) && term_is_linear(t->rhs);
    default: return false;
  }
}

Formula f_le(Term a, Term b) { return mk({Fk::Le, std::move(a), std::move(b), nullptr, nullptr, "", "", {}, {}}); }
Formula f_lt(Term a, Term b) { return mk({Fk::Lt, std::move(a), std::move(b), nullptr, nullptr, "", "", {}, {}}); }
Formula f_eq(Term a, Term b) { return mk({Fk::Eq, std::move(a), std::move(b), nullptr, nullptr, "", "", {}, {}}); }
Formula f_neq(Term a, Term b) { return mk({Fk::Neq, std::move(a), std::move(b), nullptr, nullptr, "", "", {}, {}}); }

Formula f_not(Formula f) { return mk({Fk::Not, nullptr, nullptr, std::move(f), nullptr, "", "", {}, {}}); }
Formula f_or(Formula a, Formula b) { return mk({Fk::Or, nullptr, nullptr, std::move(a), std::move(b), "", "", {}, {}}); }
Formula f_and(Formula a, Formula b) { return mk({Fk::And, nullptr, nullptr, std::move(a), std::move(b), "", "", {}, {}}); }
Formula f_implies(Formula a, Formula b) { return mk({Fk::Implies, nullptr, nullptr, std::move(a), std::move(b), "", "", {}, {}}); }
Formula f_iff(Formula a, Formula b) { return mk({Fk::Iff, nullptr, nullptr, std::move(a), std::move(b), "", "", {}, {}}); }

Formula f_exists(const std::string& var, Formula f) {
  return mk({Fk::Exists, nullptr, nullptr, std::move(f), nullptr, var, "", {}, {}});
}

Formula f_forall(const std::string& var, Formula f) {
  return mk({Fk::Forall, nullptr, nullptr, std::move(f), nullptr, var, "", {}, {}});
}

Formula f_exists_all(const std::vector<std::string>& vars, Formula f) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) f = f_exists(*it, std::move(f));
  return f;
}

Formula f_forall_all(const std::vector<std::string>& vars, Formula f) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) f = f_forall(*it, std::move(f));
  return f;
}

Formula f_nn(const std::string& net, std::vector<std::string> ins, std::vector<std::string> outs) {
  return mk({Fk::NnAtom, nullptr, nullptr, nullptr, nullptr, "", net, std::move(ins), std::move(outs)});
}

Formula f_neg_nn(const std::string& net, std::vector<std::string> ins, std::vector<std::string> outs) {
  return mk({Fk::NegNnAtom, nullptr, nullptr, nullptr, nullptr, "", net, std::move(ins), std::move(outs)});
}

Formula f_ispow2(const std::string& var) {
  return mk({Fk::IsPow2, nullptr, nullptr, nullptr, nullptr, var, "", {}, {}});
}

Formula f_true() { return f_le(t_const(0), t_const(0)); }
Formula f_false() { return f_not(f_true()); }

Formula f_and_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return f_true();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = f_and(acc, fs[i]);
  return acc;
}

Formula f_or_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return f_false();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = f_or(acc, fs[i]);
  return acc;
}

bool formula_equal(const Formula& a, const Formula& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case Fk::Le: case Fk::Lt: case Fk::Eq: case Fk::Neq:
      return term_equal(a->t1, b->t1) && term_equal(a->t2, b->t2);
    case Fk::Not:
      return formula_equal(a->f1, b->f1);
    case Fk::Or: case Fk::And: case Fk::Implies: case Fk::Iff:
      return formula_equal(a->f1, b->f1) && formula_equal(a->f2, b->f2);
    case Fk::Exists: case Fk::Forall:
      return a->var == b->var && formula_equal(a->f1, b->f1);
    case Fk::NnAtom: case Fk::NegNnAtom:
      return a->net == b->net && a->ins == b->ins && a->outs == b->outs;
    case Fk::IsPow2:
      return a->var == b->var;
  }
  return false;
}

bool is_atom(const Formula& f) {
  switch (f->kind) {
    case Fk::Le: case Fk::Lt: case Fk::Eq: case Fk::Neq:
    case Fk::NnAtom: case Fk::NegNnAtom: case Fk::IsPow2:
      return true;
    default:
      return false;
  }
}

bool is_quantifier_free(const Formula& f) {
  if (f->kind == Fk::Exists || f->kind == Fk::Forall) return false;
  if (f->f1 && !is_quantifier_free(f->f1)) return false;
  if (f->f2 && !is_quantifier_free(f->f2)) return false;
  return true;
}

std::set<std::string> term_vars(const Term& t) {
  std::set<std::string> out;
  auto walk = [&out](auto&& self, const Term& u) -> void {
    if (!u) return;
    if (u->kind == TermKind::Scaled) out.insert(u->var);
    self(self, u->lhs);
    self(self, u->rhs);
  };
  walk(walk, t);
  return out;
}

namespace {

void collect_vars(const Formula& f, bool only_free, std::set<std::string>& bound,
                  std::set<std::string>& out) {
  switch (f->kind) {
    case Fk::Le: case Fk::Lt: case Fk::Eq: case Fk::Neq:
      for (const Term* t : {&f->t1, &f->t2})
        for (const auto& v : term_vars(*t))
          if (!only_free || !bound.count(v)) out.insert(v);
      return;
    case Fk::NnAtom: case Fk::NegNnAtom:
      for (const auto* tuple : {&f->ins, &f->outs})
        for (const auto& v : *tuple)
          if (!only_free || !bound.count(v)) out.insert(v);
      return;
    case Fk::IsPow2:
      if (!only_free || !bound.count(f->var)) out.insert(f->var);
      return;
    case Fk::Not:
      collect_vars(f->f1, only_free, bound, out);
      return;
    case Fk::Or: case Fk::And: case Fk::Implies: case Fk::Iff:
      collect_vars(f->f1, only_free, bound, out);
      collect_vars(f->f2, only_free, bound, out);
      return;
    case Fk::Exists: case Fk::Forall: {
      if (!only_free) out.insert(f->var);
      bool fresh = bound.insert(f->var).second;
      collect_vars(f->f1, only_free, bound, out);
      if (fresh) bound.erase(f->var);
      return;
    }
  }
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  collect_vars(f, true, bound, out);
  return out;
}

std::set<std::string> all_vars(const Formula& f) {
  std::set<std::string> bound, out;
  collect_vars(f, false, bound, out);
  return out;
}

Term rename_var(const Term& t, const std::string& from, const std::string& to) {
  if (!t) return t;
  switch (t->kind) {
    case TermKind::Const: return t;
    case TermKind::Scaled: return t->var == from ? t_scaled(t->value, to) : t;
    case TermKind::Sum: return t_sum(rename_var(t->lhs, from, to), rename_var(t->rhs, from, to));
    case TermKind::Product:
      return t_product(rename_var(t->lhs, from, to), rename_var(t->rhs, from, to));
    case TermKind::Exp: return t_exp(rename_var(t->lhs, from, to));
  }
  return t;
}

Formula rename_free_var(const Formula& f, const std::string& from, const std::string& to) {
  auto ren = [&](const std::vector<std::string>& vs) {
    std::vector<std::string> out = vs;
    for (auto& v : out)
      if (v == from) v = to;
    return out;
  };
  switch (f->kind) {
    case Fk::Le: return f_le(rename_var(f->t1, from, to), rename_var(f->t2, from, to));
    case Fk::Lt: return f_lt(rename_var(f->t1, from, to), rename_var(f->t2, from, to));
    case Fk::Eq: return f_eq(rename_var(f->t1, from, to), rename_var(f->t2, from, to));
    case Fk::Neq: return f_neq(rename_var(f->t1, from, to), rename_var(f->t2, from, to));
    case Fk::Not: return f_not(rename_free_var(f->f1, from, to));
    case Fk::Or: return f_or(rename_free_var(f->f1, from, to), rename_free_var(f->f2, from, to));
    case Fk::And: return f_and(rename_free_var(f->f1, from, to), rename_free_var(f->f2, from, to));
    case Fk::Implies:
      return f_implies(rename_free_var(f->f1, from, to), rename_free_var(f->f2, from, to));
    case Fk::Iff:
      return f_iff(rename_free_var(f->f1, from, to), rename_free_var(f->f2, from, to));
    case Fk::Exists:
    case Fk::Forall: {
      if (f->var == from) return f;  // shadowed below this point
      Formula body = rename_free_var(f->f1, from, to);
      return f->kind == Fk::Exists ? f_exists(f->var, body) : f_forall(f->var, body);
    }
    case Fk::NnAtom: return f_nn(f->net, ren(f->ins), ren(f->outs));
    case Fk::NegNnAtom: return f_neg_nn(f->net, ren(f->ins), ren(f->outs));
    case Fk::IsPow2: return f->var == from ? f_ispow2(to) : f;
  }
  return f;
}

Rational eval_term(const Term& t, const Interpretation& I) {
  switch (t->kind) {
    case TermKind::Const: return t->value;
    case TermKind::Scaled: {
      auto it = I.find(t->var);
      if (it == I.end()) throw std::invalid_argument("unbound variable: " + t->var);
      return t->value * it->second;
    }
    case TermKind::Sum: return eval_term(t->lhs, I) + eval_term(t->rhs, I);
    case TermKind::Product: return eval_term(t->lhs, I) * eval_term(t->rhs, I);
    case TermKind::Exp:
      throw std::invalid_argument("exponential term has no exact value; use float evaluation");
  }
  throw std::logic_error("unreachable");
}

double eval_term_float(const Term& t, const std::map<std::string, double>& I) {
  switch (t->kind) {
    case TermKind::Const: return to_double(t->value);
    case TermKind::Scaled: {
      auto it = I.find(t->var);
      if (it == I.end()) throw std::invalid_argument("unbound variable: " + t->var);
      return to_double(t->value) * it->second;
    }
    case TermKind::Sum: return eval_term_float(t->lhs, I) + eval_term_float(t->rhs, I);
    case TermKind::Product: return eval_term_float(t->lhs, I) * eval_term_float(t->rhs, I);
    case TermKind::Exp: return std::exp(eval_term_float(t->lhs, I));
  }
  throw std::logic_error("unreachable");
}

namespace {

bool nn_atom_holds(const FormulaNode& f, const Interpretation& I, const NetworkBinding& nets) {
  auto it = nets.find(f.net);
  if (it == nets.end()) throw std::invalid_argument("unbound network: " + f.net);
  const Ffnn& net = it->second;
  if (static_cast<int>(f.ins.size()) != net.in_dim() ||
      static_cast<int>(f.outs.size()) != net.out_dim())
    throw std::invalid_argument("network atom arity mismatch for " + f.net);
  Vec x;
  for (const auto& v : f.ins) {
    auto vi = I.find(v);
    if (vi == I.end()) throw std::invalid_argument("unbound variable: " + v);
    x.push_back(vi->second);
  }
  Vec y = eval(net, x);
  for (std::size_t i = 0; i < f.outs.size(); ++i) {
    auto vi = I.find(f.outs[i]);
    if (vi == I.end()) throw std::invalid_argument("unbound variable: " + f.outs[i]);
    if (vi->second != y[i]) return false;
  }
  return true;
}

bool is_power_of_two(const Rational& q) {
  if (q <= 0 || q.get_den() != 1) return false;
  mpz_class n = q.get_num();
  return mpz_popcount(n.get_mpz_t()) == 1;
}

}  // namespace

bool holds(const Formula& f, const Interpretation& I, const NetworkBinding& nets) {
  switch (f->kind) {
    case Fk::Le: return eval_term(f->t1, I) <= eval_term(f->t2, I);
    case Fk::Lt: return eval_term(f->t1, I) < eval_term(f->t2, I);
    case Fk::Eq: return eval_term(f->t1, I) == eval_term(f->t2, I);
    case Fk::Neq: return eval_term(f->t1, I) != eval_term(f->t2, I);
    case Fk::Not: return !holds(f->f1, I, nets);
    case Fk::Or: return holds(f->f1, I, nets) || holds(f->f2, I, nets);
    case Fk::And: return holds(f->f1, I, nets) && holds(f->f2, I, nets);
    case Fk::Implies: return !holds(f->f1, I, nets) || holds(f->f2, I, nets);
    case Fk::Iff: return holds(f->f1, I, nets) == holds(f->f2, I, nets);
    case Fk::Exists:
    case Fk::Forall:
      throw std::invalid_argument("holds() requires a quantifier-free formula");
    case Fk::NnAtom: return nn_atom_holds(*f, I, nets);
    case Fk::NegNnAtom: return !nn_atom_holds(*f, I, nets);
    case Fk::IsPow2: {
      auto it = I.find(f->var);
      if (it == I.end()) throw std::invalid_argument("unbound variable: " + f->var);
      return is_power_of_two(it->second);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace nnv
