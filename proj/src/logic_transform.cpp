#include "nnv/logic_transform.hpp"

#include <stdexcept>

namespace nnv {

Formula expand_abbrev(const Formula& f) {
  switch (f->kind) {
    case Fk::Le: case Fk::Lt:
    case Fk::NnAtom: case Fk::NegNnAtom: case Fk::IsPow2:
      return f;
    case Fk::Eq:
      return f_and(f_le(f->t1, f->t2), f_le(f->t2, f->t1));
    case Fk::Neq:
      return f_or(f_lt(f->t1, f->t2), f_lt(f->t2, f->t1));
    case Fk::Not: {
      Formula sub = expand_abbrev(f->f1);
      if (sub->kind == Fk::NnAtom) return f_neg_nn(sub->net, sub->ins, sub->outs);
      if (sub->kind == Fk::NegNnAtom) return f_nn(sub->net, sub->ins, sub->outs);
      return f_not(sub);
    }
    case Fk::Or:
      return f_or(expand_abbrev(f->f1), expand_abbrev(f->f2));
    case Fk::And:
      return f_and(expand_abbrev(f->f1), expand_abbrev(f->f2));
    case Fk::Implies:
      return expand_abbrev(f_or(f_not(f->f1), f->f2));
    case Fk::Iff:
      return expand_abbrev(
          f_and(f_or(f_not(f->f1), f->f2), f_or(f_not(f->f2), f->f1)));
    case Fk::Exists:
      return f_exists(f->var, expand_abbrev(f->f1));
    case Fk::Forall:
      return f_not(f_exists(f->var, expand_abbrev(f_not(f->f1))));
  }
  return f;
}

Formula expand_strict(const Formula& f) {
  Formula g = expand_abbrev(f);
  auto walk = [](auto&& self, const Formula& h) -> Formula {
    switch (h->kind) {
      case Fk::Lt:
        return f_not(f_le(h->t2, h->t1));
      case Fk::Not:
        return f_not(self(self, h->f1));
      case Fk::Or:
        return f_or(self(self, h->f1), self(self, h->f2));
      case Fk::And:
        return f_and(self(self, h->f1), self(self, h->f2));
      case Fk::Exists:
        return f_exists(h->var, self(self, h->f1));
      default:
        return h;
    }
  };
  return walk(walk, g);
}

Formula to_nnf(const Formula& f) {
  auto walk = [](auto&& self, const Formula& h, bool pos) -> Formula {
    switch (h->kind) {
      case Fk::Le: return pos ? h : f_lt(h->t2, h->t1);
      case Fk::Lt: return pos ? h : f_le(h->t2, h->t1);
      case Fk::Eq: return pos ? h : f_neq(h->t1, h->t2);
      case Fk::Neq: return pos ? h : f_eq(h->t1, h->t2);
      case Fk::NnAtom: return pos ? h : f_neg_nn(h->net, h->ins, h->outs);
      case Fk::NegNnAtom: return pos ? h : f_nn(h->net, h->ins, h->outs);
      case Fk::IsPow2: return pos ? h : f_not(h);
      case Fk::Not: return self(self, h->f1, !pos);
      case Fk::And: {
        Formula a = self(self, h->f1, pos);
        Formula b = self(self, h->f2, pos);
        return pos ? f_and(std::move(a), std::move(b))
                   : f_or(std::move(a), std::move(b));
      }
      case Fk::Or: {
        Formula a = self(self, h->f1, pos);
        Formula b = self(self, h->f2, pos);
        return pos ? f_or(std::move(a), std::move(b))
                   : f_and(std::move(a), std::move(b));
      }
      case Fk::Implies: {
        Formula a = self(self, h->f1, !pos);
        Formula b = self(self, h->f2, pos);
        return pos ? f_or(std::move(a), std::move(b))
                   : f_and(std::move(a), std::move(b));
      }
      case Fk::Iff:
        // Both polarities turn into a conjunction of two disjunctions;
        // negating swaps which side of each disjunct is complemented.
        return f_and(f_or(self(self, h->f1, !pos), self(self, h->f2, true)),
                     f_or(self(self, h->f1, pos), self(self, h->f2, false)));
      case Fk::Exists:
        return pos ? f_exists(h->var, self(self, h->f1, true))
                   : f_forall(h->var, self(self, h->f1, false));
      case Fk::Forall:
        return pos ? f_forall(h->var, self(self, h->f1, true))
                   : f_exists(h->var, self(self, h->f1, false));
    }
    throw std::logic_error("to_nnf: unhandled node");
  };
  return walk(walk, f, true);
}

Formula simplify_neg(const Formula& f) {
  switch (f->kind) {
    case Fk::Not: {
      Formula sub = simplify_neg(f->f1);
      if (sub->kind == Fk::Not) return sub->f1;
      return f_not(sub);
    }
    case Fk::Or: return f_or(simplify_neg(f->f1), simplify_neg(f->f2));
    case Fk::And: return f_and(simplify_neg(f->f1), simplify_neg(f->f2));
    case Fk::Implies: return f_implies(simplify_neg(f->f1), simplify_neg(f->f2));
    case Fk::Iff: return f_iff(simplify_neg(f->f1), simplify_neg(f->f2));
    case Fk::Exists: return f_exists(f->var, simplify_neg(f->f1));
    case Fk::Forall: return f_forall(f->var, simplify_neg(f->f1));
    default: return f;
  }
}

std::string NameSupply::fresh(const std::string& hint) {
  if (used_.insert(hint).second) return hint;
  for (int primes = 1; primes <= 3; ++primes) {
    std::string candidate = hint + std::string(primes, '\'');
    if (used_.insert(candidate).second) return candidate;
  }
  for (;;) {
    std::string candidate = "$" + hint + std::to_string(counter_++);
    if (used_.insert(candidate).second) return candidate;
  }
}

namespace {

// Gives every binder a globally unique name, outermost binders first so that
// already-prenex inputs keep their names.
Formula uniquify(const Formula& f, std::map<std::string, std::string>& env,
                 NameSupply& supply) {
  auto sub = [&](const Formula& g) { return uniquify(g, env, supply); };
  // Binary cases sequence left before right so name claims follow text order.
  auto both = [&](Formula (*combine)(Formula, Formula)) {
    Formula a = sub(f->f1);
    Formula b = sub(f->f2);
    return combine(std::move(a), std::move(b));
  };
  switch (f->kind) {
    case Fk::Not: return f_not(sub(f->f1));
    case Fk::Or: return both(f_or);
    case Fk::And: return both(f_and);
    case Fk::Implies: return both(f_implies);
    case Fk::Iff: return both(f_iff);
    case Fk::Exists:
    case Fk::Forall: {
      std::string name = supply.fresh(f->var);
      auto prev = env.find(f->var);
      std::optional<std::string> saved;
      if (prev != env.end()) saved = prev->second;
      env[f->var] = name;
      Formula body = uniquify(f->f1, env, supply);
      if (saved) env[f->var] = *saved; else env.erase(f->var);
      return f->kind == Fk::Exists ? f_exists(name, body) : f_forall(name, body);
    }
    default: {
      // Atom: rename via env.
      Formula g = f;
      for (const auto& [from, to] : env)
        if (from != to) g = rename_free_var(g, from, to);
      return g;
    }
  }
}

struct RawStep {
  bool is_exists;
  std::string var;
};

struct RawPrenex {
  std::vector<RawStep> prefix;
  Formula matrix;
};

RawPrenex pull_quantifiers(const Formula& f) {
  switch (f->kind) {
    case Fk::Not: {
      RawPrenex p = pull_quantifiers(f->f1);
      for (auto& s : p.prefix) s.is_exists = !s.is_exists;
      p.matrix = f_not(p.matrix);
      return p;
    }
    case Fk::Or:
    case Fk::And: {
      RawPrenex a = pull_quantifiers(f->f1);
      RawPrenex b = pull_quantifiers(f->f2);
      a.prefix.insert(a.prefix.end(), b.prefix.begin(), b.prefix.end());
      a.matrix = f->kind == Fk::Or ? f_or(a.matrix, b.matrix) : f_and(a.matrix, b.matrix);
      return a;
    }
    case Fk::Exists: {
      RawPrenex p = pull_quantifiers(f->f1);
      p.prefix.insert(p.prefix.begin(), {true, f->var});
      return p;
    }
    case Fk::Forall: {
      RawPrenex p = pull_quantifiers(f->f1);
      p.prefix.insert(p.prefix.begin(), {false, f->var});
      return p;
    }
    default:
      return {{}, f};
  }
}

}  // namespace

Prenex to_prenex(const Formula& f) {
  Formula core = expand_abbrev(f);
  // Binders get globally unique names; free variables are reserved so no
  // binder shadows them.
  NameSupply supply(free_vars(core));
  std::map<std::string, std::string> env;
  Formula named = uniquify(core, env, supply);
  // expand_abbrev leaves no Forall behind, but pull_quantifiers handles both
  // for direct callers.
  RawPrenex raw = pull_quantifiers(named);

  Prenex out;
  bool negflag = false;
  for (const RawStep& s : raw.prefix) {
    if (!negflag) {
      if (s.is_exists) {
        out.prefix.push_back({false, s.var});
      } else {
        out.prefix.push_back({true, s.var});
        negflag = true;
      }
    } else {
      if (s.is_exists) {
        out.prefix.push_back({true, s.var});
        negflag = false;
      } else {
        out.prefix.push_back({false, s.var});
      }
    }
  }
  out.matrix = simplify_neg(negflag ? f_not(raw.matrix) : raw.matrix);
  return out;
}

Formula prenex_to_formula(const Prenex& p) {
  Formula f = p.matrix;
  for (auto it = p.prefix.rbegin(); it != p.prefix.rend(); ++it) {
    f = f_exists(it->var, f);
    if (it->negated) f = f_not(f);
  }
  return f;
}

// ---------------------------------------------------------------------------
// Dialect validation
// ---------------------------------------------------------------------------

namespace {

bool term_ref_free(const Term& t) { return term_is_linear(t); }

std::optional<std::string> check_terms_linear(const Formula& f) {
  switch (f->kind) {
    case Fk::Le: case Fk::Lt: case Fk::Eq: case Fk::Neq:
      if (!term_ref_free(f->t1) || !term_ref_free(f->t2))
        return "product/exponential terms are only allowed in the exponential-field dialect";
      return std::nullopt;
    default:
      for (const Formula* sub : {&f->f1, &f->f2})
        if (*sub)
          if (auto v = check_terms_linear(*sub)) return v;
      return std::nullopt;
  }
}

bool contains_kind(const Formula& f, Fk kind) {
  if (f->kind == kind) return true;
  for (const Formula* sub : {&f->f1, &f->f2})
    if (*sub && contains_kind(*sub, kind)) return true;
  return false;
}

// After expansion: quantifier-free and negations only directly on comparison
// atoms (network atoms carry their own negated node).
std::optional<std::string> check_nnf_literal_body(const Formula& f) {
  switch (f->kind) {
    case Fk::Le: case Fk::Lt:
    case Fk::NnAtom: case Fk::NegNnAtom: case Fk::IsPow2:
      return std::nullopt;
    case Fk::Not:
      if (is_atom(f->f1)) return std::nullopt;
      return "negation of a non-atom inside an existential-fragment formula";
    case Fk::Or: case Fk::And:
      if (auto v = check_nnf_literal_body(f->f1)) return v;
      return check_nnf_literal_body(f->f2);
    case Fk::Exists: case Fk::Forall:
      return "quantifier below the existential prefix";
    default:
      return "unexpected node after expansion";
  }
}

std::optional<std::string> check_exists_fragment(const Formula& f) {
  Formula g = expand_abbrev(f);
  while (g->kind == Fk::Exists) g = g->f1;
  return check_nnf_literal_body(g);
}

std::optional<std::string> check_reach_shape(const Formula& f) {
  Formula g = expand_abbrev(f);
  while (g->kind == Fk::Exists) g = g->f1;
  // Collect the And-tree leaves.
  std::vector<Formula> leaves;
  auto collect = [&leaves](auto&& self, const Formula& h) -> void {
    if (h->kind == Fk::And) {
      self(self, h->f1);
      self(self, h->f2);
    } else {
      leaves.push_back(h);
    }
  };
  collect(collect, g);

  const FormulaNode* atom = nullptr;
  for (const Formula& leaf : leaves) {
    if (leaf->kind == Fk::NnAtom) {
      if (atom) return "reachability formulas use exactly one network atom";
      atom = leaf.get();
    } else if (leaf->kind != Fk::Le && leaf->kind != Fk::Lt) {
      return "reachability constraints must be <= or < atoms";
    }
  }
  if (!atom) return "reachability formulas need a network atom";

  std::set<std::string> ins(atom->ins.begin(), atom->ins.end());
  std::set<std::string> outs(atom->outs.begin(), atom->outs.end());
  for (const Formula& leaf : leaves) {
    if (leaf->kind != Fk::Le && leaf->kind != Fk::Lt) continue;
    bool in_ok = true, out_ok = true;
    for (const Term* t : {&leaf->t1, &leaf->t2})
      for (const auto& v : term_vars(*t)) {
        if (!ins.count(v)) in_ok = false;
        if (!outs.count(v)) out_ok = false;
      }
    if (!in_ok && !out_ok)
      return "each reachability constraint ranges over only inputs or only outputs";
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> dialect_violation(const Formula& f, Dialect d) {
  if (d != Dialect::Ref)
    if (auto v = check_terms_linear(f)) return v;

  bool has_nn = contains_kind(f, Fk::NnAtom) || contains_kind(f, Fk::NegNnAtom);
  bool has_pow = contains_kind(f, Fk::IsPow2);

  switch (d) {
    case Dialect::Lra:
    case Dialect::ExistsLra:
      if (has_nn) return "network atoms are not part of plain linear arithmetic";
      if (has_pow) return "ispow2 is not part of plain linear arithmetic";
      break;
    case Dialect::Nnl:
    case Dialect::ExistsNnl:
    case Dialect::Reach:
      if (has_pow) return "ispow2 requires the extended network dialect";
      break;
    case Dialect::NnlPlus:
      break;
    case Dialect::Ref:
      if (has_nn) return "network atoms are not part of the exponential-field dialect";
      if (has_pow) return "ispow2 is not part of the exponential-field dialect";
      break;
  }

  if (d == Dialect::ExistsLra || d == Dialect::ExistsNnl)
    if (auto v = check_exists_fragment(f)) return v;
  if (d == Dialect::Reach)
    if (auto v = check_reach_shape(f)) return v;
  return std::nullopt;
}

void check_dialect(const Formula& f, Dialect d) {
  if (auto v = dialect_violation(f, d))
    throw std::invalid_argument(std::string(dialect_name(d)) + ": " + *v);
}

Formula parse_formula(std::string_view text, Dialect dialect) {
  Formula f = parse_formula(text);
  check_dialect(f, dialect);
  return f;
}

}  // namespace nnv
