#include "nnv/compile_nn.hpp"

#include <map>
#include <stdexcept>
#include <utility>

#include "nnv/logic_transform.hpp"

namespace nnv {

std::string FreshVarPool::fresh(const std::string& stem) {
  for (;;) {
    std::string name = "$" + stem + std::to_string(counter_++);
    if (used_.insert(name).second) return name;
  }
}

std::vector<std::string> FreshVarPool::fresh_block(const std::string& stem,
                                                   int count) {
  std::vector<std::string> names;
  names.reserve(count);
  for (int i = 0; i < count; ++i) names.push_back(fresh(stem));
  return names;
}

Term affine_term(const Vec& row, const Rational& bias,
                 const std::vector<std::string>& xs) {
  if (row.size() != xs.size())
    throw std::invalid_argument("affine_term: row/variable count mismatch");
  std::vector<Term> parts;
  if (bias != 0) parts.push_back(t_const(bias));
  for (std::size_t j = 0; j < row.size(); ++j)
    if (row[j] != 0) parts.push_back(t_scaled(row[j], xs[j]));
  if (parts.empty()) return t_const(0);
  return t_sum(parts);
}

namespace {

// One conjunct per neuron: output variable y constrained to act(affine).
// star mode additionally translates nlrelu/sigmoid/tanh through equations
// over e^t terms; without it those activations are rejected.
Formula neuron_clause(const Layer& layer, int layer_idx, int i,
                      const std::vector<std::string>& ins,
                      const std::string& y, FreshVarPool& pool, bool star) {
  Term aff = affine_term(layer.weights[i], layer.bias[i], ins);
  auto unsupported = [&](const char* why) {
    return std::invalid_argument(
        "layer " + std::to_string(layer_idx + 1) + ": " +
        std::string(activation_name(layer.act)) + " " + why);
  };
  switch (layer.act) {
    case Activation::Id:
      return f_eq(t_var(y), aff);
    case Activation::Relu: {
      std::string z = pool.fresh("z");
      Formula off = f_and(f_le(t_var(z), t_const(0)), f_eq(t_var(y), t_const(0)));
      Formula on = f_and(f_lt(t_const(0), t_var(z)), f_eq(t_var(y), t_var(z)));
      return f_exists(z, f_and(f_eq(t_var(z), aff), f_or(off, on)));
    }
    case Activation::NlRelu: {
      if (!star) throw unsupported("is not expressible in linear arithmetic");
      std::string z = pool.fresh("z");
      Formula off = f_and(f_le(t_var(z), t_const(0)), f_eq(t_var(y), t_const(0)));
      Formula on = f_and(f_lt(t_const(0), t_var(z)),
                         f_eq(t_exp(t_var(y)), t_sum(t_var(z), t_const(1))));
      return f_exists(z, f_and(f_eq(t_var(z), aff), f_or(off, on)));
    }
    case Activation::Sigmoid: {
      if (!star) throw unsupported("is not expressible in linear arithmetic");
      std::string z = pool.fresh("z");
      Term lhs = t_product(t_var(y), t_sum(t_const(1), t_exp(t_var(z))));
      Formula cl = f_eq(lhs, t_exp(t_var(z)));
      return f_exists(z, f_and(f_eq(t_var(z), aff), cl));
    }
    case Activation::Tanh: {
      if (!star) throw unsupported("is not expressible in linear arithmetic");
      std::string z = pool.fresh("z");
      Term e2z = t_exp(t_scaled(2, z));
      Term lhs = t_product(t_var(y), t_sum(e2z, t_const(1)));
      Formula cl = f_eq(lhs, t_sum(e2z, t_const(-1)));
      return f_exists(z, f_and(f_eq(t_var(z), aff), cl));
    }
    default:
      throw unsupported(star ? "has no exponential-field characterization"
                             : "is not expressible in linear arithmetic");
  }
}

Formula net_formula(const Ffnn& net, const std::vector<std::string>& xs,
                    const std::vector<std::string>& ys, FreshVarPool& pool,
                    bool star) {
  check_wellformed(net);
  if (static_cast<int>(xs.size()) != net.in_dim() ||
      static_cast<int>(ys.size()) != net.out_dim())
    throw std::invalid_argument(
        "network arity mismatch: atom has " + std::to_string(xs.size()) +
        " inputs and " + std::to_string(ys.size()) + " outputs, network is " +
        std::to_string(net.in_dim()) + " -> " + std::to_string(net.out_dim()));
  std::vector<std::string> prev = xs;
  std::vector<std::string> bound;
  std::vector<Formula> conj;
  int nlayers = static_cast<int>(net.layers.size());
  for (int l = 0; l < nlayers; ++l) {
    const Layer& layer = net.layers[l];
    std::vector<std::string> outs;
    if (l + 1 == nlayers) {
      outs = ys;
    } else {
      outs = pool.fresh_block("h", layer.out_dim());
      bound.insert(bound.end(), outs.begin(), outs.end());
    }
    for (int i = 0; i < layer.out_dim(); ++i)
      conj.push_back(neuron_clause(layer, l, i, prev, outs[i], pool, star));
    prev = outs;
  }
  return f_exists_all(bound, f_and_all(conj));
}

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += xs[i];
  }
  return out;
}

struct AtomLowerer {
  const NetworkBinding& nets;
  FreshVarPool& pool;
  bool star;
  // Two syntactically identical atoms receive the same (shared) subformula.
  std::map<std::string, Formula> cache;

  const Ffnn& net_of(const std::string& name) const {
    auto it = nets.find(name);
    if (it == nets.end())
      throw std::invalid_argument("no binding for network '" + name + "'");
    return it->second;
  }

  Formula atom(const Formula& f, bool negated) {
    std::string key = (negated ? "!" : "") + f->net + "(" + join(f->ins) +
                      ")=(" + join(f->outs) + ")";
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Formula out;
    if (!negated) {
      out = net_formula(net_of(f->net), f->ins, f->outs, pool, star);
    } else {
      // N(x̄)≠(ȳ): the true outputs z̄ exist and differ somewhere from ȳ.
      std::vector<std::string> zs =
          pool.fresh_block("z", static_cast<int>(f->outs.size()));
      Formula defining = net_formula(net_of(f->net), f->ins, zs, pool, star);
      std::vector<Formula> diffs;
      for (std::size_t i = 0; i < zs.size(); ++i)
        diffs.push_back(f_neq(t_var(f->outs[i]), t_var(zs[i])));
      out = f_exists_all(zs, f_and(defining, f_or_all(diffs)));
    }
    cache.emplace(key, out);
    return out;
  }

  Formula walk(const Formula& f) {
    switch (f->kind) {
      case Fk::NnAtom:
        return atom(f, false);
      case Fk::NegNnAtom:
        return atom(f, true);
      case Fk::Not:
        // Keep network literals in negation normal form so existential
        // sentences lower to existential sentences.
        if (f->f1->kind == Fk::NnAtom) return atom(f->f1, true);
        if (f->f1->kind == Fk::NegNnAtom) return atom(f->f1, false);
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
        return f;  // arithmetic atoms pass through
    }
  }
};

Formula lower_all(const Formula& phi, const NetworkBinding& nets, bool star) {
  FreshVarPool pool(all_vars(phi));
  AtomLowerer lowerer{nets, pool, star, {}};
  return lowerer.walk(phi);
}

// Hoists every existential to the front. Sound here because lowering an
// existential sentence only ever introduces existentials in positive
// positions, under pairwise distinct fresh names.
Formula hoist_exists(const Formula& f, std::vector<std::string>& vars) {
  switch (f->kind) {
    case Fk::Exists:
      vars.push_back(f->var);
      return hoist_exists(f->f1, vars);
    case Fk::And:
    case Fk::Or: {
      Formula a = hoist_exists(f->f1, vars);
      Formula b = hoist_exists(f->f2, vars);
      return f->kind == Fk::And ? f_and(std::move(a), std::move(b))
                                : f_or(std::move(a), std::move(b));
    }
    case Fk::Not:
      if (!is_quantifier_free(f))
        throw std::logic_error("existential lowering left a negated quantifier");
      return f;
    case Fk::Forall:
      throw std::logic_error("existential lowering produced a universal step");
    default:
      return f;
  }
}

}  // namespace

Formula nn_to_lra(const Ffnn& net, const std::vector<std::string>& xvars,
                  const std::vector<std::string>& yvars, FreshVarPool& pool) {
  return net_formula(net, xvars, yvars, pool, false);
}

Formula nn_to_lra(const Ffnn& net, const std::vector<std::string>& xvars,
                  const std::vector<std::string>& yvars) {
  std::set<std::string> used(xvars.begin(), xvars.end());
  used.insert(yvars.begin(), yvars.end());
  FreshVarPool pool(std::move(used));
  return net_formula(net, xvars, yvars, pool, false);
}

Formula nnl_lower(const Formula& phi, const NetworkBinding& nets) {
  check_dialect(phi, Dialect::Nnl);
  Formula out = lower_all(phi, nets, false);
  if (auto v = dialect_violation(out, Dialect::Lra))
    throw std::logic_error("lowering left a non-arithmetic node: " + *v);
  return out;
}

Formula nnl_plus_lower(const Formula& phi, const NetworkBinding& nets) {
  check_dialect(phi, Dialect::NnlPlus);
  return lower_all(phi, nets, false);
}

Formula exists_nnl_lower(const Formula& phi, const NetworkBinding& nets) {
  check_dialect(phi, Dialect::ExistsNnl);
  // Normalizing first keeps network atoms out of negative positions, so the
  // lowered body only ever nests existentials under && and ||, where they
  // commute to the front. Atoms survive intact, unlike a full prenex pass.
  std::vector<std::string> vars;
  Formula matrix = hoist_exists(lower_all(to_nnf(phi), nets, false), vars);
  Formula out = f_exists_all(vars, matrix);
  check_dialect(out, Dialect::ExistsLra);
  return out;
}

Formula nnlstar_to_ref(const Formula& phi, const NetworkBinding& nets) {
  check_dialect(phi, Dialect::Nnl);
  Formula out = lower_all(phi, nets, true);
  if (auto v = dialect_violation(out, Dialect::Ref))
    throw std::logic_error("lowering left a non-arithmetic node: " + *v);
  return out;
}

Ffnn id_to_relu(const Ffnn& net) {
  check_wellformed(net);
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    Activation a = net.layers[l].act;
    if (a != Activation::Id && a != Activation::Relu)
      throw std::invalid_argument("layer " + std::to_string(l + 1) +
                                  ": only id and relu layers can be rewritten");
  }
  // Every wire of the original net maps to signed columns of the new one:
  // a split id neuron t is carried as relu(t) - relu(-t).
  struct SignedCol {
    int col;
    bool neg;
  };
  std::vector<std::vector<SignedCol>> carry(net.in_dim());
  for (int i = 0; i < net.in_dim(); ++i) carry[i] = {{i, false}};
  int width = net.in_dim();

  Ffnn out;
  int nlayers = static_cast<int>(net.layers.size());
  for (int l = 0; l < nlayers; ++l) {
    const Layer& layer = net.layers[l];
    bool last = l + 1 == nlayers;
    Mat w = zero_mat(layer.out_dim(), width);
    for (int i = 0; i < layer.out_dim(); ++i)
      for (int j = 0; j < layer.in_dim(); ++j)
        for (const SignedCol& sc : carry[j])
          w[i][sc.col] += sc.neg ? -layer.weights[i][j] : layer.weights[i][j];

    if (!last && layer.act == Activation::Id) {
      Mat split;
      Vec bias;
      carry.assign(layer.out_dim(), {});
      for (int i = 0; i < layer.out_dim(); ++i) {
        Vec negrow;
        negrow.reserve(w[i].size());
        for (const Rational& c : w[i]) negrow.push_back(-c);
        split.push_back(w[i]);
        split.push_back(std::move(negrow));
        bias.push_back(layer.bias[i]);
        bias.push_back(-layer.bias[i]);
        carry[i] = {{2 * i, false}, {2 * i + 1, true}};
      }
      width = 2 * layer.out_dim();
      out.layers.push_back({std::move(split), std::move(bias), Activation::Relu});
    } else {
      width = layer.out_dim();
      carry.assign(width, {});
      for (int i = 0; i < width; ++i) carry[i] = {{i, false}};
      out.layers.push_back({std::move(w), layer.bias, layer.act});
    }
  }
  return out;
}

}  // namespace nnv
