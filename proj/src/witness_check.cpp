#include "nnv/witness_check.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

namespace nnv {

namespace {

enum class Tri { True, False, Unknown };

Tri tri_not(Tri t) {
  if (t == Tri::True) return Tri::False;
  if (t == Tri::False) return Tri::True;
  return Tri::Unknown;
}

bool term_mentions(const Term& t, const std::string& v) {
  switch (t->kind) {
    case TermKind::Const:
      return false;
    case TermKind::Scaled:
      return t->var == v;
    case TermKind::Sum:
    case TermKind::Product:
      return term_mentions(t->lhs, v) || term_mentions(t->rhs, v);
    case TermKind::Exp:
      return term_mentions(t->lhs, v);
  }
  return false;
}

// t, read as a function of v with everything else fixed, is affine in v.
bool linear_in(const Term& t, const std::string& v) {
  switch (t->kind) {
    case TermKind::Const:
    case TermKind::Scaled:
      return true;
    case TermKind::Sum:
      return linear_in(t->lhs, v) && linear_in(t->rhs, v);
    case TermKind::Product:
      if (term_mentions(t->lhs, v) && term_mentions(t->rhs, v)) return false;
      return linear_in(t->lhs, v) && linear_in(t->rhs, v);
    case TermKind::Exp:
      return !term_mentions(t->lhs, v);
  }
  return false;
}

template <class Num>
struct Solver {
  static constexpr bool kFloat = std::is_same_v<Num, double>;
  using Env = std::map<std::string, Num>;

  const NetworkBinding& nets;
  double eps;

  bool le(const Num& a, const Num& b) const {
    if constexpr (kFloat)
      return a <= b + eps;
    else
      return a <= b;
  }
  // Strict guards stay strict: the emitted case splits put the boundary in
  // the non-strict branch, and widening < by eps would fire both branches.
  bool lt(const Num& a, const Num& b) const { return a < b; }
  bool num_eq(const Num& a, const Num& b) const {
    if constexpr (kFloat)
      return std::fabs(a - b) <= eps;
    else
      return a == b;
  }

  std::optional<Num> ev(const Term& t, const Env& env) const {
    switch (t->kind) {
      case TermKind::Const:
        if constexpr (kFloat)
          return t->value.get_d();
        else
          return t->value;
      case TermKind::Scaled: {
        auto it = env.find(t->var);
        if (it == env.end()) return std::nullopt;
        if constexpr (kFloat)
          return t->value.get_d() * it->second;
        else
          return Num(t->value * it->second);
      }
      case TermKind::Sum: {
        auto a = ev(t->lhs, env), b = ev(t->rhs, env);
        if (!a || !b) return std::nullopt;
        return Num(*a + *b);
      }
      case TermKind::Product: {
        auto a = ev(t->lhs, env), b = ev(t->rhs, env);
        if (!a || !b) return std::nullopt;
        return Num(*a * *b);
      }
      case TermKind::Exp: {
        if constexpr (kFloat) {
          auto a = ev(t->lhs, env);
          if (!a) return std::nullopt;
          return std::exp(*a);
        } else {
          throw std::invalid_argument("exponential term in exact check");
        }
      }
    }
    return std::nullopt;
  }

  std::optional<std::string> sole_unknown(const Term& t1, const Term& t2,
                                          const Env& env) const {
    std::set<std::string> vars = term_vars(t1);
    std::set<std::string> more = term_vars(t2);
    vars.insert(more.begin(), more.end());
    std::optional<std::string> found;
    for (const std::string& v : vars) {
      if (env.count(v)) continue;
      if (found) return std::nullopt;
      found = v;
    }
    return found;
  }

  // t1 = t2 with exactly one unknown v: solve for v when the equation is
  // affine in v, or of the shape e^(affine in v) = positive constant.
  Tri solve_eq(const Term& t1, const Term& t2, Env& env, bool& progress) {
    auto v = sole_unknown(t1, t2, env);
    if (!v) return Tri::Unknown;

    auto plug = [&](const Term& t, const Num& val) -> std::optional<Num> {
      Env e2 = env;
      e2[*v] = val;
      return ev(t, e2);
    };
    if (linear_in(t1, *v) && linear_in(t2, *v)) {
      auto a0 = plug(t1, Num(0)), b0 = plug(t2, Num(0));
      auto a1 = plug(t1, Num(1)), b1 = plug(t2, Num(1));
      if (!a0 || !b0 || !a1 || !b1) return Tri::Unknown;
      Num f0 = *a0 - *b0;
      Num coeff = (*a1 - *b1) - f0;
      if (num_eq(coeff, Num(0))) return Tri::Unknown;
      env[*v] = Num(-f0 / coeff);
      progress = true;
      return Tri::True;
    }
    if constexpr (kFloat) {
      auto try_exp = [&](const Term& et, const Term& other) -> Tri {
        if (et->kind != TermKind::Exp || !term_mentions(et, *v))
          return Tri::Unknown;
        if (term_mentions(other, *v)) return Tri::Unknown;
        auto c = ev(other, env);
        if (!c) return Tri::Unknown;
        if (*c <= 0) return Tri::False;  // e^u is positive
        const Term& u = et->lhs;
        if (!linear_in(u, *v)) return Tri::Unknown;
        auto u0 = plug(u, 0.0), u1 = plug(u, 1.0);
        if (!u0 || !u1) return Tri::Unknown;
        double coeff = *u1 - *u0;
        if (num_eq(coeff, 0.0)) return Tri::Unknown;
        env[*v] = (std::log(*c) - *u0) / coeff;
        progress = true;
        return Tri::True;
      };
      Tri r = try_exp(t1, t2);
      if (r != Tri::Unknown) return r;
      r = try_exp(t2, t1);
      if (r != Tri::Unknown) return r;
    }
    return Tri::Unknown;
  }

  const Ffnn& net_of(const std::string& name) const {
    auto it = nets.find(name);
    if (it == nets.end())
      throw std::invalid_argument("no binding for network '" + name + "'");
    return it->second;
  }

  std::optional<std::vector<Num>> tuple_of(const std::vector<std::string>& vs,
                                           const Env& env) const {
    std::vector<Num> out;
    out.reserve(vs.size());
    for (const std::string& v : vs) {
      auto it = env.find(v);
      if (it == env.end()) return std::nullopt;
      out.push_back(it->second);
    }
    return out;
  }

  Tri nn_atom(const Formula& f, Env& env, bool& progress) {
    const Ffnn& net = net_of(f->net);
    if (auto in = tuple_of(f->ins, env)) {
      std::vector<Num> out = eval(net, *in);
      if (out.size() != f->outs.size())
        throw std::invalid_argument("network arity mismatch in atom");
      for (std::size_t i = 0; i < out.size(); ++i) {
        auto it = env.find(f->outs[i]);
        if (it == env.end()) {
          env[f->outs[i]] = out[i];
          progress = true;
        } else if (!num_eq(it->second, out[i])) {
          return Tri::False;
        }
      }
      return Tri::True;
    }
    if constexpr (kFloat) {
      // Single sigmoid/tanh/nlrelu/id neurons invert from a known output.
      if (net.layers.size() == 1 && net.in_dim() == 1 && net.out_dim() == 1 &&
          f->ins.size() == 1 && f->outs.size() == 1 && !env.count(f->ins[0])) {
        auto sit = env.find(f->outs[0]);
        if (sit == env.end()) return Tri::Unknown;
        double s = sit->second;
        double pre;
        switch (net.layers[0].act) {
          case Activation::Id:
            pre = s;
            break;
          case Activation::Sigmoid:
            if (s <= 0 || s >= 1) return Tri::False;
            pre = std::log(s / (1 - s));
            break;
          case Activation::Tanh:
            if (s <= -1 || s >= 1) return Tri::False;
            pre = std::atanh(s);
            break;
          case Activation::NlRelu:
            if (s < -eps) return Tri::False;
            pre = s > eps ? std::expm1(s) : 0.0;
            break;
          default:
            return Tri::Unknown;
        }
        double w = net.layers[0].weights[0][0].get_d();
        double b = net.layers[0].bias[0].get_d();
        if (w == 0) return Tri::Unknown;
        env[f->ins[0]] = (pre - b) / w;
        progress = true;
        return Tri::True;
      }
    }
    return Tri::Unknown;
  }

  static void collect(const Formula& f, Fk kind, std::vector<Formula>& out) {
    if (f->kind == kind) {
      collect(f->f1, kind, out);
      collect(f->f2, kind, out);
    } else {
      out.push_back(f);
    }
  }

  Tri and_block(const Formula& f, Env& env, bool& progress) {
    std::vector<Formula> cs;
    collect(f, Fk::And, cs);
    std::vector<bool> done(cs.size(), false);
    for (;;) {
      bool pass_progress = false;
      bool open = false;
      for (std::size_t i = 0; i < cs.size(); ++i) {
        if (done[i]) continue;
        bool p = false;
        Tri r = truth(cs[i], env, p);
        pass_progress |= p;
        if (r == Tri::False) return Tri::False;
        if (r == Tri::True) {
          done[i] = true;
          pass_progress = true;
        } else {
          open = true;
        }
      }
      progress |= pass_progress;
      if (!open) return Tri::True;
      if (!pass_progress) return Tri::Unknown;
    }
  }

  Tri truth(const Formula& f, Env& env, bool& progress) {
    switch (f->kind) {
      case Fk::Le: {
        auto a = ev(f->t1, env), b = ev(f->t2, env);
        if (!a || !b) return Tri::Unknown;
        return le(*a, *b) ? Tri::True : Tri::False;
      }
      case Fk::Lt: {
        auto a = ev(f->t1, env), b = ev(f->t2, env);
        if (!a || !b) return Tri::Unknown;
        return lt(*a, *b) ? Tri::True : Tri::False;
      }
      case Fk::Eq: {
        auto a = ev(f->t1, env), b = ev(f->t2, env);
        if (a && b) return num_eq(*a, *b) ? Tri::True : Tri::False;
        return solve_eq(f->t1, f->t2, env, progress);
      }
      case Fk::Neq: {
        auto a = ev(f->t1, env), b = ev(f->t2, env);
        if (!a || !b) return Tri::Unknown;
        return num_eq(*a, *b) ? Tri::False : Tri::True;
      }
      case Fk::Not: {
        Env copy = env;
        bool p = false;
        return tri_not(truth(f->f1, copy, p));
      }
      case Fk::And:
        return and_block(f, env, progress);
      case Fk::Or: {
        std::vector<Formula> ds;
        collect(f, Fk::Or, ds);
        bool unknown = false;
        for (const Formula& d : ds) {
          Env copy = env;
          bool p = false;
          Tri r = truth(d, copy, p);
          if (r == Tri::True) {
            env = std::move(copy);
            progress |= p;
            return Tri::True;
          }
          if (r == Tri::Unknown) unknown = true;
        }
        return unknown ? Tri::Unknown : Tri::False;
      }
      case Fk::Implies: {
        Env gcopy = env;
        bool gp = false;
        Tri g = truth(f->f1, gcopy, gp);
        if (g == Tri::False) return Tri::True;
        if (g == Tri::True) return truth(f->f2, env, progress);
        // Guard undetermined: provisionally solve the conclusion, then see
        // whether its bindings settle the guard.
        Env hyp = env;
        bool hp = false;
        if (truth(f->f2, hyp, hp) == Tri::True) {
          Env gcheck = hyp;
          bool p2 = false;
          Tri g2 = truth(f->f1, gcheck, p2);
          if (g2 == Tri::True) {
            env = std::move(hyp);
            progress = true;
            return Tri::True;
          }
          if (g2 == Tri::False) return Tri::True;
        }
        return Tri::Unknown;
      }
      case Fk::Iff: {
        Env ca = env, cb = env;
        bool pa = false, pb = false;
        Tri a = truth(f->f1, ca, pa);
        Tri b = truth(f->f2, cb, pb);
        if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
        return a == b ? Tri::True : Tri::False;
      }
      case Fk::Exists: {
        std::optional<Num> saved;
        auto it = env.find(f->var);
        if (it != env.end()) {
          saved = it->second;
          env.erase(it);
        }
        Tri r = truth(f->f1, env, progress);
        env.erase(f->var);
        if (saved) env[f->var] = *saved;
        return r;
      }
      case Fk::Forall:
        throw std::invalid_argument("universal quantifier in witness check");
      case Fk::NnAtom:
        return nn_atom(f, env, progress);
      case Fk::NegNnAtom: {
        auto in = tuple_of(f->ins, env);
        auto want = tuple_of(f->outs, env);
        if (!in || !want) return Tri::Unknown;
        std::vector<Num> out = eval(net_of(f->net), *in);
        for (std::size_t i = 0; i < out.size(); ++i)
          if (!num_eq(out[i], (*want)[i])) return Tri::True;
        return Tri::False;
      }
      case Fk::IsPow2: {
        if constexpr (kFloat) {
          throw std::invalid_argument("ispow2 in float check");
        } else {
          auto it = env.find(f->var);
          if (it == env.end()) return Tri::Unknown;
          const Rational& q = it->second;
          bool yes = q > 0 && q.get_den() == 1 &&
                     mpz_popcount(q.get_num_mpz_t()) == 1;
          return yes ? Tri::True : Tri::False;
        }
      }
    }
    throw std::logic_error("unhandled formula node");
  }
};

template <class Num>
bool run(const Formula& f, std::map<std::string, Num> env,
         const NetworkBinding& nets, double eps) {
  Solver<Num> solver{nets, eps};
  bool progress = false;
  Tri r = solver.truth(f, env, progress);
  if (r == Tri::Unknown)
    throw std::runtime_error(
        "witness check: could not determine a bound variable assignment");
  return r == Tri::True;
}

}  // namespace

bool residual_holds_float(const Formula& f,
                          const std::map<std::string, double>& inputs,
                          const NetworkBinding& nets, double eps) {
  return run<double>(f, inputs, nets, eps);
}

bool transparent_holds_exact(const Formula& f, const Interpretation& inputs,
                             const NetworkBinding& nets) {
  return run<Rational>(f, inputs, nets, 0.0);
}

}  // namespace nnv
