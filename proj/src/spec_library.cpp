#include "nnv/spec_library.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace nnv {

namespace {

std::string xv(int i) { return "x" + std::to_string(i); }
std::string yv(int i) { return "y" + std::to_string(i); }
std::string zv(int i) { return "z" + std::to_string(i); }
std::string primed(const std::string& v) { return v + "'"; }

std::vector<std::string> var_block(const std::string& base, int count) {
  std::vector<std::string> vs;
  for (int i = 1; i <= count; ++i) vs.push_back(base + std::to_string(i));
  return vs;
}

std::vector<std::string> primed_all(const std::vector<std::string>& vs) {
  std::vector<std::string> out;
  for (const auto& v : vs) out.push_back(primed(v));
  return out;
}

std::vector<Term> terms_of(const std::vector<std::string>& vs) {
  std::vector<Term> ts;
  for (const auto& v : vs) ts.push_back(t_var(v));
  return ts;
}

Term diff(const std::string& a, const std::string& b) {
  return t_sum(t_scaled(1, a), t_scaled(-1, b));
}

// All m! reorderings of 1..m, guarded so the enumeration stays small.
std::vector<std::vector<int>> permutations_of(int m, const std::string& name) {
  if (m > 6)
    throw std::invalid_argument(name + ": permutation enumeration needs m <= 6, got m=" +
                                std::to_string(m));
  std::vector<int> pi(m);
  std::iota(pi.begin(), pi.end(), 1);
  std::vector<std::vector<int>> all;
  do all.push_back(pi); while (std::next_permutation(pi.begin(), pi.end()));
  return all;
}

Formula region_at(const Formula& region, const std::vector<std::string>& xs,
                  const std::vector<std::string>& actual) {
  Formula g = region;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (xs[i] != actual[i]) g = rename_free_var(g, xs[i], actual[i]);
  return g;
}

void require(bool ok, const std::string& name, const std::string& what) {
  if (!ok) throw std::invalid_argument("build_spec(" + name + "): " + what);
}

}  // namespace

Formula elem_of(const Term& x, const std::vector<Term>& ys) {
  std::vector<Formula> ds;
  for (const Term& y : ys) ds.push_back(f_eq(x, y));
  return f_or_all(ds);
}

Formula is_max(const Term& x, const std::vector<Term>& ys) {
  std::vector<Formula> bounds;
  for (const Term& y : ys) bounds.push_back(f_le(y, x));
  return f_and(elem_of(x, ys), f_and_all(bounds));
}

Formula argmax_is(const std::vector<Term>& ys, const std::vector<int>& K) {
  std::vector<Formula> cs;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    bool in_k = std::find(K.begin(), K.end(), static_cast<int>(i) + 1) != K.end();
    Formula at_max = is_max(ys[i], ys);
    cs.push_back(in_k ? at_max : f_not(at_max));
  }
  return f_and_all(cs);
}

Formula argmax_eq(const std::vector<Term>& ys, const std::vector<Term>& zs) {
  if (ys.size() != zs.size())
    throw std::invalid_argument("argmax_eq: tuples must share arity");
  int n = static_cast<int>(ys.size());
  if (n > 10)
    throw std::invalid_argument("argmax_eq: subset enumeration needs arity <= 10");
  std::vector<Formula> ds;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> K;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) K.push_back(i + 1);
    ds.push_back(f_and(argmax_is(ys, K), argmax_is(zs, K)));
  }
  return f_or_all(ds);
}

Formula build_spec(const std::string& name, const SpecParams& params) {
  const int m = params.m;
  int n = params.n;
  const std::string& N = params.net;

  if (name == "max") {
    require(m >= 1, name, "needs input arity m");
    require(n == 0 || n == 1, name, "has one output");
    auto xs = var_block("x", m);
    Formula body = f_implies(f_nn(N, xs, {"y1"}),
                             is_max(t_var("y1"), terms_of(xs)));
    auto all = xs;
    all.push_back("y1");
    return f_forall_all(all, body);
  }

  if (name == "sorted") {
    require(m >= 1, name, "needs input arity m");
    require(n == 0 || n == m, name, "maps m inputs to m outputs");
    auto xs = var_block("x", m);
    auto ys = var_block("y", m);
    std::vector<Formula> order;
    for (int i = 1; i <= m; ++i)
      for (int j = i + 1; j <= m; ++j)
        order.push_back(f_le(t_var(yv(i)), t_var(yv(j))));
    std::vector<Formula> perms;
    for (const auto& pi : permutations_of(m, name)) {
      std::vector<Formula> match;
      for (int i = 1; i <= m; ++i)
        match.push_back(f_eq(t_var(xv(i)), t_var(yv(pi[i - 1]))));
      perms.push_back(f_and_all(match));
    }
    Formula body = f_implies(f_nn(N, xs, ys),
                             f_and(f_and_all(order), f_or_all(perms)));
    auto all = xs;
    all.insert(all.end(), ys.begin(), ys.end());
    return f_forall_all(all, body);
  }

  if (name == "perm_invariant") {
    require(m >= 1 && n >= 1, name, "needs input arity m and output arity n");
    auto xs = var_block("x", m);
    auto ys = var_block("y", n);
    std::vector<Formula> atoms;
    for (const auto& pi : permutations_of(m, name)) {
      std::vector<std::string> shuffled;
      for (int i = 0; i < m; ++i) shuffled.push_back(xv(pi[i]));
      atoms.push_back(f_nn(N, shuffled, ys));
    }
    return f_forall_all(xs, f_exists_all(ys, f_and_all(atoms)));
  }

  if (name == "perm_equivariant") {
    require(m >= 1, name, "needs input arity m");
    require(n == 0 || n == m, name, "needs matching arities to permute outputs");
    auto xs = var_block("x", m);
    auto ys = var_block("y", m);
    std::vector<Formula> atoms;
    for (const auto& pi : permutations_of(m, name)) {
      std::vector<std::string> sx, sy;
      for (int i = 0; i < m; ++i) {
        sx.push_back(xv(pi[i]));
        sy.push_back(yv(pi[i]));
      }
      atoms.push_back(f_nn(N, sx, sy));
    }
    Formula body = f_implies(f_nn(N, xs, ys), f_and_all(atoms));
    auto all = xs;
    all.insert(all.end(), ys.begin(), ys.end());
    return f_forall_all(all, body);
  }

  if (name == "fairness" || name == "robustness" || name == "equivalence") {
    require(m >= 1 && n >= 1, name, "needs input arity m and output arity n");
    auto xs = var_block("x", m);
    auto ys = var_block("y", n);
    auto ysp = primed_all(ys);

    std::vector<Formula> premises;
    std::vector<std::string> all = xs;

    if (name == "equivalence") {
      premises.push_back(f_nn(N, xs, ys));
      premises.push_back(f_nn(params.net2, xs, ysp));
      if (params.region) premises.push_back(params.region);
    } else {
      auto xsp = primed_all(xs);
      all.insert(all.end(), xsp.begin(), xsp.end());
      premises.push_back(f_nn(N, xs, ys));
      premises.push_back(f_nn(N, xsp, ysp));
      if (params.region) {
        premises.push_back(params.region);
        premises.push_back(region_at(params.region, xs, xsp));
      }
      if (name == "fairness") {
        require(!params.K.empty(), name, "needs the agreeing input positions K");
        for (int i : params.K) {
          require(1 <= i && i <= m, name, "K positions must lie in 1..m");
          premises.push_back(f_eq(t_var(xv(i)), t_var(primed(xv(i)))));
        }
      } else {
        require(params.epsilon.has_value(), name, "needs the budget epsilon");
        // z_i = |x_i - x_i'|, spelled with the two order cases, then
        // z_1 + ... + z_m <= epsilon.
        std::vector<Formula> abs_defs;
        std::vector<Term> zs;
        for (int i = 1; i <= m; ++i) {
          Term xi = t_var(xv(i));
          Term xip = t_var(primed(xv(i)));
          Term zi = t_var(zv(i));
          zs.push_back(zi);
          abs_defs.push_back(f_and(
              f_implies(f_le(xi, xip), f_eq(zi, diff(primed(xv(i)), xv(i)))),
              f_implies(f_lt(xip, xi), f_eq(zi, diff(xv(i), primed(xv(i)))))));
        }
        abs_defs.push_back(f_le(t_sum(zs), t_const(*params.epsilon)));
        premises.push_back(f_exists_all(var_block("z", m), f_and_all(abs_defs)));
      }
    }

    all.insert(all.end(), ys.begin(), ys.end());
    all.insert(all.end(), ysp.begin(), ysp.end());
    Formula body = f_implies(f_and_all(premises),
                             argmax_eq(terms_of(ys), terms_of(ysp)));
    return f_forall_all(all, body);
  }

  if (name == "injective") {
    require(m >= 1 && n >= 1, name, "needs input arity m and output arity n");
    auto xs = var_block("x", m);
    auto xsp = primed_all(xs);
    auto ys = var_block("y", n);
    std::vector<Formula> eqs;
    for (int i = 1; i <= m; ++i)
      eqs.push_back(f_eq(t_var(xv(i)), t_var(primed(xv(i)))));
    Formula body = f_implies(f_and(f_nn(N, xs, ys), f_nn(N, xsp, ys)),
                             f_and_all(eqs));
    auto all = xs;
    all.insert(all.end(), xsp.begin(), xsp.end());
    all.insert(all.end(), ys.begin(), ys.end());
    return f_forall_all(all, body);
  }

  if (name == "surjective") {
    require(m >= 1 && n >= 1, name, "needs input arity m and output arity n");
    auto xs = var_block("x", m);
    auto ys = var_block("y", n);
    return f_forall_all(ys, f_exists_all(xs, f_nn(N, xs, ys)));
  }

  if (name == "xor") {
    require(m == 0 || m == 2, name, "is a two-input property");
    require(n == 0 || n == 1, name, "has one output");
    Term x1 = t_var("x1"), x2 = t_var("x2"), y = t_var("y1");
    Term zero = t_const(0), one = t_const(1);
    Formula both_same = f_or(f_and(f_eq(x1, zero), f_eq(x2, zero)),
                             f_and(f_eq(x1, one), f_eq(x2, one)));
    Formula differ = f_or(f_and(f_eq(x1, zero), f_eq(x2, one)),
                          f_and(f_eq(x1, one), f_eq(x2, zero)));
    Formula body = f_implies(
        f_nn(N, {"x1", "x2"}, {"y1"}),
        f_and(f_implies(both_same, f_eq(y, zero)),
              f_implies(differ, f_eq(y, one))));
    return f_forall_all({"x1", "x2", "y1"}, body);
  }

  throw std::invalid_argument("build_spec: unknown property '" + name + "'");
}

}  // namespace nnv
