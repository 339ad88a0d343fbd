#include "nnv/reach.hpp"

#include "nnv/logic_transform.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace nnv {

namespace {

[[noreturn]] void bad_dimacs(const std::string& what) {
  throw std::invalid_argument("dimacs: " + what);
}

}  // namespace

Cnf3 parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Cnf3 cnf;
  long declared_clauses = -1;
  std::vector<int> pending;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "c") continue;
    if (first == "p") {
      if (declared_clauses >= 0) bad_dimacs("duplicate header");
      std::string fmt;
      if (!(ls >> fmt >> cnf.num_vars >> declared_clauses) || fmt != "cnf")
        bad_dimacs("malformed header");
      if (cnf.num_vars < 0 || declared_clauses < 0)
        bad_dimacs("negative counts in header");
      continue;
    }
    if (declared_clauses < 0) bad_dimacs("literals before the header");
    ls.clear();
    ls.str(line);
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (pending.size() != 3)
          bad_dimacs("clause with " + std::to_string(pending.size()) +
                     " literals");
        cnf.clauses.push_back({pending[0], pending[1], pending[2]});
        pending.clear();
        continue;
      }
      if (std::abs(lit) > cnf.num_vars)
        bad_dimacs("literal " + std::to_string(lit) + " out of range");
      pending.push_back(lit);
    }
    if (!ls.eof()) bad_dimacs("unexpected token in clause data");
  }
  if (!pending.empty()) bad_dimacs("unterminated clause");
  if (declared_clauses < 0) bad_dimacs("missing header");
  if (static_cast<long>(cnf.clauses.size()) != declared_clauses)
    bad_dimacs("header declares " + std::to_string(declared_clauses) +
               " clauses, found " + std::to_string(cnf.clauses.size()));
  return cnf;
}

Formula reach_formula(const ReachInstance& inst, const std::string& name) {
  check_wellformed(inst.network);
  int m = inst.network.in_dim();
  int n = inst.network.out_dim();
  std::vector<std::string> xs, ys;
  for (int i = 1; i <= m; ++i) xs.push_back("x" + std::to_string(i));
  for (int i = 1; i <= n; ++i) ys.push_back("y" + std::to_string(i));
  std::vector<Formula> parts;
  parts.push_back(f_nn(name, xs, ys));
  for (const Formula& c : inst.input_constraints) parts.push_back(c);
  for (const Formula& c : inst.output_constraints) parts.push_back(c);
  Formula body = f_and_all(parts);
  std::vector<std::string> bound = xs;
  bound.insert(bound.end(), ys.begin(), ys.end());
  Formula out = f_exists_all(bound, body);
  check_dialect(out, Dialect::Reach);
  return out;
}

ReachInstance sat3_to_reach(const Cnf3& cnf) {
  int m = cnf.num_vars;
  int k = static_cast<int>(cnf.clauses.size());
  if (m <= 0) throw std::invalid_argument("sat3_to_reach: no variables");
  for (const auto& cl : cnf.clauses)
    for (int lit : cl)
      if (lit == 0 || std::abs(lit) > m)
        throw std::invalid_argument("sat3_to_reach: literal out of range");

  Rational half(1, 2);

  // Layer 1, all relu. Rows 0..k-1 compute the clause penalties
  // relu(1 - l1 - l2 - l3), which under 0/1 inputs is 1 exactly when all
  // three literals are false (a negated literal contributes 1 - r). Rows
  // k+2i / k+2i+1 compute relu(ri - 1/2) and relu(1/2 - ri).
  Layer first;
  first.act = Activation::Relu;
  first.weights = zero_mat(k + 2 * m, m);
  first.bias = zero_vec(k + 2 * m);
  for (int j = 0; j < k; ++j) {
    first.bias[j] = 1;
    for (int lit : cnf.clauses[j]) {
      int v = std::abs(lit) - 1;
      if (lit > 0) {
        first.weights[j][v] -= 1;
      } else {
        first.weights[j][v] += 1;
        first.bias[j] -= 1;
      }
    }
  }
  for (int i = 0; i < m; ++i) {
    first.weights[k + 2 * i][i] = 1;
    first.bias[k + 2 * i] = -half;
    first.weights[k + 2 * i + 1][i] = -1;
    first.bias[k + 2 * i + 1] = half;
  }

  // Layer 2, id. y = k - sum of penalties counts satisfied clauses;
  // zi = relu(ri - 1/2) + relu(1/2 - ri) - 1/2 is 0 exactly at ri in {0,1}.
  Layer second;
  second.act = Activation::Id;
  second.weights = zero_mat(1 + m, k + 2 * m);
  second.bias = zero_vec(1 + m);
  second.bias[0] = k;
  for (int j = 0; j < k; ++j) second.weights[0][j] = -1;
  for (int i = 0; i < m; ++i) {
    second.weights[1 + i][k + 2 * i] = 1;
    second.weights[1 + i][k + 2 * i + 1] = 1;
    second.bias[1 + i] = -half;
  }

  ReachInstance inst;
  inst.network.layers = {std::move(first), std::move(second)};
  check_wellformed(inst.network);

  auto pin = [&](const std::string& v, Rational c) {
    inst.output_constraints.push_back(f_le(t_var(v), t_const(c)));
    inst.output_constraints.push_back(f_le(t_const(c), t_var(v)));
  };
  pin("y1", Rational(k));
  for (int i = 0; i < m; ++i) pin("y" + std::to_string(i + 2), 0);
  return inst;
}

}  // namespace nnv
