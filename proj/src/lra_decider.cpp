#include "nnv/lra_decider.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nnv/compile_nn.hpp"
#include "nnv/wf_codec.hpp"

namespace nnv {

namespace {

constexpr Sym kZero = Sym::Zero;
constexpr Sym kOne = Sym::One;

// 1-based caller index to 0-based track, range-checked.
int tr(int k, int i) {
  if (i < 1 || i > k) throw std::invalid_argument("track index out of range");
  return i - 1;
}

// Column label: def on every track, then the fixes intersected in. Repeated
// tracks therefore intersect, and an infeasible combination empties the set.
Label col(int k, SymSet def, const std::vector<std::pair<int, SymSet>>& fix) {
  Label l(k, def);
  for (const auto& [t, s] : fix) l[t] = l[t] & s;
  return l;
}

Label sign_col(int k, const std::vector<std::pair<int, SymSet>>& fix = {}) {
  return col(k, SymSet::signs(), fix);
}

Label digit_col(int k, const std::vector<std::pair<int, SymSet>>& fix = {}) {
  return col(k, SymSet::digits(), fix);
}

Label comma_col(int k) { return Label(k, SymSet(Sym::Comma)); }

void edge(Buchi& a, int from, Label l, int to) {
  if (!label_empty(l)) a.edges.push_back({from, std::move(l), to});
}

// Trim and recompute the complementability flag.
Buchi finish(Buchi a) {
  a = trim(a);
  a.det_weak = is_deterministic(a) && is_structurally_weak(a);
  check_buchi(a);
  return a;
}

// Coalesce a list of labels in place: drop labels subsumed by another and
// merge pairs that agree on every track but one. The union of letters is
// unchanged; the list ends sorted so equal unions usually spell equally.
void coalesce_labels(std::vector<Label>& ls) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t x = 0; x < ls.size() && !changed; ++x) {
      for (std::size_t y = x + 1; y < ls.size() && !changed; ++y) {
        const Label& a = ls[x];
        const Label& b = ls[y];
        int diff = -1, ndiff = 0;
        bool x_in_y = true, y_in_x = true;
        for (std::size_t t = 0; t < a.size(); ++t) {
          if (a[t] == b[t]) continue;
          if ((a[t] & b[t]) != a[t]) x_in_y = false;
          if ((a[t] & b[t]) != b[t]) y_in_x = false;
          ++ndiff;
          diff = static_cast<int>(t);
        }
        if (ndiff == 0 || x_in_y) {  // b covers a (or equals it)
          ls.erase(ls.begin() + static_cast<std::ptrdiff_t>(x));
          changed = true;
        } else if (y_in_x) {
          ls.erase(ls.begin() + static_cast<std::ptrdiff_t>(y));
          changed = true;
        } else if (ndiff == 1) {
          ls[x][static_cast<std::size_t>(diff)] =
              ls[x][static_cast<std::size_t>(diff)] | b[static_cast<std::size_t>(diff)];
          ls.erase(ls.begin() + static_cast<std::ptrdiff_t>(y));
          changed = true;
        }
      }
    }
  }
  std::sort(ls.begin(), ls.end(), [](const Label& a, const Label& b) {
    for (std::size_t t = 0; t < a.size(); ++t)
      if (a[t] != b[t]) return a[t] < b[t];
    return false;
  });
}

// Forward-bisimulation quotient: refine {finals, nonfinals} until states in
// a class carry identical coalesced labels into identical classes, then keep
// one state per class. The language is preserved, and the products built
// here collapse hard since most composite states only differ in bookkeeping.
Buchi reduce_bisim(const Buchi& a) {
  std::vector<std::vector<std::pair<Label, int>>> out(
      static_cast<std::size_t>(a.states));
  for (const Edge& e : a.edges)
    out[static_cast<std::size_t>(e.from)].push_back({e.label, e.to});
  std::vector<int> cls(static_cast<std::size_t>(a.states));
  for (int s = 0; s < a.states; ++s)
    cls[static_cast<std::size_t>(s)] = a.finals[static_cast<std::size_t>(s)];
  int n_cls = 2;
  for (;;) {
    std::map<std::string, int> ids;
    std::vector<int> next(static_cast<std::size_t>(a.states));
    for (int s = 0; s < a.states; ++s) {
      std::map<int, std::vector<Label>> per;
      for (const auto& [l, to] : out[static_cast<std::size_t>(s)])
        per[cls[static_cast<std::size_t>(to)]].push_back(l);
      std::string sig;
      auto put = [&sig](int v) {
        for (int b = 0; b < 4; ++b) sig.push_back(static_cast<char>(v >> (8 * b)));
      };
      put(cls[static_cast<std::size_t>(s)]);
      for (auto& [c, ls] : per) {
        coalesce_labels(ls);
        put(c);
        put(static_cast<int>(ls.size()));
        for (const Label& l : ls)
          for (SymSet ss : l) sig.push_back(static_cast<char>(ss.bits()));
      }
      auto [it, fresh] = ids.insert({std::move(sig), static_cast<int>(ids.size())});
      (void)fresh;
      next[static_cast<std::size_t>(s)] = it->second;
    }
    const int grown = static_cast<int>(ids.size());
    cls = std::move(next);
    if (grown == n_cls) break;
    n_cls = grown;
  }
  Buchi q;
  q.tracks = a.tracks;
  q.states = n_cls;
  q.init = cls[static_cast<std::size_t>(a.init)];
  q.finals.assign(static_cast<std::size_t>(n_cls), false);
  std::vector<int> rep(static_cast<std::size_t>(n_cls), -1);
  for (int s = 0; s < a.states; ++s) {
    const int c = cls[static_cast<std::size_t>(s)];
    if (a.finals[static_cast<std::size_t>(s)]) q.finals[static_cast<std::size_t>(c)] = true;
    if (rep[static_cast<std::size_t>(c)] < 0) rep[static_cast<std::size_t>(c)] = s;
  }
  for (int c = 0; c < n_cls; ++c) {
    std::map<int, std::vector<Label>> per;
    for (const auto& [l, to] : out[static_cast<std::size_t>(rep[static_cast<std::size_t>(c)])])
      per[cls[static_cast<std::size_t>(to)]].push_back(l);
    for (auto& [to, ls] : per) {
      coalesce_labels(ls);
      for (Label& l : ls) q.edges.push_back({c, std::move(l), to});
    }
  }
  q = trim(std::move(q));
  q.det_weak = is_deterministic(q) && is_structurally_weak(q);
  check_buchi(q);
  return q;
}

// Project to the first k tracks and restore the spellings lost with the
// dropped ones (shorter words whose pre-images needed more integer columns).
// Quotienting afterwards keeps the composites downstream from snowballing.
Buchi clproj(const Buchi& a, int k) {
  Buchi p = ba_project(a, k);
  if (k >= 1) p = leading_zero_closure(p);
  return reduce_bisim(p);
}

// Well-formed words whose track t carries the given sign.
Buchi sign_shape(int k, int t, Sym sign) {
  Buchi a;
  a.tracks = k;
  a.states = 3;
  a.finals = {false, false, true};
  edge(a, 0, sign_col(k, {{t, SymSet(sign)}}), 1);
  edge(a, 1, digit_col(k), 1);
  edge(a, 1, comma_col(k), 2);
  edge(a, 2, digit_col(k), 2);
  return finish(std::move(a));
}

// Magnitude comparison digit by digit. The automaton tracks the difference
// between the two digit prefixes read so far, which stays in {-1, 0, +1} on
// equal values (the off-by-one states absorb the two spellings of one
// number); any transition pushing it outside is simply absent, so unequal
// pairs fall off the machine. The zero branch accepts sign-mismatched
// spellings of 0. negated compares against the other track's negation.
Buchi eq_core(int k, int i, int j, bool negated) {
  Buchi a;
  a.tracks = k;
  // 0 sign; int phase E=1 P=2 M=3 Z=4; frac phase 5..8.
  const int E = 1, P = 2, M = 3, Z = 4, F = 4;
  a.states = 9;
  a.finals.assign(9, false);
  for (int s = E + F; s <= Z + F; ++s) a.finals[s] = true;

  const SymSet plus(Sym::Plus), minus(Sym::Minus);
  if (!negated) {
    edge(a, 0, sign_col(k, {{i, plus}, {j, plus}}), E);
    edge(a, 0, sign_col(k, {{i, minus}, {j, minus}}), E);
    edge(a, 0, sign_col(k, {{i, plus}, {j, minus}}), Z);
    edge(a, 0, sign_col(k, {{i, minus}, {j, plus}}), Z);
  } else {
    edge(a, 0, sign_col(k, {{i, plus}, {j, minus}}), E);
    edge(a, 0, sign_col(k, {{i, minus}, {j, plus}}), E);
    edge(a, 0, sign_col(k, {{i, plus}, {j, plus}}), Z);
    edge(a, 0, sign_col(k, {{i, minus}, {j, minus}}), Z);
  }

  auto dig = [&](Sym di, Sym dj) {
    return digit_col(k, {{i, SymSet(di)}, {j, SymSet(dj)}});
  };
  for (int base : {0, F}) {
    edge(a, E + base, dig(kZero, kZero), E + base);
    edge(a, E + base, dig(kOne, kOne), E + base);
    edge(a, E + base, dig(kOne, kZero), P + base);
    edge(a, E + base, dig(kZero, kOne), M + base);
    edge(a, P + base, dig(kZero, kOne), P + base);
    edge(a, M + base, dig(kOne, kZero), M + base);
    edge(a, Z + base, dig(kZero, kZero), Z + base);
  }
  for (int s = E; s <= Z; ++s) edge(a, s, comma_col(k), s + F);
  return finish(std::move(a));
}

}  // namespace

Buchi wf_automaton(int k) {
  if (k < 0) throw std::invalid_argument("wf_automaton: negative arity");
  Buchi a;
  a.tracks = k;
  if (k == 0) {
    a.states = 1;
    a.finals = {true};
    a.edges.push_back({0, Label{}, 0});
  } else {
    a.states = 3;
    a.finals = {false, false, true};
    edge(a, 0, sign_col(k), 1);
    edge(a, 1, digit_col(k), 1);
    edge(a, 1, comma_col(k), 2);
    edge(a, 2, digit_col(k), 2);
  }
  return finish(std::move(a));
}

Buchi eq_automaton(int k, int i, int j) {
  return eq_core(k, tr(k, i), tr(k, j), false);
}

Buchi neg_automaton(int k, int i, int j) {
  return eq_core(k, tr(k, i), tr(k, j), true);
}

Buchi add_bitwise_automaton(int k, int i, int i1, int i2) {
  const int r = tr(k, i), x = tr(k, i1), y = tr(k, i2);
  Buchi a;
  a.tracks = k;
  a.states = 15;
  a.finals.assign(15, false);
  const SymSet plus(Sym::Plus), minus(Sym::Minus);

  // Magnitudes satisfy |res| = |opa| + |opb| for one of three role
  // assignments, selected by the sign pattern; a carry machine checks the
  // digit prefixes of that equation, keeping their difference in {0, 1}.
  // The remaining patterns force all three magnitudes to zero.
  const int res[3] = {r, x, y};
  const int opa[3] = {x, y, x};
  const int opb[3] = {y, r, r};
  const SymSet pat[3][2][3] = {
      // sign of (x, y, r) per case
      {{plus, plus, plus}, {minus, minus, minus}},
      {{plus, minus, plus}, {minus, plus, minus}},
      {{minus, plus, plus}, {plus, minus, minus}},
  };
  auto ds = [](int d) { return SymSet(d ? kOne : kZero); };
  for (int m = 0; m < 3; ++m) {
    const int base = 1 + 4 * m;  // s0 int, s1 int, s0 frac, s1 frac
    for (const auto& c : pat[m])
      edge(a, 0, sign_col(k, {{x, c[0]}, {y, c[1]}, {r, c[2]}}), base);
    for (int phase : {0, 2})
      for (int s = 0; s < 2; ++s)
        for (int da = 0; da < 2; ++da)
          for (int db = 0; db < 2; ++db)
            for (int dc = 0; dc < 2; ++dc) {
              int ns = dc + 2 * s - da - db;
              if (ns < 0 || ns > 1) continue;
              edge(a, base + phase + s,
                   digit_col(k, {{opa[m], ds(da)}, {opb[m], ds(db)},
                                 {res[m], ds(dc)}}),
                   base + phase + ns);
            }
    edge(a, base + 0, comma_col(k), base + 2);
    edge(a, base + 1, comma_col(k), base + 3);
    a.finals[base + 2] = a.finals[base + 3] = true;
  }
  const int zi = 13, zf = 14;
  edge(a, 0, sign_col(k, {{x, plus}, {y, plus}, {r, minus}}), zi);
  edge(a, 0, sign_col(k, {{x, minus}, {y, minus}, {r, plus}}), zi);
  for (int s : {zi, zf})
    edge(a, s, digit_col(k, {{x, ds(0)}, {y, ds(0)}, {r, ds(0)}}), s);
  edge(a, zi, comma_col(k), zf);
  a.finals[zf] = true;
  return finish(std::move(a));
}

Buchi add_automaton(int k, int i, int i1, int i2) {
  tr(k, i), tr(k, i1), tr(k, i2);
  // The digit-level adder is strict about tail spellings; summing onto a
  // scratch track and comparing by value lets the result track spell the sum
  // any way it likes.
  Buchi body = ba_intersect(add_bitwise_automaton(k + 1, k + 1, i1, i2),
                            eq_automaton(k + 1, i, k + 1));
  return clproj(body, k);
}

Buchi add_n_automaton(int k, int i, const std::vector<int>& parts) {
  tr(k, i);
  for (int p : parts) tr(k, p);
  if (parts.empty()) return const_automaton(k, i, Rational(0));
  if (parts.size() == 1) return eq_automaton(k, i, parts[0]);
  if (parts.size() == 2) return add_automaton(k, i, parts[0], parts[1]);
  std::vector<int> head(parts.begin(), parts.end() - 1);
  Buchi body = ba_intersect(add_n_automaton(k + 1, k + 1, head),
                            add_automaton(k + 1, i, parts.back(), k + 1));
  return clproj(body, k);
}

Buchi le_automaton(int k, int i, int j) {
  tr(k, i), tr(k, j);
  // x_i <= x_j iff x_j = x_i + d for some d with sign +.
  Buchi body = ba_intersect(add_automaton(k + 1, j, i, k + 1),
                            sign_shape(k + 1, k, Sym::Plus));
  return clproj(body, k);
}

Buchi mult_automaton(int k, int i, const Rational& a, int j) {
  tr(k, i), tr(k, j);
  if (a == 0) return const_automaton(k, i, Rational(0));
  if (a == 1) return eq_automaton(k, i, j);
  if (a == -1) return neg_automaton(k, i, j);
  if (a.get_den() == 1) {
    if (a < 0) {
      // x_i = a x_j iff x_i = (-a)(-x_j).
      Buchi body = ba_intersect(neg_automaton(k + 1, k + 1, j),
                                mult_automaton(k + 1, i, -a, k + 1));
      return clproj(body, k);
    }
    if (a == 2) {
      Buchi body = ba_intersect(eq_automaton(k + 1, k + 1, j),
                                add_automaton(k + 1, i, j, k + 1));
      return clproj(body, k);
    }
    // Halve through one scratch track per level: for even a the track holds
    // (a/2) x_j and gets doubled, for odd a it holds (a-1) x_j and x_j is
    // added on. Depth is logarithmic and every level projects right back.
    const bool even = a.get_num() % 2 == 0;
    const Rational inner = even ? Rational(a / 2) : Rational(a - 1);
    Buchi step = even ? mult_automaton(k + 1, i, Rational(2), k + 1)
                      : add_automaton(k + 1, i, j, k + 1);
    Buchi body =
        ba_intersect(mult_automaton(k + 1, k + 1, inner, j), std::move(step));
    return clproj(body, k);
  }
  // x_i = (m/n) x_j iff n x_i and m x_j agree on a shared scratch track.
  Buchi body = ba_intersect(
      mult_automaton(k + 1, k + 1, Rational(a.get_num()), j),
      mult_automaton(k + 1, k + 1, Rational(a.get_den()), i));
  return clproj(body, k);
}

Buchi const_automaton(int k, int i, const Rational& b) {
  const int t = tr(k, i);
  const WfEncoding enc = encode_rational(abs(b));
  std::vector<Sym> ints, fpre, cyc;
  for (std::size_t c = 1; c < enc.comma; ++c)
    ints.push_back(enc.word.prefix[c][0]);
  for (std::size_t c = enc.comma + 1; c < enc.word.prefix.size(); ++c)
    fpre.push_back(enc.word.prefix[c][0]);
  for (const TrackSymbol& c : enc.word.period) cyc.push_back(c[0]);

  Buchi a;
  a.tracks = k;
  a.states = 2;  // 0 sign, 1 leading-zero loop
  auto fresh = [&] { return a.states++; };
  auto dcol = [&](Sym d) { return digit_col(k, {{t, SymSet(d)}}); };

  if (b == 0) {
    edge(a, 0, sign_col(k), 1);
  } else {
    edge(a, 0, sign_col(k, {{t, SymSet(b > 0 ? Sym::Plus : Sym::Minus)}}), 1);
  }
  edge(a, 1, dcol(kZero), 1);

  // Canonical digits, then the period unrolled into a cycle of states.
  int cur = 1;
  for (Sym d : ints) {
    int s = fresh();
    edge(a, cur, dcol(d), s);
    cur = s;
  }
  int cm = fresh();
  edge(a, cur, comma_col(k), cm);
  cur = cm;
  for (Sym d : fpre) {
    int s = fresh();
    edge(a, cur, dcol(d), s);
    cur = s;
  }
  const int p = static_cast<int>(cyc.size());
  std::vector<int> ring(p);
  for (int x = 0; x < p; ++x) ring[x] = fresh();
  edge(a, cur, dcol(cyc[0]), ring[1 % p]);
  for (int x = 0; x < p; ++x) edge(a, ring[x], dcol(cyc[x]), ring[(x + 1) % p]);
  a.finals.assign(a.states, false);
  for (int x = 0; x < p; ++x) a.finals[ring[x]] = true;

  // Terminating expansions have a second spelling ending in 1^w.
  if (b != 0) {
    if (auto twin = alt_tail(enc)) {
      std::vector<Sym> tints, tfpre;
      for (std::size_t c = 1; c < twin->comma; ++c)
        tints.push_back(twin->word.prefix[c][0]);
      for (std::size_t c = twin->comma + 1; c < twin->word.prefix.size(); ++c)
        tfpre.push_back(twin->word.prefix[c][0]);
      while (!tints.empty() && tints.front() == kZero)
        tints.erase(tints.begin());
      int cur2 = 1;
      for (Sym d : tints) {
        int s = fresh();
        edge(a, cur2, dcol(d), s);
        cur2 = s;
      }
      int cm2 = fresh();
      edge(a, cur2, comma_col(k), cm2);
      cur2 = cm2;
      for (Sym d : tfpre) {
        int s = fresh();
        edge(a, cur2, dcol(d), s);
        cur2 = s;
      }
      int tail = fresh();
      edge(a, cur2, dcol(kOne), tail);
      edge(a, tail, dcol(kOne), tail);
      a.finals.resize(a.states, false);
      a.finals[tail] = true;
    }
  }
  a.finals.resize(a.states, false);
  return finish(std::move(a));
}

Buchi power_of_two_automaton(int k, int i) {
  const int t = tr(k, i);
  Buchi a;
  a.tracks = k;
  // 0 sign; 1 leading zeros; 2 read the single 1; 3/4 committed to the
  // 0-tail resp. 1-tail integer digits; 5 comma right after the 1; 6/7 the
  // two fraction tails; 8 comma with no integer 1 (only 0.111... = 1 left).
  a.states = 9;
  a.finals.assign(9, false);
  a.finals[6] = a.finals[7] = true;
  auto dcol = [&](Sym d) { return digit_col(k, {{t, SymSet(d)}}); };
  edge(a, 0, sign_col(k, {{t, SymSet(Sym::Plus)}}), 1);
  edge(a, 1, dcol(kZero), 1);
  edge(a, 1, dcol(kOne), 2);
  edge(a, 1, comma_col(k), 8);
  edge(a, 8, dcol(kOne), 7);
  edge(a, 2, dcol(kZero), 3);
  edge(a, 2, dcol(kOne), 4);
  edge(a, 2, comma_col(k), 5);
  edge(a, 3, dcol(kZero), 3);
  edge(a, 3, comma_col(k), 6);
  edge(a, 4, dcol(kOne), 4);
  edge(a, 4, comma_col(k), 7);
  edge(a, 5, dcol(kZero), 6);
  edge(a, 5, dcol(kOne), 7);
  edge(a, 6, dcol(kZero), 6);
  edge(a, 7, dcol(kOne), 7);
  return finish(std::move(a));
}

std::size_t TermTable::index_of(const Term& t) const {
  for (std::size_t x = 0; x < terms.size(); ++x)
    if (term_equal(terms[x], t)) return x + 1;
  throw std::invalid_argument("term not in table");
}

TermTable build_term_table(const Formula& matrix,
                           const std::vector<std::string>& vars) {
  TermTable tt;
  tt.num_vars = vars.size();
  std::set<std::string> bound(vars.begin(), vars.end());
  if (bound.size() != vars.size())
    throw std::invalid_argument("duplicate variable name");
  for (const std::string& v : vars) tt.terms.push_back(t_var(v));

  auto add = [&](const Term& t) {
    for (const Term& u : tt.terms)
      if (term_equal(u, t)) return;
    tt.terms.push_back(t);
  };
  std::function<void(const Term&)> visit = [&](const Term& t) {
    switch (t->kind) {
      case TermKind::Const:
        add(t);
        return;
      case TermKind::Scaled:
        if (!bound.count(t->var))
          throw std::invalid_argument("unbound variable: " + t->var);
        add(t);  // coefficient 1 collapses onto the variable entry
        return;
      case TermKind::Sum:
        visit(t->lhs);
        visit(t->rhs);
        add(t);
        return;
      default:
        throw std::invalid_argument("term is not linear");
    }
  };
  std::function<void(const Formula&)> walk = [&](const Formula& f) {
    switch (f->kind) {
      case Fk::Le:
      case Fk::Lt:
      case Fk::Eq:
      case Fk::Neq:
        visit(f->t1);
        visit(f->t2);
        return;
      case Fk::IsPow2:
        if (!bound.count(f->var))
          throw std::invalid_argument("unbound variable: " + f->var);
        return;
      case Fk::Not:
        walk(f->f1);
        return;
      case Fk::And:
      case Fk::Or:
      case Fk::Implies:
      case Fk::Iff:
        walk(f->f1);
        walk(f->f2);
        return;
      default:
        throw std::invalid_argument(
            "matrix must be quantifier-free arithmetic");
    }
  };
  walk(matrix);
  return tt;
}

Buchi build_term_automaton(const Formula& matrix, const TermTable& table) {
  const int n = static_cast<int>(table.size());
  // The table must cover the matrix; rebuilding it doubles as the check.
  std::vector<std::string> names;
  for (std::size_t v = 0; v < table.num_vars; ++v)
    names.push_back(table.terms[v]->var);
  for (const Term& t : build_term_table(matrix, names).terms)
    table.index_of(t);

  Buchi acc = wf_automaton(n);
  for (std::size_t x = table.num_vars; x < table.size(); ++x) {
    const Term& t = table.terms[x];
    const int i = static_cast<int>(x) + 1;
    Buchi b;
    switch (t->kind) {
      case TermKind::Sum:
        b = add_automaton(n, i, static_cast<int>(table.index_of(t->lhs)),
                          static_cast<int>(table.index_of(t->rhs)));
        break;
      case TermKind::Scaled:
        b = mult_automaton(n, i, t->value,
                           static_cast<int>(table.index_of(t_var(t->var))));
        break;
      case TermKind::Const:
        b = const_automaton(n, i, t->value);
        break;
      default:
        throw std::invalid_argument("term is not linear");
    }
    acc = reduce_bisim(ba_intersect(acc, b));
  }
  return acc;
}

Buchi compile_matrix(const Formula& matrix, const TermTable& table) {
  const int n = static_cast<int>(table.size());
  auto idx = [&](const Term& t) {
    return static_cast<int>(table.index_of(t));
  };
  // Every combination step runs through the quotient so nested connectives
  // do not snowball the intermediate products.
  std::function<Buchi(const Formula&)> go = [&](const Formula& f) -> Buchi {
    switch (f->kind) {
      case Fk::Le:
        return le_automaton(n, idx(f->t1), idx(f->t2));
      case Fk::Lt:
        // <= minus =, as the grammar defines strictness.
        return reduce_bisim(ba_intersect(
            le_automaton(n, idx(f->t1), idx(f->t2)),
            ba_complement(eq_automaton(n, idx(f->t1), idx(f->t2)))));
      case Fk::Eq:
        return eq_automaton(n, idx(f->t1), idx(f->t2));
      case Fk::Neq:
        return reduce_bisim(ba_complement(eq_automaton(n, idx(f->t1), idx(f->t2))));
      case Fk::IsPow2:
        return power_of_two_automaton(n, idx(t_var(f->var)));
      case Fk::Not:
        // Push the negation down to atoms, where complements stay on small
        // deterministic machines. Only a negated power-of-two atom survives
        // rewriting, and its machine is deterministic anyway.
        if (f->f1->kind == Fk::IsPow2)
          return reduce_bisim(ba_complement(go(f->f1)));
        return go(to_nnf(f_not(f->f1)));
      case Fk::And:
        return reduce_bisim(ba_intersect(go(f->f1), go(f->f2)));
      case Fk::Or:
        return reduce_bisim(ba_union(go(f->f1), go(f->f2)));
      case Fk::Implies:
        return go(f_or(f_not(f->f1), f->f2));
      case Fk::Iff:
        return go(f_or(f_and(f->f1, f->f2),
                       f_and(f_not(f->f1), f_not(f->f2))));
      default:
        throw std::invalid_argument(
            "matrix must be quantifier-free arithmetic");
    }
  };
  return go(matrix);
}

Buchi formula_automaton(const Formula& matrix, const TermTable& table) {
  Buchi b = ba_intersect(compile_matrix(matrix, table),
                         build_term_automaton(matrix, table));
  return clproj(b, static_cast<int>(table.num_vars));
}

Buchi eliminate_quantifiers(const std::vector<PrenexStep>& prefix,
                            const Buchi& a_phi) {
  if (static_cast<int>(prefix.size()) != a_phi.tracks)
    throw std::invalid_argument("prefix length must match track count");
  Buchi a = a_phi;
  for (int x = static_cast<int>(prefix.size()) - 1; x >= 0; --x) {
    a = clproj(a, x);
    if (prefix[x].negated)
      a = ba_intersect(ba_complement(a), wf_automaton(x));
  }
  return a;
}

namespace {

// Shared pipeline front end: prenex, normalize the matrix so negations sit
// on atoms, name the tracks.
struct Pipeline {
  Prenex p;
  Formula matrix;
  TermTable table;
};

Pipeline prepare(const Formula& sentence) {
  if (!free_vars(sentence).empty())
    throw std::invalid_argument("sentence has free variables");
  Pipeline pl;
  pl.p = to_prenex(sentence);
  pl.matrix = to_nnf(pl.p.matrix);
  std::vector<std::string> vars;
  for (const PrenexStep& s : pl.p.prefix) vars.push_back(s.var);
  pl.table = build_term_table(pl.matrix, vars);
  return pl;
}

}  // namespace

bool decide_sentence(const Formula& sentence) {
  Pipeline pl = prepare(sentence);
  Buchi a = formula_automaton(pl.matrix, pl.table);
  return !is_empty(eliminate_quantifiers(pl.p.prefix, a));
}

bool decide_nnl_sentence(const Formula& phi, const NetworkBinding& nets) {
  return decide_sentence(nnl_plus_lower(phi, nets));
}

std::optional<Interpretation> witness_exists(const Formula& phi,
                                             const NetworkBinding& nets) {
  Pipeline pl = prepare(nnl_plus_lower(phi, nets));
  const std::size_t m = pl.p.prefix.size();

  if (m == 0) {
    if (holds(pl.matrix, {})) return Interpretation{};
    return std::nullopt;
  }
  if (pl.p.prefix[0].negated)
    throw std::invalid_argument("outermost quantifier is universal");

  std::size_t block = 0;
  while (block < m && !pl.p.prefix[block].negated) ++block;

  Buchi a = formula_automaton(pl.matrix, pl.table);
  for (int x = static_cast<int>(m) - 1; x >= static_cast<int>(block); --x) {
    a = clproj(a, x);
    if (pl.p.prefix[x].negated)
      a = ba_intersect(ba_complement(a), wf_automaton(x));
  }

  auto w = find_accepted(a);
  if (!w) return std::nullopt;
  Interpretation I;
  for (std::size_t t = 0; t < block; ++t)
    I[pl.p.prefix[t].var] = decode_upword(*w, t);

  // Validate before handing anything out: either the matrix holds directly,
  // or the remainder of the sentence holds with the block values pinned.
  bool ok;
  if (block == m) {
    ok = holds(pl.matrix, I);
  } else {
    Prenex rest;
    rest.prefix.assign(pl.p.prefix.begin() + static_cast<long>(block),
                       pl.p.prefix.end());
    rest.matrix = pl.matrix;
    Formula closed = prenex_to_formula(rest);
    std::vector<std::string> names;
    for (std::size_t t = 0; t < block; ++t) {
      const std::string& v = pl.p.prefix[t].var;
      names.push_back(v);
      closed = f_and(f_eq(t_var(v), t_const(I.at(v))), std::move(closed));
    }
    ok = decide_sentence(f_exists_all(names, std::move(closed)));
  }
  if (!ok) throw std::logic_error("witness failed validation");
  return I;
}

}  // namespace nnv
