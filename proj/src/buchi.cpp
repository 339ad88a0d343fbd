#include "nnv/buchi.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace nnv {

char sym_char(Sym s) {
  switch (s) {
    case Sym::Zero: return '0';
    case Sym::One: return '1';
    case Sym::Comma: return '.';
    case Sym::Plus: return '+';
    case Sym::Minus: return '-';
  }
  throw std::logic_error("bad symbol");
}

Sym sym_from_char(char c) {
  switch (c) {
    case '0': return Sym::Zero;
    case '1': return Sym::One;
    case '.': return Sym::Comma;
    case '+': return Sym::Plus;
    case '-': return Sym::Minus;
    default: throw std::invalid_argument(std::string("unknown track symbol '") + c + "'");
  }
}

int SymSet::size() const {
  int n = 0;
  for (unsigned char b = bits_; b; b &= (b - 1)) ++n;
  return n;
}

Sym SymSet::first() const {
  if (empty()) throw std::logic_error("first() on empty symbol set");
  for (int i = 0; i < kNumSyms; ++i)
    if (bits_ & (1u << i)) return static_cast<Sym>(i);
  throw std::logic_error("unreachable");
}

std::vector<Sym> SymSet::members() const {
  std::vector<Sym> out;
  for (int i = 0; i < kNumSyms; ++i)
    if (bits_ & (1u << i)) out.push_back(static_cast<Sym>(i));
  return out;
}

Label full_label(int tracks) { return Label(tracks, SymSet::all()); }

bool label_empty(const Label& l) {
  for (SymSet s : l)
    if (s.empty()) return true;
  return false;
}

bool label_contains(const Label& l, const TrackSymbol& s) {
  if (l.size() != s.size()) return false;
  for (std::size_t t = 0; t < l.size(); ++t)
    if (!l[t].contains(s[t])) return false;
  return true;
}

Label label_meet(const Label& a, const Label& b) {
  Label out(a.size());
  for (std::size_t t = 0; t < a.size(); ++t) out[t] = a[t] & b[t];
  return out;
}

std::vector<Label> label_subtract(const Label& a, const Label& b) {
  Label meet = label_meet(a, b);
  if (label_empty(meet)) return {a};
  std::vector<Label> out;
  for (std::size_t t = 0; t < a.size(); ++t) {
    SymSet diff = a[t] - b[t];
    if (diff.empty()) continue;
    Label piece(a.size());
    for (std::size_t j = 0; j < a.size(); ++j)
      piece[j] = j < t ? meet[j] : j == t ? diff : a[j];
    out.push_back(std::move(piece));
  }
  return out;
}

TrackSymbol label_sample(const Label& l) {
  TrackSymbol s(l.size());
  for (std::size_t t = 0; t < l.size(); ++t) s[t] = l[t].first();
  return s;
}

namespace {

std::vector<std::vector<int>> out_edges(const Buchi& a) {
  std::vector<std::vector<int>> per(a.states);
  for (int i = 0; i < static_cast<int>(a.edges.size()); ++i)
    per[a.edges[i].from].push_back(i);
  return per;
}

std::vector<std::vector<int>> successors(const Buchi& a) {
  std::vector<std::vector<int>> succ(a.states);
  for (const Edge& e : a.edges) succ[e.from].push_back(e.to);
  return succ;
}

std::vector<bool> reachable(const Buchi& a) {
  std::vector<bool> seen(a.states, false);
  std::vector<int> work{a.init};
  seen[a.init] = true;
  auto succ = successors(a);
  while (!work.empty()) {
    int q = work.back();
    work.pop_back();
    for (int r : succ[q])
      if (!seen[r]) {
        seen[r] = true;
        work.push_back(r);
      }
  }
  return seen;
}

struct SccInfo {
  int count = 0;
  std::vector<int> comp;           // state -> component id
  std::vector<bool> has_cycle;     // component has an internal edge
};

SccInfo scc_decompose(int n, const std::vector<std::vector<int>>& succ) {
  SccInfo r;
  r.comp.assign(n, -1);
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<bool> on(n, false);
  int next = 0;
  struct Frame {
    int v;
    std::size_t ei;
  };
  for (int s = 0; s < n; ++s) {
    if (index[s] != -1) continue;
    std::vector<Frame> dfs{{s, 0}};
    index[s] = low[s] = next++;
    stack.push_back(s);
    on[s] = true;
    while (!dfs.empty()) {
      Frame& fr = dfs.back();
      int v = fr.v;
      if (fr.ei < succ[v].size()) {
        int w = succ[v][fr.ei++];
        if (index[w] == -1) {
          index[w] = low[w] = next++;
          stack.push_back(w);
          on[w] = true;
          dfs.push_back({w, 0});
        } else if (on[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      } else {
        if (low[v] == index[v]) {
          int id = r.count++;
          for (;;) {
            int w = stack.back();
            stack.pop_back();
            on[w] = false;
            r.comp[w] = id;
            if (w == v) break;
          }
        }
        dfs.pop_back();
        if (!dfs.empty()) {
          int parent = dfs.back().v;
          low[parent] = std::min(low[parent], low[v]);
        }
      }
    }
  }
  r.has_cycle.assign(r.count, false);
  for (int v = 0; v < n; ++v)
    for (int w : succ[v])
      if (r.comp[v] == r.comp[w]) r.has_cycle[r.comp[v]] = true;
  return r;
}

SccInfo scc_decompose(const Buchi& a) { return scc_decompose(a.states, successors(a)); }

// Dedupe edges by (from, to, label bits).
void dedupe_edges(Buchi& a) {
  std::set<std::tuple<int, int, std::vector<unsigned char>>> seen;
  std::vector<Edge> kept;
  for (Edge& e : a.edges) {
    std::vector<unsigned char> bits;
    bits.reserve(e.label.size());
    for (SymSet s : e.label) bits.push_back(s.bits());
    if (seen.insert({e.from, e.to, std::move(bits)}).second) kept.push_back(std::move(e));
  }
  a.edges = std::move(kept);
}

void set_flags(Buchi& a) { a.det_weak = is_deterministic(a) && is_structurally_weak(a); }

Buchi finished(Buchi a) {
  dedupe_edges(a);
  set_flags(a);
  check_buchi(a);
  return a;
}

// Whether the induced subgraph on `keep` contains a cycle.
bool has_cycle_within(const Buchi& a, const std::vector<bool>& keep) {
  std::vector<std::vector<int>> succ(a.states);
  for (const Edge& e : a.edges)
    if (keep[e.from] && keep[e.to]) {
      if (e.from == e.to) return true;
      succ[e.from].push_back(e.to);
    }
  // Kahn: a cycle survives when not every kept node can be peeled off.
  std::vector<int> indeg(a.states, 0);
  int total = 0;
  for (int v = 0; v < a.states; ++v)
    if (keep[v]) {
      ++total;
      for (int w : succ[v]) ++indeg[w];
    }
  std::vector<int> work;
  for (int v = 0; v < a.states; ++v)
    if (keep[v] && indeg[v] == 0) work.push_back(v);
  int peeled = 0;
  while (!work.empty()) {
    int v = work.back();
    work.pop_back();
    ++peeled;
    for (int w : succ[v])
      if (--indeg[w] == 0) work.push_back(w);
  }
  return peeled != total;
}

// Re-marks final states SCC-wise: an SCC becomes final iff it contains a
// cycle through a final state. Language-preserving unless some SCC has both
// such a cycle and a cycle avoiding final states; returns false (and leaves
// the automaton untouched) in that case.
bool try_mark_weak(Buchi& a) {
  SccInfo scc = scc_decompose(a);
  std::vector<bool> accepting(scc.count, false);
  for (int q = 0; q < a.states; ++q)
    if (a.finals[q] && scc.has_cycle[scc.comp[q]]) accepting[scc.comp[q]] = true;
  // An accepting SCC must not also contain a final-avoiding cycle.
  for (int c = 0; c < scc.count; ++c) {
    if (!accepting[c]) continue;
    std::vector<bool> keep(a.states, false);
    for (int q = 0; q < a.states; ++q) keep[q] = scc.comp[q] == c && !a.finals[q];
    if (has_cycle_within(a, keep)) return false;
  }
  for (int q = 0; q < a.states; ++q)
    a.finals[q] = accepting[scc.comp[q]] && scc.has_cycle[scc.comp[q]];
  return true;
}

// Adds a rejecting sink so every state has a successor on every letter.
Buchi complete(const Buchi& a) {
  Buchi b = a;
  auto per = out_edges(b);
  std::vector<Edge> added;
  for (int q = 0; q < b.states; ++q) {
    std::vector<Label> rest = {full_label(b.tracks)};
    for (int ei : per[q]) {
      std::vector<Label> next;
      for (const Label& piece : rest)
        for (Label& part : label_subtract(piece, b.edges[ei].label))
          next.push_back(std::move(part));
      rest = std::move(next);
      if (rest.empty()) break;
    }
    for (Label& piece : rest) added.push_back({q, std::move(piece), -1});
  }
  if (added.empty()) return b;
  int sink = b.states++;
  b.finals.push_back(false);
  for (Edge& e : added) {
    e.to = sink;
    b.edges.push_back(std::move(e));
  }
  b.edges.push_back({sink, full_label(b.tracks), sink});
  return b;
}

// Splits the label space into rectangles lying wholly inside or outside
// every given edge label.
std::vector<Label> minterms(const Buchi& a, const std::vector<int>& edge_ids) {
  std::vector<Label> pieces = {full_label(a.tracks)};
  for (int ei : edge_ids) {
    const Label& l = a.edges[ei].label;
    std::vector<Label> next;
    for (const Label& p : pieces) {
      Label in = label_meet(p, l);
      if (!label_empty(in)) next.push_back(std::move(in));
      for (Label& out : label_subtract(p, l)) next.push_back(std::move(out));
    }
    pieces = std::move(next);
  }
  return pieces;
}

using Bits = std::vector<std::uint64_t>;

Bits empty_bits(int n) { return Bits((n + 63) / 64, 0); }
void bits_set(Bits& b, int i) { b[i / 64] |= std::uint64_t(1) << (i % 64); }
bool bits_test(const Bits& b, int i) { return (b[i / 64] >> (i % 64)) & 1; }
bool bits_none(const Bits& b) {
  for (std::uint64_t w : b)
    if (w) return false;
  return true;
}

// Breakpoint determinization of a complete, structurally weak automaton,
// with final states at the breakpoints; accepts exactly the complement.
Buchi breakpoint_complement(const Buchi& a) {
  auto per = out_edges(a);
  Buchi d;
  d.tracks = a.tracks;
  d.states = 0;
  std::map<std::pair<Bits, Bits>, int> ids;
  std::vector<std::pair<Bits, Bits>> pool;
  auto intern = [&](Bits s, Bits b) {
    auto key = std::make_pair(std::move(s), std::move(b));
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    int id = d.states++;
    d.finals.push_back(bits_none(key.second));
    ids.emplace(key, id);
    pool.push_back(std::move(key));
    return id;
  };
  Bits s0 = empty_bits(a.states), b0 = empty_bits(a.states);
  bits_set(s0, a.init);
  if (a.finals[a.init]) bits_set(b0, a.init);
  d.init = intern(std::move(s0), std::move(b0));
  for (int cur = 0; cur < d.states; ++cur) {
    Bits s = pool[cur].first, b = pool[cur].second;
    std::vector<int> outgoing;
    for (int q = 0; q < a.states; ++q)
      if (bits_test(s, q))
        for (int ei : per[q]) outgoing.push_back(ei);
    for (const Label& piece : minterms(a, outgoing)) {
      TrackSymbol letter = label_sample(piece);
      Bits s2 = empty_bits(a.states), reached = empty_bits(a.states);
      for (int ei : outgoing) {
        const Edge& e = a.edges[ei];
        if (!label_contains(e.label, letter)) continue;
        bits_set(s2, e.to);
        if (bits_none(b) || bits_test(b, e.from)) bits_set(reached, e.to);
      }
      Bits b2 = empty_bits(a.states);
      for (int q = 0; q < a.states; ++q)
        if (bits_test(reached, q) && a.finals[q]) bits_set(b2, q);
      int to = intern(std::move(s2), std::move(b2));
      d.edges.push_back({cur, piece, to});
    }
  }
  return d;
}

// Complement of a complete deterministic automaton: simulate, then guess the
// point after which the run never sees a final state again.
Buchi det_complement(const Buchi& a) {
  Buchi b;
  b.tracks = a.tracks;
  b.states = 2 * a.states;
  b.init = a.init;
  b.finals.assign(b.states, false);
  for (int q = 0; q < a.states; ++q) b.finals[a.states + q] = true;
  for (const Edge& e : a.edges) {
    b.edges.push_back(e);
    if (!a.finals[e.to]) {
      b.edges.push_back({e.from, e.label, a.states + e.to});
      if (!a.finals[e.from])
        b.edges.push_back({a.states + e.from, e.label, a.states + e.to});
    }
  }
  return trim(b);
}

// Words accepted from a fresh initial state must match those from the old
// one, so the copy keeps the language while freeing the initial state from
// incoming edges.
void isolate_init(Buchi& a) {
  bool incoming = false;
  for (const Edge& e : a.edges) incoming |= e.to == a.init;
  if (!incoming) return;
  int fresh = a.states++;
  a.finals.push_back(false);
  std::size_t n = a.edges.size();
  for (std::size_t i = 0; i < n; ++i)
    if (a.edges[i].from == a.init)
      a.edges.push_back({fresh, a.edges[i].label, a.edges[i].to});
  a.init = fresh;
}

}  // namespace

Buchi empty_buchi(int tracks) {
  Buchi a;
  a.tracks = tracks;
  a.states = 1;
  a.init = 0;
  a.finals = {false};
  a.det_weak = true;
  return a;
}

void check_buchi(const Buchi& a) {
  if (a.tracks < 0) throw std::invalid_argument("automaton: negative arity");
  if (a.states <= 0) throw std::invalid_argument("automaton: no states");
  if (a.init < 0 || a.init >= a.states)
    throw std::invalid_argument("automaton: initial state out of range");
  if (static_cast<int>(a.finals.size()) != a.states)
    throw std::invalid_argument("automaton: final-state vector has wrong size");
  for (const Edge& e : a.edges) {
    if (e.from < 0 || e.from >= a.states || e.to < 0 || e.to >= a.states)
      throw std::invalid_argument("automaton: transition endpoint out of range");
    if (static_cast<int>(e.label.size()) != a.tracks)
      throw std::invalid_argument("automaton: label arity mismatch");
    if (label_empty(e.label))
      throw std::invalid_argument("automaton: empty track set in label");
  }
  if (a.det_weak && !(is_deterministic(a) && is_structurally_weak(a)))
    throw std::invalid_argument("automaton: det_weak flag set on a non-weak or nondeterministic automaton");
}

bool is_deterministic(const Buchi& a) {
  auto per = out_edges(a);
  for (int q = 0; q < a.states; ++q)
    for (std::size_t i = 0; i < per[q].size(); ++i)
      for (std::size_t j = i + 1; j < per[q].size(); ++j)
        if (!label_empty(label_meet(a.edges[per[q][i]].label, a.edges[per[q][j]].label)))
          return false;
  return true;
}

bool is_structurally_weak(const Buchi& a) {
  SccInfo scc = scc_decompose(a);
  std::vector<char> kind(scc.count, -1);  // -1 unseen, 0 non-final, 1 final
  for (int q = 0; q < a.states; ++q) {
    int c = scc.comp[q];
    if (!scc.has_cycle[c]) continue;  // no cycle: finality is irrelevant
    char k = a.finals[q] ? 1 : 0;
    if (kind[c] == -1)
      kind[c] = k;
    else if (kind[c] != k)
      return false;
  }
  return true;
}

Buchi ba_union(const Buchi& a, const Buchi& b) {
  if (a.tracks != b.tracks) throw std::invalid_argument("union: arity mismatch");
  Buchi u;
  u.tracks = a.tracks;
  u.states = a.states + b.states + 1;
  u.init = a.states + b.states;
  u.finals.assign(u.states, false);
  for (int q = 0; q < a.states; ++q) u.finals[q] = a.finals[q];
  for (int q = 0; q < b.states; ++q) u.finals[a.states + q] = b.finals[q];
  for (const Edge& e : a.edges) {
    u.edges.push_back(e);
    if (e.from == a.init) u.edges.push_back({u.init, e.label, e.to});
  }
  for (const Edge& e : b.edges) {
    u.edges.push_back({a.states + e.from, e.label, a.states + e.to});
    if (e.from == b.init) u.edges.push_back({u.init, e.label, a.states + e.to});
  }
  return finished(trim(u));
}

Buchi ba_intersect(const Buchi& a, const Buchi& b) {
  if (a.tracks != b.tracks) throw std::invalid_argument("intersect: arity mismatch");
  auto pa = out_edges(a), pb = out_edges(b);
  Buchi p;
  p.tracks = a.tracks;
  p.states = 0;
  std::map<std::tuple<int, int, int>, int> ids;
  std::vector<std::tuple<int, int, int>> pool;
  auto intern = [&](int qa, int qb, int phase) {
    auto key = std::make_tuple(qa, qb, phase);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    int id = p.states++;
    p.finals.push_back(phase == 0 && a.finals[qa]);
    ids.emplace(key, id);
    pool.push_back(key);
    return id;
  };
  p.init = intern(a.init, b.init, 0);
  for (int cur = 0; cur < p.states; ++cur) {
    auto [qa, qb, phase] = pool[cur];
    int next_phase = phase == 0 ? (a.finals[qa] ? 1 : 0) : (b.finals[qb] ? 0 : 1);
    for (int ia : pa[qa])
      for (int ib : pb[qb]) {
        Label l = label_meet(a.edges[ia].label, b.edges[ib].label);
        if (label_empty(l)) continue;
        int to = intern(a.edges[ia].to, b.edges[ib].to, next_phase);
        p.edges.push_back({cur, std::move(l), to});
      }
  }
  Buchi t = trim(p);
  try_mark_weak(t);
  return finished(std::move(t));
}

Buchi ba_complement(const Buchi& a0) {
  Buchi a = trim(a0);
  try_mark_weak(a);
  Buchi c = complete(a);
  if (is_structurally_weak(c)) {
    if (is_deterministic(c)) {
      for (int q = 0; q < c.states; ++q) c.finals[q] = !c.finals[q];
      return finished(trim(c));
    }
    Buchi d = breakpoint_complement(c);
    try_mark_weak(d);
    return finished(trim(d));
  }
  if (is_deterministic(c)) return finished(det_complement(c));
  throw std::invalid_argument(
      "complement: nondeterministic input with mixed accepting and rejecting cycles in one component");
}

Buchi ba_project(const Buchi& a, int tracks) {
  if (tracks < 0 || tracks > a.tracks)
    throw std::invalid_argument("project: track count out of range");
  Buchi p = a;
  p.tracks = tracks;
  for (Edge& e : p.edges) e.label.resize(tracks);
  return finished(std::move(p));
}

Buchi leading_zero_closure(const Buchi& a) {
  Buchi c = a;
  isolate_init(c);
  // Zero successors: edges whose label admits the all-zero column.
  std::vector<std::vector<int>> zero_succ(c.states);
  for (const Edge& e : c.edges) {
    bool all_zero = true;
    for (SymSet s : e.label) all_zero &= s.contains(Sym::Zero);
    if (all_zero) zero_succ[e.from].push_back(e.to);
  }
  std::set<std::pair<int, std::vector<unsigned char>>> have;
  auto key_of = [](const Label& l, int to) {
    std::vector<unsigned char> bits;
    bits.reserve(l.size());
    for (SymSet s : l) bits.push_back(s.bits());
    return std::make_pair(to, std::move(bits));
  };
  for (const Edge& e : c.edges)
    if (e.from == c.init) have.insert(key_of(e.label, e.to));
  std::size_t n = c.edges.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (c.edges[i].from != c.init) continue;
    Label sign(c.tracks);
    for (int t = 0; t < c.tracks; ++t) sign[t] = c.edges[i].label[t] & SymSet::signs();
    if (label_empty(sign)) continue;
    // All states reachable from the edge target through >= 1 zero columns.
    std::vector<bool> seen(c.states, false);
    std::vector<int> work = zero_succ[c.edges[i].to];
    for (int q : work) seen[q] = true;
    while (!work.empty()) {
      int q = work.back();
      work.pop_back();
      if (have.insert(key_of(sign, q)).second) c.edges.push_back({c.init, sign, q});
      for (int r : zero_succ[q])
        if (!seen[r]) {
          seen[r] = true;
          work.push_back(r);
        }
    }
  }
  return finished(trim(c));
}

Buchi trim(const Buchi& a) {
  std::vector<bool> reach = reachable(a);
  SccInfo scc = scc_decompose(a);
  // Anchors: reachable final states on a cycle.
  std::vector<std::vector<int>> pred(a.states);
  for (const Edge& e : a.edges) pred[e.to].push_back(e.from);
  std::vector<bool> live(a.states, false);
  std::vector<int> work;
  for (int q = 0; q < a.states; ++q)
    if (reach[q] && a.finals[q] && scc.has_cycle[scc.comp[q]]) {
      live[q] = true;
      work.push_back(q);
    }
  while (!work.empty()) {
    int q = work.back();
    work.pop_back();
    for (int r : pred[q])
      if (!live[r]) {
        live[r] = true;
        work.push_back(r);
      }
  }
  std::vector<int> remap(a.states, -1);
  int n = 0;
  for (int q = 0; q < a.states; ++q)
    if (reach[q] && live[q]) remap[q] = n++;
  if (remap[a.init] == -1) return empty_buchi(a.tracks);
  Buchi t;
  t.tracks = a.tracks;
  t.states = n;
  t.init = remap[a.init];
  t.finals.assign(n, false);
  for (int q = 0; q < a.states; ++q)
    if (remap[q] != -1) t.finals[remap[q]] = a.finals[q];
  for (const Edge& e : a.edges)
    if (remap[e.from] != -1 && remap[e.to] != -1)
      t.edges.push_back({remap[e.from], e.label, remap[e.to]});
  dedupe_edges(t);
  set_flags(t);
  return t;
}

bool is_empty(const Buchi& a) { return !find_accepted(a).has_value(); }

std::optional<UPWord> find_accepted(const Buchi& a) {
  std::vector<bool> reach = reachable(a);
  SccInfo scc = scc_decompose(a);
  int target = -1;
  for (int q = 0; q < a.states && target == -1; ++q)
    if (reach[q] && a.finals[q] && scc.has_cycle[scc.comp[q]]) target = q;
  if (target == -1) return std::nullopt;
  auto per = out_edges(a);
  // Shortest edge path src -> dst by BFS. With at_least_one set, the empty
  // path is not an option, so a closed walk back to src can be found.
  auto bfs_path = [&](int src, int dst, bool at_least_one) -> std::vector<Edge> {
    if (src == dst && !at_least_one) return {};
    std::vector<int> via(a.states, -1);
    std::vector<bool> seen(a.states, false);
    seen[src] = true;
    std::deque<int> queue{src};
    bool found = false;
    while (!found && !queue.empty()) {
      int q = queue.front();
      queue.pop_front();
      for (int ei : per[q]) {
        int r = a.edges[ei].to;
        if (r == dst) {
          via[dst] = ei;
          found = true;
          break;
        }
        if (!seen[r]) {
          seen[r] = true;
          via[r] = ei;
          queue.push_back(r);
        }
      }
    }
    if (!found) return {};
    std::vector<Edge> path;
    int q = dst;
    do {
      path.push_back(a.edges[via[q]]);
      q = a.edges[via[q]].from;
    } while (q != src);
    std::reverse(path.begin(), path.end());
    return path;
  };
  std::vector<Edge> stem = bfs_path(a.init, target, false);
  std::vector<Edge> loop = bfs_path(target, target, true);
  UPWord w;
  for (const Edge& e : stem) w.prefix.push_back(label_sample(e.label));
  for (const Edge& e : loop) w.period.push_back(label_sample(e.label));
  return w;
}

bool accepts(const Buchi& a, const UPWord& w) {
  if (w.period.empty()) throw std::invalid_argument("accepts: empty period");
  for (const TrackSymbol& s : w.prefix)
    if (static_cast<int>(s.size()) != a.tracks)
      throw std::invalid_argument("accepts: word arity mismatch");
  for (const TrackSymbol& s : w.period)
    if (static_cast<int>(s.size()) != a.tracks)
      throw std::invalid_argument("accepts: word arity mismatch");
  int plen = static_cast<int>(w.prefix.size());
  int total = plen + static_cast<int>(w.period.size());
  auto letter = [&](int pos) -> const TrackSymbol& {
    return pos < plen ? w.prefix[pos] : w.period[pos - plen];
  };
  auto next_pos = [&](int pos) { return pos + 1 < total ? pos + 1 : plen; };
  auto per = out_edges(a);
  int nodes = a.states * total;
  std::vector<std::vector<int>> succ(nodes);
  std::vector<bool> seen(nodes, false);
  std::vector<int> work{a.init * total + 0};
  seen[work[0]] = true;
  while (!work.empty()) {
    int node = work.back();
    work.pop_back();
    int q = node / total, pos = node % total;
    for (int ei : per[q]) {
      if (!label_contains(a.edges[ei].label, letter(pos))) continue;
      int to = a.edges[ei].to * total + next_pos(pos);
      succ[node].push_back(to);
      if (!seen[to]) {
        seen[to] = true;
        work.push_back(to);
      }
    }
  }
  SccInfo scc = scc_decompose(nodes, succ);
  for (int node = 0; node < nodes; ++node)
    if (seen[node] && a.finals[node / total] && scc.has_cycle[scc.comp[node]]) return true;
  return false;
}

Buchi upword_automaton(const UPWord& w) {
  if (w.period.empty()) throw std::invalid_argument("word automaton: empty period");
  int k = static_cast<int>(w.period[0].size());
  for (const TrackSymbol& s : w.prefix)
    if (static_cast<int>(s.size()) != k)
      throw std::invalid_argument("word automaton: ragged arities");
  for (const TrackSymbol& s : w.period)
    if (static_cast<int>(s.size()) != k)
      throw std::invalid_argument("word automaton: ragged arities");
  int plen = static_cast<int>(w.prefix.size());
  int total = plen + static_cast<int>(w.period.size());
  Buchi a;
  a.tracks = k;
  a.states = total;
  a.init = 0;
  a.finals.assign(total, false);
  for (int i = plen; i < total; ++i) a.finals[i] = true;
  for (int i = 0; i < total; ++i) {
    const TrackSymbol& s = i < plen ? w.prefix[i] : w.period[i - plen];
    Label l(k);
    for (int t = 0; t < k; ++t) l[t] = SymSet(s[t]);
    a.edges.push_back({i, std::move(l), i + 1 < total ? i + 1 : plen});
  }
  set_flags(a);
  return a;
}

std::string print_buchi(const Buchi& a) {
  std::ostringstream os;
  os << "buchi k=" << a.tracks << " states=" << a.states << " init=" << a.init << "\n";
  os << "final:";
  for (int q = 0; q < a.states; ++q)
    if (a.finals[q]) os << ' ' << q;
  os << "\n";
  std::vector<const Edge*> sorted;
  for (const Edge& e : a.edges) sorted.push_back(&e);
  auto bits_of = [](const Label& l) {
    std::vector<unsigned char> b;
    for (SymSet s : l) b.push_back(s.bits());
    return b;
  };
  std::sort(sorted.begin(), sorted.end(), [&](const Edge* x, const Edge* y) {
    return std::make_tuple(x->from, x->to, bits_of(x->label)) <
           std::make_tuple(y->from, y->to, bits_of(y->label));
  });
  for (const Edge* e : sorted) {
    os << e->from << " --[";
    for (int t = 0; t < a.tracks; ++t) {
      if (t) os << ',';
      for (Sym s : e->label[t].members()) os << sym_char(s);
    }
    os << "]--> " << e->to << "\n";
  }
  return os.str();
}

Buchi parse_buchi(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto fail = [](const std::string& what) -> void {
    throw std::runtime_error("automaton dump: " + what);
  };
  if (!std::getline(in, line)) fail("missing header");
  Buchi a;
  {
    std::istringstream h(line);
    std::string word, kf, sf, inf;
    h >> word >> kf >> sf >> inf;
    if (word != "buchi" || kf.rfind("k=", 0) != 0 || sf.rfind("states=", 0) != 0 ||
        inf.rfind("init=", 0) != 0)
      fail("bad header '" + line + "'");
    try {
      a.tracks = std::stoi(kf.substr(2));
      a.states = std::stoi(sf.substr(7));
      a.init = std::stoi(inf.substr(5));
    } catch (const std::exception&) {
      fail("bad header number in '" + line + "'");
    }
  }
  if (a.states <= 0) fail("bad state count");
  a.finals.assign(a.states, false);
  if (!std::getline(in, line)) fail("missing final-state line");
  {
    std::istringstream f(line);
    std::string tag;
    f >> tag;
    if (tag != "final:") fail("expected 'final:' line, got '" + line + "'");
    int q;
    while (f >> q) {
      if (q < 0 || q >= a.states) fail("final state out of range");
      a.finals[q] = true;
    }
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t lb = line.find(" --[");
    std::size_t rb = line.find("]--> ");
    if (lb == std::string::npos || rb == std::string::npos || rb < lb)
      fail("bad transition line '" + line + "'");
    Edge e;
    try {
      e.from = std::stoi(line.substr(0, lb));
      e.to = std::stoi(line.substr(rb + 5));
    } catch (const std::exception&) {
      fail("bad state number in '" + line + "'");
    }
    std::string sets = line.substr(lb + 4, rb - lb - 4);
    if (!sets.empty() || a.tracks == 0) {
      std::size_t start = 0;
      while (true) {
        std::size_t comma = sets.find(',', start);
        std::string part = sets.substr(start, comma == std::string::npos ? std::string::npos
                                                                         : comma - start);
        if (!sets.empty()) {
          SymSet set = SymSet::none();
          for (char c : part) set = set | SymSet(sym_from_char(c));
          e.label.push_back(set);
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    }
    a.edges.push_back(std::move(e));
  }
  set_flags(a);
  check_buchi(a);
  return a;
}

}  // namespace nnv
