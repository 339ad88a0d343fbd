#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// Büchi automata over k-track alphabets. Every track carries one of the five
// symbols {0, 1, ., +, -}; a transition label stores one symbol *set* per
// track and stands for the product of those sets, so a single edge can cover
// a whole rectangle of letters. Automata built here are plain Büchi automata
// (single initial state, final-state acceptance: some final state is visited
// infinitely often); the deterministic-weak flag is advisory and recomputed
// by every operation.

namespace nnv {

enum class Sym : unsigned char { Zero = 0, One = 1, Comma = 2, Plus = 3, Minus = 4 };

inline constexpr int kNumSyms = 5;

char sym_char(Sym s);
Sym sym_from_char(char c);

// Subset of {0,1,.,+,-} as a 5-bit mask.
class SymSet {
 public:
  constexpr SymSet() = default;
  constexpr SymSet(Sym s) : bits_(static_cast<unsigned char>(1u << static_cast<unsigned>(s))) {}

  static constexpr SymSet none() { return SymSet(static_cast<unsigned char>(0)); }
  static constexpr SymSet all() { return SymSet(static_cast<unsigned char>(0x1f)); }
  static constexpr SymSet digits() { return SymSet(static_cast<unsigned char>(0x03)); }
  static constexpr SymSet signs() { return SymSet(static_cast<unsigned char>(0x18)); }

  bool contains(Sym s) const { return (bits_ >> static_cast<unsigned>(s)) & 1u; }
  bool empty() const { return bits_ == 0; }
  int size() const;
  Sym first() const;  // least member; set must be nonempty
  std::vector<Sym> members() const;
  unsigned char bits() const { return bits_; }

  friend constexpr SymSet operator&(SymSet a, SymSet b) {
    return SymSet(static_cast<unsigned char>(a.bits_ & b.bits_));
  }
  friend constexpr SymSet operator|(SymSet a, SymSet b) {
    return SymSet(static_cast<unsigned char>(a.bits_ | b.bits_));
  }
  friend constexpr SymSet operator-(SymSet a, SymSet b) {
    return SymSet(static_cast<unsigned char>(a.bits_ & ~b.bits_));
  }
  friend constexpr bool operator==(SymSet a, SymSet b) { return a.bits_ == b.bits_; }
  friend constexpr bool operator!=(SymSet a, SymSet b) { return a.bits_ != b.bits_; }
  friend constexpr bool operator<(SymSet a, SymSet b) { return a.bits_ < b.bits_; }

 private:
  explicit constexpr SymSet(unsigned char bits) : bits_(bits) {}
  unsigned char bits_ = 0;
};

// One concrete letter of the k-track alphabet (entry per track).
using TrackSymbol = std::vector<Sym>;

// One transition label: a symbol set per track, no track set empty.
using Label = std::vector<SymSet>;

Label full_label(int tracks);
bool label_empty(const Label& l);  // true iff some track set is empty
bool label_contains(const Label& l, const TrackSymbol& s);
Label label_meet(const Label& a, const Label& b);
// Splits a \ b into disjoint rectangles (at most one per track).
std::vector<Label> label_subtract(const Label& a, const Label& b);
TrackSymbol label_sample(const Label& l);  // least letter of the rectangle

// An ultimately periodic word u . v^omega.
struct UPWord {
  std::vector<TrackSymbol> prefix;
  std::vector<TrackSymbol> period;  // nonempty
};

struct Edge {
  int from = 0;
  Label label;
  int to = 0;
};

struct Buchi {
  int tracks = 0;
  int states = 1;
  int init = 0;
  std::vector<Edge> edges;
  std::vector<bool> finals;  // size == states
  // Set when the automaton is known deterministic (pairwise-disjoint labels
  // per state) with every nontrivial SCC homogeneously final or non-final.
  bool det_weak = false;
};

// Automaton rejecting every word.
Buchi empty_buchi(int tracks);

// Validates ranges, label arities, nonempty track sets, and the det_weak
// flag; throws std::invalid_argument.
void check_buchi(const Buchi& a);

bool is_deterministic(const Buchi& a);
bool is_structurally_weak(const Buchi& a);

// Language union / intersection; arities must match. Intersection is the
// two-phase flag product; when the phases can be re-marked into homogeneous
// SCCs without changing the language, the result is normalized that way.
Buchi ba_union(const Buchi& a, const Buchi& b);
Buchi ba_intersect(const Buchi& a, const Buchi& b);

// Exact complement. Handles deterministic inputs of any shape and
// nondeterministic inputs whose SCCs can be marked homogeneously (the only
// kinds the rest of this library produces); throws std::invalid_argument on
// a nondeterministic automaton with an SCC carrying both an accepting and a
// rejecting cycle.
Buchi ba_complement(const Buchi& a);

// Keeps the first `tracks` tracks of every label; states are untouched.
Buchi ba_project(const Buchi& a, int tracks);

// Least language extension closed under deleting one all-zero column right
// after the leading sign column: for every initial sign edge into q and
// every chain of all-zero-capable edges q -> q', the sign edge to q' is
// added. Callers are expected to pass automata whose words start with a
// sign column.
Buchi leading_zero_closure(const Buchi& a);

// Drops states that are unreachable or cannot reach an accepting cycle, and
// collapses duplicate edges. Language-preserving.
Buchi trim(const Buchi& a);

bool is_empty(const Buchi& a);
// Lasso witness for nonemptiness: shortest path to a final state on a cycle
// plus a cycle through it, with one concrete letter picked per edge.
std::optional<UPWord> find_accepted(const Buchi& a);

// Membership of u . v^omega, via an accepting-cycle search on the product
// with the lasso graph of the word. Arity mismatch throws.
bool accepts(const Buchi& a, const UPWord& w);

// Automaton accepting exactly the given word.
Buchi upword_automaton(const UPWord& w);

// Text dump:
//   buchi k=<arity> states=<n> init=<q>
//   final: q1 q2 ...
//   q --[s1,s2,...]--> q'
// with one entry per track, each entry the track's symbol set written in the
// fixed order 01.+- (a singleton set is just its symbol).
std::string print_buchi(const Buchi& a);
Buchi parse_buchi(const std::string& text);

}  // namespace nnv
