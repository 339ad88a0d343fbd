#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <string>
#include <vector>

#include "nnv/buchi.hpp"
#include "test_util.hpp"

using namespace nnv;

namespace {

TrackSymbol ts1(char c) { return {sym_from_char(c)}; }

UPWord word1(const std::string& u, const std::string& v) {
  UPWord w;
  for (char c : u) w.prefix.push_back(ts1(c));
  for (char c : v) w.period.push_back(ts1(c));
  return w;
}

UPWord word2(const std::string& ua, const std::string& ub, const std::string& va,
             const std::string& vb) {
  REQUIRE(ua.size() == ub.size());
  REQUIRE(va.size() == vb.size());
  UPWord w;
  for (std::size_t i = 0; i < ua.size(); ++i)
    w.prefix.push_back({sym_from_char(ua[i]), sym_from_char(ub[i])});
  for (std::size_t i = 0; i < va.size(); ++i)
    w.period.push_back({sym_from_char(va[i]), sym_from_char(vb[i])});
  return w;
}

// Letter of u.v^omega at position i.
const TrackSymbol& upword_at(const UPWord& w, std::size_t i) {
  if (i < w.prefix.size()) return w.prefix[i];
  return w.period[(i - w.prefix.size()) % w.period.size()];
}

// Independent equality of ultimately periodic words: both are periodic after
// the longer prefix, so agreement over one lcm window there decides it.
bool same_word(const UPWord& a, const UPWord& b) {
  if (!a.period.empty() && !b.period.empty() &&
      a.period[0].size() != b.period[0].size())
    return false;
  std::size_t bound = std::max(a.prefix.size(), b.prefix.size()) +
                      std::lcm(a.period.size(), b.period.size());
  for (std::size_t i = 0; i < bound; ++i)
    if (upword_at(a, i) != upword_at(b, i)) return false;
  return true;
}

// Two states, final loop on 1: the words in which 1 occurs infinitely often.
Buchi inf_ones() {
  Buchi a;
  a.tracks = 1;
  a.states = 2;
  a.init = 0;
  a.finals = {false, true};
  a.edges = {{0, {Sym::Zero}, 0},
             {0, {Sym::One}, 1},
             {1, {Sym::One}, 1},
             {1, {Sym::Zero}, 0}};
  return a;
}

// Pairs of identical well-formed rows (sign, digits, aligned comma, digits).
Buchi diag_eq() {
  Buchi a;
  a.tracks = 2;
  a.states = 3;
  a.init = 0;
  a.finals = {false, false, true};
  a.edges = {{0, {Sym::Plus, Sym::Plus}, 1},   {0, {Sym::Minus, Sym::Minus}, 1},
             {1, {Sym::Zero, Sym::Zero}, 1},   {1, {Sym::One, Sym::One}, 1},
             {1, {Sym::Comma, Sym::Comma}, 2}, {2, {Sym::Zero, Sym::Zero}, 2},
             {2, {Sym::One, Sym::One}, 2}};
  return a;
}

// Accepts exactly +00.0^omega.
Buchi plus00_chain() {
  Buchi a;
  a.tracks = 1;
  a.states = 5;
  a.init = 0;
  a.finals = {false, false, false, false, true};
  a.edges = {{0, {Sym::Plus}, 1},
             {1, {Sym::Zero}, 2},
             {2, {Sym::Zero}, 3},
             {3, {Sym::Comma}, 4},
             {4, {Sym::Zero}, 4}};
  return a;
}

Buchi random_digit_auto(std::mt19937_64& gen, int max_states, int edge_pct, int final_pct) {
  Buchi a;
  a.tracks = 1;
  a.states = static_cast<int>(testutil::random_int(gen, 1, max_states));
  a.init = 0;
  a.finals.resize(a.states);
  for (int q = 0; q < a.states; ++q)
    a.finals[q] = testutil::random_int(gen, 0, 99) < final_pct;
  for (int q = 0; q < a.states; ++q)
    for (Sym s : {Sym::Zero, Sym::One})
      if (testutil::random_int(gen, 0, 99) < edge_pct)
        a.edges.push_back({q, {s}, static_cast<int>(testutil::random_int(gen, 0, a.states - 1))});
  return a;
}

const std::vector<UPWord>& word_battery() {
  static const std::vector<UPWord> battery = [] {
    std::vector<UPWord> out;
    const std::vector<std::string> prefixes = {"", "0", "1", "00", "01", "10", "11"};
    const std::vector<std::string> periods = {"0", "1", "00", "01", "10", "11"};
    for (const auto& u : prefixes)
      for (const auto& v : periods) out.push_back(word1(u, v));
    for (const std::string u : {"+.", "-.", "+0.", "+00.", "+01.", "-1.", "+", "-0"})
      for (const std::string v : {"0", "1", "01", "10"}) out.push_back(word1(u, v));
    auto gen = testutil::rng(101);
    const std::string alpha = "01.+-";
    while (out.size() < 220) {
      std::string u, v;
      long lu = testutil::random_int(gen, 0, 6), lv = testutil::random_int(gen, 1, 6);
      for (long i = 0; i < lu; ++i) u += alpha[testutil::random_int(gen, 0, 4)];
      for (long i = 0; i < lv; ++i) v += alpha[testutil::random_int(gen, 0, 4)];
      out.push_back(word1(u, v));
    }
    return out;
  }();
  return battery;
}

bool exhaustive_nonempty(const Buchi& a) {
  // A nonempty automaton with <= 6 states has a lasso with stem <= 5 and
  // cycle <= 6; these automata only carry digit labels.
  for (int lu = 0; lu <= 5; ++lu)
    for (int pu = 0; pu < (1 << lu); ++pu)
      for (int lv = 1; lv <= 6; ++lv)
        for (int pv = 0; pv < (1 << lv); ++pv) {
          UPWord w;
          for (int i = 0; i < lu; ++i)
            w.prefix.push_back(ts1((pu >> i) & 1 ? '1' : '0'));
          for (int i = 0; i < lv; ++i)
            w.period.push_back(ts1((pv >> i) & 1 ? '1' : '0'));
          if (accepts(a, w)) return true;
        }
  return false;
}

}  // namespace

TEST_CASE("single-word automata agree with the word equality oracle") {
  CHECK(same_word(word1("", "01"), word1("01", "01")));
  CHECK(same_word(word1("1", "0"), word1("10", "00")));
  CHECK_FALSE(same_word(word1("", "1"), word1("1", "10")));
  CHECK_FALSE(same_word(word1("+0110.1", "0"), word1("+110.0", "1")));

  const auto& battery = word_battery();
  for (std::size_t i = 0; i < 12; ++i) {
    Buchi a = upword_automaton(battery[i * 7]);
    CHECK(a.det_weak);
    for (std::size_t j = 0; j < 80; ++j)
      CHECK(accepts(a, battery[j]) == same_word(battery[i * 7], battery[j]));
  }

  CHECK_THROWS_AS(accepts(upword_automaton(word2("+", "+", "0", "1")), word1("", "0")),
                  std::invalid_argument);
  CHECK_THROWS_AS(accepts(inf_ones(), UPWord{}), std::invalid_argument);
}

TEST_CASE("union and intersection are pointwise on the battery") {
  auto gen = testutil::rng(7);
  std::vector<Buchi> autos = {inf_ones(), ba_complement(inf_ones()), plus00_chain(),
                              upword_automaton(word1("", "1")),
                              upword_automaton(word1("+0.", "10"))};
  for (int i = 0; i < 3; ++i) autos.push_back(random_digit_auto(gen, 5, 70, 40));

  const auto& battery = word_battery();
  for (std::size_t i = 0; i < autos.size(); ++i)
    for (std::size_t j = i; j < autos.size(); ++j) {
      Buchi u = ba_union(autos[i], autos[j]);
      Buchi n = ba_intersect(autos[i], autos[j]);
      for (std::size_t wi = 0; wi < 100; ++wi) {
        const UPWord& w = battery[wi];
        bool in_i = accepts(autos[i], w), in_j = accepts(autos[j], w);
        CHECK(accepts(u, w) == (in_i || in_j));
        CHECK(accepts(n, w) == (in_i && in_j));
      }
    }

  // Idempotence, the tautology union, and disjoint singletons.
  for (const UPWord& w : word_battery()) {
    CHECK(accepts(ba_intersect(inf_ones(), inf_ones()), w) == accepts(inf_ones(), w));
    CHECK(accepts(ba_union(inf_ones(), ba_complement(inf_ones())), w));
  }
  Buchi disjoint = ba_intersect(upword_automaton(word1("", "1")),
                                upword_automaton(word1("", "0")));
  CHECK(is_empty(disjoint));

  CHECK_THROWS_AS(ba_union(inf_ones(), diag_eq()), std::invalid_argument);
  CHECK_THROWS_AS(ba_intersect(inf_ones(), diag_eq()), std::invalid_argument);
}

TEST_CASE("complement handles deterministic and weak inputs exactly") {
  Buchi ones = inf_ones();
  Buchi co = ba_complement(ones);
  CHECK(accepts(co, word1("1", "0")));
  CHECK(accepts(co, word1("", "0")));
  CHECK(accepts(co, word1("+.", "0")));
  CHECK_FALSE(accepts(co, word1("", "01")));
  CHECK_FALSE(accepts(co, word1("", "1")));

  Buchi coco = ba_complement(co);
  for (const UPWord& w : word_battery()) {
    CHECK(accepts(coco, w) == accepts(ones, w));
    CHECK(accepts(co, w) != accepts(ones, w));
  }

  // De Morgan over weak automata (the only unions complement accepts).
  std::vector<Buchi> autos = {co, plus00_chain(), leading_zero_closure(plus00_chain()),
                              upword_automaton(word1("", "1")),
                              upword_automaton(word1("+0.", "10"))};
  const auto& battery = word_battery();
  for (std::size_t i = 0; i < autos.size(); ++i)
    for (std::size_t j = i + 1; j < autos.size(); ++j) {
      Buchi lhs = ba_complement(ba_union(autos[i], autos[j]));
      Buchi rhs = ba_intersect(ba_complement(autos[i]), ba_complement(autos[j]));
      for (std::size_t wi = 0; wi < 80; ++wi)
        CHECK(accepts(lhs, battery[wi]) == accepts(rhs, battery[wi]));
    }

  // Complement of the empty automaton accepts everything.
  Buchi full = ba_complement(empty_buchi(1));
  CHECK(full.det_weak);
  CHECK(accepts(full, word1("", "0")));
  for (std::size_t wi = 0; wi < 40; ++wi) CHECK(accepts(full, battery[wi]));

  // Deterministic weak input takes the sink-and-flip path and stays weak.
  Buchi flipped = ba_complement(plus00_chain());
  CHECK(flipped.det_weak);
  CHECK_FALSE(accepts(flipped, word1("+00.", "0")));
  CHECK(accepts(flipped, word1("+0.", "0")));

  // Nondeterministic with an SCC carrying accepting and rejecting cycles.
  Buchi bad;
  bad.tracks = 1;
  bad.states = 2;
  bad.init = 0;
  bad.finals = {false, true};
  bad.edges = {{0, {SymSet::digits()}, 1},
               {1, {SymSet::digits()}, 0},
               {1, {Sym::One}, 1},
               {0, {Sym::Zero}, 0}};
  CHECK_FALSE(is_structurally_weak(bad));
  CHECK_FALSE(is_deterministic(bad));
  CHECK_THROWS_AS(ba_complement(bad), std::invalid_argument);
}

TEST_CASE("projection truncates labels and keeps the state graph") {
  Buchi eq = diag_eq();
  Buchi same = ba_project(eq, 2);
  CHECK(same.states == eq.states);
  CHECK(accepts(same, word2("+0.", "+0.", "10", "10")));
  CHECK_FALSE(accepts(same, word2("+0.", "+1.", "10", "10")));

  Buchi one = ba_project(eq, 1);
  CHECK(one.states == eq.states);
  for (const std::string u : {"+.", "-.", "+0.", "+01101.", "-110."})
    for (const std::string v : {"0", "1", "10", "0110"}) CHECK(accepts(one, word1(u, v)));
  CHECK_FALSE(accepts(one, word1("01.", "0")));   // no sign
  CHECK_FALSE(accepts(one, word1("+01", "0")));   // no comma
  CHECK_FALSE(accepts(one, word1("+0.1.", "0"))); // second comma

  Buchi none = ba_project(eq, 0);
  CHECK_FALSE(is_empty(none));
  auto w = find_accepted(none);
  REQUIRE(w.has_value());
  CHECK(accepts(none, *w));

  CHECK_THROWS_AS(ba_project(eq, 3), std::invalid_argument);
  CHECK_THROWS_AS(ba_project(eq, -1), std::invalid_argument);
}

TEST_CASE("leading zero closure saturates zero columns after the sign") {
  Buchi chain = plus00_chain();
  Buchi cl = leading_zero_closure(chain);
  CHECK(accepts(cl, word1("+00.", "0")));
  CHECK(accepts(cl, word1("+0.", "0")));
  CHECK(accepts(cl, word1("+.", "0")));
  CHECK_FALSE(accepts(cl, word1("-0.", "0")));
  CHECK_FALSE(accepts(cl, word1("+1.", "0")));
  CHECK_FALSE(accepts(cl, word1("+00.", "01")));

  // Extensivity and idempotence.
  Buchi eq = diag_eq();
  Buchi cl_eq = leading_zero_closure(eq);
  Buchi cl_cl_eq = leading_zero_closure(cl_eq);
  std::vector<UPWord> pairs = {word2("+00.", "+00.", "0", "0"),
                               word2("-011.", "-011.", "10", "10"),
                               word2("+.", "+.", "1", "1")};
  for (const UPWord& w : pairs) {
    CHECK(accepts(cl_eq, w));
    CHECK(accepts(cl_cl_eq, w) == accepts(cl_eq, w));
  }
  Buchi cl2 = leading_zero_closure(cl);
  for (const std::string u : {"+00.", "+0.", "+.", "-0.", "+1."})
    CHECK(accepts(cl2, word1(u, "0")) == accepts(cl, word1(u, "0")));
}

TEST_CASE("emptiness matches exhaustive lasso search and yields witnesses") {
  Buchi no_finals = inf_ones();
  no_finals.finals = {false, false};
  CHECK(is_empty(no_finals));

  auto w = find_accepted(inf_ones());
  REQUIRE(w.has_value());
  bool has_one = false;
  for (const TrackSymbol& s : w->period) has_one |= s[0] == Sym::One;
  CHECK(has_one);
  CHECK(accepts(inf_ones(), *w));

  for (const Buchi& a : {inf_ones(), plus00_chain(), upword_automaton(word1("0", "10"))})
    CHECK(is_empty(ba_intersect(a, ba_complement(a))));

  auto gen = testutil::rng(23);
  int empties = 0, lassos = 0;
  for (int round = 0; round < 60; ++round) {
    Buchi a = round % 2 == 0 ? random_digit_auto(gen, 6, 45, 15)
                             : random_digit_auto(gen, 6, 80, 45);
    bool nonempty = exhaustive_nonempty(a);
    auto found = find_accepted(a);
    CHECK(found.has_value() == nonempty);
    if (found) {
      CHECK(accepts(a, *found));
      ++lassos;
    } else {
      ++empties;
    }
  }
  CHECK(empties >= 5);
  CHECK(lassos >= 5);
}

TEST_CASE("intersection of weak deterministic automata stays weak") {
  Buchi a = ba_intersect(diag_eq(), diag_eq());
  CHECK(is_structurally_weak(a));
  CHECK(a.det_weak);
  Buchi b = ba_intersect(plus00_chain(), leading_zero_closure(plus00_chain()));
  CHECK(is_structurally_weak(b));
  CHECK(b.det_weak);
}

TEST_CASE("automaton dumps round trip") {
  Buchi a;
  a.tracks = 2;
  a.states = 2;
  a.init = 0;
  a.finals = {false, true};
  a.edges = {{0, {SymSet::signs(), SymSet::digits()}, 1},
             {1, {SymSet::all(), SymSet(Sym::Zero)}, 1}};
  std::string text = print_buchi(a);
  CHECK(text ==
        "buchi k=2 states=2 init=0\n"
        "final: 1\n"
        "0 --[+-,01]--> 1\n"
        "1 --[01.+-,0]--> 1\n");
  Buchi back = parse_buchi(text);
  CHECK(back.tracks == a.tracks);
  CHECK(back.states == a.states);
  CHECK(back.init == a.init);
  CHECK(back.finals == a.finals);
  CHECK(print_buchi(back) == text);

  Buchi nil;
  nil.tracks = 0;
  nil.states = 1;
  nil.init = 0;
  nil.finals = {true};
  nil.edges = {{0, {}, 0}};
  std::string ntext = print_buchi(nil);
  CHECK(ntext == "buchi k=0 states=1 init=0\nfinal: 0\n0 --[]--> 0\n");
  CHECK(print_buchi(parse_buchi(ntext)) == ntext);

  CHECK_THROWS_AS(parse_buchi(""), std::runtime_error);
  CHECK_THROWS_AS(parse_buchi("buchi k=1 states=1\nfinal:\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_buchi("buchi k=1 states=1 init=0\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_buchi("buchi k=1 states=1 init=0\nfinal: 3\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_buchi("buchi k=1 states=1 init=0\nfinal:\n0 --[x]--> 0\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_buchi("buchi k=2 states=1 init=0\nfinal:\n0 --[01]--> 0\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_buchi("buchi k=1 states=1 init=0\nfinal:\n0 --[0]--> 4\n"),
                  std::invalid_argument);
}
