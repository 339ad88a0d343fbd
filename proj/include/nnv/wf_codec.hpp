#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nnv/buchi.hpp"
#include "nnv/rational.hpp"

namespace nnv {

// ---------------------------------------------------------------------------
// Codec between rationals and lasso words in the aligned binary format: one
// sign column, integer digits, one '.' column shared by all tracks, fraction
// digits forever. A lasso word w = u v^omega denotes per track the value
// (-1)^sign * (sum of integer digits * 2^i + sum of fraction digits * 2^-i),
// the fraction tail being evaluated exactly as a geometric series.
// ---------------------------------------------------------------------------

// A lasso word of that shape plus the two pieces of redundant structure the
// automata constructions keep reaching for: the comma column index and the
// sign symbol per track.
struct WfEncoding {
  UPWord word;             // arity == signs.size(); period never holds '.'
  std::size_t comma = 0;   // index of the '.' column inside word.prefix
  std::vector<Sym> signs;  // per-track Plus or Minus
};

// Shape check for arbitrary lasso words (any arity, including zero tracks).
bool upword_wellformed(const UPWord& w);

// Exact value of one track. Throws std::invalid_argument when the word is
// malformed (missing or repeated comma, bad sign column, stray symbols,
// ragged letters, empty period) or the track index is out of range.
Rational decode_upword(const UPWord& w, std::size_t track = 0);

// Canonical single-track encoding: no leading integer zeros, terminating
// expansions take the 0-tail rather than the 0111... twin, zero is "+.0^w".
WfEncoding encode_rational(const Rational& q);

// Inserts zero columns (on every track) right after the sign column.
WfEncoding pad_zeros(const WfEncoding& e, std::size_t count);

// The other representation of a dyadic value: digits minus one ulp followed
// by the all-ones tail. Defined for single-track encodings with a 0-tail and
// a nonzero value; returns nullopt otherwise.
std::optional<WfEncoding> alt_tail(const WfEncoding& e);

// Stacks single-track encodings into one aligned multi-track word, padding
// integer digits with zeros and unrolling fraction periods to their least
// common multiple.
WfEncoding align_encodings(const std::vector<WfEncoding>& parts);

// align_encodings over canonical encodings of the given values.
WfEncoding encode_tuple(const std::vector<Rational>& values);

}  // namespace nnv
