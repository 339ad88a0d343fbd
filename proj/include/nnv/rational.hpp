#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace nnv {

// Exact rational scalar used on every verification path. mpq_class keeps the
// canonical form we rely on (positive denominator, coprime num/den) as long
// as values are built through its operators; anything touching raw mpq_t must
// call canonicalize() before the value escapes.
using Rational = mpq_class;

Rational rat(long num, long den = 1);

// Accepts "p", "p/q", and decimal notation ("-3.049", "0.5", ".25"), with an
// optional leading sign. Returns nullopt on malformed input or a zero
// denominator.
std::optional<Rational> parse_rational(std::string_view text);

// Same grammar, but throws std::invalid_argument naming the offending text.
Rational parse_rational_or_throw(std::string_view text);

// "p" when the denominator is 1, "p/q" otherwise.
std::string to_string(const Rational& q);

double to_double(const Rational& q);

bool is_integer(const Rational& q);

// Largest integer <= q.
mpz_class floor_int(const Rational& q);

std::size_t hash_value(const Rational& q);

struct RationalHash {
  std::size_t operator()(const Rational& q) const { return hash_value(q); }
};

}  // namespace nnv
