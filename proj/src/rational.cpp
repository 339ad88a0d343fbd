#include "nnv/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace nnv {

Rational rat(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class digits_to_int(std::string_view s) {
  return mpz_class(std::string(s), 10);
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) return std::nullopt;

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) return std::nullopt;

  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    mpz_class d = digits_to_int(den);
    if (d == 0) return std::nullopt;
    value = Rational(digits_to_int(num), d);
    value.canonicalize();
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto ipart = text.substr(0, dot);
    auto fpart = text.substr(dot + 1);
    if (ipart.empty() && fpart.empty()) return std::nullopt;
    if (!ipart.empty() && !all_digits(ipart)) return std::nullopt;
    if (!fpart.empty() && !all_digits(fpart)) return std::nullopt;
    mpz_class scale = 1;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fpart.size());
    mpz_class num = ipart.empty() ? mpz_class(0) : digits_to_int(ipart);
    num *= scale;
    if (!fpart.empty()) num += digits_to_int(fpart);
    value = Rational(num, scale);
    value.canonicalize();
  } else {
    if (!all_digits(text)) return std::nullopt;
    value = Rational(digits_to_int(text));
  }

  if (negative) value = -value;
  return value;
}

Rational parse_rational_or_throw(std::string_view text) {
  if (auto q = parse_rational(text)) return *q;
  throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
}

std::string to_string(const Rational& q) {
  return q.get_str();
}

double to_double(const Rational& q) {
  return q.get_d();
}

bool is_integer(const Rational& q) {
  return q.get_den() == 1;
}

mpz_class floor_int(const Rational& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

std::size_t hash_value(const Rational& q) {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](std::size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  auto mix_int = [&](mpz_srcptr z) {
    mix(static_cast<std::size_t>(mpz_sgn(z)) + 3);
    for (std::size_t i = 0, n = mpz_size(z); i < n; ++i)
      mix(static_cast<std::size_t>(mpz_getlimbn(z, i)));
  };
  mix_int(q.get_num_mpz_t());
  mix_int(q.get_den_mpz_t());
  return h;
}

}  // namespace nnv
