#include "nnv/wf_codec.hpp"

#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace nnv {

namespace {

bool is_digit_sym(Sym s) { return s == Sym::Zero || s == Sym::One; }
bool is_sign_sym(Sym s) { return s == Sym::Plus || s == Sym::Minus; }

// Locates the comma column of a well-formed word; nullopt when the shape is
// off. Arity zero is vacuously well-formed and reports no comma.
std::optional<std::size_t> wf_comma(const UPWord& w) {
  if (w.period.empty()) return std::nullopt;
  std::size_t arity = w.prefix.empty() ? w.period[0].size() : w.prefix[0].size();
  for (const auto& c : w.prefix)
    if (c.size() != arity) return std::nullopt;
  for (const auto& c : w.period)
    if (c.size() != arity) return std::nullopt;
  if (arity == 0) return std::size_t{0};

  if (w.prefix.size() < 2) return std::nullopt;
  std::optional<std::size_t> comma;
  for (std::size_t pos = 0; pos < w.prefix.size(); ++pos) {
    const TrackSymbol& col = w.prefix[pos];
    bool all_comma = true, all_digit = true, all_sign = true;
    for (Sym s : col) {
      all_comma = all_comma && s == Sym::Comma;
      all_digit = all_digit && is_digit_sym(s);
      all_sign = all_sign && is_sign_sym(s);
    }
    if (pos == 0) {
      if (!all_sign) return std::nullopt;
    } else if (all_comma) {
      if (comma) return std::nullopt;
      comma = pos;
    } else if (!all_digit) {
      return std::nullopt;
    }
  }
  if (!comma) return std::nullopt;
  for (const auto& col : w.period)
    for (Sym s : col)
      if (!is_digit_sym(s)) return std::nullopt;
  return comma;
}

// Batched digit-string -> integer conversion (base 2, MSB first).
mpz_class bits_value(const std::string& bits) {
  if (bits.empty()) return 0;
  return mpz_class(bits, 2);
}

std::string track_bits(const UPWord& w, std::size_t track, std::size_t from,
                       std::size_t to) {
  std::string out;
  out.reserve(to - from);
  for (std::size_t p = from; p < to; ++p)
    out += w.prefix[p][track] == Sym::One ? '1' : '0';
  return out;
}

}  // namespace

bool upword_wellformed(const UPWord& w) { return wf_comma(w).has_value(); }

Rational decode_upword(const UPWord& w, std::size_t track) {
  auto comma = wf_comma(w);
  if (!comma) throw std::invalid_argument("decode: word is not well-formed");
  std::size_t arity = w.prefix.empty() ? w.period[0].size() : w.prefix[0].size();
  if (track >= arity) throw std::invalid_argument("decode: track out of range");

  std::size_t c = *comma;
  mpz_class ipart = bits_value(track_bits(w, track, 1, c));

  std::string fpre = track_bits(w, track, c + 1, w.prefix.size());
  std::string fper;
  fper.reserve(w.period.size());
  for (const auto& col : w.period) fper += col[track] == Sym::One ? '1' : '0';

  std::size_t a = fpre.size(), p = fper.size();
  mpz_class two_a = mpz_class(1) << a;
  mpz_class two_p_minus_1 = (mpz_class(1) << p) - 1;

  // |v| = ipart + fpre/2^a + fper/(2^a * (2^p - 1))
  Rational frac = Rational(bits_value(fpre)) / Rational(two_a) +
                  Rational(bits_value(fper)) / Rational(two_a * two_p_minus_1);
  Rational v = Rational(ipart) + frac;
  if (w.prefix[0][track] == Sym::Minus) v = -v;
  return Rational(v);
}

WfEncoding encode_rational(const Rational& q) {
  Rational m = abs(q);
  mpz_class num = m.get_num(), den = m.get_den();
  mpz_class ipart = num / den;
  mpz_class r = num % den;

  std::string ints = ipart == 0 ? std::string() : ipart.get_str(2);

  // Long division: doubling the remainder emits one fraction digit per step;
  // the first repeated remainder closes the period, a zero remainder means a
  // terminating expansion (period "0").
  std::string digits;
  std::size_t cycle_start = 0;
  bool terminated = false;
  if (mpz_fits_ulong_p(den.get_mpz_t()) && den.get_ui() <= (1ul << 62)) {
    unsigned long d = den.get_ui();
    unsigned long rem = r.get_ui();
    std::unordered_map<unsigned long, std::size_t> seen;
    while (true) {
      if (rem == 0) { terminated = true; break; }
      auto it = seen.find(rem);
      if (it != seen.end()) { cycle_start = it->second; break; }
      seen.emplace(rem, digits.size());
      rem *= 2;
      if (rem >= d) { digits += '1'; rem -= d; } else { digits += '0'; }
    }
  } else {
    std::map<mpz_class, std::size_t> seen;
    while (true) {
      if (r == 0) { terminated = true; break; }
      auto it = seen.find(r);
      if (it != seen.end()) { cycle_start = it->second; break; }
      seen.emplace(r, digits.size());
      r *= 2;
      if (r >= den) { digits += '1'; r -= den; } else { digits += '0'; }
    }
  }

  Sym sign = q < 0 ? Sym::Minus : Sym::Plus;
  WfEncoding e;
  e.signs = {sign};
  e.word.prefix.push_back({sign});
  for (char c : ints) e.word.prefix.push_back({c == '1' ? Sym::One : Sym::Zero});
  e.comma = e.word.prefix.size();
  e.word.prefix.push_back({Sym::Comma});
  std::size_t head = terminated ? digits.size() : cycle_start;
  for (std::size_t i = 0; i < head; ++i)
    e.word.prefix.push_back({digits[i] == '1' ? Sym::One : Sym::Zero});
  if (terminated) {
    e.word.period.push_back({Sym::Zero});
  } else {
    for (std::size_t i = cycle_start; i < digits.size(); ++i)
      e.word.period.push_back({digits[i] == '1' ? Sym::One : Sym::Zero});
  }
  return e;
}

WfEncoding pad_zeros(const WfEncoding& e, std::size_t count) {
  WfEncoding out = e;
  TrackSymbol zeros(e.signs.size(), Sym::Zero);
  out.word.prefix.insert(out.word.prefix.begin() + 1, count, zeros);
  out.comma += count;
  return out;
}

std::optional<WfEncoding> alt_tail(const WfEncoding& e) {
  if (e.signs.size() != 1) return std::nullopt;
  if (e.word.period.size() != 1 || e.word.period[0][0] != Sym::Zero)
    return std::nullopt;

  // All digit cells, integer and fraction alike, as one binary string.
  std::vector<Sym> digits;
  for (std::size_t p = 1; p < e.word.prefix.size(); ++p)
    if (p != e.comma) digits.push_back(e.word.prefix[p][0]);
  bool nonzero = false;
  for (Sym s : digits) nonzero = nonzero || s == Sym::One;
  if (!nonzero) return std::nullopt;

  // Subtract one ulp: the trailing 0s flip to 1s, the last 1 flips to 0. The
  // all-ones tail then adds the ulp back.
  std::size_t i = digits.size();
  while (digits[i - 1] == Sym::Zero) {
    digits[i - 1] = Sym::One;
    --i;
  }
  digits[i - 1] = Sym::Zero;

  WfEncoding out = e;
  std::size_t at = 0;
  for (std::size_t p = 1; p < out.word.prefix.size(); ++p)
    if (p != out.comma) out.word.prefix[p] = {digits[at++]};
  out.word.period = {{Sym::One}};
  return out;
}

WfEncoding align_encodings(const std::vector<WfEncoding>& parts) {
  if (parts.empty()) throw std::invalid_argument("align: no tracks");
  std::size_t ints = 0, fracs = 0, period = 1;
  for (const auto& p : parts) {
    if (p.signs.size() != 1)
      throw std::invalid_argument("align: parts must be single-track");
    ints = std::max(ints, p.comma - 1);
    fracs = std::max(fracs, p.word.prefix.size() - p.comma - 1);
    period = std::lcm(period, p.word.period.size());
  }

  WfEncoding out;
  out.comma = 1 + ints;
  auto digit_at = [](const WfEncoding& p, std::size_t pos) {
    // Fraction digit stream of p (pos counts from 0 after the comma).
    std::size_t head = p.word.prefix.size() - p.comma - 1;
    if (pos < head) return p.word.prefix[p.comma + 1 + pos][0];
    return p.word.period[(pos - head) % p.word.period.size()][0];
  };

  for (std::size_t col = 0; col < 2 + ints + fracs; ++col) {
    TrackSymbol cell;
    for (const auto& p : parts) {
      std::size_t pad = ints - (p.comma - 1);
      if (col == 0) {
        cell.push_back(p.signs[0]);
      } else if (col <= ints) {
        cell.push_back(col <= pad ? Sym::Zero : p.word.prefix[col - pad][0]);
      } else if (col == 1 + ints) {
        cell.push_back(Sym::Comma);
      } else {
        cell.push_back(digit_at(p, col - ints - 2));
      }
    }
    out.word.prefix.push_back(cell);
  }
  for (std::size_t j = 0; j < period; ++j) {
    TrackSymbol cell;
    for (const auto& p : parts) cell.push_back(digit_at(p, fracs + j));
    out.word.period.push_back(cell);
  }
  for (const auto& p : parts) out.signs.push_back(p.signs[0]);
  return out;
}

WfEncoding encode_tuple(const std::vector<Rational>& values) {
  std::vector<WfEncoding> parts;
  parts.reserve(values.size());
  for (const auto& v : values) parts.push_back(encode_rational(v));
  return align_encodings(parts);
}

}  // namespace nnv
