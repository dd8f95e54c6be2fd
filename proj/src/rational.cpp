#include "tropbilevel/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace tropbilevel {
namespace {

[[noreturn]] void bad_decimal(std::string_view text) {
  throw std::invalid_argument("malformed decimal number: \"" + std::string(text) + "\"");
}

Rational power_of_ten(long exponent) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  if (exponent >= 0) return Rational(p);
  Rational r(mpz_class(1), p);
  r.canonicalize();
  return r;
}

}  // namespace

Rational parse_decimal(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);

  bool negative = false;
  constexpr std::string_view kUnicodeMinus = "\xE2\x88\x92";
  if (s.starts_with(kUnicodeMinus)) {
    negative = true;
    s.remove_prefix(kUnicodeMinus.size());
  } else if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  std::string digits;
  long scale = 0;
  bool seen_point = false;
  bool seen_digit = false;
  std::size_t pos = 0;
  for (; pos < s.size(); ++pos) {
    const char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) ++scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) bad_decimal(text);

  long exponent = 0;
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') bad_decimal(text);
    ++pos;
    bool exp_negative = false;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
      exp_negative = s[pos] == '-';
      ++pos;
    }
    if (pos == s.size()) bad_decimal(text);
    for (; pos < s.size(); ++pos) {
      if (!std::isdigit(static_cast<unsigned char>(s[pos]))) bad_decimal(text);
      exponent = exponent * 10 + (s[pos] - '0');
      if (exponent > 10000) bad_decimal(text);
    }
    if (exp_negative) exponent = -exponent;
  }

  Rational value(mpz_class(digits, 10));
  value *= power_of_ten(exponent - scale);
  value.canonicalize();
  if (negative) value = -value;
  return value;
}

bool is_terminating_decimal(const Rational& value) {
  mpz_class den = value.get_den();
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) den /= 2;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) den /= 5;
  return den == 1;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  if (!is_terminating_decimal(value)) return value.get_str();

  // Find the smallest k with den | 10^k, then print num * (10^k / den).
  mpz_class den = value.get_den();
  long k = 0;
  mpz_class ten_k = 1;
  while (!mpz_divisible_p(ten_k.get_mpz_t(), den.get_mpz_t())) {
    ten_k *= 10;
    ++k;
  }
  mpz_class scaled = value.get_num() * (ten_k / den);
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.get_str();
  if (static_cast<long>(digits.size()) <= k) digits.insert(0, static_cast<std::size_t>(k) - digits.size() + 1, '0');
  digits.insert(digits.size() - static_cast<std::size_t>(k), ".");
  return negative ? "-" + digits : digits;
}

}  // namespace tropbilevel
