#include "reliabench/rational.hpp"

#include <algorithm>
#include <cctype>

#include "reliabench/errors.hpp"

namespace reliabench {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Shape: return "shape";
    case ErrorKind::Context: return "context";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Budget: return "budget";
    case ErrorKind::Unsupported: return "unsupported";
  }
  return "unknown";
}

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

[[noreturn]] void bad_rational(std::string_view text) {
  throw Error(ErrorKind::Validation, "not a rational number: \"" + std::string(text) + "\"");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.front()))) body.remove_prefix(1);
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.remove_suffix(1);
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational result;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad_rational(text);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw Error(ErrorKind::Validation, "zero denominator in \"" + std::string(text) + "\"");
    result = Rational(mpz_class(std::string(num), 10), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      bad_rational(text);
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class digits(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    result = Rational(digits, scale);
  } else {
    if (!all_digits(body)) bad_rational(text);
    result = Rational(mpz_class(std::string(body), 10));
  }
  result.canonicalize();
  return negative ? Rational(-result) : result;
}

std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_str(10);
}

std::string to_decimal(const Rational& value, int significant_digits) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  const Rational magnitude = abs(value);

  // Find e with 10^e <= magnitude < 10^(e+1).
  long exponent = static_cast<long>(mpz_sizeinbase(mpz_class(magnitude.get_num()).get_mpz_t(), 10)) -
                  static_cast<long>(mpz_sizeinbase(mpz_class(magnitude.get_den()).get_mpz_t(), 10));
  auto pow10 = [](long e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
    return e < 0 ? Rational(1, p) : Rational(p);
  };
  while (pow10(exponent) > magnitude) --exponent;
  while (pow10(exponent + 1) <= magnitude) ++exponent;

  const long shift = significant_digits - 1 - exponent;
  Rational scaled = magnitude * pow10(shift) + Rational(1, 2);
  mpz_class digits = scaled.get_num() / scaled.get_den();
  mpz_class limit;
  mpz_ui_pow_ui(limit.get_mpz_t(), 10, static_cast<unsigned long>(significant_digits));
  if (digits >= limit) {
    digits /= 10;
    ++exponent;
  }
  std::string text = digits.get_str(10);
  // Place the decimal point: text holds significant_digits digits, leading digit at 10^exponent.
  std::string out;
  if (exponent >= 0 && exponent < significant_digits) {
    out = text.substr(0, static_cast<size_t>(exponent + 1));
    std::string rest = text.substr(static_cast<size_t>(exponent + 1));
    while (!rest.empty() && rest.back() == '0') rest.pop_back();
    if (!rest.empty()) out += "." + rest;
  } else if (exponent < 0 && exponent >= -6) {
    std::string rest = std::string(static_cast<size_t>(-exponent - 1), '0') + text;
    while (!rest.empty() && rest.back() == '0') rest.pop_back();
    out = "0." + rest;
  } else {
    std::string rest = text.substr(1);
    while (!rest.empty() && rest.back() == '0') rest.pop_back();
    out = text.substr(0, 1) + (rest.empty() ? "" : "." + rest) + "e" + std::to_string(exponent);
  }
  return negative ? "-" + out : out;
}

Rational power(const Rational& base, unsigned exponent) {
  Rational result(1);
  Rational b = base;
  while (exponent > 0) {
    if (exponent & 1u) result *= b;
    b *= b;
    exponent >>= 1u;
  }
  return result;
}

}  // namespace reliabench
