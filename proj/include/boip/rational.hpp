#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace boip {

// Always canonical: gmpxx arithmetic keeps results reduced with a positive
// denominator, and every constructor below canonicalizes explicitly.
using Rational = mpq_class;
using BigInt = mpz_class;

struct RationalPair {
  Rational first;
  Rational second;

  friend bool operator==(const RationalPair& a, const RationalPair& b) {
    return a.first == b.first && a.second == b.second;
  }
};

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

inline Rational make_rational(const BigInt& num, const BigInt& den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p/q", "p", or a finite decimal such as "0.25".
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  try {
    if (auto dot = s.find('.'); dot != std::string::npos) {
      if (s.find('/') != std::string::npos) throw std::invalid_argument("mixed literal");
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      std::size_t frac_len = s.size() - dot - 1;
      BigInt num(digits, 10);
      BigInt den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
      return make_rational(num, den);
    }
    Rational r(s, 10);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator");
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational literal '" + s + "'");
  }
}

inline std::string to_string(const Rational& r) {
  return r.get_str(10);
}

inline BigInt floor_of(const Rational& r) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline BigInt ceil_of(const Rational& r) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline bool is_integer(const Rational& r) {
  return r.get_den() == 1;
}

inline std::int64_t to_int64(const BigInt& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits");
  return z.get_si();
}

inline std::int64_t to_int64(const Rational& r) {
  if (!is_integer(r)) throw std::domain_error("rational " + to_string(r) + " is not an integer");
  return to_int64(r.get_num());
}

inline Rational from_int64(std::int64_t v) {
  return Rational(BigInt(static_cast<long>(v)));
}

inline double to_double(const Rational& r) {
  return r.get_d();
}

// Outward rounding to the nearest representable doubles.
inline double to_double_down(const Rational& r) {
  double d = r.get_d();
  if (Rational(d) > r) d = std::nextafter(d, -std::numeric_limits<double>::infinity());
  return d;
}

inline double to_double_up(const Rational& r) {
  double d = r.get_d();
  if (Rational(d) < r) d = std::nextafter(d, std::numeric_limits<double>::infinity());
  return d;
}

/// Fixed-point rendering with `digits` decimals, rounded half away from zero.
inline std::string to_decimal(const Rational& r, int digits = 4) {
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Rational scaled = abs(r) * scale + Rational(1, 2);
  BigInt q = floor_of(scaled);
  std::string body = q.get_str();
  if (static_cast<int>(body.size()) <= digits) body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
  std::string out = (r < 0 && q != 0) ? "-" : "";
  out += body.substr(0, body.size() - static_cast<std::size_t>(digits));
  if (digits > 0) out += "." + body.substr(body.size() - static_cast<std::size_t>(digits));
  return out;
}

}  // namespace boip
