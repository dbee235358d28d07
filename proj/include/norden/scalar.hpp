#pragma once

#include <gmpxx.h>

#include <cmath>
#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace norden {

// Exact rational scalar. All geometry code is templated on the scalar type;
// the two supported instantiations are Rational (exact) and double (float
// mode, compared up to a session tolerance).
using Rational = mpq_class;

enum class ScalarMode { Rational, Float };

inline constexpr double kDefaultTol = 1e-9;

inline const char* to_string(ScalarMode m) {
  return m == ScalarMode::Rational ? "rational" : "float";
}

template <class T>
struct NumTraits;

template <>
struct NumTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr ScalarMode mode = ScalarMode::Rational;

  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational fraction(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  static Rational abs(const Rational& a) { return ::abs(a); }
  static bool is_zero(const Rational& a, double /*tol*/ = kDefaultTol) {
    return sgn(a) == 0;
  }
  static bool equal(const Rational& a, const Rational& b,
                    double /*tol*/ = kDefaultTol) {
    return a == b;
  }
  static double to_double(const Rational& a) { return a.get_d(); }
  static std::string str(const Rational& a) { return a.get_str(); }
};

template <>
struct NumTraits<double> {
  static constexpr bool exact = false;
  static constexpr ScalarMode mode = ScalarMode::Float;

  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double fraction(long num, long den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static double abs(double a) { return std::fabs(a); }
  static bool is_zero(double a, double tol = kDefaultTol) {
    return std::fabs(a) <= tol;
  }
  static bool equal(double a, double b, double tol = kDefaultTol) {
    return std::fabs(a - b) <= tol;
  }
  static double to_double(double a) { return a; }
  static std::string str(double a) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, a);
    if (ec != std::errc()) throw std::runtime_error("double formatting failed");
    return std::string(buf, ptr);
  }
};

// Parses "p", "p/q" or a plain decimal ("1.5", "-0.25") into an exact rational.
inline Rational parse_rational(std::string_view text) {
  auto bad = [&] {
    return std::invalid_argument("not a rational: '" + std::string(text) + "'");
  };
  if (text.empty()) throw bad();
  std::string s(text);
  if (auto slash = s.find('/'); slash != std::string::npos) {
    if (s.find('/', slash + 1) != std::string::npos) throw bad();
    Rational r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0) throw bad();
    if (sgn(Rational(r.get_den())) == 0)
      throw std::invalid_argument("zero denominator: '" + s + "'");
    r.canonicalize();
    return r;
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+") throw bad();
    mpz_class num;
    if (mpz_set_str(num.get_mpz_t(), digits.c_str(), 10) != 0) throw bad();
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  Rational r;
  if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0) throw bad();
  r.canonicalize();
  return r;
}

template <class T>
T parse_scalar(std::string_view text);

template <>
inline Rational parse_scalar<Rational>(std::string_view text) {
  return parse_rational(text);
}

template <>
inline double parse_scalar<double>(std::string_view text) {
  return NumTraits<Rational>::to_double(parse_rational(text));
}

// Raised when two independent evaluation routes of the same quantity disagree.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace norden
