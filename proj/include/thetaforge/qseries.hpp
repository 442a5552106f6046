#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace thetaforge {

using Integer = mpz_class;
using Rational = mpq_class;

// Errors raised by the library. The CLI maps each kind to an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class ParseError : public Error {
 public:
  using Error::Error;
};
class PreconditionError : public Error {
 public:
  using Error::Error;
};
class UnsupportedError : public Error {
 public:
  using Error::Error;
};
class IoError : public Error {
 public:
  using Error::Error;
};

std::string to_string(const Rational& r);  // always "num/den"
Rational parse_rational(const std::string& s);

// Exponent on the lattice (1/48)Z, plus a sentinel for "no truncation".
class Exponent {
 public:
  static constexpr std::int64_t kDen = 48;

  constexpr Exponent() = default;
  static constexpr Exponent from_num48(std::int64_t n) { return Exponent(n); }
  static constexpr Exponent integer(std::int64_t k) { return Exponent(k * kDen); }
  static constexpr Exponent infinity() { return Exponent(kInf); }
  static Exponent from_rational(const Rational& r);

  constexpr std::int64_t num48() const { return n_; }
  constexpr bool is_infinite() const { return n_ == kInf; }
  bool is_integral() const { return !is_infinite() && n_ % kDen == 0; }
  Rational to_rational() const;
  std::string to_string() const;

  constexpr auto operator<=>(const Exponent&) const = default;

  friend constexpr Exponent operator+(Exponent a, Exponent b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return Exponent(a.n_ + b.n_);
  }
  friend constexpr Exponent operator-(Exponent a, Exponent b) {
    if (a.is_infinite()) return infinity();
    return Exponent(a.n_ - b.n_);
  }
  constexpr Exponent times(std::int64_t m) const {
    return is_infinite() ? infinity() : Exponent(n_ * m);
  }

 private:
  static constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  explicit constexpr Exponent(std::int64_t n) : n_(n) {}
  std::int64_t n_ = 0;
};

struct Term {
  Exponent exp;
  Rational coeff;
};

// Truncated series  sum c_e q^e  with e in (1/48)Z.  Coefficients at exponents
// >= truncation() are unknown.  Values are immutable once built.
class QSeries {
 public:
  QSeries() = default;  // exact zero

  static QSeries zero(Exponent truncation);
  static QSeries constant(const Rational& c, Exponent truncation = Exponent::infinity());
  static QSeries monomial(const Rational& c, Exponent e,
                          Exponent truncation = Exponent::infinity());
  // Sorts, merges equal exponents, drops zeros and terms at or past truncation.
  static QSeries from_terms(std::vector<Term> terms, Exponent truncation);

  const std::vector<Term>& terms() const { return terms_; }
  Exponent truncation() const { return trunc_; }
  Exponent valuation() const { return terms_.empty() ? trunc_ : terms_.front().exp; }
  bool is_zero() const { return terms_.empty(); }
  bool is_exact() const { return trunc_.is_infinite(); }

  Rational coeff(Exponent e) const;
  Rational coeff(std::int64_t k) const { return coeff(Exponent::integer(k)); }
  Rational leading_coeff() const;

  QSeries truncated(Exponent t) const;
  QSeries shifted(Exponent e) const;  // times q^e
  QSeries scaled(const Rational& c) const;
  QSeries operator-() const { return scaled(Rational(-1)); }

  bool integral_exponents() const;
  bool integral_coeffs() const;
  bool nonnegative_coeffs() const;

  friend QSeries operator+(const QSeries& a, const QSeries& b);
  friend QSeries operator-(const QSeries& a, const QSeries& b);
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  friend bool operator==(const QSeries& a, const QSeries& b);

  std::string to_string() const;

 private:
  std::vector<Term> terms_;
  Exponent trunc_ = Exponent::infinity();
};

QSeries power(const QSeries& f, unsigned k);
QSeries pow_rational(const QSeries& f, const Rational& r);
QSeries substitute(const QSeries& f, std::int64_t m);

QSeries eta(std::int64_t m, Exponent truncation);
// sum_n s(n) q^{weight (n+shift)^2}, s(n) = (-1)^n when alternating.
QSeries shifted_theta(std::int64_t weight, const Rational& shift, bool alternating,
                      Exponent truncation);
// Same sum with a rational weight; used for the catalog where thetas are in q^{1/2}.
QSeries jacobi_sum(const Rational& weight, const Rational& shift, bool alternating,
                   Exponent truncation);

nlohmann::json to_json(const QSeries& f);
QSeries qseries_from_json(const nlohmann::json& j);

// Coefficients of q^{v}, q^{v+1}, ... , for exponents v + k below truncation.
std::vector<Rational> coeff_run(const QSeries& f, Exponent start, std::int64_t count);

}  // namespace thetaforge
