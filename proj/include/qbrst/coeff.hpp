#pragma once

// Exact coefficient field: multivariate rational functions over Q in named
// parameters, kept in a canonical reduced form.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qbrst/error.hpp"

namespace qbrst {

using Rational = mpq_class;

/// Process-wide table of parameter symbols. Symbol ids are handed out in
/// first-registration order and that order is the variable order used by
/// the graded-lex monomial ordering.
class SymbolTable {
 public:
  static std::uint32_t intern(std::string_view name);
  static std::optional<std::uint32_t> find(std::string_view name);
  static const std::string& name(std::uint32_t id);
};

/// Ordered list of distinct parameter names.
class ParameterSet {
 public:
  ParameterSet() = default;
  explicit ParameterSet(std::vector<std::string> names);

  const std::vector<std::string>& names() const { return names_; }
  bool contains(std::string_view name) const;
  std::size_t size() const { return names_.size(); }

  /// Union preserving this set's order, then new names from `other`.
  ParameterSet merged(const ParameterSet& other) const;

  friend bool operator==(const ParameterSet&, const ParameterSet&) = default;

 private:
  std::vector<std::string> names_;
};

/// Power product x_{v1}^{e1} ... with factors sorted by variable id.
class Monomial {
 public:
  using Factor = std::pair<std::uint32_t, std::uint32_t>;

  Monomial() = default;
  static Monomial variable(std::uint32_t var, std::uint32_t exp = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  std::uint32_t degree() const { return degree_; }
  std::uint32_t exponent(std::uint32_t var) const;
  bool is_one() const { return factors_.empty(); }

  Monomial operator*(const Monomial& other) const;
  /// Quotient if `other` divides this monomial.
  std::optional<Monomial> divide(const Monomial& other) const;
  Monomial without(std::uint32_t var) const;

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.factors_ == b.factors_;
  }
  /// Graded lexicographic comparison: -1, 0, +1.
  friend int compare(const Monomial& a, const Monomial& b);

 private:
  std::vector<Factor> factors_;
  std::uint32_t degree_ = 0;
};

/// Multivariate polynomial over Q. Terms are stored in strictly decreasing
/// graded-lex order with no zero coefficients.
class MPoly {
 public:
  struct Term {
    Monomial mono;
    Rational coeff;
  };

  MPoly() = default;
  MPoly(long value);  // NOLINT(google-explicit-constructor)
  explicit MPoly(Rational value);
  static MPoly variable(std::uint32_t var);
  static MPoly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
  }
  /// Constant term value when is_constant().
  Rational constant_value() const;
  const Rational& leading_coeff() const { return terms_.front().coeff; }
  const Monomial& leading_monomial() const { return terms_.front().mono; }
  std::uint32_t total_degree() const;
  std::uint32_t degree_in(std::uint32_t var) const;
  /// Smallest variable id occurring, if any.
  std::optional<std::uint32_t> lowest_variable() const;

  MPoly operator-() const;
  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly scaled(const Rational& r) const;
  MPoly times_monomial(const Monomial& m, const Rational& r) const;

  /// Exact quotient; throws if `divisor` does not divide this polynomial.
  MPoly exact_div(const MPoly& divisor) const;
  /// Quotient when `divisor` divides this polynomial.
  std::optional<MPoly> try_div(const MPoly& divisor) const;

  /// Coefficients with respect to `var`, index = power of var.
  std::vector<MPoly> coefficients_in(std::uint32_t var) const;
  static MPoly from_coefficients(std::uint32_t var,
                                 const std::vector<MPoly>& coeffs);

  /// Monic (leading coefficient 1) copy; zero stays zero.
  MPoly monic() const;

  friend bool operator==(const MPoly& a, const MPoly& b);

  std::string to_string() const;

 private:
  std::vector<Term> terms_;
};

/// Monic greatest common divisor in Q[x...]; gcd(0, 0) = 0.
MPoly gcd(const MPoly& a, const MPoly& b);

class Scalar;
using Bindings = std::map<std::string, Scalar>;

/// Rational function num/den in canonical form: gcd(num, den) = 1 and the
/// graded-lex leading coefficient of den is 1. Zero is 0/1.
class Scalar {
 public:
  Scalar() : num_(0), den_(1) {}
  Scalar(long value);  // NOLINT(google-explicit-constructor)
  Scalar(Rational value);  // NOLINT(google-explicit-constructor)
  static Scalar rational(long num, long den);
  static Scalar parameter(std::string_view name);
  /// Canonicalizes num/den; throws DivisionByZero when den is zero.
  static Scalar fraction(MPoly num, MPoly den);

  const MPoly& numerator() const { return num_; }
  const MPoly& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool is_rational() const { return num_.is_constant() && den_.is_constant(); }
  /// Value when is_rational().
  Rational rational_value() const;
  /// True if the numerator's leading coefficient is negative.
  bool looks_negative() const;
  /// True if this renders without parentheses as a product factor.
  bool is_monomial() const;

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
  Scalar inverse() const;
  Scalar pow(unsigned k) const;

  Scalar substitute(const Bindings& bindings) const;
  /// Parameter names occurring in num or den.
  std::vector<std::string> parameters() const;

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const;

 private:
  Scalar(MPoly num, MPoly den, bool /*canonical*/)
      : num_(std::move(num)), den_(std::move(den)) {}
  // num and den already coprime; only the denominator is normalised.
  static Scalar coprime_fraction(MPoly num, MPoly den);

  MPoly num_;
  MPoly den_;
};

std::string to_string(const Rational& r);

}  // namespace qbrst
