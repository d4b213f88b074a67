#include <algorithm>
#include <set>

#include "qbrst/coeff.hpp"

namespace qbrst {

Scalar::Scalar(long value) : num_(value), den_(1) {}

Scalar::Scalar(Rational value) : num_(std::move(value)), den_(1) {}

Scalar Scalar::rational(long num, long den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return Scalar(r);
}

Scalar Scalar::parameter(std::string_view name) {
  return Scalar(MPoly::variable(SymbolTable::intern(name)), MPoly(1), true);
}

Scalar Scalar::fraction(MPoly num, MPoly den) {
  if (den.is_zero()) throw DivisionByZero("division by zero scalar");
  if (num.is_zero()) return Scalar();
  if (den.is_constant()) {
    Rational c = den.constant_value();
    return Scalar(num.scaled(1 / c), MPoly(1), true);
  }
  MPoly g = gcd(num, den);
  if (!g.is_constant()) {
    num = num.exact_div(g);
    den = den.exact_div(g);
  }
  Rational lc = den.leading_coeff();
  if (lc != 1) {
    Rational inv = 1 / lc;
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
  return Scalar(std::move(num), std::move(den), true);
}

bool Scalar::is_one() const {
  return den_.is_constant() && num_.is_constant() && num_.constant_value() == 1;
}

Rational Scalar::rational_value() const {
  if (!is_rational()) throw InvalidInput("scalar '" + to_string() + "' is not a rational number");
  return num_.constant_value() / den_.constant_value();
}

bool Scalar::looks_negative() const { return !num_.is_zero() && num_.leading_coeff() < 0; }

bool Scalar::is_monomial() const { return den_.is_constant() && num_.terms().size() <= 1; }

Scalar Scalar::operator-() const { return Scalar(-num_, den_, true); }

Scalar Scalar::operator+(const Scalar& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_.is_constant() && o.den_.is_constant()) return Scalar(num_ + o.num_, MPoly(1), true);
  if (den_ == o.den_) return fraction(num_ + o.num_, den_);
  if (o.den_.is_constant()) return Scalar(num_ + o.num_ * den_, den_, true);
  if (den_.is_constant()) return Scalar(num_ * o.den_ + o.num_, o.den_, true);
  // With g = gcd(b, d), a/b + c/d = (a*d' + c*b') / (g*b'*d') and only g can
  // share a factor with the new numerator.
  MPoly g = gcd(den_, o.den_);
  MPoly b1 = den_.exact_div(g);
  MPoly d1 = o.den_.exact_div(g);
  MPoly n = num_ * d1 + o.num_ * b1;
  if (n.is_zero()) return Scalar();
  MPoly h = g.is_constant() ? MPoly(1) : gcd(n, g);
  return coprime_fraction(n.exact_div(h), b1 * d1 * g.exact_div(h));
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  if (is_zero() || o.is_zero()) return Scalar();
  if (den_.is_constant() && o.den_.is_constant()) return Scalar(num_ * o.num_, MPoly(1), true);
  if (o.is_rational()) return Scalar(num_.scaled(o.rational_value()), den_, true);
  if (is_rational()) return Scalar(o.num_.scaled(rational_value()), o.den_, true);
  // Cross-cancel so that the product needs no further gcd.
  MPoly g1 = gcd(num_, o.den_);
  MPoly g2 = gcd(o.num_, den_);
  return coprime_fraction(num_.exact_div(g1) * o.num_.exact_div(g2),
                          den_.exact_div(g2) * o.den_.exact_div(g1));
}

Scalar Scalar::coprime_fraction(MPoly num, MPoly den) {
  Rational lc = den.leading_coeff();
  if (lc != 1) {
    num = num.scaled(1 / lc);
    den = den.scaled(1 / lc);
  }
  if (den.is_constant()) return Scalar(std::move(num), MPoly(1), true);
  return Scalar(std::move(num), std::move(den), true);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero scalar");
  return fraction(den_, num_);
}

Scalar Scalar::operator/(const Scalar& o) const {
  if (o.is_zero()) throw DivisionByZero("division by zero scalar");
  return *this * o.inverse();
}

Scalar Scalar::pow(unsigned k) const {
  Scalar r(1);
  Scalar base = *this;
  while (k > 0) {
    if (k & 1U) r *= base;
    base *= base;
    k >>= 1U;
  }
  return r;
}

namespace {

Scalar evaluate(const MPoly& p, const Bindings& bindings) {
  Scalar acc;
  for (const auto& t : p.terms()) {
    Scalar term(t.coeff);
    for (const auto& [v, e] : t.mono.factors()) {
      const auto& name = SymbolTable::name(v);
      auto it = bindings.find(name);
      term *= (it == bindings.end() ? Scalar::parameter(name) : it->second).pow(e);
    }
    acc += term;
  }
  return acc;
}

}  // namespace

Scalar Scalar::substitute(const Bindings& bindings) const {
  if (bindings.empty()) return *this;
  Scalar n = evaluate(num_, bindings);
  Scalar d = evaluate(den_, bindings);
  if (d.is_zero()) {
    std::string which;
    for (const auto& name : parameters()) {
      if (auto it = bindings.find(name); it != bindings.end()) {
        if (!which.empty()) which += ", ";
        which += name + "=" + it->second.to_string();
      }
    }
    throw DivisionByZero("denominator " + den_.to_string() + " vanishes under binding " + which);
  }
  return n / d;
}

std::vector<std::string> Scalar::parameters() const {
  std::set<std::uint32_t> ids;
  for (const auto* p : {&num_, &den_}) {
    for (const auto& t : p->terms()) {
      for (const auto& f : t.mono.factors()) ids.insert(f.first);
    }
  }
  std::vector<std::string> out;
  for (auto id : ids) out.push_back(SymbolTable::name(id));
  return out;
}

std::string Scalar::to_string() const {
  if (den_.is_constant()) return num_.to_string();
  std::string n = num_.to_string();
  if (num_.terms().size() > 1) n = "(" + n + ")";
  std::string d = den_.to_string();
  const auto& dt = den_.terms();
  bool bare = dt.size() == 1 && dt[0].coeff == 1 && dt[0].mono.factors().size() == 1;
  if (!bare) d = "(" + d + ")";
  return n + "/" + d;
}

}  // namespace qbrst
