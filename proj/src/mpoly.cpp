#include "qbrst/coeff.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace qbrst {

namespace {

struct SymbolStore {
  std::mutex mutex;
  std::deque<std::string> names;
  std::unordered_map<std::string, std::uint32_t> ids;
};

SymbolStore& store() {
  static SymbolStore s;
  return s;
}

}  // namespace

std::uint32_t SymbolTable::intern(std::string_view name) {
  auto& s = store();
  std::lock_guard lock(s.mutex);
  std::string key(name);
  if (auto it = s.ids.find(key); it != s.ids.end()) return it->second;
  auto id = static_cast<std::uint32_t>(s.names.size());
  s.names.push_back(key);
  s.ids.emplace(std::move(key), id);
  return id;
}

std::optional<std::uint32_t> SymbolTable::find(std::string_view name) {
  auto& s = store();
  std::lock_guard lock(s.mutex);
  if (auto it = s.ids.find(std::string(name)); it != s.ids.end()) return it->second;
  return std::nullopt;
}

const std::string& SymbolTable::name(std::uint32_t id) {
  auto& s = store();
  std::lock_guard lock(s.mutex);
  return s.names.at(id);
}

ParameterSet::ParameterSet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (names_[i] == names_[j]) throw InvalidInput("duplicate parameter '" + names_[i] + "'");
    }
    SymbolTable::intern(names_[i]);
  }
}

bool ParameterSet::contains(std::string_view name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

ParameterSet ParameterSet::merged(const ParameterSet& other) const {
  auto names = names_;
  for (const auto& n : other.names_) {
    if (!contains(n)) names.push_back(n);
  }
  return ParameterSet(std::move(names));
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::variable(std::uint32_t var, std::uint32_t exp) {
  Monomial m;
  if (exp > 0) {
    m.factors_.emplace_back(var, exp);
    m.degree_ = exp;
  }
  return m;
}

std::uint32_t Monomial::exponent(std::uint32_t var) const {
  for (const auto& [v, e] : factors_) {
    if (v == var) return e;
  }
  return 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  r.factors_.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      r.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      r.factors_.push_back(*b++);
    } else {
      r.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  r.degree_ = degree_ + other.degree_;
  return r;
}

std::optional<Monomial> Monomial::divide(const Monomial& other) const {
  Monomial r;
  auto b = other.factors_.begin();
  for (const auto& [v, e] : factors_) {
    if (b != other.factors_.end() && b->first < v) return std::nullopt;
    if (b != other.factors_.end() && b->first == v) {
      if (b->second > e) return std::nullopt;
      if (b->second < e) r.factors_.emplace_back(v, e - b->second);
      ++b;
    } else {
      r.factors_.emplace_back(v, e);
    }
  }
  if (b != other.factors_.end()) return std::nullopt;
  r.degree_ = degree_ - other.degree_;
  return r;
}

Monomial Monomial::without(std::uint32_t var) const {
  Monomial r;
  for (const auto& f : factors_) {
    if (f.first != var) {
      r.factors_.push_back(f);
      r.degree_ += f.second;
    }
  }
  return r;
}

int compare(const Monomial& a, const Monomial& b) {
  if (a.degree_ != b.degree_) return a.degree_ < b.degree_ ? -1 : 1;
  auto i = a.factors_.begin();
  auto j = b.factors_.begin();
  for (; i != a.factors_.end() && j != b.factors_.end(); ++i, ++j) {
    if (i->first != j->first) return i->first < j->first ? 1 : -1;
    if (i->second != j->second) return i->second < j->second ? -1 : 1;
  }
  if (i != a.factors_.end()) return 1;
  if (j != b.factors_.end()) return -1;
  return 0;
}

// ------------------------------------------------------------------- MPoly

MPoly::MPoly(long value) : MPoly(Rational(value)) {}

MPoly::MPoly(Rational value) {
  if (value != 0) terms_.push_back({Monomial(), std::move(value)});
}

MPoly MPoly::variable(std::uint32_t var) {
  MPoly p;
  p.terms_.push_back({Monomial::variable(var), Rational(1)});
  return p;
}

MPoly MPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return compare(a.mono, b.mono) > 0; });
  MPoly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
      if (p.terms_.back().coeff == 0) p.terms_.pop_back();
    } else if (t.coeff != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

Rational MPoly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!terms_[0].mono.is_one()) throw InvalidInput("polynomial is not constant");
  return terms_[0].coeff;
}

std::uint32_t MPoly::total_degree() const {
  return terms_.empty() ? 0 : terms_.front().mono.degree();
}

std::uint32_t MPoly::degree_in(std::uint32_t var) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.exponent(var));
  return d;
}

std::optional<std::uint32_t> MPoly::lowest_variable() const {
  std::optional<std::uint32_t> best;
  for (const auto& t : terms_) {
    if (!t.mono.factors().empty()) {
      auto v = t.mono.factors().front().first;
      if (!best || v < *best) best = v;
    }
  }
  return best;
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

MPoly MPoly::operator+(const MPoly& o) const {
  MPoly r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() && b != o.terms_.end()) {
    int c = compare(a->mono, b->mono);
    if (c > 0) {
      r.terms_.push_back(*a++);
    } else if (c < 0) {
      r.terms_.push_back(*b++);
    } else {
      Rational s = a->coeff + b->coeff;
      if (s != 0) r.terms_.push_back({a->mono, std::move(s)});
      ++a;
      ++b;
    }
  }
  r.terms_.insert(r.terms_.end(), a, terms_.end());
  r.terms_.insert(r.terms_.end(), b, o.terms_.end());
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
  if (is_zero() || o.is_zero()) return MPoly();
  if (o.terms_.size() == 1) return times_monomial(o.terms_[0].mono, o.terms_[0].coeff);
  if (terms_.size() == 1) return o.times_monomial(terms_[0].mono, terms_[0].coeff);
  std::vector<Term> out;
  out.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) out.push_back({a.mono * b.mono, a.coeff * b.coeff});
  }
  return from_terms(std::move(out));
}

MPoly MPoly::scaled(const Rational& r) const {
  if (r == 0) return MPoly();
  MPoly p = *this;
  for (auto& t : p.terms_) t.coeff *= r;
  return p;
}

MPoly MPoly::times_monomial(const Monomial& m, const Rational& r) const {
  if (r == 0) return MPoly();
  MPoly p;
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) p.terms_.push_back({t.mono * m, t.coeff * r});
  return p;
}

std::optional<MPoly> MPoly::try_div(const MPoly& divisor) const {
  if (divisor.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (divisor.is_constant()) return scaled(1 / divisor.constant_value());
  MPoly rem = *this;
  std::vector<Term> quot;
  const auto& lm = divisor.leading_monomial();
  const auto& lc = divisor.leading_coeff();
  while (!rem.is_zero()) {
    auto q = rem.leading_monomial().divide(lm);
    if (!q) return std::nullopt;
    Rational c = rem.leading_coeff() / lc;
    rem = rem - divisor.times_monomial(*q, c);
    quot.push_back({std::move(*q), std::move(c)});
  }
  return from_terms(std::move(quot));
}

MPoly MPoly::exact_div(const MPoly& divisor) const {
  auto q = try_div(divisor);
  if (!q) throw Error("inexact polynomial division");
  return *q;
}

std::vector<MPoly> MPoly::coefficients_in(std::uint32_t var) const {
  std::vector<std::vector<Term>> buckets(degree_in(var) + 1);
  for (const auto& t : terms_) buckets[t.mono.exponent(var)].push_back({t.mono.without(var), t.coeff});
  std::vector<MPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
  return out;
}

MPoly MPoly::from_coefficients(std::uint32_t var, const std::vector<MPoly>& coeffs) {
  MPoly r;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    r = r + coeffs[k].times_monomial(Monomial::variable(var, static_cast<std::uint32_t>(k)), 1);
  }
  return r;
}

MPoly MPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(1 / leading_coeff());
}

bool operator==(const MPoly& a, const MPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) {
      return false;
    }
  }
  return true;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

namespace {

std::string monomial_string(const Monomial& m) {
  std::string s;
  for (const auto& [v, e] : m.factors()) {
    if (!s.empty()) s += "*";
    s += SymbolTable::name(v);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

}  // namespace

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : terms_) {
    bool neg = t.coeff < 0;
    Rational mag = neg ? Rational(-t.coeff) : t.coeff;
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    first = false;
    if (t.mono.is_one()) {
      s += qbrst::to_string(mag);
    } else if (mag == 1) {
      s += monomial_string(t.mono);
    } else {
      s += qbrst::to_string(mag) + "*" + monomial_string(t.mono);
    }
  }
  return s;
}

// --------------------------------------------------------------------- gcd

namespace {

// Scales p to integer coefficients with unit content and positive leading
// coefficient. Only the ideal generated by p matters to the gcd.
MPoly integer_primitive(const MPoly& p) {
  if (p.is_zero()) return p;
  mpz_class lcm_den = 1;
  mpz_class gcd_num = 0;
  for (const auto& t : p.terms()) {
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), t.coeff.get_den_mpz_t());
    mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), t.coeff.get_num_mpz_t());
  }
  Rational scale(lcm_den, gcd_num);
  scale.canonicalize();
  if (p.leading_coeff() < 0) scale = -scale;
  return p.scaled(scale);
}

MPoly content_in(const MPoly& p, std::uint32_t var) {
  MPoly g;
  for (const auto& c : p.coefficients_in(var)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

// Exact pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b, in var.
MPoly pseudo_remainder(const MPoly& a, const MPoly& b, std::uint32_t var) {
  const auto n = b.degree_in(var);
  const MPoly lcb = b.coefficients_in(var).back();
  MPoly r = a;
  int e = static_cast<int>(a.degree_in(var)) - static_cast<int>(n) + 1;
  while (!r.is_zero() && r.degree_in(var) >= n) {
    auto dr = r.degree_in(var);
    MPoly lcr = r.coefficients_in(var).back();
    r = lcb * r - lcr.times_monomial(Monomial::variable(var, dr - n), 1) * b;
    --e;
  }
  for (; e > 0; --e) r = r * lcb;
  return r;
}

using UPoly = std::vector<Rational>;  // index = degree, no trailing zeros

void trim(UPoly& u) {
  while (!u.empty() && u.back() == 0) u.pop_back();
}

// Image of p in Q[var] with every other variable bound to a point value.
UPoly image(const MPoly& p, std::uint32_t var, const std::vector<Rational>& point) {
  UPoly u(p.degree_in(var) + 1);
  for (const auto& t : p.terms()) {
    Rational c = t.coeff;
    std::uint32_t d = 0;
    for (const auto& [v, e] : t.mono.factors()) {
      if (v == var) {
        d = e;
        continue;
      }
      Rational x = v < point.size() ? point[v] : Rational(1);
      for (std::uint32_t i = 0; i < e; ++i) c *= x;
    }
    u[d] += c;
  }
  trim(u);
  return u;
}

std::size_t univariate_gcd_degree(UPoly a, UPoly b) {
  while (!b.empty()) {
    while (a.size() >= b.size()) {
      Rational q = a.back() / b.back();
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= q * b[i];
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

// True when the gcd provably does not involve var: the images keep their
// degree in var at some point and are coprime there.
bool gcd_free_of(const MPoly& a, const MPoly& b, std::uint32_t var, std::uint32_t nvars) {
  const auto da = a.degree_in(var);
  const auto db = b.degree_in(var);
  if (da == 0 || db == 0) return true;
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::vector<Rational> point(nvars);
    for (std::uint32_t v = 0; v < nvars; ++v) point[v] = Rational(3 + 2 * v + 7 * attempt + v * v * attempt);
    UPoly ia = image(a, var, point);
    UPoly ib = image(b, var, point);
    if (ia.size() != da + 1 || ib.size() != db + 1) continue;
    return univariate_gcd_degree(std::move(ia), std::move(ib)) == 0;
  }
  return false;
}

std::vector<std::uint32_t> variables_of(const MPoly& p, const MPoly& q) {
  std::vector<std::uint32_t> vars;
  for (const auto* poly : {&p, &q}) {
    for (const auto& t : poly->terms()) {
      for (const auto& [v, e] : t.mono.factors()) vars.push_back(v);
    }
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

MPoly power(const MPoly& p, std::uint32_t k) {
  MPoly r(1);
  for (std::uint32_t i = 0; i < k; ++i) r = r * p;
  return r;
}

}  // namespace

MPoly gcd(const MPoly& a, const MPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return MPoly(1);
  if (a == b) return a.monic();
  if (a.try_div(b)) return b.monic();
  if (b.try_div(a)) return a.monic();

  // Drop variables the gcd cannot involve.
  const auto vars = variables_of(a, b);
  const std::uint32_t nvars = vars.back() + 1;
  for (auto v : vars) {
    if (gcd_free_of(a, b, v, nvars)) {
      MPoly ca = a.degree_in(v) == 0 ? a : content_in(a, v);
      MPoly cb = b.degree_in(v) == 0 ? b : content_in(b, v);
      return gcd(ca, cb);
    }
  }

  std::uint32_t var = vars.front();
  for (auto v : vars) {
    if (std::max(a.degree_in(v), b.degree_in(v)) < std::max(a.degree_in(var), b.degree_in(var))) {
      var = v;
    }
  }

  MPoly ca = content_in(a, var);
  MPoly cb = content_in(b, var);
  MPoly cont = gcd(ca, cb);
  MPoly pa = integer_primitive(a.exact_div(ca));
  MPoly pb = integer_primitive(b.exact_div(cb));
  if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);
  // Subresultant remainder sequence; every division below is exact.
  MPoly g(1);
  MPoly h(1);
  while (true) {
    const auto delta = pa.degree_in(var) - pb.degree_in(var);
    MPoly r = pseudo_remainder(pa, pb, var);
    if (r.is_zero()) break;
    if (r.degree_in(var) == 0) {
      pb = MPoly(1);
      break;
    }
    pa = std::move(pb);
    pb = integer_primitive(r.exact_div(g * power(h, delta)));
    g = pa.coefficients_in(var).back();
    if (delta > 0) h = power(g, delta).exact_div(power(h, delta - 1));
  }
  return (cont * pb.exact_div(content_in(pb, var))).monic();
}

}  // namespace qbrst
