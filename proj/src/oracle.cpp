#include "qbrst/oracle.hpp"

#include <bit>

#include "qbrst/error.hpp"

namespace qbrst {

namespace {

/// Jordan-Wigner sign of mode k in `state`.
int jw_sign(std::size_t state, std::size_t k) {
  return std::popcount(state & ((std::size_t{1} << k) - 1)) % 2 == 0 ? 1 : -1;
}

}  // namespace

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (n_ != o.n_) throw InvalidInput("matrix size mismatch");
  Matrix r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (n_ != o.n_) throw InvalidInput("matrix size mismatch");
  Matrix r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (n_ != o.n_) throw InvalidInput("matrix size mismatch");
  Matrix r(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < n_; ++k) {
      const Scalar& x = (*this)(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        const Scalar& y = o(k, j);
        if (!y.is_zero()) r(i, j) += x * y;
      }
    }
  }
  return r;
}

Matrix Matrix::operator*(const Scalar& s) const {
  Matrix r = *this;
  for (auto& x : r.a_) x *= s;
  return r;
}

bool Matrix::is_zero() const {
  for (const auto& x : a_) {
    if (!x.is_zero()) return false;
  }
  return true;
}

Matrix Matrix::inverse() const {
  Matrix a = *this;
  Matrix inv = identity(n_);
  for (std::size_t col = 0; col < n_; ++col) {
    std::size_t p = col;
    while (p < n_ && a(p, col).is_zero()) ++p;
    if (p == n_) throw DivisionByZero("singular matrix");
    for (std::size_t j = 0; j < n_; ++j) {
      std::swap(a(p, j), a(col, j));
      std::swap(inv(p, j), inv(col, j));
    }
    Scalar s = a(col, col).inverse();
    for (std::size_t j = 0; j < n_; ++j) {
      a(col, j) *= s;
      inv(col, j) *= s;
    }
    for (std::size_t r = 0; r < n_; ++r) {
      if (r == col || a(r, col).is_zero()) continue;
      Scalar f = a(r, col);
      for (std::size_t j = 0; j < n_; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

std::vector<Scalar> Matrix::apply(const std::vector<Scalar>& v) const {
  if (v.size() != n_) throw InvalidInput("vector size mismatch");
  std::vector<Scalar> r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      if (!(*this)(i, j).is_zero() && !v[j].is_zero()) r[i] += (*this)(i, j) * v[j];
    }
  return r;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  std::size_t m = b.size();
  Matrix r(a.size() * m);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) {
          if (!b(k, l).is_zero()) r(i * m + k, j * m + l) = a(i, j) * b(k, l);
        }
    }
  return r;
}

CarMatrices car_matrices(std::size_t modes) {
  std::size_t n = std::size_t{1} << modes;
  CarMatrices out;
  for (std::size_t k = 0; k < modes; ++k) {
    Matrix c(n), b(n);
    std::size_t bit = std::size_t{1} << k;
    for (std::size_t s = 0; s < n; ++s) {
      if (s & bit) continue;
      c(s | bit, s) = Scalar(jw_sign(s, k));
      b(s, s | bit) = Scalar(jw_sign(s, k));
    }
    out.c.push_back(std::move(c));
    out.b.push_back(std::move(b));
  }
  return out;
}

Matrix evaluate_left(const Poly& p, const std::map<std::string, Matrix>& letters) {
  if (letters.empty()) throw InvalidInput("no letter matrices");
  std::size_t n = letters.begin()->second.size();
  Matrix out(n);
  for (const auto& [w, c] : p.terms()) {
    Matrix prod = Matrix::identity(n) * c;
    for (auto l : w) {
      const std::string& name = p.alphabet()->info(l).name;
      auto it = letters.find(name);
      if (it == letters.end()) throw InvalidInput("no matrix for generator '" + name + "'");
      prod = prod * it->second;
    }
    out = out + prod;
  }
  return out;
}

std::map<std::string, Matrix> canonical_ghost_matrices(const GhostNames& names) {
  CarMatrices car = car_matrices(names.size());
  std::map<std::string, Matrix> out;
  for (std::size_t k = 0; k < names.size(); ++k) {
    out.emplace(names.ghosts[k], car.c[k]);
    out.emplace(names.antighosts[k], car.b[k]);
  }
  return out;
}

std::map<std::string, Matrix> transported_ghost_matrices(const BasisChange& bc,
                                                         const GhostNames& names) {
  auto canonical = canonical_ghost_matrices(names);
  std::map<std::string, Matrix> out;
  for (const auto& gi : bc.target_alphabet->generators()) {
    if (gi.ghost_number == 0) continue;
    auto it = bc.to_source.find(gi.name);
    Poly image = it != bc.to_source.end() ? it->second
                                          : Poly::generator(bc.source.alphabet(), gi.name);
    out.emplace(gi.name, evaluate_left(image, canonical));
  }
  return out;
}

OracleRepresentation::OracleRepresentation(Rational a1, Rational a2, Rational a3, std::size_t d)
    : a1_(std::move(a1)), a2_(std::move(a2)), a3_(std::move(a3)), d_(d), car_(car_matrices(3)) {
  if (d < 3) throw InvalidInput("oracle truncation degree must be >= 3");
  for (std::size_t t = 0; t <= d; ++t)
    for (std::size_t i = 0; i <= t; ++i) monomials_.emplace_back(i, t - i);
}

std::size_t OracleRepresentation::index(std::size_t i, std::size_t j) const {
  std::size_t t = i + j;
  return t * (t + 1) / 2 + i;
}

void OracleRepresentation::act(const std::string& letter, Vector& v) const {
  Vector out;
  auto add = [&](std::size_t i, std::size_t j, std::size_t ghost, const Rational& c) {
    if (i + j > d_ || c == 0) return;
    auto& slot = out[index(i, j) * 8 + ghost];
    slot += c;
    if (slot == 0) out.erase(index(i, j) * 8 + ghost);
  };
  static const std::map<std::string, std::pair<bool, std::size_t>> ghost_letters = {
      {"cJ", {true, 0}},  {"cT", {true, 1}},  {"cW", {true, 2}},
      {"bJ", {false, 0}}, {"bT", {false, 1}}, {"bW", {false, 2}}};
  for (const auto& [s, c] : v) {
    auto [i, j] = monomials_[s / 8];
    std::size_t g = s % 8;
    if (letter == "J") {
      add(i + 1, j, g, c);
    } else if (letter == "T") {
      add(i, j + 1, g, c);
    } else if (letter == "W") {
      if (i > 0) {
        add(i - 1, j + 1, g, c * a1_ * Rational(static_cast<long>(i)));
        add(i + 1, j, g, c * a2_ * Rational(static_cast<long>(i)));
      }
      if (j > 0) add(i + 1, j, g, c * a3_ * Rational(static_cast<long>(j)));
    } else {
      auto it = ghost_letters.find(letter);
      if (it == ghost_letters.end()) {
        throw InvalidInput("oracle has no generator '" + letter + "'");
      }
      auto [create, k] = it->second;
      std::size_t bit = std::size_t{1} << k;
      bool filled = (g & bit) != 0;
      if (create == filled) continue;
      add(i, j, g ^ bit, c * Rational(jw_sign(g, k)));
    }
  }
  v = std::move(out);
}

std::vector<OracleRepresentation::Column> OracleRepresentation::evaluate(const Poly& p) const {
  Bindings at{{"a1", Scalar(a1_)}, {"a2", Scalar(a2_)}, {"a3", Scalar(a3_)}};
  std::size_t m = 0;
  std::vector<std::pair<std::vector<std::string>, Rational>> terms;
  for (const auto& [w, c] : p.terms()) {
    Scalar v = c.substitute(at);
    if (!v.is_rational()) {
      throw InvalidInput("oracle coefficient is not rational: " + v.to_string());
    }
    std::vector<std::string> letters;
    std::size_t deg = 0;
    for (auto l : w) {
      const std::string& name = p.alphabet()->info(l).name;
      if (name == "J" || name == "T" || name == "W") ++deg;
      letters.push_back(name);
    }
    m = std::max(m, deg);
    if (!v.is_zero()) terms.emplace_back(std::move(letters), v.rational_value());
  }
  if (m > d_) throw InvalidInput("oracle truncation below constraint degree");
  std::vector<Column> out;
  for (std::size_t t = 0; t + m <= d_; ++t) {
    for (std::size_t i = 0; i <= t; ++i) {
      for (std::size_t g = 0; g < 8; ++g) {
        Column col;
        for (const auto& [letters, c] : terms) {
          Vector v{{index(i, t - i) * 8 + g, c}};
          for (const auto& l : letters) {
            act(l, v);
            if (v.empty()) break;
          }
          for (const auto& [s, x] : v) {
            auto& slot = col[s];
            slot += x;
            if (slot == 0) col.erase(s);
          }
        }
        out.push_back(std::move(col));
      }
    }
  }
  return out;
}

bool OracleRepresentation::vanishes(const Poly& p) const {
  for (const auto& col : evaluate(p)) {
    if (!col.empty()) return false;
  }
  return true;
}

OracleRepresentation oracle_representation(const Rational& a1, const Rational& a2,
                                           const Rational& a3, std::size_t d) {
  return OracleRepresentation(a1, a2, a3, d);
}

}  // namespace qbrst
