#pragma once

// Independent matrix realizations used to cross-check the rewriting engine.

#include <map>
#include <string>
#include <vector>

#include "qbrst/basis.hpp"
#include "qbrst/brst.hpp"

namespace qbrst {

/// Dense square matrix over Scalar.
class Matrix {
 public:
  explicit Matrix(std::size_t n = 0) : n_(n), a_(n * n) {}
  static Matrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator*(const Scalar& s) const;
  bool is_zero() const;
  friend bool operator==(const Matrix& x, const Matrix& y) { return (x - y).is_zero(); }

  /// Throws DivisionByZero when singular.
  Matrix inverse() const;
  std::vector<Scalar> apply(const std::vector<Scalar>& v) const;

 private:
  std::size_t n_;
  std::vector<Scalar> a_;
};

/// a (x) b with index i_a * size(b) + i_b.
Matrix kron(const Matrix& a, const Matrix& b);

/// Jordan-Wigner matrices on 2^modes states. Bit k of a state index is the
/// occupation of mode k; c[k] fills it, b[k] empties it; state 0 is the
/// vacuum. {b[i], c[j]} = delta, all other anticommutators vanish.
struct CarMatrices {
  std::vector<Matrix> c;
  std::vector<Matrix> b;
};
CarMatrices car_matrices(std::size_t modes);

/// Left representation: a word maps to the product of its letters' matrices
/// in written order. Every letter of `p` must be bound.
Matrix evaluate_left(const Poly& p, const std::map<std::string, Matrix>& letters);

/// Canonical CAR matrices bound to `names.ghosts` / `names.antighosts`.
std::map<std::string, Matrix> canonical_ghost_matrices(const GhostNames& names);

/// Matrices of the target ghosts of `bc`: each to_source image evaluated on
/// canonical CAR matrices bound to the source ghost names `names`.
std::map<std::string, Matrix> transported_ghost_matrices(const BasisChange& bc,
                                                         const GhostNames& names);

/// The J, T, W family acting on polynomials in commuting x, y of total
/// degree <= d, tensored with canonical ghosts on 8 states:
///   J = x, T = y, W = (a1 y + a2 x^2) d/dx + a3 x y d/dy.
/// Letters of a word act in written order (the first letter acts first), so
/// the map reverses products. Generator names: J, T, W, cJ, cT, cW, bJ, bT, bW.
class OracleRepresentation {
 public:
  OracleRepresentation(Rational a1, Rational a2, Rational a3, std::size_t d);

  std::size_t truncation() const { return d_; }
  /// Number of (monomial, ghost state) basis vectors.
  std::size_t dimension() const { return monomials_.size() * 8; }
  const CarMatrices& ghosts() const { return car_; }

  /// Sparse columns of p on the interior: input states whose polynomial
  /// degree is <= d - m, where m is the largest constraint degree of a word
  /// of p. Parameters a1, a2, a3 take the representation's values; any
  /// other parameter throws InvalidInput.
  using Column = std::map<std::size_t, Rational>;
  std::vector<Column> evaluate(const Poly& p) const;
  bool vanishes(const Poly& p) const;

 private:
  using Vector = std::map<std::size_t, Rational>;
  std::size_t index(std::size_t i, std::size_t j) const;
  void act(const std::string& letter, Vector& v) const;

  Rational a1_, a2_, a3_;
  std::size_t d_;
  /// (x power, y power) per monomial index.
  std::vector<std::pair<std::size_t, std::size_t>> monomials_;
  CarMatrices car_;
};

OracleRepresentation oracle_representation(const Rational& a1, const Rational& a2,
                                           const Rational& a3, std::size_t d);

}  // namespace qbrst
