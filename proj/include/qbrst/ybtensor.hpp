#pragma once

// Exact tensors on V⊗V and V⊗...⊗V for a (N+1)-dimensional V with basis
// index 0..N. Index 0 is the distinguished direction; 1..N carry the
// constraint indices.
//
// Composition convention: in a product X*Y the left factor acts first. X
// maps lower indices to upper ones, so
//
//   (X*Y)^{up}_{low} = sum_mid X^{mid}_{low} Y^{up}_{mid}.
//
// This is the order in which the component form of R23 R12 R23 contracts.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qbrst/coeff.hpp"

namespace qbrst {

/// Dense (dim^2 x dim^2) operator with entries T^{AB}_{CD}.
class TensorSquareOp {
 public:
  TensorSquareOp() = default;
  explicit TensorSquareOp(std::size_t dim);
  static TensorSquareOp identity(std::size_t dim);
  /// P^{AB}_{CD} = delta^A_D delta^B_C.
  static TensorSquareOp permutation(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const Scalar& operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
    return e_[index(a, b, c, d)];
  }
  Scalar& operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    return e_[index(a, b, c, d)];
  }

  TensorSquareOp operator*(const TensorSquareOp& o) const;
  TensorSquareOp operator+(const TensorSquareOp& o) const;
  TensorSquareOp operator-(const TensorSquareOp& o) const;
  TensorSquareOp scaled(const Scalar& s) const;
  TensorSquareOp substitute(const Bindings& b) const;
  /// Exact inverse; throws InvalidInput when singular.
  TensorSquareOp inverse() const;
  std::size_t nonzeros() const;

  friend bool operator==(const TensorSquareOp& a, const TensorSquareOp& b);

 private:
  std::size_t index(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
    return ((a * dim_ + b) * dim_ + c) * dim_ + d;
  }
  std::size_t dim_ = 0;
  std::vector<Scalar> e_;
};

/// Sparse operator on V^{⊗m}. Row = lower multi-index, column = upper.
class TensorOp {
 public:
  using Row = std::map<std::size_t, Scalar>;

  TensorOp(std::size_t dim, std::size_t arity);
  static TensorOp identity(std::size_t dim, std::size_t arity);
  /// T acting on factors (pos, pos+1), 0-based, identity elsewhere.
  static TensorOp embed(const TensorSquareOp& t, std::size_t pos, std::size_t arity);

  std::size_t dim() const { return dim_; }
  std::size_t arity() const { return arity_; }
  std::size_t size() const { return rows_.size(); }
  Scalar get(std::size_t lower, std::size_t upper) const;
  void add(std::size_t lower, std::size_t upper, const Scalar& s);
  const Row& row(std::size_t lower) const { return rows_[lower]; }

  /// Flat index of a multi-index (first factor most significant).
  std::size_t flat(const std::vector<std::size_t>& idx) const;
  std::vector<std::size_t> unflat(std::size_t i) const;

  TensorOp operator*(const TensorOp& o) const;
  TensorOp operator+(const TensorOp& o) const;
  TensorOp operator-(const TensorOp& o) const;
  TensorOp scaled(const Scalar& s) const;

 private:
  std::size_t dim_;
  std::size_t arity_;
  std::vector<Row> rows_;
};

/// QLA structure constants, indices 0..n-1 standing for 1..n.
struct StructureData {
  std::size_t n = 0;
  /// sigma(i, j, k, l) = sigma^{ij}_{kl}
  TensorSquareOp sigma;
  /// c[(k * n + i) * n + j] = C^k_{ij}
  std::vector<Scalar> c;

  explicit StructureData(std::size_t n_ = 0);
  const Scalar& C(std::size_t k, std::size_t i, std::size_t j) const { return c[(k * n + i) * n + j]; }
  Scalar& C(std::size_t k, std::size_t i, std::size_t j) { return c[(k * n + i) * n + j]; }
  StructureData substitute(const Bindings& b) const;
};

/// One failing component: indices are printed 0-based for V_{N+1} tensors
/// and 1-based for structure-constant identities.
struct ComponentMismatch {
  std::vector<std::size_t> upper;
  std::vector<std::size_t> lower;
  Scalar lhs;
  Scalar rhs;
  std::string to_string() const;
};

struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t components = 0;
  std::size_t failures = 0;
  std::optional<ComponentMismatch> first_failure;
};

/// R23 R12 R23 = R12 R23 R12 over all (N+1)^6 components.
CheckResult ybe_check(const TensorSquareOp& r);

/// Yang-Baxter for F and both R/F compatibility equations.
std::vector<CheckResult> twist_check(const TensorSquareOp& r, const TensorSquareOp& f);

/// R^{ij}_{kl} = sigma, R^{0j}_{kl} = C^j_{kl}, R^{0A}_{B0} = R^{A0}_{0B} = delta.
TensorSquareOp assemble_R(const StructureData& s);
/// F^{ij}_{kl} = phi, F^{0A}_{B0} = F^{A0}_{0B} = delta.
TensorSquareOp assemble_F(const TensorSquareOp& phi);
/// Inverse of assemble_R; throws InvalidInput if R is not of that form.
StructureData structure_of(const TensorSquareOp& r);

/// Braid, Jacobi, the two sigma-C mixed identities, unitarity and
/// (1 + sigma) C = 0, each reported separately.
std::vector<CheckResult> qla_axioms(const StructureData& s);

/// The three braid-type relations between sigma and phi, and the
/// phi-C compatibility relation.
std::vector<CheckResult> twist_consistency(const StructureData& s, const TensorSquareOp& phi);

/// F * R * F^{-1}. Throws InvalidInput for singular F.
TensorSquareOp twisted(const TensorSquareOp& f, const TensorSquareOp& r);

/// Rank-r coefficients X^{j_1..j_r}_{i_1..i_{r+1}}, all indices in 0..n-1.
struct XTensors {
  std::size_t n = 0;
  std::size_t rank = 0;
  /// Flattened: upper multi-index major, then lower.
  std::vector<Scalar> x;

  XTensors() = default;
  XTensors(std::size_t n_, std::size_t rank_);
  const Scalar& at(const std::vector<std::size_t>& upper, const std::vector<std::size_t>& lower) const;
  Scalar& at(const std::vector<std::size_t>& upper, const std::vector<std::size_t>& lower);
  bool is_zero() const;

 private:
  std::size_t flat(const std::vector<std::size_t>& upper, const std::vector<std::size_t>& lower) const;
};

/// Closed alternating-product formula for F = R; R must have the special
/// (sigma, C) form. Returns ranks 1..r.
std::vector<XTensors> x_tensors_formula(const TensorSquareOp& r, std::size_t rank);

/// Combinatorial index helper: all multi-indices in [0, n)^len, first
/// factor most significant.
std::vector<std::vector<std::size_t>> multi_indices(std::size_t n, std::size_t len);

}  // namespace qbrst
