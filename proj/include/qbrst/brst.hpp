#pragma once

// Ghost-extended algebras, BRST charges and their verification.
//
// Generator precedence in every ghost-extended alphabet is
//   constraints < c^N < ... < c^1 < b_1 < ... < b_N
// so normal words read constraints, then ghosts, then anti-ghosts.

#include <optional>
#include <string>
#include <vector>

#include "qbrst/ncpoly.hpp"
#include "qbrst/rewrite.hpp"
#include "qbrst/ybtensor.hpp"

namespace qbrst {

/// Names of constraints, ghosts and anti-ghosts; equal lengths.
struct GhostNames {
  std::vector<std::string> constraints;
  std::vector<std::string> ghosts;
  std::vector<std::string> antighosts;

  /// chi1.., c1.., b1..
  static GhostNames indexed(std::size_t n);
  /// X -> cX, bX for every constraint name X.
  static GhostNames prefixed(const std::vector<std::string>& constraints);
  std::size_t size() const { return constraints.size(); }
};

enum class GhostMode { Canonical, Twisted };

/// Pairing {b_i, c^j} = D^j_i with D^i_j = delta; D^j_0 = 0 is implicit
/// since no b_0 is introduced.
struct GhostSystem {
  GhostNames names;
  GhostMode mode = GhostMode::Canonical;
  /// Only meaningful in Twisted mode.
  std::optional<TensorSquareOp> sigma;
  std::optional<TensorSquareOp> phi;
};

AlphabetPtr ghost_alphabet(const GhostNames& names,
                           const std::vector<GeneratorInfo>& extra_constraints = {});

/// Cross product of the quantum space of R with the ghost algebra twisted
/// by F. chi_0 is replaced by the scalar `chi0`; b_0 and c^0 are not
/// generators. Throws InvalidInput if a cross relation needs b_0.
Presentation omega_presentation(const TensorSquareOp& r, const TensorSquareOp& f,
                                const GhostNames& names, const Scalar& chi0,
                                const ParameterSet& parameters, std::string label = {});

/// Throws InvalidInput naming the failed relation when (sigma, phi) are
/// inconsistent. Canonical mode ignores phi for the ghost sector.
Presentation build_ghost_presentation(const StructureData& s, const TensorSquareOp& phi,
                                      GhostMode mode, const GhostNames& names,
                                      const Scalar& chi0, const ParameterSet& parameters);

/// Adds canonical ghosts commuting with the constraints of `constraints`.
/// Constraint generator names must match `names.constraints`.
Presentation with_canonical_ghosts(const Presentation& constraints, const GhostNames& names);

/// -1/2 c^j c^i phi^{km}_{ij} C^r_{km} b_r chi0, reduced.
Poly build_c0(const StructureData& s, const TensorSquareOp& phi, const Presentation& omega,
              const GhostNames& names, const Scalar& chi0);

enum class Provenance { Proposition, AnsatzSolver, Explicit };
std::string to_string(Provenance p);

struct BrstCharge {
  Poly q;
  Presentation presentation;
  Provenance provenance = Provenance::Explicit;
};

/// q = sum_i c^i chi_i + c0. Throws InvalidInput unless gh(c0) = 1.
BrstCharge build_Q(const Presentation& omega, const GhostNames& names, const Poly& c0,
                   Provenance provenance = Provenance::Proposition);

/// Normal form of q*q; zero iff nilpotent. StepLimitExceeded propagates.
Poly verify_nilpotent(const BrstCharge& q, const ReduceOptions& opts = {});

/// Number of anti-ghost letters of w.
std::size_t antighost_degree(const Alphabet& a, const Word& w);
/// Number of even letters of w.
std::size_t constraint_degree(const Alphabet& a, const Word& w);
/// Terms of p whose anti-ghost degree is k.
Poly antighost_part(const Poly& p, std::size_t k);

/// Outcome of solving one anti-ghost order.
struct OrderSolution {
  std::size_t order = 0;
  Poly correction;
  /// Independent closed additions at this order.
  std::vector<Poly> ambiguity;
  bool solved = true;
  /// Right-hand side that admits no solution.
  Poly obstruction;
};

struct AnsatzResult {
  bool nilpotent = false;
  BrstCharge charge;
  std::vector<OrderSolution> orders;
  /// Normal form of Q^2 after the last order.
  Poly residual;
  /// Anti-ghost-free additions d with {Q, d} = 0 (the mu-type family).
  std::vector<Poly> deformations;
};

struct AnsatzOptions {
  std::size_t max_antighost_degree = 3;
  /// Maximum number of constraint letters per candidate word.
  std::size_t max_constraint_degree = 1;
  bool compute_deformations = true;
  ReduceOptions reduce;
};

/// Starts from sum_i c^i chi_i and adds corrections order by order in the
/// anti-ghost degree; every correction is a combination of normal words.
AnsatzResult solve_brst_ansatz(const Presentation& omega, const GhostNames& names,
                               const AnsatzOptions& opts = {});

struct DoubleComplexReport {
  Poly q_squared;
  Poly qt_squared;
  /// Normal form of Q Qt + Qt Q.
  Poly anticommutator;
  bool passed() const {
    return q_squared.is_zero() && qt_squared.is_zero() && anticommutator.is_zero();
  }
};

/// Both charges must live over the same presentation.
DoubleComplexReport double_complex_check(const BrstCharge& q, const BrstCharge& qt,
                                         const ReduceOptions& opts = {});

/// t -> 1/t; throws DivisionByZero for t = 0.
Scalar involution(const Scalar& t);

enum class SolveStatus { Unique, NonUnique, NoSolution };
std::string to_string(SolveStatus s);

struct XTensorSolution {
  SolveStatus status = SolveStatus::Unique;
  /// Index r-1 holds the anti-ghost degree r part of c^0.
  std::vector<Poly> c0_parts;
  /// Coefficients of the normal-word gauge, rank 1..r.
  std::vector<XTensors> x;
};

/// Solves for c^0 in Q = c^i chi_i + c^0 in the algebra of (R, F), up to
/// anti-ghost degree `rank`.
XTensorSolution x_tensors_solve(const TensorSquareOp& r, const TensorSquareOp& f,
                                std::size_t rank, const Scalar& chi0 = Scalar(1));

enum class GhostTensorReading {
  /// c^{i_{k+1}} ... c^{i_1} read as the algebra product.
  Product,
  /// Read as an antisymmetric tensor: the product divided by (k+1)!.
  Wedge,
};

/// c^{i_{k+1}} ... c^{i_1} X b_{j_1} ... b_{j_k}, reduced in `omega`.
Poly c0_from_x(const XTensors& x, const Presentation& omega, const GhostNames& names,
               GhostTensorReading reading = GhostTensorReading::Wedge);

}  // namespace qbrst
