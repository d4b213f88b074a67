#pragma once

// Physical-state conditions on the ghost Fock space of three constraints.
//
// |Phi> = psi0 + c^i psi_i + sum_{i<j} c^i c^j psi_ij + c^1 c^2 c^3 psi_123,
// every anti-ghost annihilating every component.

#include <map>
#include <string>
#include <vector>

#include "qbrst/brst.hpp"
#include "qbrst/oracle.hpp"

namespace qbrst {

struct FockEquation {
  /// Ghost basis monomial such as "1", "c1", "c1*c3".
  std::string monomial;
  int ghost_number = 0;
  /// Constraint words applied to component states; each word ends in a psi.
  Poly value;
};

struct FockExpansion {
  /// Component names in basis order: psi0, psi1, psi2, psi3, psi12, psi13,
  /// psi23, psi123.
  std::vector<std::string> components;
  /// Basis monomials in the same order.
  std::vector<std::string> monomials;
  /// Constraints followed by the components.
  AlphabetPtr module_alphabet;
  /// Coefficient of every basis monomial in Q|Phi>; zero ones omitted.
  std::vector<FockEquation> equations;

  const FockEquation* find(const std::string& monomial) const;
};

/// Expands Q|Phi> by reduction in the ghost presentation extended with the
/// vacuum rules b_i psi = 0. Requires three constraints commuting with the
/// ghosts and an 8-dimensional ghost sector.
FockExpansion fock_expand(const BrstCharge& q, const GhostNames& names,
                          const ReduceOptions& opts = {});

/// The same expansion computed with ghost matrices acting on the 8 states
/// built from the vacuum (state 0), for cross-checking.
FockExpansion fock_expand_matrix(const BrstCharge& q, const GhostNames& names,
                                 const std::map<std::string, Matrix>& ghost_matrices);

}  // namespace qbrst
