#pragma once

// Ready-made algebras used by the demos and tests.
//
// The J, T, W family: [J, W] = a1 T + a2 J^2, [J, T] = 0, [T, W] = a3 J T.
// Ghost names: cJ, cT, cW and bJ, bT, bW.

#include "qbrst/basis.hpp"
#include "qbrst/brst.hpp"

namespace qbrst::models {

/// sigma = P + u with u^{11}_{13} = -u^{11}_{31} = u^{12}_{23} = -u^{21}_{32}
/// = alpha; C^2_{13} = -C^2_{31} = 1.
StructureData three_generator_qla(const Scalar& alpha);
/// sigma = P, C^k_{ij} = epsilon_{ijk}.
StructureData su2_qla();
/// sigma = P, C = 0.
StructureData abelian(std::size_t n);

/// [chi1, chi2] = 0, [chi1, chi3] = alpha chi1^2 + chi0 chi2,
/// [chi2, chi3] = alpha chi1 chi2, with chi0 a scalar.
Presentation chi_algebra(const Scalar& alpha, const Scalar& chi0);
/// chi2 -> chi2 + gamma chi1^2 with gamma = alpha / (2 chi0); the new
/// generator keeps the name chi2.
BasisChange chi_gamma_change(const Scalar& alpha, const Scalar& chi0);

GhostNames jtw_names();
ParameterSet jtw_parameters();

struct JtwParameters {
  Scalar a1 = Scalar::parameter("a1");
  Scalar a2 = Scalar::parameter("a2");
  Scalar a3 = Scalar::parameter("a3");
};

Presentation jtw_algebra(const JtwParameters& p = {});
/// The family with canonical ghosts commuting with J, T, W.
Presentation jtw_canonical(const JtwParameters& p = {});
/// The family with the modified ghosts cJ, cT, cW (and the canonical bJ,
/// bT, bW) and their quadratic relations.
Presentation jtw_modified(const JtwParameters& p = {});

/// cJ J + cT T + cW W - a1 cJ cW bT - a3 T cT cW bJ + a2 J cW cJ bJ.
Poly jtw_charge(const Presentation& canonical, const JtwParameters& p = {});
/// cJ J + cT T + cW W - a1 cJ cW bT over the modified ghosts.
Poly jtw_modified_charge(const Presentation& modified, const JtwParameters& p = {});

/// Canonical ghosts -> modified ghosts.
BasisChange jtw_ghost_change(const JtwParameters& p = {});
/// Canonical ghosts -> modified ghosts and bT' = bT + a3 cW bJ bT, with
/// target the three-generator QLA ghost algebra (chi_0 = a1, alpha = a2 = a3)
/// written in J, T, W names.
BasisChange jtw_qla_change(const Scalar& alpha, const Scalar& c);

/// Tc = T + beta J^2 (target generators J, Tc, W).
BasisChange jtw_t_change(const Scalar& beta, const JtwParameters& p = {});
/// (2 a2 - a3) / (2 a1).
Scalar quadratic_beta(const JtwParameters& p = {});
/// (a1, a3 / 2, 2 a2).
JtwParameters tilde(const JtwParameters& p);
/// The charge of the second face written in J, T, W with Tc = T + beta J^2
/// and tilde coefficients `q`.
Poly jtw_second_charge(const Presentation& canonical, const Scalar& beta,
                       const JtwParameters& q);

}  // namespace qbrst::models
