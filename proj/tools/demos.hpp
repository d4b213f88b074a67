#pragma once

// End-to-end pipelines for the two worked families. Each check carries the
// acceptance criterion it establishes.

#include <vector>

#include "report.hpp"

namespace qbrst::cli {

/// Three-generator quantum Lie algebra: braid relation, axioms, ghost
/// algebra, charge, X tensors, Fock conditions, confluence.
std::vector<Check> demo_s4();

/// J, T, W family with canonical ghosts: charge, deformation, ghost and
/// anti-ghost redefinitions, confluence.
std::vector<Check> demo_s5();

/// Second quadratic face: generator redefinition, double complex, involution.
std::vector<Check> demo_s5_double();

}  // namespace qbrst::cli
