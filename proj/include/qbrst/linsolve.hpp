#pragma once

// Exact sparse linear systems over Scalar.

#include <cstddef>
#include <map>
#include <vector>

#include "qbrst/coeff.hpp"
#include "qbrst/ncpoly.hpp"

namespace qbrst {

using SparseRow = std::map<std::size_t, Scalar>;

struct LinearSolution {
  bool consistent = true;
  /// Free unknowns set to zero.
  std::vector<Scalar> particular;
  /// One vector per free unknown.
  std::vector<std::vector<Scalar>> kernel;
  std::vector<std::size_t> free_columns;
};

/// Solves rows * x = rhs for `unknowns` unknowns. Columns are eliminated in
/// the order given by `column_priority` (earlier = preferred pivot); an
/// empty priority means 0, 1, 2, ...
LinearSolution solve_linear(std::vector<SparseRow> rows, std::vector<Scalar> rhs,
                            std::size_t unknowns,
                            const std::vector<std::size_t>& column_priority = {});

enum class PivotPreference {
  LargestWord,
  SmallestWord,
  /// Degree first, then words compared from the right end.
  SmallestReversedWord,
};

/// Solves sum_w x_w images[w] = target for coefficients of `words`
/// (sorted ascending). Free coefficients are zero.
LinearSolution fit_words(const std::vector<Word>& words, const std::vector<Poly>& images,
                         const Poly& target, PivotPreference preference);

/// sum_i x_i words_i.
Poly combine_words(const AlphabetPtr& alphabet, const std::vector<Word>& words,
                   const std::vector<Scalar>& x);

}  // namespace qbrst
