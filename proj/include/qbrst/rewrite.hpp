#pragma once

// Normal-ordering engine: oriented rewrite rules over words, reduction to
// normal form, and overlap (critical pair) analysis.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qbrst/ncpoly.hpp"

namespace qbrst {

/// Degree-then-lexicographic order on words, lexicographic by generator
/// precedence. Letters are already numbered in precedence order, so the
/// order needs no state of its own.
struct TermOrder {
  static int compare(const Word& a, const Word& b) { return compare_words(a, b); }
  static bool less(const Word& a, const Word& b) { return compare_words(a, b) < 0; }
};

struct RewriteRule {
  int id = 0;
  Word lhs;
  Poly rhs;
};

/// Builds a rule lhs -> rhs; throws OrientationError naming the first rhs
/// term that is not strictly below lhs.
RewriteRule orient(const Word& lhs, const Poly& rhs, int id = 0);

/// Solves a relation `p = 0` for its leading word.
RewriteRule orient_relation(const Poly& p, int id = 0);

/// Gaussian elimination on a list of relations `p = 0`, pivoting on the
/// largest word of each row. Returns one rule per independent relation with
/// fully reduced right-hand sides (no rhs word is another rule's lhs).
/// Throws InvalidInput if the relations are inconsistent (imply 1 = 0).
std::vector<RewriteRule> linear_orient(const std::vector<Poly>& relations);

enum class Strategy {
  /// Leftmost occurrence, lowest rule id on ties.
  Leftmost,
  /// Occurrence ending first; lowest rule id on ties.
  LeftmostInnermost,
  /// Leftmost occurrence, longest lhs first.
  LeftmostOutermost,
  /// Rightmost occurrence.
  Rightmost,
};

struct ReduceOptions {
  Strategy strategy = Strategy::Leftmost;
  std::size_t step_limit = 1'000'000;
};

struct ReductionReport {
  Poly normal_form;
  std::size_t steps = 0;
  /// rule id -> number of applications
  std::map<int, std::size_t> rules_fired;

  std::string to_string() const;
};

struct CriticalPair {
  Word word;
  int first_rule = 0;
  int second_rule = 0;
  /// One-step reductions at the two overlapping occurrences.
  Poly first;
  Poly second;
};

struct UnresolvedPair {
  CriticalPair pair;
  Poly first_normal;
  Poly second_normal;
};

struct ConfluenceReport {
  std::size_t pairs_checked = 0;
  std::vector<UnresolvedPair> unresolved;
  bool passed() const { return unresolved.empty(); }
};

class RewriteSystem {
 public:
  RewriteSystem() = default;
  RewriteSystem(AlphabetPtr alphabet, std::vector<RewriteRule> rules);
  /// Orients every relation of the presentation (lhs -> rhs as given).
  static RewriteSystem from_presentation(const Presentation& p);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  const std::vector<RewriteRule>& rules() const { return rules_; }

  ReductionReport reduce(const Poly& p, const ReduceOptions& opts = {}) const;
  Poly normal_form(const Poly& p, const ReduceOptions& opts = {}) const {
    return reduce(p, opts).normal_form;
  }
  bool is_normal(const Word& w) const;

  /// All ambiguities (overlaps and inclusions of rule lhs) whose word has
  /// degree <= max_degree.
  std::vector<CriticalPair> overlaps(std::size_t max_degree) const;
  ConfluenceReport confluence_check(std::size_t max_degree, const ReduceOptions& opts = {}) const;

 private:
  struct Match {
    std::size_t pos;
    const RewriteRule* rule;
  };
  bool find_match(const Word& w, Strategy s, Match& out) const;
  bool matches_at(const Word& w, std::size_t pos, const RewriteRule& r) const;
  Poly apply(const Word& w, std::size_t pos, const RewriteRule& r) const;

  AlphabetPtr alphabet_;
  std::vector<RewriteRule> rules_;
  /// first letter -> indices into rules_
  std::vector<std::vector<std::size_t>> by_first_;
};

}  // namespace qbrst
