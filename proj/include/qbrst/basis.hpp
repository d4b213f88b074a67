#pragma once

// Nonlinear changes of generators and the presentations they induce.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qbrst/ncpoly.hpp"
#include "qbrst/rewrite.hpp"

namespace qbrst {

/// New generators (target) expressed through old ones (source) and back.
/// Generators absent from a map are sent to the generator of the same name.
struct BasisChange {
  Presentation source;
  AlphabetPtr target_alphabet;
  /// Relations among the new generators, when known.
  std::optional<Presentation> target;
  /// target generator -> Poly over the source alphabet
  std::map<std::string, Poly> to_source;
  /// source generator -> Poly over the target alphabet
  std::map<std::string, Poly> to_target;

  /// Image of a target-alphabet Poly in the source algebra, reduced.
  Poly into_source(const Poly& p) const;
  /// Image of a source-alphabet Poly over the target alphabet, reduced in
  /// the target when its relations are known.
  Poly into_target(const Poly& p) const;
};

/// Builds a change from expression text; target relations optional.
BasisChange basis_change_from_text(const Presentation& source, AlphabetPtr target_alphabet,
                                   std::optional<Presentation> target,
                                   const std::map<std::string, std::string>& to_source,
                                   const std::map<std::string, std::string>& to_target);

struct CertificateReport {
  bool passed = true;
  /// "generator: composite normal form" for every failure.
  std::vector<std::string> failures;
};

/// to_source(to_target(s)) = s for every source generator, reduced in the
/// source; and to_target(to_source(g)) = g reduced in the target when the
/// target relations are known.
CertificateReport check_certificate(const BasisChange& bc);

/// Substitutes to_target and reduces in the target presentation. Throws
/// InvalidInput when the certificate fails or the target is unknown.
Poly apply_basis_change(const Poly& p, const BasisChange& bc);

/// Every target-generator bracket expressed through target-generator words.
struct DerivedBracket {
  std::string left;
  std::string right;
  BracketKind kind = BracketKind::Commutator;
  /// Over the target alphabet; combination of the smallest possible words.
  Poly value;
  std::size_t degree = 0;
};

struct DerivedPresentation {
  Presentation presentation;
  std::vector<DerivedBracket> brackets;
  /// Highest word degree appearing in any bracket value.
  std::size_t closure_degree = 0;

  const DerivedBracket& bracket(const std::string& left, const std::string& right) const;
};

/// Recomputes all pairwise (anti)commutators of the new generators in the
/// source algebra and re-expresses them through ordered words (letters
/// non-decreasing, odd letters not repeated) of degree <= max_degree in the
/// new generators. Throws InvalidInput carrying the
/// residual when no such expression exists.
DerivedPresentation derived_presentation(const BasisChange& bc, std::size_t max_degree = 3);

/// Canonical form of the linear span of relations `p = 0`, for comparing
/// two relation sets over one alphabet.
std::vector<RewriteRule> normalized_relations(const std::vector<Poly>& relations);
std::vector<Poly> relation_polys(const Presentation& p);
bool same_relations(const Presentation& a, const Presentation& b);

/// Presentation with parameters specialised and relations re-oriented.
Presentation substitute(const Presentation& p, const Bindings& bindings);
/// Same relations over a renamed alphabet (old name -> new name).
Presentation rename(const Presentation& p, const std::map<std::string, std::string>& names);

}  // namespace qbrst
