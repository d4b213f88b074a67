#pragma once

// JSON documents for presentations (.alg), tensors (.tensor) and basis
// changes (.map). Expressions inside documents use the parse grammar.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbrst/ncpoly.hpp"
#include "qbrst/ybtensor.hpp"

namespace qbrst {

struct RelationText {
  std::string lhs;
  std::string rhs;
  friend bool operator==(const RelationText&, const RelationText&) = default;
};

/// Tensor T^{AB}_{CD} on top of a base (zero, identity or permutation).
struct TensorSpec {
  std::size_t dim = 0;
  std::string base = "zero";
  /// Parameter symbols of a standalone tensor document; empty inside an algebra.
  std::vector<std::string> parameters;
  struct Component {
    std::size_t upper[2];
    std::size_t lower[2];
    std::string value;
  };
  std::vector<Component> components;
};

struct AlgebraSpec {
  std::string label;
  std::string tag;
  std::vector<std::string> parameters;
  std::vector<GeneratorInfo> generators;
  std::vector<RelationText> relations;
  /// Names pairing constraints with ghosts; empty when absent.
  std::vector<std::string> constraints;
  std::vector<std::string> ghosts;
  std::vector<std::string> antighosts;
  /// Quantum-space matrix on V_{N+1} and the value of chi_0.
  std::optional<TensorSpec> r_matrix;
  std::optional<std::string> chi0;
  /// Named charges over the generators, in document order.
  std::vector<std::pair<std::string, std::string>> charges;

  ParameterSet parameter_set() const { return ParameterSet(parameters); }
  AlphabetPtr alphabet() const;
  /// Orients lhs - rhs = 0 for all relations jointly (linear_orient).
  Presentation presentation() const;
};

/// Relations lhs_i = rhs_i over the given generators, jointly oriented.
Presentation presentation_from_text(const std::vector<GeneratorInfo>& generators,
                                    const ParameterSet& parameters,
                                    const std::vector<RelationText>& relations,
                                    const std::string& label = {});

/// Document form of p; relations are written lhs = rhs in oriented form.
AlgebraSpec describe_presentation(const Presentation& p, const std::string& tag = {});

AlgebraSpec parse_algebra_spec(const std::string& json_text);
std::string dump_algebra_spec(const AlgebraSpec& spec);
AlgebraSpec load_algebra_spec(const std::string& path);

TensorSpec parse_tensor_spec(const std::string& json_text);
std::string dump_tensor_spec(const TensorSpec& spec);
TensorSpec load_tensor_spec(const std::string& path);
TensorSquareOp build_tensor(const TensorSpec& spec, const ParameterSet& parameters);
/// Sparse description of t relative to a zero base.
TensorSpec describe_tensor(const TensorSquareOp& t);

struct MapSpec {
  std::string label;
  /// Paths relative to the map file.
  std::string source;
  std::string target;
  /// target generator -> expression over source generators
  std::map<std::string, std::string> to_source;
  /// source generator -> expression over target generators
  std::map<std::string, std::string> to_target;
};

MapSpec parse_map_spec(const std::string& json_text);
std::string dump_map_spec(const MapSpec& spec);
MapSpec load_map_spec(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace qbrst
