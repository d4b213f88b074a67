#include "qbrst/specfile.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qbrst/error.hpp"
#include "qbrst/parse.hpp"
#include "qbrst/rewrite.hpp"

namespace qbrst {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string(what) + ": " + e.what());
  }
}

template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string(what) + ": " + e.what());
  }
}

std::vector<std::string> string_list(const json& j, const char* key) {
  if (!j.contains(key)) return {};
  return j.at(key).get<std::vector<std::string>>();
}

TensorSpec tensor_from_json(const json& j) {
  TensorSpec t;
  t.dim = j.at("dim").get<std::size_t>();
  t.base = j.value("base", std::string("zero"));
  t.parameters = string_list(j, "parameters");
  if (t.base != "zero" && t.base != "identity" && t.base != "permutation") {
    throw InvalidInput("tensor base must be zero, identity or permutation");
  }
  for (const auto& c : j.value("components", json::array())) {
    TensorSpec::Component comp{};
    auto up = c.at("upper").get<std::vector<std::size_t>>();
    auto lo = c.at("lower").get<std::vector<std::size_t>>();
    if (up.size() != 2 || lo.size() != 2) throw InvalidInput("tensor component needs 2+2 indices");
    comp.upper[0] = up[0];
    comp.upper[1] = up[1];
    comp.lower[0] = lo[0];
    comp.lower[1] = lo[1];
    const auto& v = c.at("value");
    comp.value = v.is_string() ? v.get<std::string>() : v.dump();
    t.components.push_back(std::move(comp));
  }
  return t;
}

ordered_json tensor_to_json(const TensorSpec& t) {
  ordered_json j;
  j["dim"] = t.dim;
  j["base"] = t.base;
  if (!t.parameters.empty()) j["parameters"] = t.parameters;
  j["components"] = ordered_json::array();
  for (const auto& c : t.components) {
    ordered_json e;
    e["upper"] = {c.upper[0], c.upper[1]};
    e["lower"] = {c.lower[0], c.lower[1]};
    e["value"] = c.value;
    j["components"].push_back(e);
  }
  return j;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ------------------------------------------------------------ algebra

AlphabetPtr AlgebraSpec::alphabet() const {
  parameter_set();  // registers parameter symbols in declared order
  return std::make_shared<const Alphabet>(generators);
}

Presentation presentation_from_text(const std::vector<GeneratorInfo>& generators,
                                    const ParameterSet& parameters,
                                    const std::vector<RelationText>& relations,
                                    const std::string& label) {
  auto alphabet = std::make_shared<const Alphabet>(generators);
  for (const auto& g : generators) {
    if (parameters.contains(g.name)) {
      throw InvalidInput("'" + g.name + "' is both a generator and a parameter");
    }
  }
  std::vector<Poly> polys;
  for (const auto& r : relations) {
    Poly p = parse_expression(r.lhs, alphabet, parameters) -
             parse_expression(r.rhs, alphabet, parameters);
    if (!p.is_zero()) polys.push_back(std::move(p));
  }
  std::vector<Relation> rels;
  for (auto& rule : linear_orient(polys)) rels.push_back({rule.lhs, rule.rhs});
  return Presentation(alphabet, parameters, std::move(rels), label);
}

Presentation AlgebraSpec::presentation() const {
  return presentation_from_text(generators, parameter_set(), relations, label);
}

AlgebraSpec describe_presentation(const Presentation& p, const std::string& tag) {
  AlgebraSpec s;
  s.label = p.label();
  s.tag = tag;
  s.parameters = p.parameters().names();
  s.generators = p.alphabet()->generators();
  for (const auto& r : p.relations()) {
    s.relations.push_back({p.alphabet()->render(r.lhs), r.rhs.is_zero() ? "0" : r.rhs.to_string()});
  }
  return s;
}

AlgebraSpec parse_algebra_spec(const std::string& json_text) {
  json j = parse_json(json_text, "algebra spec");
  return guarded("algebra spec", [&] {
    AlgebraSpec s;
    s.label = j.value("label", std::string());
    s.tag = j.value("tag", std::string());
    s.parameters = string_list(j, "parameters");
    int index = 0;
    for (const auto& g : j.at("generators")) {
      GeneratorInfo info;
      info.name = g.at("name").get<std::string>();
      std::string parity = g.value("parity", std::string("even"));
      if (parity != "even" && parity != "odd") {
        throw InvalidInput("generator '" + info.name + "': parity must be even or odd");
      }
      info.parity = parity == "odd" ? Parity::Odd : Parity::Even;
      info.ghost_number = g.value("ghost_number", 0);
      info.precedence = g.value("precedence", index);
      ++index;
      s.generators.push_back(std::move(info));
    }
    for (const auto& r : j.value("relations", json::array())) {
      s.relations.push_back({r.at("lhs").get<std::string>(), r.at("rhs").get<std::string>()});
    }
    s.constraints = string_list(j, "constraints");
    s.ghosts = string_list(j, "ghosts");
    s.antighosts = string_list(j, "antighosts");
    if (j.contains("r_matrix")) s.r_matrix = tensor_from_json(j.at("r_matrix"));
    if (j.contains("chi0")) s.chi0 = j.at("chi0").get<std::string>();
    if (j.contains("charges")) {
      const auto& c = j.at("charges");
      if (!c.is_array()) throw InvalidInput("charges must be a list of {name, expr}");
      for (const auto& e : c) {
        s.charges.emplace_back(e.at("name").get<std::string>(), e.at("expr").get<std::string>());
      }
    }
    return s;
  });
}

std::string dump_algebra_spec(const AlgebraSpec& s) {
  ordered_json j;
  j["label"] = s.label;
  j["tag"] = s.tag;
  j["parameters"] = s.parameters;
  j["generators"] = ordered_json::array();
  for (const auto& g : s.generators) {
    ordered_json e;
    e["name"] = g.name;
    e["parity"] = g.parity == Parity::Odd ? "odd" : "even";
    e["ghost_number"] = g.ghost_number;
    e["precedence"] = g.precedence;
    j["generators"].push_back(e);
  }
  j["relations"] = ordered_json::array();
  for (const auto& r : s.relations) j["relations"].push_back({{"lhs", r.lhs}, {"rhs", r.rhs}});
  if (!s.constraints.empty()) j["constraints"] = s.constraints;
  if (!s.ghosts.empty()) j["ghosts"] = s.ghosts;
  if (!s.antighosts.empty()) j["antighosts"] = s.antighosts;
  if (s.r_matrix) j["r_matrix"] = tensor_to_json(*s.r_matrix);
  if (s.chi0) j["chi0"] = *s.chi0;
  if (!s.charges.empty()) {
    j["charges"] = ordered_json::array();
    for (const auto& [name, expr] : s.charges) j["charges"].push_back({{"name", name}, {"expr", expr}});
  }
  return j.dump(2) + "\n";
}

AlgebraSpec load_algebra_spec(const std::string& path) {
  return parse_algebra_spec(read_text_file(path));
}

// ------------------------------------------------------------ tensors

TensorSpec parse_tensor_spec(const std::string& json_text) {
  json j = parse_json(json_text, "tensor");
  return guarded("tensor", [&] { return tensor_from_json(j); });
}

std::string dump_tensor_spec(const TensorSpec& spec) { return tensor_to_json(spec).dump(2) + "\n"; }

TensorSpec load_tensor_spec(const std::string& path) {
  return parse_tensor_spec(read_text_file(path));
}

TensorSquareOp build_tensor(const TensorSpec& spec, const ParameterSet& parameters) {
  if (spec.dim == 0) throw InvalidInput("tensor dimension must be positive");
  TensorSquareOp t = spec.base == "identity"      ? TensorSquareOp::identity(spec.dim)
                     : spec.base == "permutation" ? TensorSquareOp::permutation(spec.dim)
                                                  : TensorSquareOp(spec.dim);
  for (const auto& c : spec.components) {
    for (auto i : {c.upper[0], c.upper[1], c.lower[0], c.lower[1]}) {
      if (i >= spec.dim) throw InvalidInput("tensor index out of range");
    }
    t(c.upper[0], c.upper[1], c.lower[0], c.lower[1]) += parse_scalar(c.value, parameters);
  }
  return t;
}

TensorSpec describe_tensor(const TensorSquareOp& t) {
  TensorSpec s;
  s.dim = t.dim();
  const std::size_t d = t.dim();
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t e = 0; e < d; ++e) {
          if (t(a, b, c, e).is_zero()) continue;
          s.components.push_back({{a, b}, {c, e}, t(a, b, c, e).to_string()});
        }
  return s;
}

// ------------------------------------------------------------ maps

MapSpec parse_map_spec(const std::string& json_text) {
  json j = parse_json(json_text, "basis change");
  return guarded("basis change", [&] {
    MapSpec m;
    m.label = j.value("label", std::string());
    m.source = j.at("source").get<std::string>();
    m.target = j.at("target").get<std::string>();
    m.to_source = j.at("to_source").get<std::map<std::string, std::string>>();
    m.to_target = j.at("to_target").get<std::map<std::string, std::string>>();
    return m;
  });
}

std::string dump_map_spec(const MapSpec& m) {
  ordered_json j;
  j["label"] = m.label;
  j["source"] = m.source;
  j["target"] = m.target;
  j["to_source"] = m.to_source;
  j["to_target"] = m.to_target;
  return j.dump(2) + "\n";
}

MapSpec load_map_spec(const std::string& path) { return parse_map_spec(read_text_file(path)); }

}  // namespace qbrst
