#include "test_util.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "qbrst/basis.hpp"
#include "qbrst/models.hpp"
#include "qbrst/parse.hpp"
#include "qbrst/specfile.hpp"

using namespace qbrst;
namespace fs = std::filesystem;

namespace {

const fs::path kData = QBRST_DATA_DIR;

std::string data(const char* name) { return (kData / name).string(); }

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run_command(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::ordered_json run_json(std::vector<std::string> args) {
  args.insert(args.begin(), "--json");
  Run r = run(std::move(args));
  return nlohmann::ordered_json::parse(r.out);
}

/// Writes text to a fresh file in the temp directory.
std::string scratch(const std::string& name, const std::string& text) {
  fs::path p = fs::temp_directory_path() / ("qbrst_test_" + name);
  std::ofstream(p) << text;
  return p.string();
}

std::string line_with(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
  }
  return {};
}

/// Output with the timing lines removed.
std::string without_timing(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.rfind("time:", 0) != 0) out += line + "\n";
  }
  return out;
}

const char* kQ53 = "cJ*J + cT*T + cW*W - a1*cJ*cW*bT - a3*T*cT*cW*bJ + a2*J*cW*cJ*bJ";

}  // namespace

TEST_CASE("documented command examples") {
  Run nf = run({"normal-form", data("s4.alg"), "--expr", "chi3*chi1"});
  CHECK(nf.code == 0);
  CHECK(line_with(nf.out, "normal_form: ") == "chi1*chi3 - a*chi1^2 - chi0*chi2");

  Run nil = run({"check-nilpotent", data("s5.alg"), "--charge", data("q53.txt")});
  CHECK(nil.code == 0);
  CHECK(nil.out.find("[PASS] Q^2 = 0") != std::string::npos);

  CHECK(run({"check-ybe", data("identity4.tensor")}).code == 0);
  Run trailing = run({"check-ybe", data("identity4.tensor"), "--json"});
  CHECK(nlohmann::json::parse(trailing.out)["status"] == "pass");

  auto dc = run_json({"double-complex", data("s5.alg"), "--subst", "a1=1", "a2=1", "a3=4"});
  CHECK(dc["status"] == "pass");
  REQUIRE(dc["checks"].size() == 3);
  for (const auto& c : dc["checks"]) {
    CHECK(c["passed"] == true);
    CHECK(c["detail"] == "residual 0");
  }
}

TEST_CASE("paper demos pass") {
  for (const char* which : {"s4", "s5", "s5-double"}) {
    auto j = run_json({"paper-demo", which});
    CHECK(j["status"] == "pass");
    CHECK(j["checks"].size() >= 4);
  }
  CHECK(run({"paper-demo", "s6"}).code == 2);
}

TEST_CASE("commands on the shipped specs") {
  CHECK(run({"check-qla", data("s4.alg")}).code == 0);
  CHECK(run({"check-twist", data("s4.alg"), "--phi", "perm"}).code == 0);
  CHECK(run({"check-twist", data("s4.alg"), "--phi", "sigma"}).code == 0);
  CHECK(run({"confluence", data("s5-modified.alg")}).code == 0);
  CHECK(run({"basis-change", data("s5.alg"), "--map", data("s5-ghost.map")}).code == 0);
  CHECK(run({"check-ybe", data("s4-r.tensor")}).code == 0);

  auto b = run_json({"build-brst", data("s4.alg")});
  CHECK(b["status"] == "pass");
  auto s4 = load_algebra_spec(data("s4.alg"));
  CHECK(b["results"]["charge"] == "chi0*c3*c1*b2 + chi3*c3 + chi2*c2 + chi1*c1");

  auto a = run_json({"build-brst", data("s5-constraints.alg"), "--mode", "ansatz"});
  CHECK(a["status"] == "pass");
  Presentation can = models::jtw_canonical();
  CHECK(parse_expression(a["results"]["charge"].get<std::string>(), can.alphabet(),
                         can.parameters()) == models::jtw_charge(can));

  auto t = run_json({"basis-change", data("s5-constraints.alg"), "--map", data("s5-t.map")});
  CHECK(t["status"] == "pass");
  CHECK(t["results"]["closure_degree"] == 2);
  CHECK(t["results"]["derived_brackets"]["[Tc, W]"] == "2*a2*J*Tc");

  auto f = run_json({"fock", data("s4.alg")});
  CHECK(f["status"] == "pass");
  REQUIRE(f["results"]["equations"].size() == 7);
  CHECK(f["results"]["equations"][0] == "c1: chi1*psi0 = 0");
}

TEST_CASE("failed checks exit with 1") {
  SUBCASE("perturbed tensor") {
    std::string p = scratch("bad.tensor",
                            R"({"dim": 4, "base": "identity",
                                "components": [{"upper": [1, 2], "lower": [1, 2], "value": "3"}]})");
    Run r = run({"check-ybe", p});
    CHECK(r.code == 1);
    CHECK(r.out.find("[FAIL] braid relation") != std::string::npos);
  }
  SUBCASE("perturbed R-matrix in a spec") {
    auto s = load_algebra_spec(data("s4.alg"));
    s.r_matrix->components.push_back({{1, 1}, {1, 3}, "1"});
    std::string p = scratch("bad_r.alg", dump_algebra_spec(s));
    CHECK(run({"check-qla", p}).code == 1);
  }
  SUBCASE("truncated charges") {
    std::string truncated = "cJ*J + cT*T + cW*W - a1*cJ*cW*bT - a3*T*cT*cW*bJ";
    Run r = run({"check-nilpotent", data("s5.alg"), "--charge", truncated});
    CHECK(r.code == 1);
    CHECK(line_with(r.out, "[FAIL] Q^2 = 0: residual ") == "-a2*J^2*cW*cJ");
    CHECK(run({"check-nilpotent", data("s5.alg"), "--charge", "cJ*J + cT*T + cW*W"}).code == 1);
  }
  SUBCASE("charge with the wrong ghost number") {
    CHECK(run({"check-nilpotent", data("s5.alg"), "--charge", "J"}).code == 1);
  }
  SUBCASE("wrong second charge") {
    auto s = load_algebra_spec(data("s5.alg"));
    s.charges[1].second = kQ53;
    s.charges[1].second += " + J*cT";
    std::string p = scratch("bad_qt.alg", dump_algebra_spec(s));
    CHECK(run({"double-complex", p}).code == 1);
  }
  SUBCASE("identity phi") {
    std::string p = scratch("id3.tensor", R"({"dim": 3, "base": "identity"})");
    CHECK(run({"check-twist", data("s4.alg"), "--phi", p}).code == 1);
    CHECK(run({"build-brst", data("s4.alg"), "--phi", p}).code == 1);
  }
  SUBCASE("broken inverse map") {
    auto m = load_map_spec(data("s5-ghost.map"));
    m.to_target["cJ"] = "cJ";
    m.target = (kData / m.target).string();
    std::string p = scratch("bad.map", dump_map_spec(m));
    CHECK(run({"basis-change", data("s5.alg"), "--map", p}).code == 1);
  }
  SUBCASE("step limit") {
    Run r = run({"--step-limit", "2", "check-nilpotent", data("s5.alg"), "--charge", kQ53});
    CHECK(r.code == 1);
    CHECK(r.out.find("status: step-limit") != std::string::npos);
  }
  SUBCASE("non-confluent document") {
    std::string p = scratch("nc.alg", R"({"parameters": [], "generators": [{"name": "x"}, {"name": "y"}],
        "relations": [{"lhs": "y*x", "rhs": "0"}, {"lhs": "x*x", "rhs": "x"}, {"lhs": "y*y", "rhs": "x"}]})");
    CHECK(run({"confluence", p, "--max-degree", "3"}).code == 1);
  }
}

TEST_CASE("input errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"check-ybe", (kData / "missing.tensor").string()}).code == 2);
  CHECK(run({"check-ybe", scratch("broken.tensor", "{\"dim\": ")}).code == 2);
  CHECK(run({"check-ybe", scratch("base.tensor", R"({"dim": 2, "base": "diagonal"})")}).code == 2);
  CHECK(run({"check-qla", data("s5.alg")}).code == 2);

  Run syntax = run({"normal-form", data("s4.alg"), "--expr", "chi1*(chi2"});
  CHECK(syntax.code == 2);
  CHECK(syntax.err.find("1:") != std::string::npos);
  Run unknown = run({"normal-form", data("s4.alg"), "--expr", "chi7"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("chi7") != std::string::npos);

  CHECK(run({"--subst", "a1", "check-ybe", data("identity4.tensor")}).code == 2);
  CHECK(run({"--subst", "a1=x", "check-ybe", data("identity4.tensor")}).code == 2);
  CHECK(run({"double-complex", data("s5.alg"), "--subst", "a1=0"}).code == 2);
  CHECK(run({"double-complex", data("s5-modified.alg")}).code == 2);
  CHECK(run({"build-brst", data("s4.alg"), "--mode", "guess"}).code == 2);
}

TEST_CASE("report schema is the same for every command") {
  const std::vector<std::string> keys{"command", "status", "checks", "results",
                                      "error",   "timing_ms", "version"};
  std::vector<std::vector<std::string>> commands{
      {"check-ybe", data("identity4.tensor")},
      {"check-qla", data("s4.alg")},
      {"normal-form", data("s4.alg"), "--expr", "chi3*chi1"},
      {"confluence", data("s4.alg"), "--max-degree", "3"},
      {"build-brst", data("s4.alg")},
      {"check-nilpotent", data("s5.alg"), "--charge", "J"},
      {"basis-change", data("s4.alg"), "--map", data("s4-gamma.map")},
      {"double-complex", data("s5.alg")},
      {"fock", data("s4.alg")},
      {"paper-demo", "s5-double"},
      {"check-ybe", (kData / "missing.tensor").string()}};
  for (const auto& c : commands) {
    auto j = run_json(c);
    std::vector<std::string> got;
    for (const auto& [k, v] : j.items()) got.push_back(k);
    CHECK(got == keys);
    for (const auto& check : j["checks"]) {
      CHECK(check.contains("name"));
      CHECK(check.contains("passed"));
      CHECK(check.contains("detail"));
    }
  }
}

TEST_CASE("output is deterministic") {
  std::vector<std::string> args{"basis-change", data("s5.alg"), "--map", data("s5-ghost.map")};
  CHECK(without_timing(run(args).out) == without_timing(run(args).out));
  auto a = run_json({"fock", data("s4.alg")});
  auto b = run_json({"fock", data("s4.alg")});
  a.erase("timing_ms");
  b.erase("timing_ms");
  CHECK(a == b);
}

TEST_CASE("shipped documents re-serialize to parse-identical files") {
  for (const auto& entry : fs::directory_iterator(kData)) {
    const fs::path& p = entry.path();
    CAPTURE(p.string());
    if (p.extension() == ".alg") {
      AlgebraSpec s = load_algebra_spec(p.string());
      std::string once = dump_algebra_spec(s);
      AlgebraSpec t = parse_algebra_spec(once);
      CHECK(dump_algebra_spec(t) == once);
      CHECK(nlohmann::json::parse(once) == nlohmann::json::parse(read_text_file(p.string())));
      if (!s.relations.empty()) CHECK(same_relations(s.presentation(), t.presentation()));
    } else if (p.extension() == ".tensor") {
      TensorSpec s = load_tensor_spec(p.string());
      std::string once = dump_tensor_spec(s);
      CHECK(dump_tensor_spec(parse_tensor_spec(once)) == once);
      CHECK(build_tensor(parse_tensor_spec(once), ParameterSet(s.parameters)) ==
            build_tensor(s, ParameterSet(s.parameters)));
    } else if (p.extension() == ".map") {
      MapSpec m = load_map_spec(p.string());
      std::string once = dump_map_spec(m);
      CHECK(dump_map_spec(parse_map_spec(once)) == once);
    }
  }
}

TEST_CASE("shipped documents match the built-in models") {
  Scalar a = Scalar::parameter("a");
  AlgebraSpec s4 = load_algebra_spec(data("s4.alg"));
  CHECK(same_relations(s4.presentation(), models::chi_algebra(a, Scalar::parameter("chi0"))));
  CHECK(build_tensor(*s4.r_matrix, s4.parameter_set()) ==
        assemble_R(models::three_generator_qla(a)));

  AlgebraSpec s5 = load_algebra_spec(data("s5.alg"));
  Presentation can = models::jtw_canonical();
  CHECK(same_relations(s5.presentation(), can));
  Poly q = parse_expression(read_text_file(data("q53.txt")), can.alphabet(), can.parameters());
  CHECK(RewriteSystem::from_presentation(can).normal_form(q) == models::jtw_charge(can));

  AlgebraSpec mod = load_algebra_spec(data("s5-modified.alg"));
  CHECK(same_relations(mod.presentation(), models::jtw_modified()));
  CHECK(same_relations(load_algebra_spec(data("s5-constraints.alg")).presentation(),
                       models::jtw_algebra()));
}
