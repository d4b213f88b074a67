#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "demos.hpp"
#include "qbrst/basis.hpp"
#include "qbrst/brst.hpp"
#include "qbrst/error.hpp"
#include "qbrst/fock.hpp"
#include "qbrst/parse.hpp"
#include "qbrst/specfile.hpp"
#include "report.hpp"

namespace qbrst::cli {

namespace {

namespace fs = std::filesystem;

struct Globals {
  std::vector<std::string> subst;
  bool json = false;
  std::size_t step_limit = ReduceOptions{}.step_limit;
};

struct Context {
  Globals globals;
  Bindings bindings;
  ReduceOptions reduce;
};

std::string render(const Poly& p) { return p.is_zero() ? "0" : p.to_string(); }

Bindings parse_bindings(const std::vector<std::string>& items) {
  Bindings b;
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw InvalidInput("--subst expects name=rational, got '" + item + "'");
    }
    std::string name = item.substr(0, eq);
    Scalar v = parse_scalar(item.substr(eq + 1), ParameterSet());
    if (!v.is_rational()) throw InvalidInput("--subst value for '" + name + "' is not a rational");
    b[name] = v;
  }
  return b;
}

// ------------------------------------------------------------ spec helpers

bool has_ghost_generators(const AlgebraSpec& s) {
  return std::any_of(s.generators.begin(), s.generators.end(),
                     [](const GeneratorInfo& g) { return g.ghost_number != 0; });
}

GhostNames ghost_names(const AlgebraSpec& s) {
  if (s.constraints.empty()) throw InvalidInput("spec lists no constraints");
  GhostNames n = GhostNames::prefixed(s.constraints);
  if (!s.ghosts.empty()) n.ghosts = s.ghosts;
  if (!s.antighosts.empty()) n.antighosts = s.antighosts;
  if (n.ghosts.size() != n.size() || n.antighosts.size() != n.size()) {
    throw InvalidInput("spec needs one ghost and one anti-ghost per constraint");
  }
  return n;
}

Presentation document(const AlgebraSpec& s, const Context& ctx) {
  Presentation p = s.presentation();
  return ctx.bindings.empty() ? p : substitute(p, ctx.bindings);
}

TensorSquareOp r_matrix(const AlgebraSpec& s, const Context& ctx) {
  if (!s.r_matrix) throw InvalidInput("spec has no r_matrix");
  TensorSquareOp r = build_tensor(*s.r_matrix, s.parameter_set());
  if (r.dim() != s.constraints.size() + 1) {
    throw InvalidInput("r_matrix dimension must be the number of constraints plus one");
  }
  return ctx.bindings.empty() ? r : r.substitute(ctx.bindings);
}

Scalar chi0_value(const AlgebraSpec& s, const Context& ctx) {
  if (!s.chi0) return Scalar(1);
  return parse_scalar(*s.chi0, s.parameter_set()).substitute(ctx.bindings);
}

TensorSquareOp load_tensor(const std::string& path, const Context& ctx) {
  TensorSpec spec = load_tensor_spec(path);
  TensorSquareOp t = build_tensor(spec, ParameterSet(spec.parameters));
  return ctx.bindings.empty() ? t : t.substitute(ctx.bindings);
}

/// perm, sigma or a tensor file on the constraint indices.
TensorSquareOp phi_tensor(const std::string& phi, const StructureData& s, const Context& ctx) {
  if (phi == "perm" || phi.empty()) return TensorSquareOp::permutation(s.n);
  if (phi == "sigma") return s.sigma;
  TensorSquareOp t = load_tensor(phi, ctx);
  if (t.dim() != s.n) throw InvalidInput("phi must act on the constraint indices");
  return t;
}

/// Constraints together with ghosts: the document itself when it declares
/// ghost generators, else the Proposition algebra from the R-matrix, else
/// canonical ghosts.
Presentation ghost_extended(const AlgebraSpec& s, const Context& ctx, const std::string& phi = {}) {
  if (has_ghost_generators(s)) return document(s, ctx);
  GhostNames names = ghost_names(s);
  if (s.r_matrix) {
    StructureData sd = structure_of(r_matrix(s, ctx));
    return build_ghost_presentation(sd, phi_tensor(phi, sd, ctx), GhostMode::Twisted, names,
                                    chi0_value(s, ctx), s.parameter_set());
  }
  return with_canonical_ghosts(document(s, ctx), names);
}

/// Parsed with the document parameters, which substitution removes from p.
Poly parse_on(const Presentation& p, const AlgebraSpec& s, const std::string& text,
              const Context& ctx) {
  Poly x = parse_expression(text, p.alphabet(), p.parameters().merged(s.parameter_set()));
  return ctx.bindings.empty() ? x : x.substitute(ctx.bindings);
}

/// A named charge of the spec, a file, or literal expression text.
std::string charge_text(const AlgebraSpec& s, const std::string& arg) {
  for (const auto& [name, expr] : s.charges) {
    if (name == arg) return expr;
  }
  std::error_code ec;
  if (fs::is_regular_file(arg, ec)) return read_text_file(arg);
  return arg;
}

std::optional<std::string> named_charge(const AlgebraSpec& s, const std::string& name) {
  for (const auto& [n, expr] : s.charges) {
    if (n == name) return expr;
  }
  return std::nullopt;
}

void add_results(Report& rep, const std::vector<CheckResult>& rs) {
  for (const auto& r : rs) {
    Check c{r.name, r.passed, {}};
    if (r.first_failure) c.detail = r.first_failure->to_string();
    rep.checks.push_back(std::move(c));
  }
}

Check ybe_entry(const TensorSquareOp& r) {
  CheckResult y = ybe_check(r);
  Check c{"braid relation", y.passed,
          std::to_string(y.components) + " components, " + std::to_string(y.failures) + " failing"};
  if (y.first_failure) c.detail += "; first " + y.first_failure->to_string();
  return c;
}

std::string confluence_detail(const ConfluenceReport& r) {
  std::ostringstream s;
  s << r.pairs_checked << " critical pairs, " << r.unresolved.size() << " unresolved";
  if (!r.unresolved.empty()) {
    const auto& u = r.unresolved.front();
    s << "; first at " << u.pair.first.alphabet()->render(u.pair.word) << ": "
      << render(u.first_normal) << " vs " << render(u.second_normal);
  }
  return s.str();
}

// ------------------------------------------------------------ commands

void cmd_check_ybe(Report& rep, const Context& ctx, const std::string& path) {
  TensorSquareOp r = load_tensor(path, ctx);
  rep.results["dim"] = r.dim();
  rep.checks.push_back(ybe_entry(r));
}

void cmd_check_qla(Report& rep, const Context& ctx, const std::string& spec_path) {
  AlgebraSpec s = load_algebra_spec(spec_path);
  TensorSquareOp r = r_matrix(s, ctx);
  rep.checks.push_back(ybe_entry(r));
  add_results(rep, qla_axioms(structure_of(r)));
}

void cmd_check_twist(Report& rep, const Context& ctx, const std::string& spec_path,
                     const std::string& phi) {
  AlgebraSpec s = load_algebra_spec(spec_path);
  TensorSquareOp r = r_matrix(s, ctx);
  StructureData sd = structure_of(r);
  TensorSquareOp p = phi_tensor(phi, sd, ctx);
  add_results(rep, twist_consistency(sd, p));
  TensorSquareOp f = assemble_F(p);
  add_results(rep, twist_check(r, f));
  Check y = ybe_entry(twisted(f, r));
  y.name = "braid relation of the twisted matrix";
  rep.checks.push_back(std::move(y));
}

void cmd_normal_form(Report& rep, const Context& ctx, const std::string& spec_path,
                     const std::string& expr) {
  AlgebraSpec s = load_algebra_spec(spec_path);
  Presentation p = document(s, ctx);
  Poly x;
  try {
    x = parse_on(p, s, expr, ctx);
  } catch (const ParseError&) {
    // Ghost letters are only known to the extended algebra.
    if (has_ghost_generators(s) || s.constraints.empty()) throw;
    p = ghost_extended(s, ctx);
    x = parse_on(p, s, expr, ctx);
  }
  ReductionReport rr = RewriteSystem::from_presentation(p).reduce(x, ctx.reduce);
  rep.results["normal_form"] = render(rr.normal_form);
  rep.results["steps"] = rr.steps;
}

void cmd_confluence(Report& rep, const Context& ctx, const std::string& spec_path,
                    std::size_t degree) {
  AlgebraSpec s = load_algebra_spec(spec_path);
  std::vector<Presentation> ps{document(s, ctx)};
  if (!has_ghost_generators(s) && !s.constraints.empty()) ps.push_back(ghost_extended(s, ctx));
  const char* names[] = {"document relations", "ghost-extended relations"};
  for (std::size_t i = 0; i < ps.size(); ++i) {
    ConfluenceReport c = RewriteSystem::from_presentation(ps[i]).confluence_check(degree, ctx.reduce);
    rep.checks.push_back({std::string(names[i]) + " confluent to degree " + std::to_string(degree),
                          c.passed(), confluence_detail(c)});
  }
}

void cmd_build_brst(Report& rep, const Context& ctx, const std::string& spec_path,
                    const std::string& mode, const std::string& phi) {
  AlgebraSpec s = load_algebra_spec(spec_path);
  GhostNames names = ghost_names(s);
  if (mode == "proposition") {
    TensorSquareOp r = r_matrix(s, ctx);
    StructureData sd = structure_of(r);
    TensorSquareOp p = phi_tensor(phi, sd, ctx);
    std::vector<CheckResult> tc = twist_consistency(sd, p);
    add_results(rep, tc);
    for (const auto& c : tc) {
      if (!c.passed) return;
    }
    Presentation om = build_ghost_presentation(sd, p, GhostMode::Twisted, names,
                                               chi0_value(s, ctx), s.parameter_set());
    Poly c0 = build_c0(sd, p, om, names, chi0_value(s, ctx));
    BrstCharge q = build_Q(om, names, c0);
    Poly res = verify_nilpotent(q, ctx.reduce);
    rep.results["provenance"] = to_string(q.provenance);
    rep.results["c0"] = render(c0);
    rep.results["charge"] = render(q.q);
    rep.checks.push_back({"Q^2 = 0", res.is_zero(), "residual " + render(res)});
    return;
  }
  if (mode != "ansatz") throw InvalidInput("--mode must be proposition or ansatz");
  Presentation om = ghost_extended(s, ctx, phi);
  AnsatzOptions opts;
  opts.reduce = ctx.reduce;
  AnsatzResult a = solve_brst_ansatz(om, names, opts);
  rep.results["provenance"] = to_string(a.charge.provenance);
  rep.results["charge"] = render(a.charge.q);
  nlohmann::ordered_json defs = nlohmann::ordered_json::array();
  for (const auto& d : a.deformations) defs.push_back(render(d));
  rep.results["deformations"] = defs;
  rep.checks.push_back({"Q^2 = 0", a.nilpotent, "residual " + render(a.residual)});
}

void cmd_check_nilpotent(Report& rep, const Context& ctx, const std::string& spec_path,
                         const std::string& charge) {
  AlgebraSpec s = load_algebra_spec(spec_path);
  Presentation p = ghost_extended(s, ctx);
  Poly q = parse_on(p, s, charge_text(s, charge), ctx);
  auto gh = q.ghost_number();
  rep.results["charge"] = render(q);
  rep.checks.push_back({"ghost number 1", gh == std::optional<int>(1),
                        gh ? std::to_string(*gh) : std::string("inhomogeneous")});
  if (gh != std::optional<int>(1)) return;
  Poly res = verify_nilpotent({q, p}, ctx.reduce);
  rep.checks.push_back({"Q^2 = 0", res.is_zero(), "residual " + render(res)});
}

void cmd_basis_change(Report& rep, const Context& ctx, const std::string& spec_path,
                      const std::string& map_path) {
  AlgebraSpec src = load_algebra_spec(spec_path);
  MapSpec m = load_map_spec(map_path);
  fs::path target_path = fs::path(map_path).parent_path() / m.target;
  AlgebraSpec tgt = load_algebra_spec(target_path.string());
  // Parameters are bound after parsing, since binding removes them.
  std::optional<Presentation> target;
  if (!tgt.relations.empty()) target = tgt.presentation();
  BasisChange bc =
      basis_change_from_text(src.presentation(), tgt.alphabet(), target, m.to_source, m.to_target);
  if (!ctx.bindings.empty()) {
    bc.source = substitute(bc.source, ctx.bindings);
    if (bc.target) bc.target = substitute(*bc.target, ctx.bindings);
    for (auto& [k, v] : bc.to_source) v = v.substitute(ctx.bindings);
    for (auto& [k, v] : bc.to_target) v = v.substitute(ctx.bindings);
  }
  target = bc.target;
  const Presentation& source = bc.source;
  CertificateReport cert = check_certificate(bc);
  rep.checks.push_back({"inverse certificate", cert.passed,
                        cert.failures.empty() ? std::string() : cert.failures.front()});
  if (!cert.passed) return;

  BasisChange open = bc;
  open.target.reset();
  DerivedPresentation dp = derived_presentation(open);
  nlohmann::ordered_json brackets = nlohmann::ordered_json::object();
  for (const auto& b : dp.brackets) {
    std::string key = (b.kind == BracketKind::Commutator ? "[" : "{") + b.left + ", " + b.right +
                      (b.kind == BracketKind::Commutator ? "]" : "}");
    brackets[key] = render(b.value);
  }
  rep.results["closure_degree"] = dp.closure_degree;
  rep.results["derived_brackets"] = brackets;
  if (target) {
    rep.checks.push_back({"derived relations equal the target relations",
                          same_relations(dp.presentation, *target), {}});
  } else {
    bc.target = dp.presentation;
  }

  nlohmann::ordered_json mapped = nlohmann::ordered_json::object();
  nlohmann::ordered_json skipped = nlohmann::ordered_json::array();
  for (const auto& [name, expr] : src.charges) {
    Poly q;
    try {
      q = parse_on(source, src, expr, ctx);
    } catch (const ParseError&) {
      skipped.push_back(name);  // written over generators the document lacks
      continue;
    }
    Poly img = apply_basis_change(q, bc);
    mapped[name] = render(img);
    if (auto t = named_charge(tgt, name)) {
      Poly expected = RewriteSystem::from_presentation(*bc.target)
                          .normal_form(parse_on(*bc.target, tgt, *t, ctx), ctx.reduce);
      rep.checks.push_back({"image of " + name + " equals the target charge", img == expected,
                            img == expected ? std::string() : "expected " + render(expected)});
    }
  }
  if (!mapped.empty()) rep.results["charges"] = mapped;
  if (!skipped.empty()) rep.results["charges_not_mapped"] = skipped;
}

void cmd_double_complex(Report& rep, const Context& ctx, const std::string& spec_path) {
  AlgebraSpec s = load_algebra_spec(spec_path);
  auto qs = named_charge(s, "Q"), qts = named_charge(s, "Qt");
  if (!qs || !qts) throw InvalidInput("double-complex needs charges named Q and Qt in the spec");
  Presentation p = ghost_extended(s, ctx);
  BrstCharge q{parse_on(p, s, *qs, ctx), p};
  BrstCharge qt{parse_on(p, s, *qts, ctx), p};
  DoubleComplexReport d = double_complex_check(q, qt, ctx.reduce);
  rep.checks.push_back({"Q^2 = 0", d.q_squared.is_zero(), "residual " + render(d.q_squared)});
  rep.checks.push_back({"Qt^2 = 0", d.qt_squared.is_zero(), "residual " + render(d.qt_squared)});
  rep.checks.push_back(
      {"{Q, Qt} = 0", d.anticommutator.is_zero(), "residual " + render(d.anticommutator)});
}

void cmd_fock(Report& rep, const Context& ctx, const std::string& spec_path,
              const std::string& charge) {
  AlgebraSpec s = load_algebra_spec(spec_path);
  GhostNames names = ghost_names(s);
  Presentation p = ghost_extended(s, ctx);
  BrstCharge q;
  if (!charge.empty()) {
    q = {parse_on(p, s, charge_text(s, charge), ctx), p};
  } else if (auto named = named_charge(s, "Q")) {
    q = {parse_on(p, s, *named, ctx), p};
  } else {
    throw InvalidInput("fock needs --charge or a charge named Q in the spec");
  }
  Poly res = verify_nilpotent(q, ctx.reduce);
  rep.checks.push_back({"Q^2 = 0", res.is_zero(), "residual " + render(res)});
  FockExpansion fe = fock_expand(q, names, ctx.reduce);
  nlohmann::ordered_json eqs = nlohmann::ordered_json::array();
  for (const auto& e : fe.equations) eqs.push_back(e.monomial + ": " + render(e.value) + " = 0");
  rep.results["components"] = fe.components;
  rep.results["equations"] = eqs;
}

void cmd_paper_demo(Report& rep, const std::string& which) {
  if (which == "s4") {
    rep.checks = demo_s4();
  } else if (which == "s5") {
    rep.checks = demo_s5();
  } else if (which == "s5-double") {
    rep.checks = demo_s5_double();
  } else {
    throw InvalidInput("paper-demo expects s4, s5 or s5-double");
  }
}

std::string join(const std::vector<std::string>& args) {
  std::string s = "qbrst";
  for (const auto& a : args) s += " " + a;
  return s;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact BRST charges for quadratic algebras", "qbrst"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--subst", g.subst, "Bind parameters: name=rational ...")->expected(1, -1);
  app.add_flag("--json", g.json, "Machine-readable report");
  app.add_option("--step-limit", g.step_limit, "Rewrite steps per reduction")
      ->check(CLI::PositiveNumber);

  std::string path, spec, phi, expr, mode = "proposition", charge, map, demo;
  std::size_t degree = 4;
  std::function<void(Report&, const Context&)> action;

  auto* ybe = app.add_subcommand("check-ybe", "Braid relation of a tensor");
  ybe->add_option("tensor", path, "Tensor file")->required();
  ybe->callback([&] { action = [&](Report& r, const Context& c) { cmd_check_ybe(r, c, path); }; });

  auto* qla = app.add_subcommand("check-qla", "Quantum Lie algebra axioms of the spec R-matrix");
  qla->add_option("spec", spec)->required();
  qla->callback([&] { action = [&](Report& r, const Context& c) { cmd_check_qla(r, c, spec); }; });

  auto* tw = app.add_subcommand("check-twist", "Compatibility of phi with the spec data");
  tw->add_option("spec", spec)->required();
  tw->add_option("--phi", phi, "perm, sigma or a tensor file")->required();
  tw->callback(
      [&] { action = [&](Report& r, const Context& c) { cmd_check_twist(r, c, spec, phi); }; });

  auto* nfc = app.add_subcommand("normal-form", "Normal form of an expression");
  nfc->add_option("spec", spec)->required();
  nfc->add_option("--expr", expr)->required();
  nfc->callback(
      [&] { action = [&](Report& r, const Context& c) { cmd_normal_form(r, c, spec, expr); }; });

  auto* conf = app.add_subcommand("confluence", "Critical-pair check");
  conf->add_option("spec", spec)->required();
  conf->add_option("--max-degree", degree)->check(CLI::Range(2, 8));
  conf->callback(
      [&] { action = [&](Report& r, const Context& c) { cmd_confluence(r, c, spec, degree); }; });

  auto* bb = app.add_subcommand("build-brst", "Construct a BRST charge");
  bb->add_option("spec", spec)->required();
  bb->add_option("--mode", mode)->check(CLI::IsMember({"proposition", "ansatz"}));
  bb->add_option("--phi", phi, "perm, sigma or a tensor file");
  bb->callback([&] {
    action = [&](Report& r, const Context& c) { cmd_build_brst(r, c, spec, mode, phi); };
  });

  auto* nil = app.add_subcommand("check-nilpotent", "Reduce Q^2");
  nil->add_option("spec", spec)->required();
  nil->add_option("--charge", charge, "Charge name, file or expression")->required();
  nil->callback([&] {
    action = [&](Report& r, const Context& c) { cmd_check_nilpotent(r, c, spec, charge); };
  });

  auto* bcc = app.add_subcommand("basis-change", "Apply and certify a change of generators");
  bcc->add_option("spec", spec)->required();
  bcc->add_option("--map", map)->required();
  bcc->callback(
      [&] { action = [&](Report& r, const Context& c) { cmd_basis_change(r, c, spec, map); }; });

  auto* dc = app.add_subcommand("double-complex", "Q^2, Qt^2 and {Q, Qt}");
  dc->add_option("spec", spec)->required();
  dc->callback(
      [&] { action = [&](Report& r, const Context& c) { cmd_double_complex(r, c, spec); }; });

  auto* fk = app.add_subcommand("fock", "Physical-state conditions on the ghost Fock space");
  fk->add_option("spec", spec)->required();
  fk->add_option("--charge", charge, "Charge name, file or expression");
  fk->callback([&] { action = [&](Report& r, const Context& c) { cmd_fock(r, c, spec, charge); }; });

  auto* pd = app.add_subcommand("paper-demo", "Worked examples end to end");
  pd->add_option("which", demo, "s4, s5 or s5-double")->required();
  pd->callback([&] { action = [&](Report& r, const Context&) { cmd_paper_demo(r, demo); }; });

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "qbrst: " << e.what() << "\n";
    return 2;
  }

  Report rep;
  rep.command = join(args);
  auto t0 = std::chrono::steady_clock::now();
  try {
    Context ctx;
    ctx.globals = g;
    ctx.bindings = parse_bindings(g.subst);
    ctx.reduce.step_limit = g.step_limit;
    action(rep, ctx);
  } catch (const StepLimitExceeded& e) {
    rep.status = "step-limit";
    rep.error = std::string(e.what()) + "; partial result " + e.partial();
  } catch (const std::exception& e) {
    rep.status = "input-error";
    rep.error = e.what();
  }
  rep.timing_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  rep.settle();
  if (g.json) {
    out << rep.to_json().dump(2) << "\n";
  } else {
    rep.print_text(out);
  }
  if (rep.status == "input-error") err << "qbrst: " << rep.error << "\n";
  return rep.exit_code();
}

}  // namespace qbrst::cli
