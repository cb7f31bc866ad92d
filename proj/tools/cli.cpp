#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "fracwave/error.hpp"
#include "fracwave/eval.hpp"
#include "fracwave/fracderiv.hpp"
#include "fracwave/registry.hpp"

namespace fracwave::cli {

namespace {

using symexpr::format;
using symexpr::NumericBindings;

json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return nullptr;
  return v > 0 ? "inf" : "-inf";
}

json bindings_json(const NumericBindings& b) {
  json j = json::object();
  for (const auto& [k, v] : b) j[k] = number(v);
  return j;
}

json assignments_json(const std::map<std::string, symexpr::Expr>& m) {
  json j = json::object();
  for (const auto& [k, v] : m) j[k] = format(v);
  return j;
}

json verification_json(const expansion::VerificationReport& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks) {
    checks.push_back({{"label", c.label},
                      {"status", expansion::residual_status_name(c.status)},
                      {"residual", format(c.residual)}});
  }
  return {{"verdict", expansion::verdict_name(rep.verdict)}, {"checks", checks}};
}

json param_set_json(const expansion::AlgebraicSystem& sys, const expansion::ParamSet& ps) {
  json side = json::array();
  for (const auto& s : ps.side_conditions) side.push_back(format(s) + " != 0");
  json j = {{"label", ps.label},
            {"provenance", expansion::provenance_name(ps.provenance)},
            {"assignments", assignments_json(ps.assignments)}};
  if (!ps.definitions.empty()) j["definitions"] = assignments_json(ps.definitions);
  j["side_conditions"] = side;
  j["verification"] = verification_json(expansion::verify_param_set(sys, ps));
  return j;
}

std::string csv_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t parse_seed(const std::string& text) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used, 0);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw InvalidArgument("invalid seed '" + text + "'");
  return v;
}

/// Command-line overrides of family parameters.
struct Overrides {
  double alpha = 1.0;
  double beta = 1.0;
};

const std::vector<std::string>& override_names() {
  static const std::vector<std::string> names{"k", "c", "A", "L", "M", "B0", "p", "q", "r", "xi0"};
  return names;
}

/// Parameters for a family: seeded draws for everything not overridden,
/// xi0 = 0 by default, then validation against the branch constraints.
NumericBindings resolve_parameters(const catalog::SolutionFamily& f, const std::map<std::string, double>& given,
                                   std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  NumericBindings b = catalog::draw_parameters(f, rng);
  b["xi0"] = 0.0;
  std::optional<double> c;
  for (const auto& [k, v] : given) {
    if (k == "c") {
      c = v;
    } else {
      b[k] = v;
    }
  }
  catalog::check_family_parameters(f, b);
  if (c) {
    const symexpr::Complex speed = symexpr::eval_complex(catalog::bind_exact(f.wave_speed, b), {});
    if (std::abs(speed - *c) > 1e-9 * std::max(1.0, std::abs(speed))) {
      throw ConstraintError(f.id + " determines c = " + format(f.wave_speed) + " = " + csv_number(speed.real()) +
                            " for these parameters, not " + csv_number(*c));
    }
  }
  return b;
}

/// Rewrites a JSON config object into command-line tokens.
std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read config file '" + path + "'");
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!cfg.is_object()) throw InvalidArgument("config file must hold a JSON object");
  std::vector<std::string> head;
  std::vector<std::string> tail;
  auto scalar = [](const json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return csv_number(v.get<double>());
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    throw InvalidArgument("config values must be strings, numbers or booleans");
  };
  for (const auto& [key, value] : cfg.items()) {
    if (key == "command") {
      head.insert(head.begin(), scalar(value));
    } else if (key == "equation" || key == "equations") {
      if (value.is_array()) {
        for (const auto& e : value) tail.push_back(scalar(e));
      } else {
        tail.push_back(scalar(value));
      }
    } else {
      tail.push_back("--" + key);
      tail.push_back(scalar(value));
    }
  }
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

void write_error(std::ostream& err, const std::string& kind, const std::string& message) {
  err << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << "\n";
}

}  // namespace

double Axis::at(std::size_t i) const {
  if (count == 1) return start;
  return start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
}

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  bool seen_x = false;
  bool seen_t = false;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::vector<std::string> fields;
    std::stringstream ps(part);
    std::string field;
    while (std::getline(ps, field, ':')) fields.push_back(field);
    if (fields.size() != 4) throw InvalidArgument("grid axis '" + part + "' must look like name:start:stop:count");
    Axis a;
    try {
      std::size_t used = 0;
      a.start = std::stod(fields[1], &used);
      if (used != fields[1].size()) throw std::invalid_argument(fields[1]);
      a.stop = std::stod(fields[2], &used);
      if (used != fields[2].size()) throw std::invalid_argument(fields[2]);
      const long long n = std::stoll(fields[3], &used);
      if (used != fields[3].size() || n < 1) throw std::invalid_argument(fields[3]);
      a.count = static_cast<std::size_t>(n);
    } catch (const std::exception&) {
      throw InvalidArgument("grid axis '" + part + "' has a malformed number");
    }
    if (!std::isfinite(a.start) || !std::isfinite(a.stop)) throw InvalidArgument("grid bounds must be finite");
    if (a.count > 1 && a.start == a.stop) throw InvalidArgument("grid axis '" + part + "' has zero width");
    if (fields[0] == "x" && !seen_x) {
      g.x = a;
      seen_x = true;
    } else if (fields[0] == "t" && !seen_t) {
      g.t = a;
      seen_t = true;
    } else {
      throw InvalidArgument("grid axis '" + fields[0] + "' is unknown or repeated");
    }
  }
  if (!seen_x || !seen_t) throw InvalidArgument("grid spec needs both an x and a t axis");
  return g;
}

json family_json(const catalog::SolutionFamily& f) {
  json j = {{"equation", f.equation},
            {"family_id", f.id},
            {"set", f.set_label},
            {"branch", std::string(catalog::branch_name(f.branch))},
            {"type", catalog::branch(f.branch).type},
            {"constraints", f.constraints},
            {"wave_speed", format(f.wave_speed)}};
  const std::vector<std::string> keys = f.fields.size() == 1 ? std::vector<std::string>{"u"}
                                                             : std::vector<std::string>{"u", "v"};
  for (std::size_t i = 0; i < f.fields.size() && i < keys.size(); ++i) j[keys[i]] = format(f.fields[i]);
  json profiles = json::object();
  for (std::size_t i = 0; i < f.profiles.size(); ++i) profiles[f.functions[i]] = format(f.profiles[i]);
  j["profiles"] = profiles;
  j["complex_valued"] = f.complex_valued;
  j["paper_eq"] = f.paper_eq;
  return j;
}

json report_json(const verify::ResidualReport& r) {
  json j = {{"subject", r.subject},
            {"kind", r.kind},
            {"params", bindings_json(r.params)},
            {"max_residual", number(r.max_residual)},
            {"scaled", number(r.scaled)},
            {"tolerance", number(r.tolerance)},
            {"samples", r.samples},
            {"skipped", r.skipped},
            {"verdict", verify::outcome_name(r.verdict)}};
  if (r.convergence_ratio) j["convergence_ratio"] = number(*r.convergence_ratio);
  if (r.erratum_note) j["erratum_note"] = *r.erratum_note;
  return j;
}

json audit_json(const std::vector<verify::ResidualReport>& reports, const std::vector<std::string>& equations,
                std::uint64_t seed) {
  std::map<std::string, std::size_t> counts{{"pass", 0}, {"fail", 0}, {"out-of-domain", 0}};
  json entries = json::array();
  for (const auto& r : reports) {
    ++counts[verify::outcome_name(r.verdict)];
    entries.push_back(report_json(r));
  }
  return {{"seed", seed},
          {"equations", equations},
          {"summary", {{"pass", counts["pass"]}, {"fail", counts["fail"]}, {"out_of_domain", counts["out-of-domain"]}}},
          {"reports", entries}};
}

json derive_json(const std::string& equation) {
  const auto& spec = registry::equation(equation);
  const expansion::AlgebraicSystem sys = expansion::derive_system(spec);
  json odes = json::array();
  for (const auto& e : spec.odes) odes.push_back(format(e));
  json system = json::array();
  for (std::size_t i = 0; i < sys.equations.size(); ++i) {
    system.push_back({{"label", sys.labels[i]}, {"expr", format(sys.equations[i])}});
  }
  json j = {{"equation", equation},
            {"title", spec.title},
            {"reduced_odes", odes},
            {"ansatz_order", sys.ansatz_order},
            {"unknowns", sys.unknowns},
            {"free_parameters", sys.free_parameters},
            {"system", system}};

  const expansion::SolveOutcome solved = expansion::solve_triangular(sys);
  json derived = json::array();
  for (const auto& ps : solved.param_sets) derived.push_back(param_set_json(sys, ps));
  j["solver"] = {{"verification_only", solved.verification_only}, {"note", solved.note}};
  j["derived_sets"] = derived;

  json printed = json::array();
  for (const auto& p : registry::printed_param_sets(equation)) {
    json e = param_set_json(sys, p.set);
    e["paper_eq"] = p.paper_eq;
    printed.push_back(e);
  }
  j["printed_sets"] = printed;

  const registry::PrintedSystem ps = registry::printed_system(equation);
  if (!ps.equations.empty()) {
    json matches = json::array();
    for (const auto& m : expansion::compare_systems(sys, ps.equations)) {
      json e = {{"printed_index", m.printed_index}, {"printed", format(ps.equations[m.printed_index])}};
      if (m.derived_index) {
        e["derived_label"] = sys.labels[*m.derived_index];
        e["sign"] = m.sign;
      } else {
        e["derived_label"] = nullptr;
      }
      e["difference"] = format(m.difference);
      e["match"] = m.derived_index.has_value() && m.difference.is_zero();
      matches.push_back(e);
    }
    j["printed_system"] = {{"paper_eq", ps.paper_eq}, {"comparison", matches}};
  }
  return j;
}

std::string eval_csv(const catalog::SolutionFamily& f, const NumericBindings& params, double alpha, double beta,
                     const GridSpec& grid) {
  if (f.complex_valued) throw DomainError(f.id + " has complex coefficients and no real field");
  const bool fractional_x = !f.transform.beta_is_one && (f.transform.beta_equals_alpha ? alpha : beta) != 1.0;
  if (fractional_x && std::min(grid.x.start, grid.x.stop) < 0.0) {
    throw DomainError("x must be non-negative when the x order is fractional");
  }
  if (std::min(grid.t.start, grid.t.stop) < 0.0) throw DomainError("t must be non-negative");
  const verify::FieldFn field = verify::family_field(f, params, alpha, beta);

  std::string out = "x,t,u";
  if (f.fields.size() == 2) out += ",v";
  out += "\n";
  std::size_t omitted = 0;
  for (std::size_t it = 0; it < grid.t.count; ++it) {
    const double t = grid.t.at(it);
    for (std::size_t ix = 0; ix < grid.x.count; ++ix) {
      const double x = grid.x.at(ix);
      std::vector<double> v;
      try {
        v = field(x, t);
      } catch (const DomainError&) {
        ++omitted;
        continue;
      }
      bool finite = true;
      for (double d : v) finite = finite && std::isfinite(d);
      if (!finite) {
        ++omitted;
        continue;
      }
      out += csv_number(x) + "," + csv_number(t);
      for (double d : v) out += "," + csv_number(d);
      out += "\n";
    }
  }
  if (omitted > 0) out += "# omitted " + std::to_string(omitted) + " points near poles\n";
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> tokens = args;
  // --config is expanded before parsing; explicit arguments follow and take precedence.
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::string path;
    std::size_t width = 0;
    if (tokens[i] == "--config" && i + 1 < tokens.size()) {
      path = tokens[i + 1];
      width = 2;
    } else if (tokens[i].rfind("--config=", 0) == 0) {
      path = tokens[i].substr(9);
      width = 1;
    } else {
      continue;
    }
    std::vector<std::string> cfg;
    try {
      cfg = config_tokens(path);
    } catch (const Error& e) {
      write_error(err, e.kind(), e.what());
      return 1;
    }
    tokens.erase(tokens.begin() + static_cast<std::ptrdiff_t>(i), tokens.begin() + static_cast<std::ptrdiff_t>(i + width));
    // The config supplies the subcommand only when the command line has none.
    static const std::vector<std::string> commands{"list", "derive", "verify", "eval", "fracderiv"};
    bool has_command = false;
    for (const auto& t : tokens) has_command = has_command || std::find(commands.begin(), commands.end(), t) != commands.end();
    if (has_command && !cfg.empty() && std::find(commands.begin(), commands.end(), cfg.front()) != commands.end()) {
      cfg.erase(cfg.begin());
    }
    if (has_command) {
      // Options from the file are inserted right after the subcommand.
      auto pos = std::find_if(tokens.begin(), tokens.end(), [&](const std::string& t) {
        return std::find(commands.begin(), commands.end(), t) != commands.end();
      });
      tokens.insert(pos + 1, cfg.begin(), cfg.end());
    } else {
      tokens.insert(tokens.begin(), cfg.begin(), cfg.end());
    }
    break;
  }

  CLI::App app{"Traveling-wave solutions of fractional evolution equations", "fracwave"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1, 1);
  std::string output;
  std::string seed_text;
  app.add_option("-o,--output", output, "Write the artifact to this file");
  app.add_option("--seed", seed_text, "Random seed (default 0x5eed2024, or FRACWAVE_SEED)");
  std::string config_path;
  app.add_option("--config", config_path, "JSON file with subcommand options");

  auto* list = app.add_subcommand("list", "List solution families as JSON");
  std::vector<std::string> list_eqs;
  list->add_option("equation", list_eqs, "Equations to list (default: all)");

  auto* derive = app.add_subcommand("derive", "Derive the coefficient system and parameter sets");
  std::string derive_eq;
  derive->add_option("equation", derive_eq, "Equation name")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Run the residual audit");
  std::vector<std::string> verify_eqs;
  verify::AuditOptions audit;
  verify_cmd->add_option("equation", verify_eqs, "Equations to audit (default: all)");
  verify_cmd->add_option("--draws", audit.draws, "Parameter draws per family")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--samples", audit.samples, "Samples per draw")->check(CLI::PositiveNumber);

  auto* eval = app.add_subcommand("eval", "Evaluate a family on an (x, t) grid as CSV");
  std::string eval_eq;
  std::string family;
  std::string grid_text = "x:-2:2:81,t:0:0.5:11";
  Overrides ov;
  eval->add_option("equation", eval_eq, "Equation name")->required();
  eval->add_option("--family", family, "Family id or branch name")->required();
  eval->add_option("--grid", grid_text, "Grid spec x:start:stop:count,t:start:stop:count");
  eval->add_option("--alpha", ov.alpha, "Time order in (0, 1]");
  eval->add_option("--beta", ov.beta, "Space order in (0, 1]");
  std::map<std::string, std::optional<double>> given;
  for (const auto& name : override_names()) {
    eval->add_option("--" + name, given[name], "Parameter " + name);
  }

  auto* fd = app.add_subcommand("fracderiv", "Modified Riemann-Liouville derivative of z^power");
  double fd_alpha = 0.5;
  double fd_power = 1.0;
  double fd_z = 1.0;
  std::string method = "power";
  fd->add_option("--alpha", fd_alpha, "Order in (0, 1)")->required();
  fd->add_option("--power", fd_power, "Exponent of the monomial")->required();
  fd->add_option("--z", fd_z, "Evaluation point")->required();
  fd->add_option("--method", method, "power or quadrature")->check(CLI::IsMember({"power", "quadrature"}));

  for (auto* sub : {list, derive, verify_cmd, eval, fd}) sub->fallthrough();

  std::vector<std::string> reversed(tokens.rbegin(), tokens.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    std::uint64_t seed = kDefaultSeed;
    if (const char* env = std::getenv("FRACWAVE_SEED"); env != nullptr && *env != '\0') seed = parse_seed(env);
    if (!seed_text.empty()) seed = parse_seed(seed_text);

    std::string artifact;
    if (list->parsed()) {
      if (list_eqs.empty()) list_eqs = registry::equation_names();
      json arr = json::array();
      for (const auto& eq : list_eqs) {
        for (const auto& f : catalog::builtin_families(eq)) arr.push_back(family_json(f));
      }
      artifact = arr.dump(2) + "\n";
    } else if (derive->parsed()) {
      artifact = derive_json(derive_eq).dump(2) + "\n";
    } else if (verify_cmd->parsed()) {
      if (verify_eqs.empty()) verify_eqs = registry::equation_names();
      for (const auto& eq : verify_eqs) registry::equation(eq);
      audit.seed = seed;
      artifact = audit_json(verify::family_audit(verify_eqs, audit), verify_eqs, seed).dump(2) + "\n";
    } else if (eval->parsed()) {
      const GridSpec grid = parse_grid(grid_text);
      if (!(ov.alpha > 0.0 && ov.alpha <= 1.0) || !(ov.beta > 0.0 && ov.beta <= 1.0)) {
        throw InvalidArgument("alpha and beta must lie in (0, 1]");
      }
      const catalog::SolutionFamily f = catalog::find_family(eval_eq, family);
      std::map<std::string, double> values;
      for (const auto& [k, v] : given) {
        if (v) values[k] = *v;
      }
      const NumericBindings params = resolve_parameters(f, values, seed);
      artifact = eval_csv(f, params, ov.alpha, ov.beta, grid);
    } else if (fd->parsed()) {
      double v = 0.0;
      if (method == "power") {
        v = fracderiv::mrl_power_rule(fd_alpha, fd_power, fd_z);
      } else {
        const double g = fd_power;
        v = fracderiv::mrl_quadrature([g](double s) { return std::pow(s, g); }, fd_alpha, fd_z);
      }
      artifact = csv_number(v) + "\n";
    }

    if (output.empty()) {
      out << artifact;
    } else {
      std::ofstream file(output, std::ios::binary);
      if (!file) throw InvalidArgument("cannot write '" + output + "'");
      file << artifact;
    }
    return 0;
  } catch (const Error& e) {
    write_error(err, e.kind(), e.what());
    return 1;
  }
}

}  // namespace fracwave::cli
