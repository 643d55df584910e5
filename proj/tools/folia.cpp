#include <CLI11.hpp>
#include <fstream>
#include <future>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "folia/brjuno.hpp"
#include "folia/error.hpp"
#include "folia/gluing.hpp"
#include "folia/modular.hpp"
#include "folia/normal_forms.hpp"
#include "folia/pipeline.hpp"

using namespace folia;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;

struct Common {
  std::string format = "text";
  std::optional<int> trunc;
  std::string config_path;
  std::vector<std::string> binds;
};

Config make_config(const Common& c) {
  Config cfg;
  if (!c.config_path.empty()) cfg = load_config(c.config_path, cfg);
  if (c.trunc) cfg.set("trunc", std::to_string(*c.trunc));
  for (const auto& b : c.binds) {
    const auto eq = b.find('=');
    if (eq == std::string::npos) fail(ErrorCode::InvalidConfig, "cli", "--bind expects name=value, got '" + b + "'");
    cfg.set("bind." + b.substr(0, eq), b.substr(eq + 1));
  }
  return cfg;
}

Format format_of(const Common& c) { return c.format == "machine" ? Format::Machine : Format::Text; }

/// One field per non-blank line; '#' starts a comment.
std::vector<std::string> read_fields(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidConfig, "cli", "cannot read '" + path + "'");
  std::vector<std::string> fields;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) fields.push_back(line);
  }
  return fields;
}

int exit_code(const Error& e) {
  return (e.code() == ErrorCode::ParseError || e.code() == ErrorCode::InvalidConfig) ? kExitParse : kExitPrecondition;
}

void report_error(const Error& e) { std::cerr << "error: " << e.what() << "\n"; }

std::string exact(const Coefficient& c) { return c.to_string(); }

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

/// Runs `pipeline` on the positional expression or on each file, in input order.
int run_fields(const std::string& expr, const std::vector<std::string>& files, const Common& common,
               const std::function<void(Config&)>& adjust) {
  Config cfg = make_config(common);
  adjust(cfg);
  std::vector<std::string> inputs;
  if (!expr.empty()) inputs.push_back(expr);
  for (const auto& f : files)
    for (auto& line : read_fields(f)) inputs.push_back(std::move(line));
  if (inputs.empty()) fail(ErrorCode::InvalidConfig, "cli", "no input field given");
  std::vector<std::future<std::string>> jobs;
  for (const auto& in : inputs)
    jobs.push_back(std::async(std::launch::async, [&, in] { return emit(run_pipeline(in, cfg), format_of(common)); }));
  int code = 0;
  for (auto& j : jobs) {
    try {
      std::cout << j.get();
    } catch (const Error& e) {
      report_error(e);
      code = std::max(code, exit_code(e));
    }
  }
  return code;
}

int prenormalize(const std::string& expr, const Common& common, int depth) {
  const Config cfg = make_config(common);
  const PlanarVectorField X = parse_field(expr, cfg.bindings, cfg.trunc);
  const SingularityClass cls = classify(X, cfg.brjuno);
  Json j;
  j["field"] = X.to_string();
  j["class"] = to_string(cls.kind);
  if (cls.kind == ClassKind::SaddleNode) {
    const DulacForm d = dulac_prenormalize(X, depth);
    j["dulac"] = Json{{"k", d.k}, {"mu", exact(d.mu)}, {"depth", d.depth}, {"prenormal_form", d.field().to_string()}};
  }
  const FormalConjugacy f = formal_normal_form(X, cfg.trunc);
  j["formal_normal_form"] = Json{{"target", f.target.to_string()}, {"field", make_named(f.target, cfg.trunc).to_string()}};
  if (format_of(common) == Format::Machine) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "field:  " << j["field"].get<std::string>() << "\nclass:  " << j["class"].get<std::string>() << "\n";
    if (j.contains("dulac"))
      std::cout << "dulac:  k = " << j["dulac"]["k"] << ", mu = " << j["dulac"]["mu"].get<std::string>() << "\n";
    std::cout << "formal: " << f.target.to_string() << "\n";
  }
  return 0;
}

int elizarov(const std::string& mu, const std::vector<std::string>& coeffs, const Common& common) {
  const Config cfg = make_config(common);
  ElizarovInput in;
  in.mu = parse_scalar(mu, cfg.bindings);
  for (const auto& c : coeffs) {
    int m = 0, n = 0;
    char comma = 0, eq = 0;
    std::istringstream is(c);
    if (!(is >> m >> comma >> n >> eq) || comma != ',' || eq != '=')
      throw ParseError(0, "--coeff expects m,n=value, got '" + c + "'");
    std::string rest;
    std::getline(is, rest);
    in.coefficients[{m, n}] = parse_scalar(rest, cfg.bindings);
  }
  const ElizarovOutput out = elizarov_derivative(in);
  auto scalar = [](const ModularScalar& s) {
    Json j{{"float", complex_json(s.to_complex())}};
    if (s.exact) j["exact"] = exact(*s.exact);
    return j;
  };
  Json j;
  j["mu"] = exact(in.mu);
  Json dphi = Json::object();
  for (const auto& [n, v] : out.dphi) dphi[std::to_string(n)] = scalar(v);
  j["dphi"] = dphi;
  j["dt"] = scalar(out.dt);
  Json flagged = Json::array();
  for (const auto& f : out.flagged) flagged.push_back(Json{{"m", f.m}, {"n", f.n}, {"diagnostic", f.diagnostic}});
  j["flagged"] = flagged;
  j["metadata"] = out.metadata;
  if (format_of(common) == Format::Machine) {
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& [n, v] : out.dphi)
      std::cout << "dphi_" << n << " = " << (v.exact ? exact(*v.exact) : Json(complex_json(v.to_complex())).dump()) << "\n";
    std::cout << "dt = " << (out.dt.exact ? exact(*out.dt.exact) : Json(complex_json(out.dt.to_complex())).dump()) << "\n";
    for (const auto& f : out.flagged) std::cout << "flagged (" << f.m << "," << f.n << "): " << f.diagnostic << "\n";
  }
  return 0;
}

int omega(const std::string& f, const std::string& g, int k, const std::string& x0, const std::string& x1,
          const Common& common) {
  const Config cfg = make_config(common);
  const Series2 fs = evaluate(*parse_expression(f), cfg.bindings, cfg.trunc);
  const Series2 gs = evaluate(*parse_expression(g), cfg.bindings, cfg.trunc);
  const Coefficient a = parse_scalar(x0, cfg.bindings), b = parse_scalar(x1, cfg.bindings);
  const OmegaInvariant w = omega_invariant(fs, gs, k, a);
  const Complex integral = w.integral_to(b);
  if (format_of(common) == Format::Machine) {
    Json j{{"k", k},
           {"base_point", exact(a)},
           {"density", w.density.to_string('x')},
           {"log_factor", exact(w.log_factor)},
           {"integral", Json{{"to", exact(b)}, {"float", complex_json(integral)}}}};
    if (w.log_factor.is_zero()) j["integral"]["exact"] = exact(w.density_integral(a, b));
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "density:    " << w.density.to_string('x') << "\n";
    std::cout << "log factor: " << exact(w.log_factor) << "\n";
    std::cout << "integral:   " << integral.real() << (integral.imag() < 0 ? " - " : " + ") << std::abs(integral.imag())
              << "i\n";
  }
  return 0;
}

int brjuno(const std::string& surd, int liouville, const Common& common) {
  const Config cfg = make_config(common);
  BrjunoTarget target;
  if (liouville > 0) {
    target = LacunarySeries::liouville(liouville);
  } else {
    std::vector<Rational> parts;
    std::stringstream ss(surd);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const Coefficient c = parse_scalar(item, cfg.bindings);
      if (!c.is_real()) throw ParseError(0, "surd parts must be real");
      parts.push_back(c.re());
    }
    if (parts.size() != 3) throw ParseError(0, "--surd expects a,b,d for a + b*sqrt(d)");
    target = QuadraticSurd{parts[0], parts[1], parts[2]};
  }
  const BrjunoReport r = brjuno_report(target, cfg.brjuno);
  const double sum = r.partial_sums.empty() ? 0.0 : r.partial_sums.back();
  if (format_of(common) == Format::Machine) {
    Json j{{"target", r.target}, {"verdict", to_string(r.verdict)}, {"terms", r.partial_sums.size()}, {"partial_sum", sum}};
    if (r.first_small_increment) j["first_small_increment"] = *r.first_small_increment;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "verdict:     " << to_string(r.verdict) << "\nterms:       " << r.partial_sums.size()
              << "\npartial sum: " << sum << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classification and normal forms of planar vector-field singularities"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", common.format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
    sub->add_option("--trunc", common.trunc, "truncation order");
    sub->add_option("--config", common.config_path, "config file (key = value)");
    sub->add_option("--bind", common.binds, "scalar binding name=value");
  };

  std::string expr;
  std::vector<std::string> files;
  auto* classify_cmd = app.add_subcommand("classify", "eigen data, class, invariants and named form");
  classify_cmd->add_option("field", expr, "field expression, e.g. \"x^2*dx + y*dy\"");
  classify_cmd->add_option("--file", files, "files with one field per line, processed concurrently");
  add_common(classify_cmd);

  int depth = 0;
  auto* pre_cmd = app.add_subcommand("prenormalize", "Dulac prenormal form and formal normal form");
  pre_cmd->add_option("field", expr)->required();
  pre_cmd->add_option("--depth", depth, "Dulac depth N");
  add_common(pre_cmd);

  int steps = 1;
  auto* blow_cmd = app.add_subcommand("blowup", "blow-up cascade of an Ecalle form");
  blow_cmd->add_option("field", expr);
  blow_cmd->add_option("--file", files);
  blow_cmd->add_option("--steps", steps)->check(CLI::NonNegativeNumber);
  add_common(blow_cmd);

  std::optional<double> radius;
  std::optional<int> jet;
  auto* hol_cmd = app.add_subcommand("holonomy", "holonomy jet along {y = 0} around a circle");
  hol_cmd->add_option("field", expr);
  hol_cmd->add_option("--file", files);
  hol_cmd->add_option("--radius", radius)->check(CLI::PositiveNumber);
  hol_cmd->add_option("--jet", jet)->check(CLI::PositiveNumber);
  add_common(hol_cmd);

  std::string mu = "0";
  std::vector<std::string> coeffs;
  auto* eli_cmd = app.add_subcommand("elizarov", "derivative of the Martinet-Ramis moduli");
  eli_cmd->add_option("--mu", mu);
  eli_cmd->add_option("--coeff", coeffs, "m,n=value");
  add_common(eli_cmd);

  std::string f = "0", g = "1", x0 = "0", x1 = "1";
  int k = 2;
  auto* omega_cmd = app.add_subcommand("omega", "omega density of dx + y f dy and dx + y (f + y^(k-1) g) dy");
  omega_cmd->add_option("--f", f);
  omega_cmd->add_option("--g", g);
  omega_cmd->add_option("--k", k)->check(CLI::PositiveNumber);
  omega_cmd->add_option("--x0", x0);
  omega_cmd->add_option("--x1", x1);
  add_common(omega_cmd);

  std::string surd = "1/2,1/2,5";
  int liouville = 0;
  auto* brj_cmd = app.add_subcommand("brjuno", "budgeted Brjuno sum");
  brj_cmd->add_option("--surd", surd, "a,b,d for a + b*sqrt(d)");
  brj_cmd->add_option("--liouville", liouville, "sum of 10^(-k!) for k <= terms");
  add_common(brj_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (*classify_cmd) return run_fields(expr, files, common, [](Config&) {});
    if (*pre_cmd) return prenormalize(expr, common, depth);
    if (*blow_cmd) return run_fields(expr, files, common, [&](Config& c) { c.blowup_steps = steps; });
    if (*hol_cmd)
      return run_fields(expr, files, common, [&](Config& c) {
        c.holonomy = true;
        if (radius) c.radius = *radius;
        if (jet) c.jet_order = *jet;
      });
    if (*eli_cmd) return elizarov(mu, coeffs, common);
    if (*omega_cmd) return omega(f, g, k, x0, x1, common);
    if (*brj_cmd) return brjuno(surd, liouville, common);
  } catch (const Error& e) {
    report_error(e);
    return exit_code(e);
  }
  return 0;
}
