#include "folia/pipeline.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "folia/error.hpp"
#include "folia/normal_forms.hpp"

namespace folia {

namespace {

const char* kModule = "cli";

using Json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

int to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const int r = std::stoi(v, &used);
    if (used == v.size()) return r;
  } catch (const std::exception&) {
  }
  fail(ErrorCode::InvalidConfig, kModule, key + ": expected an integer, got '" + v + "'");
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double r = std::stod(v, &used);
    if (used == v.size()) return r;
  } catch (const std::exception&) {
  }
  fail(ErrorCode::InvalidConfig, kModule, key + ": expected a number, got '" + v + "'");
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

Json exact_json(const Coefficient& c) { return Json{{"exact", c.to_string()}}; }

Json complex_json(Complex z, std::optional<double> error = std::nullopt) {
  Json j{{"float", Json::array({z.real(), z.imag()})}};
  if (error) j["error"] = *error;
  return j;
}

Json scalar_json(const Scalar& s) {
  if (s.exact) return exact_json(*s.exact);
  if (s.surd) return Json{{"exact", s.surd->to_string()}};
  return complex_json(s.approx);
}

std::string scalar_text(const Scalar& s) {
  if (s.is_exact()) return s.to_string();
  return s.to_string() + " (float)";
}

std::string complex_text(Complex z) { return fmt_double(z.real()) + (z.imag() < 0 ? " - " : " + ") + fmt_double(std::abs(z.imag())) + "i"; }

Json config_json(const Config& c) {
  Json j;
  j["trunc"] = c.trunc;
  j["brjuno"] = Json{{"max_terms", c.brjuno.max_terms},
                     {"threshold", c.brjuno.divergence_threshold},
                     {"increment", c.brjuno.increment_tolerance},
                     {"stable", c.brjuno.stable_increments}};
  j["integrator_tolerance"] = c.tolerance;
  j["holonomy"] = Json{{"radius", c.radius}, {"jet", c.jet_order}};
  if (c.blowup_steps) j["blowup_steps"] = *c.blowup_steps;
  Json b = Json::object();
  for (const auto& [name, v] : c.bindings) b[name] = v.to_string();
  j["bindings"] = b;
  return j;
}

Json class_json(const SingularityClass& cls) {
  Json j{{"kind", to_string(cls.kind)}};
  if (cls.kind == ClassKind::ResonantNode) j["k"] = cls.k;
  if (cls.kind == ClassKind::ResonantSaddle) {
    j["p"] = cls.p;
    j["q"] = cls.q;
  }
  if (cls.focus_a) j["focus"] = Json{{"a", scalar_json(*cls.focus_a)}, {"b", scalar_json(*cls.focus_b)}};
  if (cls.brjuno) {
    j["brjuno"] = Json{{"verdict", to_string(cls.brjuno->verdict)},
                       {"terms", cls.brjuno->partial_sums.size()},
                       {"partial_sum", cls.brjuno->partial_sums.empty() ? 0.0 : cls.brjuno->partial_sums.back()}};
  }
  return j;
}

Json eigen_json(const EigenData& e) {
  Json j{{"lambda1", scalar_json(e.lambda1)}, {"lambda2", scalar_json(e.lambda2)}};
  if (e.ratio) j["ratio"] = scalar_json(*e.ratio);
  return j;
}

Json report_json(const Report& r) {
  Json j;
  j["tool"] = Json{{"name", kToolName}, {"version", kToolVersion}, {"grammar", kGrammarVersion}};
  j["config"] = config_json(r.config);
  j["input"] = r.input;
  j["field"] = r.field.to_string();
  j["singular"] = r.singular;
  if (!r.singular) {
    j["class"] = Json{{"kind", "NonSingular"}};
    return j;
  }
  j["eigen"] = eigen_json(r.cls->eigen);
  j["class"] = class_json(*r.cls);
  if (r.dulac) j["dulac"] = Json{{"k", r.dulac->k}, {"mu", exact_json(r.dulac->mu)}};
  j["named_form"] = r.named ? Json(r.named->to_string()) : Json(nullptr);
  Json cs = Json::array();
  for (const auto& e : r.cs_indices) cs.push_back(Json{{"curve", to_string(e.axis)}, {"index", exact_json(e.value)}});
  j["cs_indices"] = cs;
  if (r.cascade) {
    Json pts = Json::array();
    for (const auto& p : r.cascade->singular_points) {
      Json q{{"step", p.step}, {"chart", to_string(p.chart)}, {"class", class_json(p.cls)}};
      if (p.eigen.ratio) q["ratio"] = scalar_json(*p.eigen.ratio);
      if (p.mu) q["mu"] = exact_json(*p.mu);
      pts.push_back(q);
    }
    j["cascade"] = Json{{"steps", r.config.blowup_steps.value_or(0)}, {"singular_points", pts}};
  }
  if (r.holonomy) {
    Json c = Json::array();
    for (int n = 1; n <= r.holonomy->jet_order; ++n) {
      const auto k = static_cast<std::size_t>(n);
      c.push_back(complex_json(r.holonomy->coeffs[k], r.holonomy->error[k]));
    }
    j["holonomy"] = Json{{"loop", "circle"}, {"orientation", "counterclockwise"}, {"radius", r.config.radius}, {"coefficients", c}};
  }
  return j;
}

std::string report_text(const Report& r) {
  std::ostringstream os;
  os << kToolName << " " << kToolVersion << " (trunc " << r.config.trunc << ")\n";
  os << "input:    " << r.input << "\n";
  os << "field:    " << r.field.to_string() << "\n";
  if (!r.singular) {
    os << "class:    NonSingular\n";
    return os.str();
  }
  const EigenData& e = r.cls->eigen;
  os << "eigen:    " << scalar_text(e.lambda1) << ", " << scalar_text(e.lambda2);
  if (e.ratio) os << " (ratio " << scalar_text(*e.ratio) << ")";
  os << "\n";
  os << "class:    " << r.cls->to_string() << "\n";
  if (r.cls->brjuno) os << "brjuno:   " << to_string(r.cls->brjuno->verdict) << "\n";
  if (r.dulac) os << "dulac:    k = " << r.dulac->k << ", mu = " << r.dulac->mu.to_string() << "\n";
  os << "named:    " << (r.named ? r.named->to_string() : "none") << "\n";
  for (const auto& c : r.cs_indices) os << "CS index: " << c.value.to_string() << " along " << to_string(c.axis) << "\n";
  if (r.cascade) {
    os << "cascade:  " << r.config.blowup_steps.value_or(0) << " steps\n";
    for (const auto& p : r.cascade->singular_points) {
      os << "  step " << p.step << " " << to_string(p.chart) << ": " << p.cls.to_string();
      if (p.mu) os << ", mu = " << p.mu->to_string();
      os << "\n";
    }
  }
  if (r.holonomy) {
    os << "holonomy: radius " << fmt_double(r.config.radius) << ", counterclockwise\n";
    for (int n = 1; n <= r.holonomy->jet_order; ++n) {
      const auto k = static_cast<std::size_t>(n);
      os << "  c" << n << " = " << complex_text(r.holonomy->coeffs[k]) << " (error " << fmt_double(r.holonomy->error[k])
         << ")\n";
    }
  }
  return os.str();
}

}  // namespace

void Config::set(const std::string& key, const std::string& value) {
  if (key == "trunc") {
    trunc = to_int(key, value);
    if (trunc < 1) fail(ErrorCode::InvalidConfig, kModule, "trunc must be >= 1");
  } else if (key == "brjuno.max_terms") {
    brjuno.max_terms = to_int(key, value);
  } else if (key == "brjuno.threshold") {
    brjuno.divergence_threshold = to_double(key, value);
  } else if (key == "brjuno.increment") {
    brjuno.increment_tolerance = to_double(key, value);
  } else if (key == "brjuno.stable") {
    brjuno.stable_increments = to_int(key, value);
  } else if (key == "integrator.tolerance") {
    tolerance = to_double(key, value);
    if (!(tolerance > 0)) fail(ErrorCode::InvalidConfig, kModule, "integrator.tolerance must be positive");
  } else if (key == "holonomy.radius") {
    radius = to_double(key, value);
    if (!(radius > 0)) fail(ErrorCode::InvalidConfig, kModule, "holonomy.radius must be positive");
  } else if (key == "holonomy.jet") {
    jet_order = to_int(key, value);
    if (jet_order < 1) fail(ErrorCode::InvalidConfig, kModule, "holonomy.jet must be >= 1");
  } else if (key == "blowup.steps") {
    blowup_steps = to_int(key, value);
    if (*blowup_steps < 0) fail(ErrorCode::InvalidConfig, kModule, "blowup.steps must be >= 0");
  } else if (key.rfind("bind.", 0) == 0 && key.size() > 5) {
    bindings[key.substr(5)] = parse_scalar(value, bindings);
  } else {
    fail(ErrorCode::InvalidConfig, kModule, "unknown config key '" + key + "'");
  }
}

Config parse_config(const std::string& text, Config base) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::InvalidConfig, kModule, "line " + std::to_string(lineno) + ": expected key = value");
    base.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return base;
}

Config load_config(const std::string& path, Config base) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidConfig, kModule, "cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

Report run_pipeline(const std::string& input, const Config& config) {
  Report r;
  r.input = input;
  r.config = config;
  r.field = parse_field(input, config.bindings, config.trunc);
  r.singular = r.field.singular_at_origin();
  if (!r.singular) return r;
  r.cls = classify(r.field, config.brjuno);
  if (r.cls->kind == ClassKind::SaddleNode) {
    const DulacForm d = dulac_prenormalize(r.field, 0);
    r.dulac = DulacSection{d.k, d.mu};
  }
  r.named = recognize(r.field);
  for (Axis a : {Axis::XAxis, Axis::YAxis}) {
    if (!is_axis_invariant(r.field, a)) continue;
    try {
      r.cs_indices.push_back({a, camacho_sad_index(r.field, a).value});
    } catch (const Error&) {
    }
  }
  if (config.blowup_steps) r.cascade = cascade(r.field, *config.blowup_steps);
  if (config.holonomy) {
    PathSpec loop = PathSpec::circle(config.radius);
    loop.tolerance = config.tolerance;
    r.holonomy = holonomy_jet(r.field, loop, config.jet_order);
  }
  return r;
}

std::string emit(const Report& report, Format format) {
  if (format == Format::Machine) return report_json(report).dump(2) + "\n";
  return report_text(report);
}

}  // namespace folia
