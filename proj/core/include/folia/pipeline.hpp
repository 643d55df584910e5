#pragma once

#include <optional>
#include <string>
#include <vector>

#include "folia/blowup.hpp"
#include "folia/classify.hpp"
#include "folia/dsl.hpp"
#include "folia/named_forms.hpp"
#include "folia/numerics.hpp"

namespace folia {

inline constexpr const char* kToolName = "folia";
inline constexpr const char* kToolVersion = "1.0.0";

/// Settings shared by every subcommand. Config files hold `key = value`
/// lines with `#` comments; keys:
///   trunc, brjuno.max_terms, brjuno.threshold, brjuno.increment,
///   brjuno.stable, integrator.tolerance, holonomy.radius, holonomy.jet,
///   blowup.steps, bind.<name>
struct Config {
  int trunc = 16;
  BrjunoBudget brjuno;
  double tolerance = 1e-10;
  double radius = 1;
  int jet_order = 3;
  std::optional<int> blowup_steps;
  bool holonomy = false;
  Bindings bindings;

  /// Applies one key; raises InvalidConfig for unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
};

Config load_config(const std::string& path, Config base = {});
Config parse_config(const std::string& text, Config base = {});

struct DulacSection {
  int k = 0;
  Coefficient mu;
};

struct CSEntry {
  Axis axis = Axis::XAxis;
  Coefficient value;
};

struct Report {
  std::string input;
  PlanarVectorField field;
  Config config;
  bool singular = false;
  std::optional<SingularityClass> cls;
  std::optional<DulacSection> dulac;
  std::optional<NamedForm> named;
  std::vector<CSEntry> cs_indices;
  std::optional<CascadeReport> cascade;
  std::optional<HolonomyJet> holonomy;
};

/// Classifies the field and fills the optional sections requested by the
/// config. Module errors propagate with their provenance.
Report run_pipeline(const std::string& input, const Config& config);

enum class Format { Text, Machine };
std::string emit(const Report& report, Format format);

}  // namespace folia
