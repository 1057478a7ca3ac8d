#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "oqf/gaussian.hpp"
#include "oqf/skin.hpp"

namespace oqf::cli {

enum class Command { Evolve, Steady, Skin, Verify };

Command parse_command(std::string_view name);
std::string_view command_name(Command command);

struct ExplicitModel {
  ComplexMatrix a;
  ComplexMatrix m;
};

using ModelSource = std::variant<PhysicalModel, skin::HatanoNelsonParams, ExplicitModel>;

struct Tolerances {
  std::optional<double> physical;
  std::optional<double> verify;
};

struct JobConfig {
  Command command = Command::Verify;
  std::optional<ModelSource> model;
  std::optional<ComplexMatrix> initial;  // empty means the vacuum
  std::vector<double> times;
  std::optional<std::string> output;
  Tolerances tolerances;
  int modes = 2;  // verify only
  std::uint64_t seed = 0;
  double delta = 0.5;  // skin only, featureless comparison
};

/// Parses a YAML job description. Errors are InvalidInput with the line and
/// field that failed.
JobConfig parse_config(Command command, const std::string& text);
JobConfig load_config(Command command, const std::string& path);

}  // namespace oqf::cli
