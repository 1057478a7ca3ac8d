#include "oqf/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace oqf::cli {

namespace {

[[noreturn]] void fail(const YAML::Node& node, const std::string& field, const std::string& what) {
  std::ostringstream os;
  os << "config";
  if (node.IsDefined() && node.Mark().line >= 0)
    os << " line " << node.Mark().line + 1 << ", column " << node.Mark().column + 1;
  os << ", field '" << field << "': " << what;
  throw InvalidInput(os.str());
}

void reject_unknown_keys(const YAML::Node& map, const std::string& where,
                         const std::set<std::string>& allowed) {
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) fail(kv.first, where.empty() ? key : where + "." + key, "unknown key");
  }
}

YAML::Node require_map(const YAML::Node& node, const std::string& field) {
  if (!node.IsMap()) fail(node, field, "expected a mapping");
  return node;
}

YAML::Node require_key(const YAML::Node& map, const std::string& key, const std::string& field) {
  const YAML::Node child = map[key];
  if (!child) fail(map, field, "missing");
  return child;
}

double read_double(const YAML::Node& node, const std::string& field) {
  if (!node.IsScalar()) fail(node, field, "expected a number");
  double value = 0.0;
  try {
    value = node.as<double>();
  } catch (const YAML::Exception&) {
    fail(node, field, "expected a number, got '" + node.Scalar() + "'");
  }
  if (!std::isfinite(value)) fail(node, field, "must be finite");
  return value;
}

double read_positive(const YAML::Node& node, const std::string& field) {
  const double value = read_double(node, field);
  if (!(value > 0.0)) fail(node, field, "must be > 0");
  return value;
}

std::int64_t read_int(const YAML::Node& node, const std::string& field) {
  if (!node.IsScalar()) fail(node, field, "expected an integer");
  try {
    return node.as<std::int64_t>();
  } catch (const YAML::Exception&) {
    fail(node, field, "expected an integer, got '" + node.Scalar() + "'");
  }
}

// A scalar is a real entry; a two-element sequence is (re, im).
Complex read_complex(const YAML::Node& node, const std::string& field) {
  if (node.IsScalar()) return {read_double(node, field), 0.0};
  if (node.IsSequence() && node.size() == 2)
    return {read_double(node[0], field + "[0]"), read_double(node[1], field + "[1]")};
  fail(node, field, "expected a number or a [re, im] pair");
}

ComplexVector read_vector(const YAML::Node& node, const std::string& field) {
  if (!node.IsSequence() || node.size() == 0) fail(node, field, "expected a non-empty list");
  ComplexVector out(static_cast<Eigen::Index>(node.size()));
  for (std::size_t i = 0; i < node.size(); ++i)
    out(static_cast<Eigen::Index>(i)) =
        read_complex(node[i], field + "[" + std::to_string(i) + "]");
  return out;
}

ComplexMatrix read_matrix(const YAML::Node& node, const std::string& field) {
  if (!node.IsSequence() || node.size() == 0) fail(node, field, "expected a list of rows");
  const auto rows = static_cast<Eigen::Index>(node.size());
  ComplexMatrix out(rows, rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const std::string row_field = field + "[" + std::to_string(i) + "]";
    const YAML::Node row = node[static_cast<std::size_t>(i)];
    if (!row.IsSequence() || static_cast<Eigen::Index>(row.size()) != rows)
      fail(row, row_field, "expected a row of " + std::to_string(rows) + " entries");
    for (Eigen::Index j = 0; j < rows; ++j)
      out(i, j) = read_complex(row[static_cast<std::size_t>(j)],
                               row_field + "[" + std::to_string(j) + "]");
  }
  return out;
}

std::vector<ComplexVector> read_vectors(const YAML::Node& node, const std::string& field,
                                        Eigen::Index n) {
  std::vector<ComplexVector> out;
  if (!node) return out;
  if (!node.IsSequence()) fail(node, field, "expected a list of vectors");
  for (std::size_t i = 0; i < node.size(); ++i) {
    const std::string entry = field + "[" + std::to_string(i) + "]";
    out.push_back(read_vector(node[i], entry));
    if (out.back().size() != n)
      fail(node[i], entry, "expected " + std::to_string(n) + " entries to match h");
  }
  return out;
}

ModelSource read_model(const YAML::Node& node) {
  require_map(node, "model");
  reject_unknown_keys(node, "model", {"physical", "explicit", "hatano_nelson"});
  if (node.size() != 1)
    fail(node, "model", "exactly one of physical, explicit, hatano_nelson is required");

  if (const YAML::Node phys = node["physical"]) {
    require_map(phys, "model.physical");
    reject_unknown_keys(phys, "model.physical", {"h", "loss", "gain"});
    PhysicalModel model;
    model.h = read_matrix(require_key(phys, "h", "model.physical.h"), "model.physical.h");
    model.lossVectors = read_vectors(phys["loss"], "model.physical.loss", model.h.rows());
    model.gainVectors = read_vectors(phys["gain"], "model.physical.gain", model.h.rows());
    return model;
  }
  if (const YAML::Node expl = node["explicit"]) {
    require_map(expl, "model.explicit");
    reject_unknown_keys(expl, "model.explicit", {"a", "m"});
    ExplicitModel model;
    model.a = read_matrix(require_key(expl, "a", "model.explicit.a"), "model.explicit.a");
    model.m = read_matrix(require_key(expl, "m", "model.explicit.m"), "model.explicit.m");
    if (model.m.rows() != model.a.rows())
      fail(expl["m"], "model.explicit.m", "size must match a");
    return model;
  }
  const YAML::Node hn = require_map(node["hatano_nelson"], "model.hatano_nelson");
  reject_unknown_keys(hn, "model.hatano_nelson", {"n", "omega", "lambda", "gamma", "a", "x"});
  auto key = [&hn](const char* name) {
    return require_key(hn, name, std::string("model.hatano_nelson.") + name);
  };
  skin::HatanoNelsonParams p;
  const auto n = read_int(key("n"), "model.hatano_nelson.n");
  if (n < 1 || n > 512) fail(key("n"), "model.hatano_nelson.n", "must lie in [1, 512]");
  p.n = static_cast<int>(n);
  p.omega = read_double(key("omega"), "model.hatano_nelson.omega");
  p.lambda = read_double(key("lambda"), "model.hatano_nelson.lambda");
  p.gamma = read_double(key("gamma"), "model.hatano_nelson.gamma");
  p.aParam = read_double(key("a"), "model.hatano_nelson.a");
  if (hn["x"]) p.x = read_double(hn["x"], "model.hatano_nelson.x");
  try {
    p.validate();
  } catch (const InvalidInput& e) {
    fail(hn, "model.hatano_nelson", e.what());
  }
  return p;
}

}  // namespace

Command parse_command(std::string_view name) {
  if (name == "evolve") return Command::Evolve;
  if (name == "steady") return Command::Steady;
  if (name == "skin") return Command::Skin;
  if (name == "verify") return Command::Verify;
  throw InvalidInput("unknown command '" + std::string(name) +
                     "' (expected evolve, steady, skin or verify)");
}

std::string_view command_name(Command command) {
  switch (command) {
    case Command::Evolve: return "evolve";
    case Command::Steady: return "steady";
    case Command::Skin: return "skin";
    case Command::Verify: return "verify";
  }
  return "";
}

JobConfig parse_config(Command command, const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    std::ostringstream os;
    os << "config line " << e.mark.line + 1 << ", column " << e.mark.column + 1
       << ": " << e.msg;
    throw InvalidInput(os.str());
  }
  if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  require_map(root, "<root>");
  reject_unknown_keys(root, "",
                      {"model", "initial", "times", "output", "tolerances", "n", "seed", "delta"});

  JobConfig config;
  config.command = command;

  if (root["model"]) config.model = read_model(root["model"]);

  if (const YAML::Node init = root["initial"]) {
    if (init.IsScalar()) {
      if (init.Scalar() != "vacuum") fail(init, "initial", "expected 'vacuum' or a mapping with r");
    } else {
      require_map(init, "initial");
      reject_unknown_keys(init, "initial", {"r"});
      config.initial = read_matrix(require_key(init, "r", "initial.r"), "initial.r");
    }
  }

  if (const YAML::Node times = root["times"]) {
    if (!times.IsSequence()) fail(times, "times", "expected a list of numbers");
    for (std::size_t i = 0; i < times.size(); ++i) {
      const std::string field = "times[" + std::to_string(i) + "]";
      const double t = read_double(times[i], field);
      if (t < 0.0) fail(times[i], field, "must be nonnegative");
      if (!config.times.empty() && t < config.times.back())
        fail(times[i], field, "times must be sorted ascending");
      config.times.push_back(t);
    }
  }

  if (const YAML::Node out = root["output"]) {
    if (!out.IsScalar() || out.Scalar().empty()) fail(out, "output", "expected a file path");
    config.output = out.Scalar();
  }

  if (const YAML::Node tol = root["tolerances"]) {
    require_map(tol, "tolerances");
    reject_unknown_keys(tol, "tolerances", {"physical", "verify"});
    if (tol["physical"]) config.tolerances.physical = read_positive(tol["physical"], "tolerances.physical");
    if (tol["verify"]) config.tolerances.verify = read_positive(tol["verify"], "tolerances.verify");
  }

  if (const YAML::Node n = root["n"]) {
    const auto modes = read_int(n, "n");
    if (modes < 1 || modes > 5) fail(n, "n", "must lie in [1, 5]");
    config.modes = static_cast<int>(modes);
  }

  if (const YAML::Node seed = root["seed"]) {
    if (!seed.IsScalar()) fail(seed, "seed", "expected an unsigned integer");
    try {
      config.seed = seed.as<std::uint64_t>();
    } catch (const YAML::Exception&) {
      fail(seed, "seed", "expected an unsigned integer, got '" + seed.Scalar() + "'");
    }
  }

  if (const YAML::Node delta = root["delta"]) {
    config.delta = read_double(delta, "delta");
    if (!(config.delta > 0.0 && config.delta < 1.0)) fail(delta, "delta", "must lie in (0, 1)");
  }

  switch (command) {
    case Command::Evolve:
      if (!config.model) fail(root, "model", "missing");
      if (config.times.empty()) fail(root, "times", "evolve needs at least one sample time");
      break;
    case Command::Steady:
      if (!config.model) fail(root, "model", "missing");
      break;
    case Command::Skin:
      if (!config.model || !std::holds_alternative<skin::HatanoNelsonParams>(*config.model))
        fail(root, "model.hatano_nelson", "skin needs a hatano_nelson model");
      break;
    case Command::Verify:
      break;
  }
  return config;
}

JobConfig load_config(Command command, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(command, text.str());
}

}  // namespace oqf::cli
