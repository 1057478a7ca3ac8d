#include "oqf/cli/jobs.hpp"

#include <fstream>
#include <ostream>

#include "oqf/cli/csv.hpp"
#include "oqf/identity_suite.hpp"

namespace oqf::cli {

namespace {

constexpr double kDefaultPhysicalTol = 1e-10;

double physical_tol(const JobConfig& config) {
  return config.tolerances.physical.value_or(kDefaultPhysicalTol);
}

LiouvillianParams params_of(const JobConfig& config) {
  const double tol = physical_tol(config);
  return std::visit(
      [tol](const auto& model) -> LiouvillianParams {
        using T = std::decay_t<decltype(model)>;
        if constexpr (std::is_same_v<T, PhysicalModel>) {
          const LiouvillianParams p = params_from_model(model);
          return {p.a(), p.m(), tol};
        } else if constexpr (std::is_same_v<T, ExplicitModel>) {
          return {model.a, model.m, tol};
        } else {
          const skin::SkinBath bath = skin::build_bath(model);
          return {bath.a, bath.m, tol};
        }
      },
      *config.model);
}

LiouvillianParams physical_params(const JobConfig& config) {
  LiouvillianParams p = params_of(config);
  if (!p.gksl())
    throw PhysicsError(
        "model violates O <= M <= -A - A^dagger: make M Hermitian positive semidefinite and "
        "keep -A - A^dagger - M positive semidefinite (or loosen tolerances.physical)");
  return p;
}

std::vector<std::string> correlation_header(Eigen::Index n) {
  std::vector<std::string> header;
  for (Eigen::Index j = 1; j <= n; ++j)
    for (Eigen::Index k = 1; k <= n; ++k) {
      const std::string base = "r_" + std::to_string(j) + "_" + std::to_string(k);
      header.push_back(base + "_re");
      header.push_back(base + "_im");
    }
  for (Eigen::Index j = 1; j <= n; ++j) header.push_back("occupation_" + std::to_string(j));
  header.push_back("entropy");
  return header;
}

void append_correlation(std::vector<std::string>& row, const GaussianState& s) {
  const ComplexMatrix& r = s.r();
  for (Eigen::Index j = 0; j < r.rows(); ++j)
    for (Eigen::Index k = 0; k < r.cols(); ++k) {
      row.push_back(format_number(r(j, k).real()));
      row.push_back(format_number(r(j, k).imag()));
    }
  for (Eigen::Index j = 0; j < r.rows(); ++j) row.push_back(format_number(r(j, j).real()));
  row.push_back(format_number(entropy(s)));
}

JobOutput run_evolve(const JobConfig& config) {
  const LiouvillianParams p = physical_params(config);
  const double tol = physical_tol(config);
  const Eigen::Index n = p.size();
  if (config.initial && config.initial->rows() != n)
    throw InvalidInput("initial.r has size " + std::to_string(config.initial->rows()) +
                       " but the model has " + std::to_string(n) + " modes");
  const GaussianState initial =
      config.initial ? GaussianState(*config.initial, tol) : GaussianState::vacuum(n);

  std::vector<std::string> header{"t"};
  for (auto& name : correlation_header(n)) header.push_back(std::move(name));
  CsvTable table(std::move(header));
  for (double t : config.times) {
    std::vector<std::string> row{format_number(t)};
    append_correlation(row, evolve_state(p, initial, t, tol));
    table.add_row(std::move(row));
  }
  return {table.str()};
}

JobOutput run_steady(const JobConfig& config) {
  const LiouvillianParams p = physical_params(config);
  const GaussianState steady = steady_state(p, std::nullopt, physical_tol(config));
  CsvTable table(correlation_header(p.size()));
  std::vector<std::string> row;
  append_correlation(row, steady);
  table.add_row(std::move(row));
  return {table.str()};
}

JobOutput run_skin(const JobConfig& config) {
  const auto& p = std::get<skin::HatanoNelsonParams>(*config.model);
  const std::vector<double> profile = skin::steady_profile(p);
  const std::vector<double> slopes = skin::log_slopes(profile);
  const ComplexMatrix target = skin::localized_target(p);
  const ComplexMatrix featureless = skin::featureless_choice(p, config.delta);

  CsvTable table({"site", "occupation", "target", "featureless_occupation", "log_slope", "kappa",
                  "x"});
  for (int j = 0; j < p.n; ++j) {
    const auto idx = static_cast<std::size_t>(j);
    table.add_row({std::to_string(j + 1), format_number(profile[idx]),
                   format_number(target(j, j).real()), format_number(featureless(j, j).real()),
                   idx < slopes.size() ? format_number(slopes[idx]) : std::string(),
                   format_number(p.kappa()), format_number(p.x_value())});
  }
  return {table.str()};
}

JobOutput run_verify(const JobConfig& config) {
  const auto checks = verify::run_identity_suite(config.modes, config.seed, config.tolerances.verify);
  CsvTable table({"check", "formula", "n", "seed", "residual", "tolerance", "status"});
  JobOutput out;
  for (const auto& check : checks) {
    table.add_row({check.name, check.formula, std::to_string(config.modes),
                   std::to_string(config.seed), format_number(check.residual),
                   format_number(check.tolerance), check.passed() ? "pass" : "fail"});
    if (!check.passed()) out.verificationFailed = true;
  }
  out.csv = table.str();
  return out;
}

}  // namespace

JobOutput run_job(const JobConfig& config) {
  switch (config.command) {
    case Command::Evolve: return run_evolve(config);
    case Command::Steady: return run_steady(config);
    case Command::Skin: return run_skin(config);
    case Command::Verify: return run_verify(config);
  }
  throw InvalidInput("unknown command");
}

int execute(const Invocation& invocation, std::ostream& out, std::ostream& err) {
  try {
    JobConfig config = load_config(invocation.command, invocation.configPath);
    if (invocation.seed) config.seed = *invocation.seed;
    if (invocation.tolerance) {
      if (!(*invocation.tolerance > 0.0)) throw InvalidInput("--tol must be > 0");
      if (config.command == Command::Verify)
        config.tolerances.verify = invocation.tolerance;
      else
        config.tolerances.physical = invocation.tolerance;
    }

    const JobOutput result = run_job(config);
    const std::optional<std::string> path =
        invocation.outPath ? invocation.outPath : config.output;
    if (path) {
      std::ofstream file(*path, std::ios::binary);
      if (!file) throw InvalidInput("cannot open output file '" + *path + "'");
      file << result.csv;
      if (!file) throw InvalidInput("failed writing output file '" + *path + "'");
    } else {
      out << result.csv;
    }

    if (result.verificationFailed) {
      err << "error: verification failed: at least one identity exceeded its tolerance\n";
      return kVerificationFailed;
    }
    return kSuccess;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const PhysicsError& e) {
    err << "error: " << e.what() << '\n';
    return kPhysicsError;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return kPhysicsError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
}

}  // namespace oqf::cli
