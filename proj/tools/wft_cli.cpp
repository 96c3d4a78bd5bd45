// wft: command-line driver for the wave-front-tracking solver.
//
//   wft solve        --config cfg.json --out DIR
//   wft compare-flux --config cfg.json --out DIR
//   wft nonaut       --config cfg.json --out DIR
//   wft verify       --config cfg.json --out DIR [--artifacts DIR]
//   wft sweep        --config cfg.json --out DIR [--jobs N]
//
// FT_LOG=error|warn|info|debug sets stderr verbosity (default warn).

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "wft/io.hpp"

namespace fs = std::filesystem;
using namespace wft;

namespace {

enum class Level { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

Level log_level() {
  const char* env = std::getenv("FT_LOG");
  if (!env) return Level::kWarn;
  const std::string v = env;
  if (v == "error") return Level::kError;
  if (v == "info") return Level::kInfo;
  if (v == "debug") return Level::kDebug;
  return Level::kWarn;
}

std::mutex log_mutex;

void log(Level level, const std::string& message) {
  static const Level threshold = log_level();
  if (level > threshold) return;
  static const char* names[] = {"error", "warn", "info", "debug"};
  std::lock_guard<std::mutex> lock(log_mutex);
  std::cerr << "wft[" << names[static_cast<int>(level)] << "] " << message << '\n';
}

constexpr int kViolation = 1;
constexpr int kFailure = 2;

Solution solve(const ExperimentConfig& cfg) {
  const GridData data = cfg.grid_data();
  if (cfg.depth() == 0 && cfg.flux.is_autonomous()) return run(cfg.flux, data, cfg.horizon, cfg.tracker);
  return dyadic_solve(cfg.flux, data, cfg.depth(), cfg.horizon, cfg.tracker);
}

int cmd_solve(const ExperimentConfig& cfg, const fs::path& out) {
  const Solution sol = solve(cfg);
  log(Level::kInfo, "solved: " + std::to_string(sol.log.size()) + " log records, " +
                        std::to_string(sol.epochs.size()) + " epochs");
  write_file(out / "profiles.csv", profiles_csv(profile_rows(sol)));
  write_file(out / "events.jsonl", events_jsonl(sol));
  Report report = bound_report(sol);
  const AdmissibilityResult left = boundary_admissibility(sol, Side::kRight);
  report.add({"boundary_admissibility_left", left.max_flux, 1e-12, left.max_flux <= 1e-12, true, ""});
  if (sol.domain.is_segment()) {
    const AdmissibilityResult right = boundary_admissibility(sol, Side::kLeft);
    report.add({"boundary_admissibility_right", right.max_flux, 1e-12, right.max_flux <= 1e-12, true, ""});
  }
  write_file(out / "bounds.json", report_json(report).dump(2) + "\n");
  if (!report.passed()) {
    log(Level::kError, "bound violation:\n" + report_text(report));
    return kViolation;
  }
  return 0;
}

int cmd_compare_flux(const ExperimentConfig& cfg, const fs::path& out) {
  if (!cfg.flux_g) throw ConfigError("compare-flux needs flux_g");
  StabilityMode mode;
  if (cfg.depth() > 0 || !cfg.flux.is_autonomous() || !cfg.flux_g->is_autonomous()) mode.depth = cfg.depth();
  const auto rows = flux_stability_check(cfg.flux, *cfg.flux_g, cfg.grid_data(), cfg.horizon,
                                         uniform_times(cfg.horizon, cfg.time_grid), mode, cfg.tracker);
  write_file(out / "stability.csv", check_rows_csv(rows));
  const bool ok = std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
  if (!ok) log(Level::kError, "flux stability bound violated");
  return ok ? 0 : kViolation;
}

int cmd_nonaut(const ExperimentConfig& cfg, const fs::path& out) {
  const GridData data = cfg.grid_data();
  const auto rows = cauchy_study(cfg.flux, data, cfg.depths, cfg.horizon, cfg.time_grid, cfg.tracker);
  write_file(out / "cauchy.csv", cauchy_csv(rows));
  write_file(out / "constants.json", constants_json(bound_constants(cfg.flux, data, cfg.horizon)).dump(2) + "\n");
  const bool ok =
      std::all_of(rows.begin(), rows.end(), [](const CauchyRow& r) { return within_bound(r.sup_distance, r.bound); });
  if (!ok) log(Level::kError, "dyadic Cauchy bound violated");
  return ok ? 0 : kViolation;
}

int cmd_verify(const ExperimentConfig& cfg, const fs::path& artifacts, const fs::path& out) {
  const auto rows = parse_profiles_csv(read_file(artifacts / "profiles.csv"));
  const Solution frame = solution_frame(cfg.flux, cfg.grid_data(), cfg.depth(), cfg.horizon);
  ProfileCheckOptions options;
  options.seed = cfg.seed;
  const Report report = verify_profiles(frame, rows, options);
  write_file(out / "verify.json", report_json(report).dump(2) + "\n");
  std::cout << report_text(report);
  return report.passed() ? 0 : kViolation;
}

int dispatch(const std::string& command, const ExperimentConfig& cfg, const fs::path& out,
             const fs::path& artifacts) {
  if (command == "solve") return cmd_solve(cfg, out);
  if (command == "compare-flux") return cmd_compare_flux(cfg, out);
  if (command == "nonaut") return cmd_nonaut(cfg, out);
  if (command == "verify") return cmd_verify(cfg, artifacts, out);
  throw InvalidArgument("unknown command " + command);
}

int cmd_sweep(const ExperimentConfig& cfg, const fs::path& out, std::size_t jobs) {
  if (!cfg.sweep) throw ConfigError("sweep needs a \"sweep\" section");
  const SweepSpec& spec = *cfg.sweep;
  const std::size_t cells = spec.values.size();
  std::vector<int> status(cells, 0);
  std::vector<std::string> errors(cells);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < cells; i = next++) {
      std::ostringstream name;
      name << "cell_" << std::setw(3) << std::setfill('0') << i;
      const fs::path dir = out / name.str();
      try {
        nlohmann::json doc = cfg.raw;
        doc.erase("sweep");
        doc[spec.parameter] = spec.values[i];
        ExperimentConfig cell = parse_config(doc, "sweep cell " + std::to_string(i));
        cell.seed = cfg.seed;
        write_file(dir / "config.json", doc.dump(2) + "\n");
        if (spec.command == "verify") {
          const int s = cmd_solve(cell, dir);
          status[i] = std::max(s, cmd_verify(cell, dir, dir));
        } else {
          status[i] = dispatch(spec.command, cell, dir, dir);
        }
        log(Level::kInfo, name.str() + " finished with status " + std::to_string(status[i]));
      } catch (const std::exception& e) {
        status[i] = kFailure;
        errors[i] = e.what();
        log(Level::kError, name.str() + ": " + e.what());
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t j = 0; j < std::max<std::size_t>(1, std::min(jobs, cells)); ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::ostringstream csv;
  csv << "cell,value,status,error\n";
  int worst = 0;
  for (std::size_t i = 0; i < cells; ++i) {
    csv << i << ",\"" << spec.values[i].dump() << "\"," << status[i] << ",\"" << errors[i] << "\"\n";
    worst = std::max(worst, status[i]);
  }
  write_file(out / "sweep.csv", csv.str());
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wave-front-tracking solver for scalar conservation laws with boundary data"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir = "out";
  std::string artifacts_dir;
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 1;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"solve", "Solve one problem; writes profiles.csv, events.jsonl, bounds.json"},
      {"compare-flux", "Compare the solutions for flux and flux_g; writes stability.csv"},
      {"nonaut", "Dyadic Cauchy study; writes cauchy.csv and constants.json"},
      {"verify", "Verify profiles.csv against the configured problem"},
      {"sweep", "Run a parameter sweep over a worker pool"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "Configuration JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--seed", seed, "Random seed (overrides the configuration)");
    sub->add_option("--jobs", jobs, "Worker threads for sweep")->check(CLI::PositiveNumber);
    if (name == "verify") sub->add_option("--artifacts", artifacts_dir, "Directory holding profiles.csv (default --out)");
  }
  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    ExperimentConfig cfg = load_config(config_path);
    if (seed) cfg.seed = *seed;
    const fs::path out(out_dir);
    fs::create_directories(out);
    if (command == "sweep") return cmd_sweep(cfg, out, jobs);
    return dispatch(command, cfg, out, artifacts_dir.empty() ? out : fs::path(artifacts_dir));
  } catch (const std::exception& e) {
    log(Level::kError, e.what());
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
}
