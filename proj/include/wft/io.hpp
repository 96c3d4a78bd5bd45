#ifndef WFT_IO_HPP_
#define WFT_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "wft/nonaut.hpp"
#include "wft/tracker.hpp"
#include "wft/verify.hpp"

namespace wft {

/// Malformed or schema-violating configuration. The message carries the
/// source name and line.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

inline constexpr int kSchemaVersion = 1;

struct SweepSpec {
  std::string parameter;  // top-level key replaced per cell
  std::vector<nlohmann::json> values;
  std::string command = "solve";
};

struct ExperimentConfig {
  int schema_version = kSchemaVersion;
  Domain domain;
  SpaceTimeFlux flux;
  std::optional<SpaceTimeFlux> flux_g;
  std::vector<double> epsilons;
  double horizon = 1.0;
  std::vector<std::size_t> depths{0};
  StepFunction u_o;
  StepFunction u_b;
  std::optional<StepFunction> u_b2;
  std::size_t time_grid = 20;
  std::uint64_t seed = 1;
  TrackerOptions tracker;
  std::optional<SweepSpec> sweep;
  nlohmann::json raw;

  double eps() const { return epsilons.front(); }
  std::size_t depth() const { return depths.front(); }
  IbvpData data() const { return {u_o, u_b, u_b2, domain}; }
  GridData grid_data() const { return quantize_data(data(), eps()); }
};

ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>");
ExperimentConfig parse_config(const nlohmann::json& doc, const std::string& source = "<config>");
inline ExperimentConfig parse_config(const char* text, const std::string& source = "<config>") {
  return parse_config(std::string(text), source);
}
ExperimentConfig load_config(const std::filesystem::path& path);

/// Shortest decimal string that reads back to the same double.
std::string format_double(double x);

// Artifacts

std::string profiles_csv(const std::vector<ProfileRow>& rows);
std::vector<ProfileRow> parse_profiles_csv(const std::string& text);

nlohmann::json event_json(const EventRecord& record, double eps);
/// One line per processed event; the initial gluing records are omitted.
std::string events_jsonl(const Solution& sol);

nlohmann::json report_json(const Report& report);
std::string report_text(const Report& report);

std::string check_rows_csv(const std::vector<CheckRow>& rows);
std::string cauchy_csv(const std::vector<CauchyRow>& rows);
nlohmann::json constants_json(const BoundConstants& c);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

/// Uniform grid of `points` times in [0, T].
std::vector<double> uniform_times(double horizon, std::size_t points);

}  // namespace wft

#endif  // WFT_IO_HPP_
