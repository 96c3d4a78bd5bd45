#include "wft/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace wft {

using nlohmann::json;

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

// Best-effort line of a JSON pointer in the source text: follows the object
// keys of the path in order.
std::size_t line_of(const std::string& text, const std::string& pointer) {
  std::size_t pos = 0;
  std::stringstream ss(pointer);
  std::string token;
  while (std::getline(ss, token, '/')) {
    if (token.empty() || std::all_of(token.begin(), token.end(), ::isdigit)) continue;
    const auto hit = text.find("\"" + token + "\"", pos);
    if (hit == std::string::npos) break;
    pos = hit;
  }
  return static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n')) + 1;
}

class Reader {
 public:
  Reader(const json& doc, std::string source, const std::string* text)
      : doc_(doc), source_(std::move(source)), text_(text) {}

  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
    std::ostringstream os;
    os << source_;
    if (text_) os << ":" << line_of(*text_, pointer);
    os << ": " << (pointer.empty() ? "/" : pointer) << ": " << message;
    throw ConfigError(os.str());
  }

  const json& at(const std::string& pointer) const { return doc_.at(json::json_pointer(pointer)); }
  bool has(const std::string& pointer) const { return doc_.contains(json::json_pointer(pointer)); }

  double number(const std::string& pointer) const {
    if (!has(pointer)) fail(pointer, "missing required number");
    const json& v = at(pointer);
    if (!v.is_number()) fail(pointer, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(pointer, "expected a finite number");
    return x;
  }

  double positive(const std::string& pointer) const {
    const double x = number(pointer);
    if (!(x > 0.0)) fail(pointer, "must be positive");
    return x;
  }

  std::uint64_t count(const std::string& pointer) const {
    const json& v = at(pointer);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) fail(pointer, "expected a nonnegative integer");
    return v.get<std::uint64_t>();
  }

  std::vector<double> positive_list(const std::string& pointer) const {
    std::vector<double> out;
    if (!has(pointer)) fail(pointer, "missing");
    if (at(pointer).is_array()) {
      if (at(pointer).empty()) fail(pointer, "empty list");
      for (std::size_t i = 0; i < at(pointer).size(); ++i) out.push_back(positive(pointer + "/" + std::to_string(i)));
    } else {
      out.push_back(positive(pointer));
    }
    return out;
  }

  SpaceTimeFlux flux(const std::string& pointer) const {
    if (!has(pointer)) fail(pointer, "missing flux coefficient matrix");
    const json& m = at(pointer);
    if (!m.is_array() || m.empty()) fail(pointer, "expected a nonempty array of rows (powers of t)");
    std::size_t cols = 0;
    for (const json& row : m) {
      if (!row.is_array() || row.empty()) fail(pointer, "each row must be a nonempty array (powers of u)");
      cols = std::max(cols, row.size());
    }
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m[i].size(); ++j) {
        c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            number(pointer + "/" + std::to_string(i) + "/" + std::to_string(j));
      }
    }
    return SpaceTimeFlux(std::move(c));
  }

  StepFunction step(const std::string& pointer, const Interval& domain) const {
    if (!has(pointer)) fail(pointer, "missing datum");
    const json& d = at(pointer);
    if (d.is_number()) return StepFunction(domain, number(pointer));
    if (!d.is_object()) fail(pointer, "expected a number or {\"value\", \"breaks\"}");
    const double first = number(pointer + "/value");
    std::vector<double> breaks;
    std::vector<double> values{first};
    if (d.contains("breaks")) {
      const json& b = d["breaks"];
      if (!b.is_array()) fail(pointer + "/breaks", "expected an array of [x, value] pairs");
      for (std::size_t i = 0; i < b.size(); ++i) {
        const std::string p = pointer + "/breaks/" + std::to_string(i);
        if (!b[i].is_array() || b[i].size() != 2) fail(p, "expected [x, value]");
        const double x = number(p + "/0");
        if (!(x > domain.lo && x < domain.hi)) fail(p, "breakpoint must lie inside the domain");
        if (!breaks.empty() && !(x > breaks.back())) fail(p, "breakpoints must be strictly increasing");
        breaks.push_back(x);
        values.push_back(number(p + "/1"));
      }
    }
    return StepFunction(domain, std::move(breaks), std::move(values));
  }

 private:
  const json& doc_;
  std::string source_;
  const std::string* text_;
};

ExperimentConfig parse_with(const json& doc, const std::string& source, const std::string* text) {
  Reader r(doc, source, text);
  if (!doc.is_object()) r.fail("", "configuration must be a JSON object");
  static const std::vector<std::string> known{"schema_version", "domain", "flux", "flux_g", "epsilon", "T",
                                              "depth", "u_o", "u_b", "u_b2", "time_grid", "seed",
                                              "tolerances", "sweep", "comment"};
  for (const auto& item : doc.items()) {
    if (std::find(known.begin(), known.end(), item.key()) == known.end()) r.fail("/" + item.key(), "unknown key");
  }
  ExperimentConfig c;
  c.raw = doc;
  if (!r.has("/schema_version")) r.fail("/schema_version", "missing");
  if (!r.at("/schema_version").is_number_integer() || r.at("/schema_version").get<int>() != kSchemaVersion) {
    r.fail("/schema_version", "unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");
  }
  if (!r.has("/domain/type")) r.fail("/domain", "missing domain type");
  const json& type = r.at("/domain/type");
  if (type == "half_line") {
    c.domain = Domain::half_line();
  } else if (type == "segment") {
    c.domain = Domain::segment(r.positive("/domain/L"));
  } else {
    r.fail("/domain/type", "expected \"half_line\" or \"segment\"");
  }
  c.flux = r.flux("/flux");
  if (r.has("/flux_g")) c.flux_g = r.flux("/flux_g");
  c.epsilons = r.positive_list("/epsilon");
  c.horizon = r.positive("/T");
  if (r.has("/depth")) {
    c.depths.clear();
    const json& d = r.at("/depth");
    if (d.is_array()) {
      if (d.empty()) r.fail("/depth", "empty list");
      for (std::size_t i = 0; i < d.size(); ++i) c.depths.push_back(r.count("/depth/" + std::to_string(i)));
      if (!std::is_sorted(c.depths.begin(), c.depths.end())) r.fail("/depth", "depths must be sorted");
    } else {
      c.depths.push_back(r.count("/depth"));
    }
    for (auto n : c.depths) {
      if (n > 20) r.fail("/depth", "depth above 20 is not supported");
    }
  }
  c.u_o = r.step("/u_o", c.domain.interval());
  c.u_b = r.step("/u_b", {0.0, c.horizon});
  if (c.domain.is_segment()) {
    c.u_b2 = r.step("/u_b2", {0.0, c.horizon});
  } else if (r.has("/u_b2")) {
    r.fail("/u_b2", "right boundary datum given on the half-line");
  }
  if (r.has("/time_grid")) {
    c.time_grid = r.count("/time_grid");
    if (c.time_grid < 2) r.fail("/time_grid", "need at least 2 samples");
  }
  if (r.has("/seed")) c.seed = r.count("/seed");
  if (r.has("/tolerances/event")) c.tracker.tolerance = r.positive("/tolerances/event");
  if (r.has("/tolerances/max_events")) c.tracker.max_events = r.count("/tolerances/max_events");
  if (r.has("/sweep")) {
    SweepSpec s;
    if (!r.has("/sweep/parameter") || !r.at("/sweep/parameter").is_string()) r.fail("/sweep/parameter", "expected a key name");
    s.parameter = r.at("/sweep/parameter").get<std::string>();
    if (s.parameter == "sweep" || std::find(known.begin(), known.end(), s.parameter) == known.end()) {
      r.fail("/sweep/parameter", "not a sweepable key");
    }
    if (!r.has("/sweep/values") || !r.at("/sweep/values").is_array() || r.at("/sweep/values").empty()) {
      r.fail("/sweep/values", "expected a nonempty array");
    }
    for (const json& v : r.at("/sweep/values")) s.values.push_back(v);
    if (r.has("/sweep/command")) {
      s.command = r.at("/sweep/command").get<std::string>();
      if (s.command != "solve" && s.command != "compare-flux" && s.command != "nonaut" && s.command != "verify") {
        r.fail("/sweep/command", "unknown command");
      }
    }
    c.sweep = std::move(s);
  }
  try {
    validate(c.data(), c.horizon);
  } catch (const InvalidArgument& e) {
    r.fail("", e.what());
  }
  return c;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
    const auto line = std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte > 0 ? byte - 1 : 0), '\n') + 1;
    throw ConfigError(source + ":" + std::to_string(line) + ": malformed JSON: " + e.what());
  }
  return parse_with(doc, source, &text);
}

ExperimentConfig parse_config(const json& doc, const std::string& source) {
  return parse_with(doc, source, nullptr);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_file(path), path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << text;
}

std::vector<double> uniform_times(double horizon, std::size_t points) {
  std::vector<double> ts;
  for (std::size_t i = 0; i < points; ++i) {
    ts.push_back(i + 1 == points ? horizon : horizon * static_cast<double>(i) / static_cast<double>(points - 1));
  }
  return ts;
}

// ---------------------------------------------------------------------------

std::string profiles_csv(const std::vector<ProfileRow>& rows) {
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.x.size());
  std::ostringstream os;
  os << "t,v0";
  for (std::size_t i = 1; i <= width; ++i) os << ",x" << i << ",v" << i;
  os << '\n';
  for (const auto& r : rows) {
    os << format_double(r.t) << ',' << format_double(r.v0);
    for (std::size_t i = 0; i < r.x.size(); ++i) os << ',' << format_double(r.x[i]) << ',' << format_double(r.v[i]);
    os << '\n';
  }
  return os.str();
}

namespace {

double parse_double(const std::string& s, std::size_t line) {
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw InvalidArgument("profiles.csv:" + std::to_string(line) + ": bad number '" + s + "'");
  }
  return x;
}

}  // namespace

std::vector<ProfileRow> parse_profiles_csv(const std::string& text) {
  std::vector<ProfileRow> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || n == 1) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() < 2 || cells.size() % 2 != 0) {
      throw InvalidArgument("profiles.csv:" + std::to_string(n) + ": expected t, v0 and (x, v) pairs");
    }
    ProfileRow r{parse_double(cells[0], n), parse_double(cells[1], n), {}, {}};
    for (std::size_t i = 2; i < cells.size(); i += 2) {
      r.x.push_back(parse_double(cells[i], n));
      r.v.push_back(parse_double(cells[i + 1], n));
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

json event_json(const EventRecord& r, double eps) {
  auto waves = [&](const std::vector<Wave>& ws) {
    json a = json::array();
    for (const Wave& w : ws) a.push_back({state_value(w.left, eps), state_value(w.right, eps), w.speed});
    return a;
  };
  return json{{"t", r.time},
              {"kind", to_string(r.kind)},
              {"x", r.position},
              {"incoming", waves(r.incoming)},
              {"outgoing", waves(r.outgoing)},
              {"V_before", state_value(r.glimm_before, eps)},
              {"V_after", state_value(r.glimm_after, eps)},
              {"count_before", r.sharp_before},
              {"count_after", r.sharp_after},
              {"slab", r.flux_index}};
}

std::string events_jsonl(const Solution& sol) {
  std::string out;
  for (const EventRecord& r : sol.log) {
    if (r.kind == EventKind::kInitial) continue;
    out += event_json(r, sol.eps).dump();
    out += '\n';
  }
  return out;
}

json report_json(const Report& report) {
  json checks = json::array();
  for (const Check& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"measured", c.measured},
                      {"bound", c.bound},
                      {"margin", c.at_least ? c.measured - c.bound : c.bound - c.measured},
                      {"pass", c.pass},
                      {"enforced", c.enforced},
                      {"detail", c.detail}});
  }
  return json{{"pass", report.passed()}, {"checks", checks}};
}

std::string report_text(const Report& report) {
  std::size_t width = 5;
  for (const Check& c : report.checks) width = std::max(width, c.name.size());
  std::ostringstream os;
  auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w > s.size() ? w - s.size() : 0, ' '); };
  os << pad("check", width) << "  " << pad("status", 6) << "  " << pad("measured", 24) << "  " << pad("bound", 24)
     << "  detail\n";
  for (const Check& c : report.checks) {
    const std::string status = c.pass ? "pass" : (c.enforced ? "FAIL" : "note");
    os << pad(c.name, width) << "  " << pad(status, 6) << "  " << pad(format_double(c.measured), 24) << "  "
       << pad(format_double(c.bound), 24) << "  " << c.detail << '\n';
  }
  os << (report.passed() ? "overall: pass\n" : "overall: FAIL\n");
  return os.str();
}

std::string check_rows_csv(const std::vector<CheckRow>& rows) {
  std::ostringstream os;
  os << "t,measured,bound,pass\n";
  for (const CheckRow& r : rows) {
    os << format_double(r.t) << ',' << format_double(r.measured) << ',' << format_double(r.bound) << ','
       << (r.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string cauchy_csv(const std::vector<CauchyRow>& rows) {
  std::ostringstream os;
  os << "n,sup_distance,bound,ratio\n";
  for (const CauchyRow& r : rows) {
    os << r.depth << ',' << format_double(r.sup_distance) << ',' << format_double(r.bound) << ','
       << (std::isnan(r.ratio) ? std::string() : format_double(r.ratio)) << '\n';
  }
  return os.str();
}

json constants_json(const BoundConstants& c) { return json{{"L", c.L}, {"K", c.K}, {"M", c.M}, {"O", c.O}}; }

}  // namespace wft
