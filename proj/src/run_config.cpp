#include "helson/run_config.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include "helson/csv.hpp"
#include "helson/eigensolve.hpp"
#include "helson/errors.hpp"
#include "helson/helson.hpp"

namespace helson {
namespace {

using std::numbers::pi;

constexpr int kMaxLanczosOrder = 32768;

const std::vector<std::pair<Command, std::string>>& command_names() {
  static const std::vector<std::pair<Command, std::string>> names = {
      {Command::Matrix, "matrix"},           {Command::Spectrum, "spectrum"},
      {Command::Curve, "curve"},             {Command::CriticalA, "critical-a"},
      {Command::MellinCheck, "mellin-check"}, {Command::Residual, "residual"},
      {Command::Equivalence, "equivalence"}, {Command::Report, "report"},
  };
  return names;
}

double parse_real(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw ConfigError(key + ": expected a real number, got '" + text + "'");
  return v;
}

int parse_int(const std::string& key, const std::string& text) {
  int v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw ConfigError(key + ": expected an integer, got '" + text + "'");
  return v;
}

struct Field {
  std::string key;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::optional<std::string>(const RunConfig&)> get;
  bool integral = false;
  bool textual = false;
};

template <typename T>
Field real_field(std::string key, T RunConfig::*member) {
  return {key,
          [key, member](RunConfig& c, const std::string& v) { c.*member = parse_real(key, v); },
          [member](const RunConfig& c) -> std::optional<std::string> { return format_real(c.*member); }};
}

Field grid_real(std::string key, double GridSpec::*member) {
  return {key,
          [key, member](RunConfig& c, const std::string& v) { c.grid.*member = parse_real(key, v); },
          [member](const RunConfig& c) -> std::optional<std::string> { return format_real(c.grid.*member); }};
}

Field int_field(std::string key, int RunConfig::*member) {
  return {key,
          [key, member](RunConfig& c, const std::string& v) { c.*member = parse_int(key, v); },
          [member](const RunConfig& c) -> std::optional<std::string> { return std::to_string(c.*member); },
          true};
}

Field grid_int(std::string key, int GridSpec::*member) {
  return {key,
          [key, member](RunConfig& c, const std::string& v) { c.grid.*member = parse_int(key, v); },
          [member](const RunConfig& c) -> std::optional<std::string> { return std::to_string(c.grid.*member); },
          true};
}

Field text_field(std::string key, std::string RunConfig::*member) {
  return {key, [member](RunConfig& c, const std::string& v) { c.*member = v; },
          [member](const RunConfig& c) -> std::optional<std::string> { return c.*member; }, false, true};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back({"command",
                 [](RunConfig& c, const std::string& v) { c.command = command_from_string(v); },
                 [](const RunConfig& c) -> std::optional<std::string> { return to_string(c.command); },
                 false, true});
    f.push_back(text_field("family", &RunConfig::family));
    f.push_back({"a", [](RunConfig& c, const std::string& v) { c.a = parse_real("a", v); },
                 [](const RunConfig& c) -> std::optional<std::string> {
                   if (!c.a) return std::nullopt;
                   return format_real(*c.a);
                 }});
    f.push_back(int_field("N", &RunConfig::N));
    f.push_back({"n_min", [](RunConfig& c, const std::string& v) { c.n_min = parse_int("n_min", v); },
                 [](const RunConfig& c) -> std::optional<std::string> {
                   if (!c.n_min) return std::nullopt;
                   return std::to_string(*c.n_min);
                 },
                 true});
    f.push_back(grid_real("t_min", &GridSpec::t_min));
    f.push_back(grid_real("t_max", &GridSpec::t_max));
    f.push_back(grid_int("panels_per_decade", &GridSpec::panels_per_decade));
    f.push_back(grid_int("nodes_per_panel", &GridSpec::nodes_per_panel));
    f.push_back(real_field("a_min", &RunConfig::a_min));
    f.push_back(real_field("a_max", &RunConfig::a_max));
    f.push_back(int_field("a_steps", &RunConfig::a_steps));
    f.push_back(real_field("tol", &RunConfig::tol));
    f.push_back(real_field("k", &RunConfig::k));
    f.push_back(text_field("function", &RunConfig::function));
    f.push_back(real_field("u_min", &RunConfig::u_min));
    f.push_back(real_field("u_max", &RunConfig::u_max));
    f.push_back(int_field("points", &RunConfig::points));
    f.push_back(real_field("b", &RunConfig::b));
    f.push_back(int_field("trials", &RunConfig::trials));
    f.push_back(real_field("alpha", &RunConfig::alpha));
    f.push_back(real_field("beta", &RunConfig::beta));
    f.push_back(text_field("format", &RunConfig::format));
    f.push_back(text_field("path", &RunConfig::path));
    f.push_back(text_field("cache_dir", &RunConfig::cache_dir));
    return f;
  }();
  return table;
}

const Field& field(const std::string& key) {
  for (const auto& f : fields())
    if (f.key == key) return f;
  throw ConfigError("unknown key '" + key + "'");
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string dashed(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

bool is_kernel_family(const std::string& f) {
  try {
    kernel_family_from_string(f);
    return true;
  } catch (const ConfigError&) {
    return false;
  }
}

bool uses_family(Command c) { return c == Command::Matrix || c == Command::Spectrum; }

void fail(const std::string& path, const std::string& msg) { throw ConfigError(path + ": " + msg); }

void validate_grid(const GridSpec& g) {
  if (!(g.t_min > 0.0)) fail("grid.t_min", "must be positive");
  if (!(g.t_max > g.t_min)) fail("grid.t_max", "must exceed grid.t_min");
  if (g.panels_per_decade < 1) fail("grid.panels_per_decade", "must be >= 1");
  if (g.nodes_per_panel < 2) fail("grid.nodes_per_panel", "must be >= 2");
}

Eigen::Index grid_size(const GridSpec& g) {
  const double panels = std::max(1.0, std::ceil(std::log10(g.t_max / g.t_min) * g.panels_per_decade - 1e-9));
  return static_cast<Eigen::Index>(panels) * g.nodes_per_panel;
}

}  // namespace

std::string version() { return HELSON_VERSION; }

std::string to_string(Command c) {
  for (const auto& [cmd, name] : command_names())
    if (cmd == c) return name;
  return "unknown";
}

Command command_from_string(const std::string& name) {
  for (const auto& [cmd, n] : command_names())
    if (n == name) return cmd;
  throw ConfigError("command: unknown command '" + name + "'");
}

void RunConfig::fill_defaults() {
  const bool parameterized =
      family == "helson" ||
      (is_kernel_family(family) && KernelSpec{kernel_family_from_string(family), 0.0}.parameterized());
  if (!a) {
    if ((uses_family(command) && parameterized) || command == Command::Equivalence ||
        command == Command::Report)
      a = 1.0;
  }
  if (!n_min && uses_family(command)) {
    if (family == "mult-hilbert") n_min = 2;
    else if (family == "helson") n_min = 1;
  }
}

std::vector<double> RunConfig::a_values() const {
  std::vector<double> out;
  if (a_steps == 1) return {a_min};
  const double r = std::log(a_max / a_min);
  for (int i = 0; i < a_steps; ++i) out.push_back(a_min * std::exp(r * i / (a_steps - 1)));
  out.back() = a_max;
  return out;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& f : fields()) k.push_back(f.key);
    return k;
  }();
  return keys;
}

std::map<std::string, std::string> parse_key_values(std::string_view text) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    field(key);
    if (out.count(key)) throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    out[key] = value;
  }
  return out;
}

void apply_values(RunConfig& config, const std::map<std::string, std::string>& values) {
  for (const auto& [key, value] : values) field(key).set(config, value);
}

void validate(const RunConfig& c) {
  validate_grid(c.grid);
  if (c.format != "csv" && c.format != "json") fail("output.format", "must be csv or json");
  if (c.path.empty()) fail("output.path", "must not be empty");
  if (c.cache_dir.empty()) fail("output.cache_dir", "must not be empty");

  switch (c.command) {
    case Command::Matrix:
    case Command::Spectrum: {
      if (c.family == "mult-hilbert") {
        if (c.a && *c.a != 0.0) fail("kernel.a", "family mult-hilbert has a = 0");
        if (c.n_min && *c.n_min != 2) fail("kernel.n_min", "family mult-hilbert uses n_min = 2");
        if (c.N < 2) fail("kernel.N", "must be >= 2 for mult-hilbert");
      } else if (c.family == "helson") {
        if (!c.a || *c.a == 0.0) fail("kernel.a", "a = 0 requires family mult-hilbert");
        if (!(*c.a > 0.0)) fail("kernel.a", "must be positive");
        if (c.n_min && *c.n_min != 1) fail("kernel.n_min", "family helson uses n_min = 1");
        if (c.N < 1) fail("kernel.N", "must be >= 1");
      } else if (is_kernel_family(c.family)) {
        const KernelSpec spec{kernel_family_from_string(c.family), c.a.value_or(0.0)};
        if (spec.parameterized()) {
          if (!c.a || !(*c.a > 0.0)) fail("kernel.a", "family " + c.family + " requires a > 0");
        } else if (c.a) {
          fail("kernel.a", "family " + c.family + " takes no parameter");
        }
        if (c.n_min) fail("kernel.n_min", "only used by the helson and mult-hilbert families");
        if (grid_size(c.grid) > kDenseDimensionCap)
          fail("grid", "grid has " + std::to_string(grid_size(c.grid)) +
                           " nodes, above the dense cap of 4096");
      } else {
        fail("kernel.family", "unknown family '" + c.family + "'");
      }
      if (c.N > static_cast<int>(kDenseDimensionCap)) fail("kernel.N", "must be <= 4096 for dense solves");
      break;
    }
    case Command::Curve:
      if (!(c.a_min > 0.0)) fail("curve.a_min", "must be positive");
      if (!(c.a_max >= c.a_min)) fail("curve.a_max", "must be >= a_min");
      if (c.a_steps < 1 || c.a_steps > 1000) fail("curve.a_steps", "must be in [1, 1000]");
      if (c.a_steps > 1 && c.a_max == c.a_min) fail("curve.a_max", "must exceed a_min when a_steps > 1");
      if (c.N < 1 || c.N > kMaxLanczosOrder) fail("kernel.N", "must be in [1, 32768]");
      break;
    case Command::CriticalA:
      if (!(c.tol >= 1e-3)) fail("critical_a.tol", "must be >= 1e-3");
      break;
    case Command::MellinCheck:
      if (c.function != "exp" && c.function != "log-gaussian")
        fail("mellin.function", "must be exp or log-gaussian");
      if (!(c.u_max > c.u_min)) fail("mellin.u_max", "must exceed u_min");
      if (c.points < 16) fail("mellin.points", "must be >= 16");
      break;
    case Command::Residual:
      if (!(c.k > 0.0 && c.k <= kBesselMaxOrder)) fail("residual.k", "must be in (0, 20]");
      if (grid_size(c.grid) > 8192) fail("grid", "grid too large for the residual product");
      break;
    case Command::Equivalence: {
      const double a = c.a.value_or(1.0);
      if (!(a >= 0.0)) fail("kernel.a", "must be >= 0");
      const int n_min = a == 0.0 ? 2 : 1;
      if (c.n_min && *c.n_min != n_min) fail("kernel.n_min", "a = 0 uses n_min = 2, a > 0 uses n_min = 1");
      if (c.N < n_min) fail("kernel.N", "must be >= n_min");
      if (c.N > static_cast<int>(kDenseDimensionCap)) fail("kernel.N", "must be <= 4096");
      if (!(factor_map_tail_bound(a, n_min, c.grid.t_max) < 1e-12))
        fail("grid.t_max", "factor-map tail bound exceeds 1e-12");
      if (2 * grid_size(c.grid) > kDenseDimensionCap)
        fail("grid", "refined grid exceeds the dense cap of 4096");
      break;
    }
    case Command::Report: {
      const double a = c.a.value_or(1.0);
      if (!(a > 0.0)) fail("kernel.a", "must be positive");
      if (!(c.b > 0.0 && c.b <= a)) fail("report.b", "requires 0 < b <= a");
      if (c.trials < 1) fail("report.trials", "must be >= 1");
      if (!(c.alpha > 0.0 && c.alpha < c.beta && c.beta < pi))
        fail("report.alpha", "requires 0 < alpha < beta < pi");
      if (c.N < 1 || c.N > static_cast<int>(kDenseDimensionCap)) fail("kernel.N", "must be in [1, 4096]");
      if (grid_size(c.grid) > kDenseDimensionCap)
        fail("grid", "grid exceeds the dense cap of 4096");
      break;
    }
  }
}

RunConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Spectra of Helson matrices and integral Hankel operators", "helson_spectra"};
  app.set_help_flag();
  std::string command;
  std::string config_file;
  app.add_option("command", command, "matrix|spectrum|curve|critical-a|mellin-check|residual|equivalence|report")
      ->required();
  app.add_option("--config", config_file, "flat key = value file; flags override it");
  std::map<std::string, std::string> flag_values;
  std::map<std::string, CLI::Option*> options;
  for (const auto& key : config_keys()) {
    if (key == "command") continue;
    options[key] = app.add_option("--" + dashed(key), flag_values[key]);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw ConfigError(std::string("usage: ") + e.what());
  }

  RunConfig c;
  std::map<std::string, std::string> values;
  if (!config_file.empty()) {
    std::ifstream in(config_file);
    if (!in) throw ConfigError("--config: cannot read '" + config_file + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    values = parse_key_values(ss.str());
    if (values.count("command") && values["command"] != command)
      throw ConfigError("command: config file names '" + values["command"] + "'");
  }
  for (const auto& [key, opt] : options)
    if (opt->count() > 0) values[key] = flag_values[key];
  values["command"] = command;
  apply_values(c, values);
  c.fill_defaults();
  validate(c);
  return c;
}

std::string canonical_text(const RunConfig& config) {
  std::vector<std::pair<std::string, std::string>> kv;
  for (const auto& f : fields())
    if (auto v = f.get(config)) kv.emplace_back(f.key, *v);
  std::sort(kv.begin(), kv.end());
  std::string out;
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

std::string cache_key(const RunConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical_text(config) + "version=" + version()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::json to_json(const RunConfig& config) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& f : fields()) {
    const auto v = f.get(config);
    if (!v) continue;
    if (f.textual) j[f.key] = *v;
    else if (f.integral) j[f.key] = parse_int(f.key, *v);
    else j[f.key] = parse_real(f.key, *v);
  }
  return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  std::map<std::string, std::string> values;
  for (const auto& [key, v] : j.items()) {
    const Field& f = field(key);
    if (f.textual) {
      if (!v.is_string()) throw ConfigError(key + ": expected a string");
      values[key] = v.get<std::string>();
    } else if (f.integral) {
      if (!v.is_number_integer()) throw ConfigError(key + ": expected an integer");
      values[key] = std::to_string(v.get<long long>());
    } else {
      if (!v.is_number()) throw ConfigError(key + ": expected a number");
      values[key] = format_real(v.get<double>());
    }
  }
  RunConfig c;
  apply_values(c, values);
  return c;
}

}  // namespace helson
