#include "npf/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "npf/error.hpp"

namespace npf {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw Error(ErrorCode::ConfigError, key + ": '" + text + "' is not a number");
  }
  return v;
}

template <typename Int>
Int parse_int(const std::string& key, const std::string& text) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::ConfigError, key + ": '" + text + "' is not an integer");
  }
  return v;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    if constexpr (std::is_floating_point_v<T>) out += fmt(v[i]);
    else out += std::to_string(v[i]);
  }
  return out;
}

using Setter = std::function<void(SimConfig&, const std::string&, const std::string&)>;

const std::vector<std::pair<std::string, Setter>>& setters() {
  static const std::vector<std::pair<std::string, Setter>> table = {
      {"model",
       [](SimConfig& c, const std::string& k, const std::string& v) {
         if (v == "ac") c.model = ModelKind::AC;
         else if (v == "ch") c.model = ModelKind::CH;
         else throw Error(ErrorCode::ConfigError, k + ": expected ac or ch");
       }},
      {"dim", [](SimConfig& c, auto& k, auto& v) { c.dim = parse_int<int>(k, v); }},
      {"n",
       [](SimConfig& c, auto& k, auto& v) {
         c.n.clear();
         for (const auto& s : split_list(v)) c.n.push_back(parse_int<std::size_t>(k, s));
       }},
      {"extent",
       [](SimConfig& c, auto& k, auto& v) {
         c.extent.clear();
         for (const auto& s : split_list(v)) c.extent.push_back(parse_double(k, s));
       }},
      {"delta", [](SimConfig& c, auto& k, auto& v) { c.delta = parse_double(k, v); }},
      {"epsilon", [](SimConfig& c, auto& k, auto& v) { c.epsilon = parse_double(k, v); }},
      {"potential", [](SimConfig& c, auto&, auto& v) { c.potential = parse_potential_kind(v); }},
      {"c_f", [](SimConfig& c, auto& k, auto& v) { c.c_f = parse_double(k, v); }},
      {"theta_c", [](SimConfig& c, auto& k, auto& v) { c.theta_c = parse_double(k, v); }},
      {"dt", [](SimConfig& c, auto& k, auto& v) { c.dt = parse_double(k, v); }},
      {"order", [](SimConfig& c, auto& k, auto& v) { c.order = parse_int<int>(k, v); }},
      {"beta", [](SimConfig& c, auto& k, auto& v) { c.beta = parse_double(k, v); }},
      {"stab_c", [](SimConfig& c, auto& k, auto& v) { c.stab_c = parse_double(k, v); }},
      {"picard_tol", [](SimConfig& c, auto& k, auto& v) { c.picard_tol = parse_double(k, v); }},
      {"picard_max", [](SimConfig& c, auto& k, auto& v) { c.picard_max = parse_int<int>(k, v); }},
      {"anderson_depth",
       [](SimConfig& c, auto& k, auto& v) { c.anderson_depth = parse_int<int>(k, v); }},
      {"t_end", [](SimConfig& c, auto& k, auto& v) { c.t_end = parse_double(k, v); }},
      {"stride", [](SimConfig& c, auto& k, auto& v) { c.stride = parse_int<std::int64_t>(k, v); }},
      {"ic", [](SimConfig& c, auto&, auto& v) { c.ic = parse_initial_kind(v); }},
      {"ic_amplitude", [](SimConfig& c, auto& k, auto& v) { c.ic_amplitude = parse_double(k, v); }},
      {"ic_corr_length",
       [](SimConfig& c, auto& k, auto& v) { c.ic_corr_length = parse_double(k, v); }},
      {"star_radius", [](SimConfig& c, auto& k, auto& v) { c.star_radius = parse_double(k, v); }},
      {"star_amplitude",
       [](SimConfig& c, auto& k, auto& v) { c.star_amplitude = parse_double(k, v); }},
      {"star_arms", [](SimConfig& c, auto& k, auto& v) { c.star_arms = parse_int<int>(k, v); }},
      {"star_width", [](SimConfig& c, auto& k, auto& v) { c.star_width = parse_double(k, v); }},
      {"seed", [](SimConfig& c, auto& k, auto& v) { c.seed = parse_int<std::uint64_t>(k, v); }},
      {"output", [](SimConfig& c, auto&, auto& v) { c.output = v; }},
  };
  return table;
}

}  // namespace

std::string_view to_string(ModelKind kind) noexcept { return kind == ModelKind::AC ? "ac" : "ch"; }

void SimConfig::set(const std::string& key, const std::string& value) {
  for (const auto& [name, setter] : setters()) {
    if (name == key) {
      setter(*this, key, trim(value));
      return;
    }
  }
  throw Error(ErrorCode::ConfigError, "unknown key '" + key + "'");
}

const std::vector<std::string>& SimConfig::keys() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& entry : setters()) out.push_back(entry.first);
    return out;
  }();
  return names;
}

PeriodicGrid SimConfig::grid() const {
  auto per_axis = [&](const auto& values, const char* key) {
    using T = typename std::decay_t<decltype(values)>::value_type;
    std::array<T, 3> out{};
    if (values.size() != 1 && values.size() != static_cast<std::size_t>(dim)) {
      throw Error(ErrorCode::ConfigError, std::string(key) + ": need 1 or dim values");
    }
    for (int a = 0; a < 3; ++a) out[a] = a < dim ? values[values.size() == 1 ? 0 : a] : T{1};
    return out;
  };
  if (dim < 1 || dim > 3) throw Error(ErrorCode::ConfigError, "dim must be 1, 2 or 3");
  return PeriodicGrid(dim, per_axis(n, "n"), per_axis(extent, "extent"));
}

KernelParams SimConfig::kernel_params() const { return {delta, epsilon, dim}; }

PotentialSpec SimConfig::potential_spec() const {
  return {potential, c_f, potential == PotentialKind::Logarithmic ? theta_c : 0.0};
}

InitialConditionSpec SimConfig::ic_spec() const {
  InitialConditionSpec s;
  s.kind = ic;
  s.seed = seed;
  s.amplitude = ic_amplitude;
  s.correlation_length = ic_corr_length;
  s.star_radius = star_radius;
  s.star_amplitude = star_amplitude;
  s.star_arms = star_arms;
  s.star_width = star_width;
  return s;
}

std::int64_t SimConfig::num_steps() const {
  if (!(dt > 0.0) || !(t_end >= 0.0)) throw Error(ErrorCode::ConfigError, "need dt > 0, t_end >= 0");
  const double ratio = t_end / dt;
  const auto steps = static_cast<std::int64_t>(std::llround(ratio));
  if (std::abs(ratio - static_cast<double>(steps)) > 1e-9 * std::max(1.0, ratio)) {
    throw Error(ErrorCode::ConfigError, "dt does not divide t_end");
  }
  return steps;
}

void SimConfig::validate() const {
  if (stride < 1) throw Error(ErrorCode::ConfigError, "stride must be >= 1");
  num_steps();
  const auto g = grid();
  auto kernel = std::make_shared<const DiscreteKernel>(kernel_params(), g);
  if (model == ModelKind::AC) ac_config(kernel).validate();
  else ch_config(kernel).validate();
  generate(ic_spec(), g);
}

ACConfig SimConfig::ac_config(std::shared_ptr<const DiscreteKernel> kernel) const {
  ACConfig c;
  c.dt = dt;
  c.order = order;
  c.kernel = std::move(kernel);
  c.potential = potential_spec();
  c.picard_tol = picard_tol;
  c.picard_max = picard_max;
  return c;
}

CHConfig SimConfig::ch_config(std::shared_ptr<const DiscreteKernel> kernel) const {
  CHConfig c;
  c.dt = dt;
  c.beta = resolved_beta();
  c.stabilization = stab_c;
  c.kernel = std::move(kernel);
  c.potential = potential_spec();
  c.tol = picard_tol;
  c.max_iter = picard_max;
  c.anderson_depth = anderson_depth;
  return c;
}

std::string SimConfig::serialize() const {
  double beta_out = beta;
  double stab_out = stab_c;
  if (model == ModelKind::CH) {
    beta_out = resolved_beta();
    const DiscreteKernel kernel(kernel_params(), grid());
    stab_out = stab_c > 0.0 ? stab_c : 2.0 * std::max(1.0, kernel.xi(c_f));
  }
  std::ostringstream out;
  out << "# nonlocal phase-field run configuration\n";
  out << "model = " << to_string(model) << "\n";
  out << "dim = " << dim << "\n";
  out << "n = " << join(n) << "\n";
  out << "extent = " << join(extent) << "\n";
  out << "delta = " << fmt(delta) << "\n";
  out << "epsilon = " << fmt(epsilon) << "\n";
  out << "potential = " << to_string(potential) << "\n";
  out << "c_f = " << fmt(c_f) << "\n";
  out << "theta_c = " << fmt(theta_c) << "\n";
  out << "dt = " << fmt(dt) << "\n";
  out << "order = " << order << "\n";
  out << "beta = " << fmt(beta_out) << "\n";
  out << "stab_c = " << fmt(stab_out) << "\n";
  out << "picard_tol = " << fmt(picard_tol) << "\n";
  out << "picard_max = " << picard_max << "\n";
  out << "anderson_depth = " << anderson_depth << "\n";
  out << "t_end = " << fmt(t_end) << "\n";
  out << "stride = " << stride << "\n";
  out << "ic = " << to_string(ic) << "\n";
  out << "ic_amplitude = " << fmt(ic_amplitude) << "\n";
  out << "ic_corr_length = " << fmt(ic_corr_length) << "\n";
  out << "star_radius = " << fmt(star_radius) << "\n";
  out << "star_amplitude = " << fmt(star_amplitude) << "\n";
  out << "star_arms = " << star_arms << "\n";
  out << "star_width = " << fmt(star_width) << "\n";
  out << "seed = " << seed << "\n";
  out << "output = " << output << "\n";
  return out.str();
}

SimConfig parse_config(const std::string& text) {
  SimConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": missing '='");
    }
    cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace npf
