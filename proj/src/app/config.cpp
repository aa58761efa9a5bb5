#include "optoweak/app/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace optoweak::app {

namespace {

std::string join_problems(const std::vector<std::string>& problems) {
  std::string out = "invalid configuration:";
  for (const auto& p : problems) out += "\n  - " + p;
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_plain_double(std::string_view s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

// Accepts plain numbers, "pi", "<k>pi" and "<k>*pi".
std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && s.substr(s.size() - 2) == "pi") {
    auto head = trim(s.substr(0, s.size() - 2));
    if (!head.empty() && head.back() == '*') head = trim(head.substr(0, head.size() - 1));
    if (head.empty()) return std::numbers::pi;
    const auto k = parse_plain_double(head);
    if (!k) return std::nullopt;
    return *k * std::numbers::pi;
  }
  return parse_plain_double(s);
}

std::optional<long long> parse_int(std::string_view s) {
  s = trim(s);
  long long v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

std::optional<bool> parse_bool(std::string_view s) {
  s = trim(s);
  if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
  if (s == "false" || s == "no" || s == "off" || s == "0") return false;
  return std::nullopt;
}

std::optional<std::vector<double>> parse_list(std::string_view s) {
  std::vector<double> out;
  while (true) {
    const auto comma = s.find(',');
    const auto item = trim(s.substr(0, comma));
    const auto v = parse_double(item);
    if (!v) return std::nullopt;
    out.push_back(*v);
    if (comma == std::string_view::npos) break;
    s = s.substr(comma + 1);
  }
  return out;
}

struct Entry {
  std::string value;
  int line;
};

using Section = std::map<std::string, Entry, std::less<>>;

// Typed accessors that record problems instead of throwing.
class Reader {
 public:
  Reader(std::string name, const Section& section, std::vector<std::string>& problems)
      : name_(std::move(name)), section_(section), problems_(problems) {}

  bool has(std::string_view key) const { return section_.find(key) != section_.end(); }

  template <class T, class Parse>
  std::optional<T> get(std::string_view key, Parse parse, std::string_view expected) const {
    const auto it = section_.find(key);
    if (it == section_.end()) return std::nullopt;
    auto v = parse(it->second.value);
    if (!v) {
      problems_.push_back(fmt::format("line {}: [{}] {} = '{}' is not {}", it->second.line, name_, key,
                                      it->second.value, expected));
      return std::nullopt;
    }
    return static_cast<T>(*v);
  }

  std::optional<double> real(std::string_view key) const { return get<double>(key, parse_double, "a number"); }
  std::optional<long long> integer(std::string_view key) const {
    return get<long long>(key, parse_int, "an integer");
  }
  std::optional<bool> boolean(std::string_view key) const { return get<bool>(key, parse_bool, "a boolean"); }
  std::optional<std::vector<double>> list(std::string_view key) const {
    return get<std::vector<double>>(key, parse_list, "a comma-separated list of numbers");
  }
  std::optional<std::string> text(std::string_view key) const {
    const auto it = section_.find(key);
    if (it == section_.end()) return std::nullopt;
    return it->second.value;
  }
  void problem(std::string_view key, const std::string& message) const {
    const auto it = section_.find(key);
    const int line = it == section_.end() ? 0 : it->second.line;
    problems_.push_back(line > 0 ? fmt::format("line {}: [{}] {}: {}", line, name_, key, message)
                                 : fmt::format("[{}] {}", name_, message));
  }

 private:
  std::string name_;
  const Section& section_;
  std::vector<std::string>& problems_;
};

const std::map<std::string, std::set<std::string, std::less<>>, std::less<>> kKnownKeys = {
    {"params",
     {"g0", "omega_m", "xi", "tau", "delta", "n_max", "sideband_index", "raw_xi", "paper_literal_kerr"}},
    {"sweep", {"deltas", "delta_min", "delta_max", "delta_count", "delta_scale", "signed", "phis", "svg"}},
    {"wigner",
     {"scenario", "state", "alpha_re", "alpha_im", "x_min", "x_max", "y_min", "y_max", "resolution"}},
};

void read_params(const Reader& r, RunConfig& cfg, std::vector<std::string>& problems) {
  auto& p = cfg.params;
  if (auto v = r.real("g0")) p.g0 = *v;
  if (auto v = r.real("omega_m")) p.omega_m = *v;
  if (auto v = r.real("delta")) p.delta = *v;
  if (auto v = r.boolean("paper_literal_kerr")) p.paper_literal_kerr = *v;
  if (auto v = r.integer("n_max")) {
    if (*v < 0 || *v > 100000) {
      r.problem("n_max", "out of range");
    } else {
      p.n_max = static_cast<int>(*v);
    }
  }

  const auto xi = r.real("xi");
  const auto tau = r.real("tau");
  const bool raw_xi = r.boolean("raw_xi").value_or(false);
  if (auto n = r.integer("sideband_index")) {
    if (*n < 0 || *n > 1000000) {
      r.problem("sideband_index", "out of range");
    } else {
      p.sideband_index = static_cast<int>(*n);
      p.xi = (2.0 * static_cast<double>(*n) + 1.0) * p.omega_m;
      p.tau = std::numbers::pi / p.omega_m;
      if (raw_xi) r.problem("raw_xi", "cannot be combined with sideband_index");
    }
  }
  if (xi) p.xi = raw_xi ? *xi * std::numbers::sqrt2 : *xi;
  if (tau) p.tau = *tau;
  if (raw_xi && !xi) r.problem("raw_xi", "requires xi");

  for (const auto& issue : p.problems()) problems.push_back("[params] " + issue);
}

void read_sweep(const Reader& r, RunConfig& cfg, std::vector<std::string>& problems) {
  auto& s = cfg.sweep;
  if (auto v = r.boolean("svg")) s.svg = *v;
  if (auto v = r.list("phis")) s.phis = *v;
  for (double phi : s.phis) {
    if (phi < 0.0) {
      r.problem("phis", fmt::format("phi = {} must be >= 0", phi));
    } else if (phi * phi > cfg.params.n_max / 4.0) {
      r.problem("phis", fmt::format("phi = {} exceeds the truncation guard phi^2 <= n_max/4", phi));
    }
  }

  const bool range = r.has("delta_min") || r.has("delta_max") || r.has("delta_count") || r.has("delta_scale") ||
                     r.has("signed");
  if (r.has("deltas")) {
    if (range) r.problem("deltas", "give either deltas or the delta_min/delta_max range, not both");
    if (auto v = r.list("deltas")) s.deltas = *v;
  } else {
    const double lo = r.real("delta_min").value_or(1e-5);
    const double hi = r.real("delta_max").value_or(0.5);
    const auto count = r.integer("delta_count").value_or(121);
    const bool mirrored = r.boolean("signed").value_or(true);
    const auto scale_text = r.text("delta_scale").value_or("log");
    DeltaScale scale = DeltaScale::log;
    if (scale_text == "linear") {
      scale = DeltaScale::linear;
    } else if (scale_text != "log") {
      r.problem("delta_scale", "must be linear or log");
    }
    bool ok = true;
    if (count < 1 || count > 100000) {
      r.problem("delta_count", "must lie in [1, 100000]");
      ok = false;
    }
    if (!(lo <= hi)) {
      r.problem("delta_min", "delta_min must not exceed delta_max");
      ok = false;
    }
    if (scale == DeltaScale::log && lo <= 0.0) {
      r.problem("delta_min", "log scale needs delta_min > 0");
      ok = false;
    }
    if (ok) {
      std::vector<double> grid;
      for (long long k = 0; k < count; ++k) {
        const double u = count == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(count - 1);
        grid.push_back(scale == DeltaScale::linear ? lo + u * (hi - lo) : lo * std::pow(hi / lo, u));
      }
      if (mirrored) {
        for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
          if (*it != 0.0) s.deltas.push_back(-*it);
        }
      }
      s.deltas.insert(s.deltas.end(), grid.begin(), grid.end());
    }
  }
  for (double d : s.deltas) {
    if (std::abs(d) > 1.0 / std::numbers::sqrt2) {
      problems.push_back(fmt::format("[sweep] delta = {} lies outside [-1/sqrt2, 1/sqrt2]", d));
    }
  }
}

void read_wigner(const Reader& r, RunConfig& cfg) {
  auto& w = cfg.wigner;
  if (auto v = r.text("scenario")) {
    if (auto s = parse_scenario(*v)) {
      w.scenario = *s;
    } else {
      r.problem("scenario", "must be fig5, fig6 or custom");
    }
  }
  if (auto v = r.text("state")) {
    static const std::map<std::string, WignerState, std::less<>> names = {
        {"ground", WignerState::ground},
        {"fock1", WignerState::fock1},
        {"equal_superposition", WignerState::equal_superposition},
        {"meter", WignerState::meter},
        {"coherent", WignerState::coherent}};
    if (const auto it = names.find(*v); it != names.end()) {
      w.state = it->second;
    } else {
      r.problem("state", "must be ground, fock1, equal_superposition, meter or coherent");
    }
  }
  const auto re = r.real("alpha_re");
  const auto im = r.real("alpha_im");
  w.alpha = cplx(re.value_or(0.0), im.value_or(0.0));
  if ((re || im) && w.state != WignerState::coherent) r.problem("alpha_re", "alpha is only used with state = coherent");
  w.x_min = r.real("x_min");
  w.x_max = r.real("x_max");
  w.y_min = r.real("y_min");
  w.y_max = r.real("y_max");
  if (w.x_min && w.x_max && !(*w.x_min < *w.x_max)) r.problem("x_min", "x_min must be below x_max");
  if (w.y_min && w.y_max && !(*w.y_min < *w.y_max)) r.problem("y_min", "y_min must be below y_max");
  if (auto v = r.integer("resolution")) {
    if (*v < 2 || *v > 4001) {
      r.problem("resolution", "must lie in [2, 4001]");
    } else {
      w.resolution = static_cast<std::size_t>(*v);
    }
  }
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join_problems(problems)), problems_(std::move(problems)) {}

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::fig5: return "fig5";
    case Scenario::fig6: return "fig6";
    case Scenario::custom: return "custom";
  }
  return "?";
}

std::optional<Scenario> parse_scenario(std::string_view text) {
  if (text == "fig5") return Scenario::fig5;
  if (text == "fig6") return Scenario::fig6;
  if (text == "custom") return Scenario::custom;
  return std::nullopt;
}

RunConfig parse_config(std::string_view text) {
  std::vector<std::string> problems;
  std::map<std::string, Section, std::less<>> sections;
  for (const auto& [name, keys] : kKnownKeys) sections[name];

  std::string current;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        problems.push_back(fmt::format("line {}: malformed section header '{}'", line_no, line));
        current.clear();
        continue;
      }
      current = std::string(trim(line.substr(1, line.size() - 2)));
      if (!kKnownKeys.contains(current)) {
        problems.push_back(fmt::format("line {}: unknown section [{}]", line_no, current));
        current = "\x01";  // swallow its keys without further reports
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      problems.push_back(fmt::format("line {}: expected key = value, got '{}'", line_no, line));
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (current == "\x01") continue;
    if (current.empty()) {
      problems.push_back(fmt::format("line {}: key '{}' appears before any section", line_no, key));
      continue;
    }
    if (!kKnownKeys.at(current).contains(key)) {
      problems.push_back(fmt::format("line {}: unknown key '{}' in [{}]", line_no, key, current));
      continue;
    }
    if (value.empty()) {
      problems.push_back(fmt::format("line {}: [{}] {} has no value", line_no, current, key));
      continue;
    }
    auto& section = sections[current];
    if (section.contains(key)) {
      problems.push_back(fmt::format("line {}: duplicate key '{}' in [{}] (first on line {})", line_no, key, current,
                                     section[key].line));
      continue;
    }
    section[key] = Entry{value, line_no};
  }

  RunConfig cfg;
  cfg.params.sideband_index.reset();
  read_params(Reader("params", sections["params"], problems), cfg, problems);
  read_sweep(Reader("sweep", sections["sweep"], problems), cfg, problems);
  read_wigner(Reader("wigner", sections["wigner"], problems), cfg);

  if (!problems.empty()) throw ConfigError(std::move(problems));
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error while reading config file '" + path.string() + "'");
  return parse_config(buffer.str());
}

}  // namespace optoweak::app
