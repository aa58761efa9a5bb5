#pragma once

// Run configuration: flat `key = value` text grouped in [params], [sweep] and
// [wigner] sections. '#' and ';' start comments. Unknown sections or keys,
// duplicates and malformed values are all collected and reported together.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "optoweak/dynamics.hpp"
#include "optoweak/phase_space.hpp"

namespace optoweak::app {

// Every problem found while reading a configuration.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class DeltaScale { linear, log };

struct SweepSpec {
  std::vector<double> deltas;  // explicit grid, or generated from the range keys
  std::vector<double> phis = {1e-3};
  bool svg = false;
};

enum class Scenario { fig5, fig6, custom };
enum class WignerState { ground, fock1, equal_superposition, meter, coherent };

std::string_view to_string(Scenario s);
std::optional<Scenario> parse_scenario(std::string_view text);

struct WignerSpec {
  Scenario scenario = Scenario::custom;
  WignerState state = WignerState::meter;
  cplx alpha = 0.0;  // for state = coherent
  // Unset ranges default to +-5, widened in steps of 0.5 to the support guard.
  std::optional<double> x_min, x_max, y_min, y_max;
  std::size_t resolution = 201;
};

struct RunConfig {
  SystemParams params;
  SweepSpec sweep;
  WignerSpec wigner;
};

// Throws ConfigError listing every problem.
RunConfig parse_config(std::string_view text);
// Throws IoError when the file cannot be read, ConfigError otherwise.
RunConfig load_config(const std::filesystem::path& path);

}  // namespace optoweak::app
