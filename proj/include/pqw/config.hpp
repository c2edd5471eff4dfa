#pragma once

#include "pqw/coinwalk.hpp"
#include "pqw/rational.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace pqw {

enum class Family { time, plastic };

struct ExperimentConfig {
  Family family = Family::time;
  WalkConfig walk;
  RationalExp b_exp{1, 1};

  int nx = 32;
  int ny = 32;
  long long steps = 100;
  std::string initial = "gaussian"; ///< gaussian | delta | random

  double T = 1.0;
  std::vector<double> eps_list;
  int grid = 32;
  double eps = 0.01;
  std::vector<std::array<double, 2>> momenta;
  int dispersion_power = 1;
  std::uint64_t seed = 0;

  std::string format = "json"; ///< csv | json
  std::string path;
};

/// Parses "0.5", "-1e-3", "pi", "-pi/2", "3pi/2", "0.25*pi", "2*pi/3".
double parse_angle(std::string_view text);

/// INI text with sections [walk], [coin_x], [coin_y], [lattice], [run], [output].
/// Throws std::invalid_argument on malformed input.
ExperimentConfig parse_config(std::istream &in);
ExperimentConfig load_config(const std::string &path);

/// Inverse of parse_config; numbers printed with 17 significant digits.
std::string emit_config(const ExperimentConfig &cfg);

/// Builds the coin jets from the family and b exponent and validates.
void finalize(ExperimentConfig &cfg);

} // namespace pqw
