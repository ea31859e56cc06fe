#pragma once

#include <array>
#include <string>
#include <vector>

#include "wavecorr/classical.hpp"
#include "wavecorr/eigensolve.hpp"
#include "wavecorr/field.hpp"
#include "wavecorr/packet.hpp"

namespace wavecorr {

// Run configuration, parsed from a flat INI-style document:
//   [section]
//   key = value
// Unknown sections or keys are rejected. Every default is materialized at
// parse time and written back by echo_config, so an echoed file reproduces
// the run byte-for-byte.
struct RunConfig {
  PotentialSpec potential;
  SpectralConfig spectral;
  CoefficientSpec packet;

  struct Classical {
    bool auto_from_ridge = true;
    double u0 = 0.0;        // explicit mode
    double vdot0 = 0.0;     // explicit mode; derived from u0 when omitted
    bool vdot0_given = false;
    bool auto_t_end = true;
    double t_end = 0.0;
    double n_periods = 3.0;  // used when t_end is auto
    double h = 1e-3;
    bool operator==(const Classical&) const = default;
  } classical;

  struct Bohmian {
    double kappa = 2.0;
    double node_epsilon = 1e-10;
    bool auto_start = true;
    std::vector<std::array<double, 2>> starts;
    bool auto_t_end = true;  // one detected classical period
    double t_end = 0.0;
    double h = 1e-3;
    bool operator==(const Bohmian&) const = default;
  } bohmian;

  struct Grid {
    bool auto_extent = true;  // [-0.95 a, 0.95 a]^2
    double umin = 0, umax = 0, vmin = 0, vmax = 0;
    int nu = 400, nv = 400;
    double crest_window = 0.5;
    bool operator==(const Grid&) const = default;
  } grid;

  struct Output {
    std::string directory = "out";
    std::string format_version = "wavecorr-v1";
    bool operator==(const Output&) const = default;
  } output;

  bool operator==(const RunConfig& other) const;

  GridSpec grid_spec() const;  // resolved against the spectral box
};

struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);
std::string echo_config(const RunConfig& cfg);

}  // namespace wavecorr
