#pragma once

#include <memory>
#include <string>
#include <vector>

#include "wavecorr/bohmian.hpp"
#include "wavecorr/config.hpp"
#include "wavecorr/io.hpp"

namespace wavecorr {

// resolved (possibly auto) run inputs shared by the CLI subcommands
struct ResolvedRun {
  std::shared_ptr<const EigenSystem> sys;
  WavePacket packet;
  ClassicalIC ic;
  double classical_t_end = 0.0;
  std::vector<std::array<double, 2>> bohmian_starts;
};

std::shared_ptr<const EigenSystem> stage_eigen(const RunConfig& cfg);
WavePacket stage_packet(const RunConfig& cfg, std::shared_ptr<const EigenSystem> sys);
// ridge-derived or explicit ICs plus the integration span
ClassicalIC resolve_classical_ic(const RunConfig& cfg, const WavePacket& packet);
double resolve_classical_t_end(const RunConfig& cfg, const ClassicalIC& ic);
Trajectory stage_classical(const RunConfig& cfg, const ClassicalIC& ic, double t_end);
std::vector<std::array<double, 2>> resolve_bohmian_starts(const RunConfig& cfg,
                                                          const WavePacket& packet);

struct PipelineResult {
  std::vector<ManifestEntry> manifest;
  std::string out_dir;
};

// eigen -> packet -> classical -> bohmian -> crest analysis; writes
// eigen.csv, psi2.field, classical.csv, bohmian_<k>.csv, crest.csv,
// config_echo.cfg and manifest.csv into out_dir. Deterministic for a given
// config. Stage failures are rethrown tagged "[stage <name>]".
PipelineResult run_pipeline(const RunConfig& cfg, const std::string& out_dir,
                            bool eigen_only = false);

}  // namespace wavecorr
