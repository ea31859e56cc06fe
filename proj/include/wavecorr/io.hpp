#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wavecorr/analysis.hpp"
#include "wavecorr/classical.hpp"
#include "wavecorr/eigensolve.hpp"
#include "wavecorr/field.hpp"

namespace wavecorr {

// shortest round-trippable decimal (17 significant digits)
std::string fmt17(double x);

// wavecorr-field-v1: six header lines
//   format=wavecorr-field-v1
//   umin=... umax=...
//   nu=...
//   vmin=... vmax=...
//   nv=...
//   kind=...
// then nv lines of nu comma-separated values, v ascending, u ascending
// within a line.
void write_field(const std::string& path, const ScalarField2D& f, const std::string& kind);
ScalarField2D read_field(const std::string& path, std::string* kind_out = nullptr);

// columns: t,u,v,udot,vdot,Eu,Ev
void write_trajectory_csv(const std::string& path, const Trajectory& tr);

// columns: n,parity,E_n,origin_value_or_slope,boundary_decay
void write_eigen_csv(const std::string& path, const EigenSystem& sys);

// per-sample rows, then one `summary,...` line
void write_crest_csv(const std::string& path, const CrestReport& rep);

std::uint64_t fnv1a64(const std::string& bytes);
std::string read_file_bytes(const std::string& path);

struct ManifestEntry {
  std::string file;
  std::uint64_t bytes = 0;
  std::uint64_t checksum = 0;
};

// rows sorted by filename; columns file,bytes,fnv1a64 (checksum in hex)
void write_manifest(const std::string& path, const std::vector<ManifestEntry>& entries);
ManifestEntry manifest_entry(const std::string& dir, const std::string& filename);

}  // namespace wavecorr
