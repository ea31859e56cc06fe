#pragma once

#include <cstdint>
#include <vector>

#include "wavecorr/classical.hpp"
#include "wavecorr/field.hpp"
#include "wavecorr/packet.hpp"

namespace wavecorr {

// |Psi|^2 on the grid
ScalarField2D psi2_field(const WavePacket& p, const GridSpec& g);

// |{-d2/du2 + d2/dv2 + V(u) - V(v)} Psi| with term-wise analytic second
// derivatives; cancels to roundoff for converged eigenfunctions
ScalarField2D pde_residual_analytic(const WavePacket& p, const GridSpec& g);

// same operator with the 5-point cross stencil on the sampled Psi; interior
// points only (boundary ring zero). O(h^2) discretization error.
ScalarField2D pde_residual_fd(const WavePacket& p, const GridSpec& g);

// max residual / (max|Psi| * max E_n over the packet's states)
double relative_residual(const ScalarField2D& residual, const WavePacket& p);

struct CrestSample {
  double arc = 0.0;           // cumulative arc length along the classical orbit
  double u_c = 0.0, v_c = 0.0;  // classical point
  double u_r = 0.0, v_r = 0.0;  // located ridge point
  double offset = 0.0;          // |ridge - classical| along the local normal
  bool flagged = false;         // maximum sat on the window boundary
};

struct CrestReport {
  std::vector<CrestSample> samples;
  double mean_offset = 0.0, max_offset = 0.0;  // over unflagged samples
  double window = 0.0;
  int nu = 0, nv = 0;
  int flagged_count = 0;
};

// At each classical sample, search the bilinearly interpolated field along
// the local orbit normal within +-window for its maximum (coarse scan +
// golden-section refinement). Boundary maxima are flagged inconclusive.
CrestReport crest_offset(const ScalarField2D& psi2, const Trajectory& classical,
                         double window);

// Q = (-R_uu + R_vv)/R from the jet of Psi; throws nothing, caller masks nodes
double quantum_potential_point(const PacketJet& j);

struct QField {
  ScalarField2D q;
  std::vector<std::uint8_t> mask;  // 1 where R^2 <= node_epsilon (Q set to 0)
  int masked_count = 0;
};

QField quantum_potential(const WavePacket& p, const GridSpec& g,
                         double node_epsilon = 1e-10);

// median over trajectory samples of |Q| / |V(u) - V(v)|; node-masked samples
// are skipped
double q_suppression_median(const WavePacket& p, const Trajectory& orbit,
                            double node_epsilon = 1e-10);

// max over probe samples of the distance to the reference orbit polyline
double trajectory_offset_max(const Trajectory& probe, const Trajectory& reference);

// samples at least `margin` inside every grid edge (square-well orbits touch
// the walls, where no crest window fits)
Trajectory clip_to_field(const Trajectory& tr, const GridSpec& g, double margin);

}  // namespace wavecorr
