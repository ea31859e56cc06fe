#pragma once

#include <vector>

#include "wavecorr/potentials.hpp"

namespace wavecorr {

// Initial conditions per the two-oscillator setup: v(0) = 0 always.
// Smooth potentials: u(0) = u0, udot(0) = 0, and the equal-energy constraint
// vdot0^2/4 = V(u0) - V(0) must hold. Square well: udot(0) = +|vdot0|
// (equal speeds <=> equal energies; the zero-velocity start is degenerate
// there).
struct ClassicalIC {
  double u0 = 0.0;
  double vdot0 = 0.0;
};

// throws std::invalid_argument when the constraint is violated beyond 1e-10
void validate_equal_energy(const PotentialSpec& spec, const ClassicalIC& ic);

struct TrajectorySample {
  double t, u, v, udot, vdot, Eu, Ev;
};

enum class TrajectoryStatus { ok, node_encounter, domain_exit };

struct Trajectory {
  std::vector<TrajectorySample> samples;
  double h = 0.0;
  TrajectoryStatus status = TrajectoryStatus::ok;
  double stop_u = 0.0, stop_v = 0.0;  // offending point for early termination
};

// Fixed-step RK4 on udd = -2 V'(u), vdd = -2 V'(v); E_q = qdot^2/4 + V(q)
// per component (m = 1/2 convention). Square-well walls are elastic
// reflections located by bisection. Aborts if the relative energy drift
// exceeds 1e-6.
Trajectory integrate(const PotentialSpec& spec, const ClassicalIC& ic,
                     double t_end, double h);

struct PeriodResult {
  double T = 0.0;
  // max_t |v(t) - u(t - T/4)|; ~0 for smooth symmetric potentials with
  // these ICs, reported as-is for the square well
  double quarter_shift_defect = 0.0;
};

// Period from successive upward zero crossings of v, refined on the cubic
// Hermite interpolant. Needs at least two full periods of data.
PeriodResult period(const Trajectory& tr);

// T = 4 int_0^{u0} du / (2 sqrt(V(u0) - V(u))) via the u = u0 sin(theta)
// substitution (removes the turning-point singularity); square well:
// 2 L / speed.
double period_estimate(const PotentialSpec& spec, const ClassicalIC& ic);

}  // namespace wavecorr
