#pragma once

#include <array>
#include <stdexcept>

#include "wavecorr/classical.hpp"
#include "wavecorr/packet.hpp"

namespace wavecorr {

// Guidance field of the causal interpretation. kappa = 2 matches the
// classical m = 1/2 convention (p = qdot/2); kappa = 1/2 reproduces the
// paper's literal equations. Orbit geometry is kappa-invariant.
struct GuidanceField {
  const WavePacket* packet = nullptr;
  double kappa = 2.0;
  double node_epsilon = 1e-10;  // threshold on R^2
};

struct PolarValue {
  double R = 0.0;
  double S = 0.0;  // in (-pi, pi]; 0 with node=true where R vanishes
  bool node = false;
};

// Psi = R e^{iS}: R = sqrt(x^2+y^2), S = atan2(y, x)
PolarValue polar(const WavePacket& p, double u, double v);

struct node_error : std::runtime_error {
  node_error(double u_, double v_, double R2_)
      : std::runtime_error("bohmian: node encountered at (u, v) = (" +
                           std::to_string(u_) + ", " + std::to_string(v_) +
                           "), R^2 = " + std::to_string(R2_)),
        u(u_), v(v_), R2(R2_) {}
  double u, v, R2;
};

// (udot, vdot) = kappa * (dS/du, -dS/dv), written branch-free in x and y:
// udot = +kappa (x y_u - y x_u)/(x^2+y^2), vdot = -kappa (x y_v - y x_v)/(x^2+y^2).
// Throws node_error when R^2 <= node_epsilon.
std::array<double, 2> velocity(const GuidanceField& g, double u, double v);

// RK4 on the autonomous guidance flow. Terminates early (with status) when a
// substep lands within node_epsilon of a node or leaves the eigensystem box.
// Sample columns match the classical trajectory (E_q = qdot^2/4 + V(q)).
Trajectory integrate(const GuidanceField& g, std::array<double, 2> start,
                     double t_end, double h);

}  // namespace wavecorr
