#include "wavecorr/bohmian.hpp"

#include <cmath>

namespace wavecorr {

PolarValue polar(const WavePacket& p, double u, double v) {
  const PacketJet j = p.jet(u, v);
  PolarValue out;
  out.R = std::hypot(j.x, j.y);
  if (out.R == 0.0) {
    out.node = true;
    out.S = 0.0;
  } else {
    out.S = std::atan2(j.y, j.x);
  }
  return out;
}

namespace {

std::array<double, 2> velocity_from_jet(const GuidanceField& g, const PacketJet& j,
                                        double u, double v) {
  const double R2 = j.x * j.x + j.y * j.y;
  if (R2 <= g.node_epsilon) throw node_error(u, v, R2);
  const double su = (j.x * j.yu - j.y * j.xu) / R2;
  const double sv = (j.x * j.yv - j.y * j.xv) / R2;
  return {g.kappa * su, -g.kappa * sv};
}

}  // namespace

std::array<double, 2> velocity(const GuidanceField& g, double u, double v) {
  return velocity_from_jet(g, g.packet->jet(u, v), u, v);
}

Trajectory integrate(const GuidanceField& g, std::array<double, 2> start,
                     double t_end, double h) {
  if (!g.packet) throw std::invalid_argument("bohmian: null packet");
  if (!(h > 0) || !(t_end > 0))
    throw std::invalid_argument("bohmian: t_end and h must be positive");
  const EigenSystem& sys = g.packet->system();
  const PotentialSpec& spec = sys.potential();
  const double a = sys.box_half_length();

  Trajectory tr;
  tr.h = h;
  double u = start[0], v = start[1], t = 0.0;

  const auto push_sample = [&](double ud, double vd) {
    tr.samples.push_back({t, u, v, ud, vd,
                          ud * ud / 4.0 + evaluate(spec, u),
                          vd * vd / 4.0 + evaluate(spec, v)});
  };

  const auto field_at = [&](double uu, double vv) -> std::array<double, 2> {
    if (std::abs(uu) > a || std::abs(vv) > a) {
      tr.status = TrajectoryStatus::domain_exit;
      tr.stop_u = uu;
      tr.stop_v = vv;
      throw std::domain_error("bohmian: left the eigensystem box");
    }
    try {
      return velocity_from_jet(g, g.packet->jet(uu, vv), uu, vv);
    } catch (const node_error& e) {
      tr.status = TrajectoryStatus::node_encounter;
      tr.stop_u = e.u;
      tr.stop_v = e.v;
      throw;
    }
  };

  const long n = (long)std::ceil(t_end / h - 1e-9);
  try {
    auto k1 = field_at(u, v);
    push_sample(k1[0], k1[1]);
    for (long k = 0; k < n; ++k) {
      const double step = std::min(h, t_end - t);
      k1 = field_at(u, v);
      const auto k2 = field_at(u + 0.5 * step * k1[0], v + 0.5 * step * k1[1]);
      const auto k3 = field_at(u + 0.5 * step * k2[0], v + 0.5 * step * k2[1]);
      const auto k4 = field_at(u + step * k3[0], v + step * k3[1]);
      u += step / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
      v += step / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
      t += step;
      const auto vel = field_at(u, v);
      push_sample(vel[0], vel[1]);
    }
  } catch (const node_error&) {
    // early termination; status and stop point already recorded
  } catch (const std::domain_error&) {
  }
  return tr;
}

}  // namespace wavecorr
