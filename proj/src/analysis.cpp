#include "wavecorr/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wavecorr {

namespace {

void check_grid_in_domain(const WavePacket& p, const GridSpec& g, bool wall_margin) {
  g.validate();
  const double a = p.system().box_half_length();
  double margin = 0.0;
  if (wall_margin && p.system().is_square_well())
    margin = 2.0 * std::max(g.du(), g.dv());  // keep the stencil off the walls
  if (g.umin < -a + margin || g.umax > a - margin || g.vmin < -a + margin ||
      g.vmax > a - margin)
    throw std::domain_error("analysis: grid extends outside the eigensystem box");
}

std::vector<double> grid_potential(const PotentialSpec& spec, const GridSpec& g, bool v_axis) {
  std::vector<double> out(v_axis ? g.nv : g.nu);
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = evaluate(spec, v_axis ? g.v((int)i) : g.u((int)i));
  return out;
}

}  // namespace

ScalarField2D psi2_field(const WavePacket& p, const GridSpec& g) {
  check_grid_in_domain(p, g, false);
  const PacketGrids f = p.grids(g, false);
  ScalarField2D out(g);
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i)
      out.at(i, j) = f.x(j, i) * f.x(j, i) + f.y(j, i) * f.y(j, i);
  return out;
}

ScalarField2D pde_residual_analytic(const WavePacket& p, const GridSpec& g) {
  check_grid_in_domain(p, g, true);
  const PacketGrids f = p.grids(g, true);
  const std::vector<double> Vu = grid_potential(p.system().potential(), g, false);
  const std::vector<double> Vv = grid_potential(p.system().potential(), g, true);
  ScalarField2D out(g);
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      const double w = Vu[i] - Vv[j];
      const double rx = -f.xuu(j, i) + f.xvv(j, i) + w * f.x(j, i);
      const double ry = -f.yuu(j, i) + f.yvv(j, i) + w * f.y(j, i);
      out.at(i, j) = std::hypot(rx, ry);
    }
  return out;
}

ScalarField2D pde_residual_fd(const WavePacket& p, const GridSpec& g) {
  check_grid_in_domain(p, g, true);
  const PacketGrids f = p.grids(g, false);
  const std::vector<double> Vu = grid_potential(p.system().potential(), g, false);
  const std::vector<double> Vv = grid_potential(p.system().potential(), g, true);
  const double du2 = g.du() * g.du(), dv2 = g.dv() * g.dv();
  ScalarField2D out(g);
  for (int j = 1; j < g.nv - 1; ++j)
    for (int i = 1; i < g.nu - 1; ++i) {
      const double w = Vu[i] - Vv[j];
      const double rx = -(f.x(j, i + 1) - 2 * f.x(j, i) + f.x(j, i - 1)) / du2 +
                        (f.x(j + 1, i) - 2 * f.x(j, i) + f.x(j - 1, i)) / dv2 +
                        w * f.x(j, i);
      const double ry = -(f.y(j, i + 1) - 2 * f.y(j, i) + f.y(j, i - 1)) / du2 +
                        (f.y(j + 1, i) - 2 * f.y(j, i) + f.y(j - 1, i)) / dv2 +
                        w * f.y(j, i);
      out.at(i, j) = std::hypot(rx, ry);
    }
  return out;
}

double relative_residual(const ScalarField2D& residual, const WavePacket& p) {
  // |Psi| scale taken on the residual's grid
  const PacketGrids f = p.grids(residual.grid, false);
  double psi_max = 0.0;
  for (int j = 0; j < residual.grid.nv; ++j)
    for (int i = 0; i < residual.grid.nu; ++i)
      psi_max = std::max(psi_max, std::hypot(f.x(j, i), f.y(j, i)));
  const double scale = psi_max * p.max_used_energy();
  return scale > 0 ? residual.max_abs() / scale : 0.0;
}

CrestReport crest_offset(const ScalarField2D& psi2, const Trajectory& classical,
                         double window) {
  if (!(window > 0)) throw std::invalid_argument("crest_offset: window must be positive");
  CrestReport rep;
  rep.window = window;
  rep.nu = psi2.grid.nu;
  rep.nv = psi2.grid.nv;

  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double arc = 0.0;
  double pu = 0.0, pv = 0.0;
  bool have_prev = false;

  for (const TrajectorySample& s : classical.samples) {
    if (have_prev) arc += std::hypot(s.u - pu, s.v - pv);
    pu = s.u; pv = s.v; have_prev = true;

    const double speed = std::hypot(s.udot, s.vdot);
    if (speed == 0.0) continue;  // tangent undefined; skip the sample
    const double nu_ = -s.vdot / speed, nv_ = s.udot / speed;  // left normal

    if (!psi2.contains(s.u - window * nu_, s.v - window * nv_) ||
        !psi2.contains(s.u + window * nu_, s.v + window * nv_))
      throw std::domain_error("crest_offset: search window exits the field");

    const auto fval = [&](double t) {
      return psi2.bilinear(s.u + t * nu_, s.v + t * nv_);
    };
    // coarse scan for the global maximum on [-w, w], then golden refine
    const int nscan = 33;
    int best = 0;
    double fbest = -1.0;
    for (int k = 0; k < nscan; ++k) {
      const double t = -window + 2.0 * window * k / (nscan - 1);
      const double fk = fval(t);
      if (fk > fbest) { fbest = fk; best = k; }
    }
    CrestSample cs;
    cs.arc = arc;
    cs.u_c = s.u;
    cs.v_c = s.v;
    if (best == 0 || best == nscan - 1) {
      cs.flagged = true;  // inconclusive: maximum on the window boundary
      cs.u_r = s.u + (best == 0 ? -window : window) * nu_;
      cs.v_r = s.v + (best == 0 ? -window : window) * nv_;
      cs.offset = window;
      ++rep.flagged_count;
    } else {
      double lo = -window + 2.0 * window * (best - 1) / (nscan - 1);
      double hi = -window + 2.0 * window * (best + 1) / (nscan - 1);
      double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
      double fc = fval(c), fd = fval(d);
      while (hi - lo > 1e-10) {
        if (fc > fd) {
          hi = d; d = c; fd = fc; c = hi - gr * (hi - lo); fc = fval(c);
        } else {
          lo = c; c = d; fc = fd; d = lo + gr * (hi - lo); fd = fval(d);
        }
      }
      const double t = 0.5 * (lo + hi);
      cs.u_r = s.u + t * nu_;
      cs.v_r = s.v + t * nv_;
      cs.offset = std::abs(t);
    }
    rep.samples.push_back(cs);
  }

  double sum = 0.0;
  int n_ok = 0;
  for (const CrestSample& cs : rep.samples) {
    if (cs.flagged) continue;
    sum += cs.offset;
    rep.max_offset = std::max(rep.max_offset, cs.offset);
    ++n_ok;
  }
  rep.mean_offset = n_ok > 0 ? sum / n_ok : 0.0;
  return rep;
}

double quantum_potential_point(const PacketJet& j) {
  const double R = std::hypot(j.x, j.y);
  const double Ru = (j.x * j.xu + j.y * j.yu) / R;
  const double Rv = (j.x * j.xv + j.y * j.yv) / R;
  const double Ruu =
      (j.xu * j.xu + j.x * j.xuu + j.yu * j.yu + j.y * j.yuu - Ru * Ru) / R;
  const double Rvv =
      (j.xv * j.xv + j.x * j.xvv + j.yv * j.yv + j.y * j.yvv - Rv * Rv) / R;
  return (-Ruu + Rvv) / R;
}

QField quantum_potential(const WavePacket& p, const GridSpec& g, double node_epsilon) {
  check_grid_in_domain(p, g, false);
  const PacketGrids f = p.grids(g, true);
  QField out;
  out.q = ScalarField2D(g);
  out.mask.assign((size_t)g.nu * g.nv, 0);
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      PacketJet pj;
      pj.x = f.x(j, i); pj.y = f.y(j, i);
      pj.xu = f.xu(j, i); pj.yu = f.yu(j, i);
      pj.xv = f.xv(j, i); pj.yv = f.yv(j, i);
      pj.xuu = f.xuu(j, i); pj.yuu = f.yuu(j, i);
      pj.xvv = f.xvv(j, i); pj.yvv = f.yvv(j, i);
      const double R2 = pj.x * pj.x + pj.y * pj.y;
      if (R2 <= node_epsilon) {
        out.mask[(size_t)j * g.nu + i] = 1;
        ++out.masked_count;
      } else {
        out.q.at(i, j) = quantum_potential_point(pj);
      }
    }
  return out;
}

double q_suppression_median(const WavePacket& p, const Trajectory& orbit,
                            double node_epsilon) {
  const PotentialSpec& spec = p.system().potential();
  std::vector<double> ratios;
  ratios.reserve(orbit.samples.size());
  for (const TrajectorySample& s : orbit.samples) {
    const PacketJet j = p.jet(s.u, s.v);
    if (j.x * j.x + j.y * j.y <= node_epsilon) continue;
    const double Q = quantum_potential_point(j);
    const double dv = std::abs(evaluate(spec, s.u) - evaluate(spec, s.v));
    ratios.push_back(dv > 0 ? std::abs(Q) / dv
                            : std::numeric_limits<double>::infinity());
  }
  if (ratios.empty()) throw std::runtime_error("q_suppression_median: no usable samples");
  std::sort(ratios.begin(), ratios.end());
  return ratios[ratios.size() / 2];
}

Trajectory clip_to_field(const Trajectory& tr, const GridSpec& g, double margin) {
  Trajectory out;
  out.h = tr.h;
  out.status = tr.status;
  for (const TrajectorySample& s : tr.samples)
    if (s.u >= g.umin + margin && s.u <= g.umax - margin && s.v >= g.vmin + margin &&
        s.v <= g.vmax - margin)
      out.samples.push_back(s);
  if (out.samples.empty())
    throw std::runtime_error("clip_to_field: no orbit samples a margin inside the field");
  return out;
}

double trajectory_offset_max(const Trajectory& probe, const Trajectory& reference) {
  if (reference.samples.size() < 2 || probe.samples.empty())
    throw std::invalid_argument("trajectory_offset_max: trajectories too short");
  double worst = 0.0;
  for (const TrajectorySample& s : probe.samples) {
    double best = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k + 1 < reference.samples.size(); ++k) {
      const auto& p0 = reference.samples[k];
      const auto& p1 = reference.samples[k + 1];
      const double ex = p1.u - p0.u, ey = p1.v - p0.v;
      const double len2 = ex * ex + ey * ey;
      double t = 0.0;
      if (len2 > 0) t = std::clamp(((s.u - p0.u) * ex + (s.v - p0.v) * ey) / len2, 0.0, 1.0);
      best = std::min(best, std::hypot(s.u - (p0.u + t * ex), s.v - (p0.v + t * ey)));
      if (best == 0.0) break;
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace wavecorr
