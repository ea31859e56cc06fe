#include "wavecorr/classical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "wavecorr/quadrature.hpp"

namespace wavecorr {

namespace {

struct State {
  double u, ud, v, vd;
};

State rk4_step(const PotentialSpec& spec, const State& s, double h) {
  // the well is force-free everywhere the stepper probes; trial stages may
  // poke past the wall before the reflection search claws them back
  const auto acc = [&](double q) {
    return spec.is_square_well() ? 0.0 : -2.0 * derivative(spec, q);
  };
  const auto f = [&](const State& y) {
    return State{y.ud, acc(y.u), y.vd, acc(y.v)};
  };
  const auto adv = [](const State& y, const State& k, double c) {
    return State{y.u + c * k.u, y.ud + c * k.ud, y.v + c * k.v, y.vd + c * k.vd};
  };
  const State k1 = f(s);
  const State k2 = f(adv(s, k1, 0.5 * h));
  const State k3 = f(adv(s, k2, 0.5 * h));
  const State k4 = f(adv(s, k3, h));
  return State{s.u + h / 6 * (k1.u + 2 * k2.u + 2 * k3.u + k4.u),
               s.ud + h / 6 * (k1.ud + 2 * k2.ud + 2 * k3.ud + k4.ud),
               s.v + h / 6 * (k1.v + 2 * k2.v + 2 * k3.v + k4.v),
               s.vd + h / 6 * (k1.vd + 2 * k2.vd + 2 * k3.vd + k4.vd)};
}

// advance by h inside a hard-wall box, reflecting at |q| = L/2; the crossing
// time is bisected to 1e-12
State well_step(const PotentialSpec& spec, State s, double h) {
  const double wall = 0.5 * spec.well_length();
  double remaining = h;
  const auto outside = [&](const State& y) {
    return std::abs(y.u) > wall || std::abs(y.v) > wall;
  };
  int guard = 0;
  while (remaining > 0) {
    if (++guard > 64)
      throw std::runtime_error("classical: too many wall reflections inside one step");
    State trial = rk4_step(spec, s, remaining);
    if (!outside(trial)) {
      s = trial;
      break;
    }
    double lo = 0.0, hi = remaining;
    for (int it = 0; it < 80 && (hi - lo) > 1e-16; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (outside(rk4_step(spec, s, mid))) hi = mid;
      else lo = mid;
    }
    State at = rk4_step(spec, s, lo);
    // snap and reflect every component within bisection reach of a wall
    bool reflected = false;
    if (wall - std::abs(at.u) < 1e-11) {
      at.u = std::copysign(wall, at.u);
      at.ud = -at.ud;
      reflected = true;
    }
    if (wall - std::abs(at.v) < 1e-11) {
      at.v = std::copysign(wall, at.v);
      at.vd = -at.vd;
      reflected = true;
    }
    if (!reflected)
      throw std::runtime_error("classical: wall bisection failed to locate the crossing");
    s = at;
    remaining -= lo;
  }
  return s;
}

double hermite(double t, double t0, double t1, double y0, double y1, double d0, double d1) {
  const double w = t1 - t0;
  const double s = (t - t0) / w;
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  return h00 * y0 + h10 * w * d0 + h01 * y1 + h11 * w * d1;
}

}  // namespace

void validate_equal_energy(const PotentialSpec& spec, const ClassicalIC& ic) {
  if (spec.is_square_well()) {
    const double wall = 0.5 * spec.well_length();
    if (std::abs(ic.u0) > wall)
      throw std::invalid_argument("classical: u0 outside the well");
    if (ic.vdot0 == 0.0)
      throw std::invalid_argument("classical: square well needs a nonzero speed");
    return;  // equal speeds are imposed by construction
  }
  const double rhs = evaluate(spec, ic.u0) - evaluate(spec, 0.0);
  const double defect = std::abs(ic.vdot0 * ic.vdot0 / 4.0 - rhs);
  if (defect > 1e-10)
    throw std::invalid_argument(
        "classical: equal-energy constraint violated: |vdot0^2/4 - (V(u0)-V(0))| = " +
        std::to_string(defect));
}

Trajectory integrate(const PotentialSpec& spec, const ClassicalIC& ic,
                     double t_end, double h) {
  if (!(h > 0) || !(t_end > 0))
    throw std::invalid_argument("classical: t_end and h must be positive");
  validate_equal_energy(spec, ic);

  State s{ic.u0, spec.is_square_well() ? std::abs(ic.vdot0) : 0.0, 0.0, ic.vdot0};
  const auto energy = [&](double q, double qd) { return qd * qd / 4.0 + evaluate(spec, q); };
  const double Eu0 = energy(s.u, s.ud), Ev0 = energy(s.v, s.vd);
  const double Eu_scale = std::max(std::abs(Eu0), 1e-30);
  const double Ev_scale = std::max(std::abs(Ev0), 1e-30);

  Trajectory tr;
  tr.h = h;
  const long n = (long)std::ceil(t_end / h - 1e-9);
  tr.samples.reserve(n + 1);
  tr.samples.push_back({0.0, s.u, s.v, s.ud, s.vd, Eu0, Ev0});
  double t = 0.0;
  for (long k = 0; k < n; ++k) {
    const double step = std::min(h, t_end - t);
    s = spec.is_square_well() ? well_step(spec, s, step) : rk4_step(spec, s, step);
    t += step;
    const double Eu = energy(s.u, s.ud), Ev = energy(s.v, s.vd);
    if (std::abs(Eu - Eu0) / Eu_scale > 1e-6 || std::abs(Ev - Ev0) / Ev_scale > 1e-6)
      throw std::runtime_error("classical: energy drift exceeded 1e-6 at t = " +
                               std::to_string(t) + "; step too large");
    tr.samples.push_back({t, s.u, s.v, s.ud, s.vd, Eu, Ev});
  }
  return tr;
}

PeriodResult period(const Trajectory& tr) {
  const auto& smp = tr.samples;
  if (smp.size() < 4) throw std::invalid_argument("period: trajectory too short");

  // upward zero crossings of v, refined on the Hermite interpolant
  std::vector<double> crossings;
  for (size_t k = 1; k + 1 < smp.size(); ++k) {
    if (!(smp[k].v < 0.0 && smp[k + 1].v >= 0.0)) continue;
    double lo = smp[k].t, hi = smp[k + 1].t;
    const auto f = [&](double t) {
      return hermite(t, smp[k].t, smp[k + 1].t, smp[k].v, smp[k + 1].v,
                     smp[k].vdot, smp[k + 1].vdot);
    };
    for (int it = 0; it < 100 && (hi - lo) > 1e-14 * std::max(1.0, hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (f(mid) < 0.0) lo = mid;
      else hi = mid;
    }
    crossings.push_back(0.5 * (lo + hi));
  }
  if (crossings.size() < 2)
    throw std::runtime_error("period: no complete oscillation found "
                             "(need at least two periods of data)");
  PeriodResult out;
  out.T = (crossings.back() - crossings.front()) / (double)(crossings.size() - 1);

  // defect of v(t) = u(t - T/4), u interpolated between samples
  const double q = out.T / 4.0;
  double defect = 0.0;
  size_t j = 0;
  for (const auto& s : smp) {
    const double ts = s.t - q;
    if (ts < smp.front().t) continue;
    while (j + 1 < smp.size() && smp[j + 1].t < ts) ++j;
    if (j + 1 >= smp.size()) break;
    const double u_shift = hermite(ts, smp[j].t, smp[j + 1].t, smp[j].u, smp[j + 1].u,
                                   smp[j].udot, smp[j + 1].udot);
    defect = std::max(defect, std::abs(s.v - u_shift));
  }
  out.quarter_shift_defect = defect;
  return out;
}

double period_estimate(const PotentialSpec& spec, const ClassicalIC& ic) {
  if (spec.is_square_well())
    return 2.0 * spec.well_length() / std::abs(ic.vdot0);
  const double u0 = std::abs(ic.u0);
  if (!(u0 > 0)) throw std::invalid_argument("period_estimate: u0 must be nonzero");
  const double E = evaluate(spec, u0) - evaluate(spec, 0.0);
  if (!(E > 0)) throw std::invalid_argument("period_estimate: V(u0) - V(0) must be positive");
  std::vector<double> x, w;
  gauss_legendre(256, 0.0, M_PI / 2.0, x, w);
  double T = 0.0;
  for (size_t j = 0; j < x.size(); ++j) {
    const double u = u0 * std::sin(x[j]);
    const double W = evaluate(spec, u) - evaluate(spec, 0.0);
    // integrand u0 cos(theta) / (2 sqrt(E - W)); finite at theta = pi/2
    const double denom = 2.0 * std::sqrt(std::max(E - W, 0.0));
    if (denom > 0) T += w[j] * u0 * std::cos(x[j]) / denom;
  }
  return 4.0 * T;
}

}  // namespace wavecorr
