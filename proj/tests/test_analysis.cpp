#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <memory>

#include "wavecorr/analysis.hpp"
#include "wavecorr/bohmian.hpp"

using namespace wavecorr;

namespace {

std::shared_ptr<const EigenSystem> harmonic_sys() {
  static auto sys = std::make_shared<const EigenSystem>(
      solve(PotentialSpec::make(PotentialKind::harmonic),
            default_spectral_config(PotentialSpec::make(PotentialKind::harmonic))));
  return sys;
}

WavePacket sho_packet(double zeta = 3.0) {
  CoefficientSpec cs;
  cs.family = CoefficientFamily::coherent;
  cs.zeta = zeta;
  cs.n_max = 40;
  return coefficients(cs, harmonic_sys());
}

GridSpec square_grid(double ext, int n) {
  GridSpec g;
  g.umin = -ext; g.umax = ext; g.vmin = -ext; g.vmax = ext;
  g.nu = n; g.nv = n;
  return g;
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("analytic residual cancels to roundoff") {
  const WavePacket p = sho_packet();
  const ScalarField2D res = pde_residual_analytic(p, square_grid(5.0, 101));
  CHECK(relative_residual(res, p) < 1e-12);
}

TEST_CASE("zero packet gives zero residual") {
  CoefficientSpec cs;
  cs.family = CoefficientFamily::explicit_list;
  cs.explicit_coeffs = {0.0};
  cs.n_max = 40;
  const WavePacket p = coefficients(cs, harmonic_sys());
  const ScalarField2D res = pde_residual_analytic(p, square_grid(4.0, 41));
  CHECK(res.max_abs() == 0.0);
  CHECK(relative_residual(res, p) == 0.0);
}

TEST_CASE("FD residual converges at second order") {
  const WavePacket p = sho_packet();
  double prev = 0.0;
  std::vector<double> maxima;
  for (int n : {101, 201, 401}) {
    const ScalarField2D res = pde_residual_fd(p, square_grid(4.0, n));
    maxima.push_back(res.max_abs());
    (void)prev;
  }
  const double r1 = maxima[0] / maxima[1];
  const double r2 = maxima[1] / maxima[2];
  CHECK(r1 > 3.0);
  CHECK(r1 < 5.0);
  CHECK(r2 > 3.0);
  CHECK(r2 < 5.0);
}

TEST_CASE("synthetic ring field: crest offsets vanish on the matched circle") {
  // field e^{-(r-3)^2} against the classical circle of radius 3; the ridge
  // localization error of the bilinear search is O(grid step), so use a
  // fine grid to hit the 1e-3 bar
  GridSpec g = square_grid(4.2, 2101);
  ScalarField2D f(g);
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      const double r = std::hypot(g.u(i), g.v(j));
      f.at(i, j) = std::exp(-(r - 3.0) * (r - 3.0));
    }
  Trajectory circle;
  circle.h = 1e-2;
  for (int k = 0; k <= 628; ++k) {
    const double t = k * 1e-2;
    circle.samples.push_back({t, 3.0 * std::cos(t), 3.0 * std::sin(t),
                              -3.0 * std::sin(t), 3.0 * std::cos(t), 9.0, 9.0});
  }
  const CrestReport rep = crest_offset(f, circle, 0.5);
  CHECK(rep.flagged_count == 0);
  CHECK(rep.mean_offset < 1e-3);
  CHECK(rep.max_offset < 5e-3);
}

TEST_CASE("crest offsets are invariant under field normalization") {
  const WavePacket p = sho_packet();
  GridSpec g = square_grid(5.0, 201);
  ScalarField2D f = psi2_field(p, g);
  Trajectory circle;
  circle.h = 1e-2;
  for (int k = 0; k <= 314; ++k) {
    const double t = k * 2e-2;
    circle.samples.push_back({t, 3.0 * std::cos(t), 3.0 * std::sin(t),
                              -6.0 * std::sin(t), 6.0 * std::cos(t), 9.0, 9.0});
  }
  const CrestReport a = crest_offset(f, circle, 0.5);
  for (double& x : f.values) x *= 7.25;  // |c Psi|^2 for any complex c
  const CrestReport b = crest_offset(f, circle, 0.5);
  REQUIRE(a.samples.size() == b.samples.size());
  // rounding can flip near-tied golden-section brackets; differences stay
  // far below a grid step
  for (size_t k = 0; k < a.samples.size(); ++k)
    CHECK(std::abs(a.samples[k].offset - b.samples[k].offset) < 1e-6);
}

TEST_CASE("window leaving the field is an error") {
  GridSpec g = square_grid(2.0, 21);
  ScalarField2D f(g);
  Trajectory line;
  line.h = 1.0;
  line.samples.push_back({0.0, 1.9, 0.0, 0.0, 1.0, 0.0, 0.0});
  CHECK_THROWS_AS(crest_offset(f, line, 0.5), std::domain_error);
}

TEST_CASE("single even term: Q = V(v) - V(u) pointwise") {
  CoefficientSpec cs;
  cs.family = CoefficientFamily::explicit_list;
  cs.explicit_coeffs = {1.0};
  cs.n_max = 1;
  const WavePacket p = coefficients(cs, harmonic_sys());
  for (auto [u, v] : {std::pair{0.4, 1.1}, {1.8, -0.6}, {-2.2, 2.0}}) {
    const double Q = quantum_potential_point(p.jet(u, v));
    CHECK(Q == doctest::Approx(v * v - u * u).epsilon(1e-9));
  }
}

TEST_CASE("constant jet has zero quantum potential") {
  PacketJet j;
  j.x = 0.8;
  j.y = -0.3;  // all derivatives zero
  CHECK(quantum_potential_point(j) == 0.0);
}

TEST_CASE("quantum potential grid masks nodes instead of failing") {
  CoefficientSpec cs;
  cs.family = CoefficientFamily::explicit_list;
  cs.explicit_coeffs = {1.0, 1.0, 1.0};  // several states -> nodal lines
  cs.n_max = 2;
  const WavePacket p = coefficients(cs, harmonic_sys());
  // the outer corners of a +-6 grid sit deep in the tail where R^2 underflows
  // the node threshold
  const QField qf = quantum_potential(p, square_grid(6.0, 101), 1e-10);
  CHECK(qf.masked_count > 0);
  for (size_t k = 0; k < qf.q.values.size(); ++k)
    if (qf.mask[k]) CHECK(qf.q.values[k] == 0.0);
  // unmasked values stay finite
  for (double x : qf.q.values) CHECK(std::isfinite(x));
}

TEST_CASE("SHO packet: quantum potential suppressed along the classical circle") {
  const WavePacket p = sho_packet();
  const PotentialSpec spec = PotentialSpec::make(PotentialKind::harmonic);
  const Trajectory tr = integrate(spec, {3.0, 6.0}, M_PI, 1e-3);
  const double med = q_suppression_median(p, tr);
  MESSAGE("median |Q| / |V(u)-V(v)| along the circle = ", med);
  // The structural value for the zeta = 3 coherent packet is ~0.117 (the
  // transverse curvature of R against the 9 cos(4t) potential split), pinned
  // here as a regression bound. The aspirational < 0.1 target is asserted,
  // and currently fails, in acceptance criterion 8.
  CHECK(med < 0.13);
  CHECK(med > 0.0);
}

TEST_CASE("square-well packet: crest hugs the 45-degree classical lines") {
  auto well = std::make_shared<const EigenSystem>(
      solve(PotentialSpec::square(10.0),
            default_spectral_config(PotentialSpec::square(10.0))));
  CoefficientSpec cs;
  cs.family = CoefficientFamily::gaussian_projection;
  cs.alpha = 10.0;
  cs.d = 2.5;
  const WavePacket p = coefficients(cs, well);
  GridSpec g;
  g.umin = g.vmin = -4.75;
  g.umax = g.vmax = 4.75;
  g.nu = g.nv = 400;
  const ScalarField2D f2 = psi2_field(p, g);
  const Trajectory tr = integrate(PotentialSpec::square(10.0), {2.5, 2.0}, 10.0, 1e-3);
  const CrestReport rep = crest_offset(f2, clip_to_field(tr, g, 0.5), 0.5);
  // qualify samples away from the walls (the clip above) and away from the
  // four points where the two diagonal band families cross, (+-d, 0) and
  // (0, +-d): the overlapping bands shift the pointwise maximum there
  const double step = g.du();
  double worst = 0.0;
  int n = 0;
  for (const CrestSample& s : rep.samples) {
    if (s.flagged) continue;
    const double dmin = std::min(
        std::min(std::hypot(s.u_c - 2.5, s.v_c), std::hypot(s.u_c + 2.5, s.v_c)),
        std::min(std::hypot(s.u_c, s.v_c - 2.5), std::hypot(s.u_c, s.v_c + 2.5)));
    if (dmin < 1.0) continue;
    ++n;
    worst = std::max(worst, s.offset);
  }
  CHECK(n > 1000);
  CHECK(worst / step < 3.0);
}

TEST_CASE("trajectory offset metric") {
  Trajectory ref;
  ref.h = 1.0;
  for (int k = 0; k <= 100; ++k)
    ref.samples.push_back({0.0, (double)k / 100.0, 0.0, 1.0, 0.0, 0.0, 0.0});
  Trajectory probe = ref;
  probe.samples[50].v = 0.25;  // bump one sample off the line
  CHECK(trajectory_offset_max(probe, ref) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(trajectory_offset_max(ref, ref) == 0.0);
}

TEST_CASE("grid outside the box is rejected") {
  const WavePacket p = sho_packet();
  CHECK_THROWS_AS(psi2_field(p, square_grid(17.0, 11)), std::domain_error);
  CHECK_THROWS_AS(pde_residual_analytic(p, square_grid(17.0, 11)), std::domain_error);
}

}  // TEST_SUITE
