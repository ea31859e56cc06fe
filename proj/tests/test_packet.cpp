#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "wavecorr/erfi.hpp"
#include "wavecorr/packet.hpp"
#include "wavecorr/quadrature.hpp"

using namespace wavecorr;

namespace {

std::shared_ptr<const EigenSystem> shared_solve(const PotentialSpec& spec) {
  return std::make_shared<const EigenSystem>(solve(spec, default_spectral_config(spec)));
}

std::shared_ptr<const EigenSystem> harmonic_sys() {
  static auto sys = shared_solve(PotentialSpec::make(PotentialKind::harmonic));
  return sys;
}

std::shared_ptr<const EigenSystem> well_sys() {
  static auto sys = shared_solve(PotentialSpec::square(10.0));
  return sys;
}

CoefficientSpec coherent(double zeta, int n_max = 40) {
  CoefficientSpec cs;
  cs.family = CoefficientFamily::coherent;
  cs.zeta = zeta;
  cs.n_max = n_max;
  return cs;
}

}  // namespace

TEST_SUITE("packet") {

TEST_CASE("coherent family values") {
  const auto C = coefficient_sequence(coherent(3.0), *harmonic_sys());
  CHECK(C[0] == doctest::Approx(std::exp(-9.0 / 4.0)).epsilon(1e-15));
  CHECK(C[0] == doctest::Approx(0.1053992).epsilon(1e-6));
  // explicit formula at n = 5: zeta^5 / sqrt(2^5 5!) e^{-zeta^2/4}
  CHECK(C[5] ==
        doctest::Approx(std::pow(3.0, 5) / std::sqrt(32.0 * 120.0) * std::exp(-2.25))
            .epsilon(1e-13));
}

TEST_CASE("n-weighted family kills C(0)") {
  CoefficientSpec cs = coherent(2.5);
  cs.family = CoefficientFamily::n_weighted_coherent;
  const auto C = coefficient_sequence(cs, *harmonic_sys());
  CHECK(C[0] == 0.0);
  CHECK(C[1] != 0.0);
}

TEST_CASE("coherent zeta = 0 leaves only the ground state") {
  const WavePacket p = coefficients(coherent(0.0), harmonic_sys());
  CHECK(p.c_even(0) == 1.0);
  for (int i = 1; i < p.states_per_parity(); ++i) {
    CHECK(p.c_even(i) == 0.0);
    CHECK(p.c_odd(i) == 0.0);
  }
  // slice proportional to psi_0
  const EigenSystem& sys = p.system();
  const double r = p.jet(1.3, 0.0).x / p.jet(0.2, 0.0).x;
  CHECK(r == doctest::Approx(sys.eval_state(0, 1.3) / sys.eval_state(0, 0.2)).epsilon(1e-12));
}

TEST_CASE("prescription identity: A_n psi_n(0) = C(n), B_n psi_n'(0) = sqrt(E_n) C(n)") {
  for (auto sys : {harmonic_sys(), well_sys()}) {
    const WavePacket p = coefficients(coherent(3.0), sys);
    for (int i = 0; i < p.states_per_parity(); ++i) {
      const EigenState& se = sys->parity_state(Parity::even, i);
      const EigenState& so = sys->parity_state(Parity::odd, i);
      CHECK(std::abs(p.a_coeff(i) * se.origin - p.c_even(i)) < 1e-12);
      CHECK(std::abs(p.b_coeff(i) * so.origin - std::sqrt(so.energy) * p.c_odd(i)) < 1e-12);
    }
  }
}

TEST_CASE("square well: A_n = sqrt(L/2) C(n) for even terms, same for odd") {
  const double L = 10.0;
  CoefficientSpec cs;
  cs.family = CoefficientFamily::gaussian_projection;
  cs.alpha = 10.0;
  cs.d = 2.5;
  const WavePacket p = coefficients(cs, well_sys());
  for (int i = 0; i < p.states_per_parity(); ++i) {
    CHECK(p.a_coeff(i) == doctest::Approx(std::sqrt(L / 2.0) * p.c_even(i)).epsilon(1e-12));
    // B_n = sqrt(E_n) C(n) / psi_n'(0) = sqrt(L/2) C(n) since psi_n'(0) = sqrt(2/L) n pi/L
    CHECK(p.b_coeff(i) == doctest::Approx(std::sqrt(L / 2.0) * p.c_odd(i)).epsilon(1e-12));
  }
}

TEST_CASE("structure on the axis: Im Psi(u,0) = 0 and Re dPsi/dv(u,0) = 0") {
  const WavePacket p = coefficients(coherent(3.0), harmonic_sys());
  for (double u : {-4.0, -1.0, 0.0, 0.7, 3.0}) {
    const PacketJet j = p.jet(u, 0.0);
    CHECK(j.y == 0.0);
    CHECK(j.xv == 0.0);
  }
}

TEST_CASE("swap symmetry: both component sums are symmetric under (u,v) exchange") {
  const WavePacket p = coefficients(coherent(2.0), harmonic_sys());
  const PacketJet a = p.jet(1.1, -0.4);
  const PacketJet b = p.jet(-0.4, 1.1);
  CHECK(a.x == doctest::Approx(b.x).epsilon(1e-14));
  CHECK(a.y == doctest::Approx(b.y).epsilon(1e-14));
}

TEST_CASE("square well: packet equals the plane-wave form exactly") {
  CoefficientSpec cs;
  cs.family = CoefficientFamily::gaussian_projection;
  cs.alpha = 10.0;
  cs.d = 2.5;
  const auto sys = well_sys();
  const WavePacket p = coefficients(cs, sys);
  // Sum_even C(n) cos(sqrt(E_n) v) psi_n(u) + i Sum_odd C(n) sin(sqrt(E_n) v) psi_n(u)
  for (double u : {-3.1, 0.6, 2.5}) {
    for (double v : {-2.0, 0.3, 4.4}) {
      double x = 0.0, y = 0.0;
      for (int i = 0; i < p.states_per_parity(); ++i) {
        const EigenState& se = sys->parity_state(Parity::even, i);
        const EigenState& so = sys->parity_state(Parity::odd, i);
        x += p.c_even(i) * std::cos(std::sqrt(se.energy) * v) * sys->eval_state(se.label, u);
        y += p.c_odd(i) * std::sin(std::sqrt(so.energy) * v) * sys->eval_state(so.label, u);
      }
      const PacketJet j = p.jet(u, v);
      CHECK(j.x == doctest::Approx(x).epsilon(1e-13));
      CHECK(j.y == doctest::Approx(y).epsilon(1e-13));
    }
  }
}

TEST_CASE("gradient matches central differences at O(h^2)") {
  const WavePacket p = coefficients(coherent(3.0), harmonic_sys());
  const double u = 1.7, v = -0.9;
  const auto grad = p.evaluate_grad(u, v);
  for (double h : {1e-4, 5e-5}) {
    const auto fd_u = (p.evaluate(u + h, v) - p.evaluate(u - h, v)) / (2 * h);
    const auto fd_v = (p.evaluate(u, v + h) - p.evaluate(u, v - h)) / (2 * h);
    CHECK(std::abs(grad[0] - fd_u) < 1e-5);
    CHECK(std::abs(grad[1] - fd_v) < 1e-5);
  }
  // second derivatives in the jet agree with differences of the gradient
  const PacketJet j = p.jet(u, v);
  const double h = 1e-4;
  const auto gup = p.evaluate_grad(u + h, v), gum = p.evaluate_grad(u - h, v);
  CHECK(j.xuu == doctest::Approx((gup[0].real() - gum[0].real()) / (2 * h)).epsilon(1e-5));
  const auto gvp = p.evaluate_grad(u, v + h), gvm = p.evaluate_grad(u, v - h);
  CHECK(j.yvv == doctest::Approx((gvp[1].imag() - gvm[1].imag()) / (2 * h)).epsilon(1e-5));
}

TEST_CASE("explicit single even term reproduces C(0) psi_0(u) on the axis") {
  CoefficientSpec cs;
  cs.family = CoefficientFamily::explicit_list;
  cs.explicit_coeffs = {0.7};
  cs.n_max = 40;
  const WavePacket p = coefficients(cs, harmonic_sys());
  const EigenSystem& sys = p.system();
  for (double u : {0.0, 0.9, -2.2})
    CHECK(p.jet(u, 0.0).x ==
          doctest::Approx(0.7 * sys.eval_state(0, u)).epsilon(1e-12));
}

TEST_CASE("square-well Gaussian reconstruction of the initial slice") {
  const double L = 10.0;
  for (double d : {2.5, 3.5}) {
    CoefficientSpec cs;
    cs.family = CoefficientFamily::gaussian_projection;
    cs.alpha = 10.0;
    cs.d = d;
    const WavePacket p = coefficients(cs, well_sys());
    const int m = 2001;
    std::vector<double> us(m);
    for (int i = 0; i < m; ++i) us[i] = -L / 2 + L * i / (m - 1);
    const std::vector<double> slice = p.initial_slice(us);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < m; ++i) {
      const double target = 0.5 * (std::exp(-10.0 * (us[i] - d) * (us[i] - d)) +
                                   std::exp(-10.0 * (us[i] + d) * (us[i] + d)));
      const double wq = (i == 0 || i == m - 1) ? 0.5 : 1.0;  // trapezoid
      num += wq * (slice[i] - target) * (slice[i] - target);
      den += wq * target * target;
    }
    CHECK(std::sqrt(num / den) < 1e-3);
  }
}

TEST_CASE("gaussian projection generalizes to smooth systems") {
  // the even part of the projected Gaussian is reconstructed on the axis
  // (alpha kept moderate so 40 even states resolve the width)
  CoefficientSpec cs;
  cs.family = CoefficientFamily::gaussian_projection;
  cs.alpha = 2.0;
  cs.d = 2.0;
  const WavePacket p = coefficients(cs, harmonic_sys());
  for (double u : {0.5, 1.4, 2.0, 3.1}) {
    const double target = 0.5 * (std::exp(-2.0 * (u - 2.0) * (u - 2.0)) +
                                 std::exp(-2.0 * (u + 2.0) * (u + 2.0)));
    CHECK(p.jet(u, 0.0).x == doctest::Approx(target).epsilon(1e-6));
  }
}

TEST_CASE("n_max restricts the used states and is validated") {
  const WavePacket p = coefficients(coherent(1.0, 7), harmonic_sys());
  CHECK(p.states_per_parity() == 7);
  CHECK_THROWS(coefficients(coherent(1.0, 41), harmonic_sys()));
  CHECK_THROWS(coefficients(coherent(1.0, 0), harmonic_sys()));
}

TEST_CASE("axis ridge of the coherent packet sits at zeta") {
  const WavePacket p = coefficients(coherent(3.0), harmonic_sys());
  CHECK(axis_ridge(p) == doctest::Approx(3.0).epsilon(2e-3));
}

TEST_CASE("erfi utility against frozen references") {
  CHECK(erfi(1.0) == doctest::Approx(1.65042575879754288).epsilon(1e-13));
  CHECK(erfi(2.8) == doctest::Approx(554.777191053030749).epsilon(1e-12));
  CHECK(erfi(-1.0) == doctest::Approx(-1.65042575879754288).epsilon(1e-13));
  const auto z1 = erfi(std::complex<double>(0.5, 1.2));
  CHECK(z1.real() == doctest::Approx(0.111017655427519766).epsilon(1e-12));
  CHECK(z1.imag() == doctest::Approx(0.990587269314032625).epsilon(1e-12));
  const auto z2 = erfi(std::complex<double>(1.5, -0.7));
  CHECK(z2.real() == doctest::Approx(0.190101316086414757).epsilon(1e-12));
  CHECK(z2.imag() == doctest::Approx(-3.06960299374405465).epsilon(1e-12));
}

TEST_CASE("erfi cross-check reports the closed-form discrepancy without asserting") {
  const auto rows = erfi_cross_check(*well_sys(), 10.0, 2.5, 8);
  REQUIRE(rows.size() == 8);
  MESSAGE("closed-form vs quadrature C(n), alpha=10 d=2.5 (report only):");
  for (const auto& r : rows)
    MESSAGE("  n=", r.n, "  quad=", r.quadrature, "  |closed|=", std::abs(r.closed_form),
            "  ratio=", r.abs_ratio);
  // the quadrature column itself is trustworthy: full-line Fourier values
  // of the Gaussian, e.g. C(2) ~ sqrt(2/L) sqrt(pi/alpha) e^{-k^2/(4 alpha)} sin(k d)
  const double k = 2.0 * M_PI / 10.0;
  const double expect = std::sqrt(0.2) * std::sqrt(M_PI / 10.0) *
                        std::exp(-k * k / 40.0) * std::sin(k * 2.5);
  CHECK(rows[1].quadrature == doctest::Approx(expect).epsilon(1e-6));
}

}  // TEST_SUITE
