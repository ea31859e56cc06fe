#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "wavecorr/eigensolve.hpp"
#include "wavecorr/quadrature.hpp"

using namespace wavecorr;

namespace {

const std::vector<PotentialKind> smooth_kinds = {
    PotentialKind::harmonic, PotentialKind::quartic, PotentialKind::double_well,
    PotentialKind::gauss_exp, PotentialKind::cosh};

EigenSystem solve_default(PotentialKind k) {
  const PotentialSpec spec = PotentialSpec::make(k);
  return solve(spec, default_spectral_config(spec));
}

// quadrature overlap <psi_m | psi_n> over the box
double overlap(const EigenSystem& sys, int m, int n, int order) {
  std::vector<double> x, w;
  gauss_legendre(order, -sys.box_half_length(), sys.box_half_length(), x, w);
  double s = 0.0;
  for (int j = 0; j < order; ++j)
    s += w[j] * sys.eval_state(m, x[j]) * sys.eval_state(n, x[j]);
  return s;
}

}  // namespace

TEST_SUITE("eigensolve") {

TEST_CASE("square well: exact spectrum and eigenfunctions") {
  const double L = 10.0;
  const PotentialSpec well = PotentialSpec::square(L);
  const EigenSystem sys = solve(well, default_spectral_config(well));

  CHECK(sys.first_label() == 1);
  CHECK(sys.states().size() == 80);
  // E_n = n^2 pi^2 / L^2
  CHECK(sys.state_by_label(1).energy == doctest::Approx(M_PI * M_PI / 100.0).epsilon(1e-14));
  for (int n = 1; n <= 40; ++n) {
    const double exact = n * n * M_PI * M_PI / (L * L);
    CHECK(std::abs(sys.state_by_label(n).energy - exact) <= 1e-12 * exact);
  }
  // psi_1(0) = sqrt(2/L), even ground state
  CHECK(sys.state_by_label(1).parity == Parity::even);
  CHECK(sys.eval_state(1, 0.0) == doctest::Approx(std::sqrt(2.0 / L)).epsilon(1e-14));
  CHECK(sys.state_by_label(1).origin == doctest::Approx(0.4472136).epsilon(1e-7));
  // closed forms at an interior point
  CHECK(sys.eval_state(3, 1.2) ==
        doctest::Approx(std::sqrt(2.0 / L) * std::cos(3 * M_PI * 1.2 / L)).epsilon(1e-14));
  CHECK(sys.eval_state(2, 1.2) ==
        doctest::Approx(std::sqrt(2.0 / L) * std::sin(2 * M_PI * 1.2 / L)).epsilon(1e-14));
  // odd states vanish at the origin
  CHECK(sys.eval_state(2, 0.0) == 0.0);
  CHECK(sys.eval_state(4, 0.0) == 0.0);
}

TEST_CASE("harmonic: E_n = 2n+1 against the analytic oracle") {
  const EigenSystem sys = solve_default(PotentialKind::harmonic);
  for (int n = 0; n <= 30; ++n) {
    const double exact = 2.0 * n + 1.0;
    CHECK(std::abs(sys.state_by_label(n).energy - exact) <= 1e-8 * exact);
  }
}

TEST_CASE("harmonic ground state is the Gaussian") {
  const EigenSystem sys = solve_default(PotentialKind::harmonic);
  const double r = sys.eval_state(0, 1.0) / sys.eval_state(0, 0.0);
  CHECK(r == doctest::Approx(std::exp(-0.5)).epsilon(1e-9));
  CHECK(sys.eval_state(0, 0.0) > 0.0);
}

TEST_CASE("quartic ground state against the shooting oracle") {
  const EigenSystem sys = solve_default(PotentialKind::quartic);
  const double oracle = oracles::shoot_energy([](double q) { return q * q * q * q; },
                                              /*even=*/true, 6.0, 5e-4, 0.5, 1.5);
  CHECK(oracle == doctest::Approx(1.0603621).epsilon(2e-6));  // sanity pin
  CHECK(std::abs(sys.state_by_label(0).energy - oracle) < 1e-6);
}

TEST_CASE("orthonormality under the configured quadrature") {
  for (PotentialKind k : smooth_kinds) {
    const EigenSystem sys = solve_default(k);
    // spot-check a spread of pairs at the reference quadrature order
    const std::vector<int> picks = {0, 1, 2, 7, 20, 39, 56, 79};
    for (int m : picks)
      for (int n : picks) {
        const double v = overlap(sys, m, n, 700);
        CHECK(std::abs(v - (m == n ? 1.0 : 0.0)) < 1e-8);
      }
  }
}

TEST_CASE("parity purity and alternation") {
  for (PotentialKind k : smooth_kinds) {
    const EigenSystem sys = solve_default(k);
    const double a = sys.box_half_length();
    for (int n : {0, 1, 5, 16, 33}) {
      const EigenState& st = sys.state_by_label(n);
      CHECK(st.parity == (n % 2 == 0 ? Parity::even : Parity::odd));
      const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
      for (int i = 1; i <= 16; ++i) {
        const double q = a * i / 17.0;
        CHECK(std::abs(sys.eval_state(n, q) - sgn * sys.eval_state(n, -q)) < 1e-10);
      }
    }
    for (size_t i = 0; i + 1 < sys.states().size(); ++i)
      CHECK(sys.states()[i].energy < sys.states()[i + 1].energy);
  }
}

TEST_CASE("Galerkin residual of retained states") {
  for (PotentialKind k : {PotentialKind::harmonic, PotentialKind::quartic,
                          PotentialKind::cosh}) {
    const PotentialSpec spec = PotentialSpec::make(k);
    const EigenSystem sys = solve(spec, default_spectral_config(spec));
    std::vector<double> x, w;
    gauss_legendre(512, 0.0, sys.box_half_length(), x, w);
    for (int n : {0, 3, 11, 30}) {
      const EigenState& st = sys.state_by_label(n);
      double acc = 0.0;
      for (size_t j = 0; j < x.size(); ++j) {
        const double W = evaluate(spec, x[j]) - evaluate(spec, 0.0);
        const double r = -sys.eval_state_deriv2(n, x[j]) +
                         (W - st.energy) * sys.eval_state(n, x[j]);
        acc += 2.0 * w[j] * r * r;  // residual has definite parity
      }
      CHECK(acc < 1e-10);
    }
  }
}

TEST_CASE("spectral convergence: doubling the basis moves retained energies < 1e-8") {
  for (PotentialKind k : smooth_kinds) {
    const PotentialSpec spec = PotentialSpec::make(k);
    const SpectralConfig cfg = default_spectral_config(spec);
    SpectralConfig big = cfg;
    big.n_basis_per_parity *= 2;  // solve() floors the quadrature to match
    const EigenSystem sys = solve(spec, cfg);
    const EigenSystem ref = solve(spec, big);
    for (int n : {0, 1, 10, 41, 79}) {
      const double scale = std::max(1.0, std::abs(ref.state_by_label(n).energy));
      CHECK(std::abs(sys.state_by_label(n).energy - ref.state_by_label(n).energy) <
            1e-8 * scale);
    }
  }
}

TEST_CASE("boundary decay of retained states") {
  for (PotentialKind k : smooth_kinds) {
    const EigenSystem sys = solve_default(k);
    for (int n : {0, 20, 79}) CHECK(sys.boundary_decay(n) < 1e-8);
  }
}

TEST_CASE("standard sign convention: origins alternate within a parity class") {
  const EigenSystem sys = solve_default(PotentialKind::harmonic);
  for (int i = 0; i < sys.states_per_parity(); ++i) {
    const double want = (i % 2 == 0) ? 1.0 : -1.0;
    CHECK(sys.parity_state(Parity::even, i).origin * want > 0.0);
    CHECK(sys.parity_state(Parity::odd, i).origin * want > 0.0);
  }
}

TEST_CASE("derivative evaluation matches finite differences") {
  const EigenSystem sys = solve_default(PotentialKind::cosh);
  const double h = 1e-5;
  for (int n : {0, 1, 8}) {
    for (double q : {0.4, 2.3}) {
      const double fd = (sys.eval_state(n, q + h) - sys.eval_state(n, q - h)) / (2 * h);
      CHECK(sys.eval_state_deriv(n, q) == doctest::Approx(fd).epsilon(1e-7));
      const double fd2 = (sys.eval_state(n, q + h) - 2 * sys.eval_state(n, q) +
                          sys.eval_state(n, q - h)) / (h * h);
      CHECK(sys.eval_state_deriv2(n, q) == doctest::Approx(fd2).epsilon(1e-5));
    }
  }
}

TEST_CASE("invalid configurations are rejected") {
  const PotentialSpec spec = PotentialSpec::make(PotentialKind::harmonic);
  SpectralConfig cfg = default_spectral_config(spec);
  cfg.n_states = cfg.n_basis_per_parity + 1;
  CHECK_THROWS(solve(spec, cfg));
  cfg = default_spectral_config(spec);
  cfg.quadrature_order = 32;
  CHECK_THROWS(solve(spec, cfg));
  cfg = default_spectral_config(spec);
  cfg.box_half_length = 3.0;  // far too small for 40 retained harmonic states
  CHECK_THROWS(solve(spec, cfg));
  // out-of-range queries
  const EigenSystem sys = solve(spec, default_spectral_config(spec));
  CHECK_THROWS(sys.eval_state(0, 17.0));
  CHECK_THROWS(sys.state_by_label(80));
}

}  // TEST_SUITE
