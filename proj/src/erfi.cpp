#include "wavecorr/erfi.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "wavecorr/packet.hpp"
#include "wavecorr/quadrature.hpp"

namespace wavecorr {

namespace {

const double inv_sqrt_pi = 1.0 / std::sqrt(M_PI);

// 2/sqrt(pi) * int_0^x e^{t^2} dt, x 0; series for moderate x, asymptotic
// beyond (all terms positive, no cancellation)
double erfi_real_pos(double x) {
  if (x == 0.0) return 0.0;
  if (x < 4.0) {
    const double x2 = x * x;
    double term = x, sum = x;
    for (int k = 1; k < 200; ++k) {
      term *= x2 / k;
      const double add = term / (2 * k + 1);
      sum += add;
      if (add < 1e-17 * sum) break;
    }
    return 2.0 * inv_sqrt_pi * sum;
  }
  // erfi(x) ~ e^{x^2}/(x sqrt(pi)) * sum_k (2k-1)!!/(2x^2)^k
  const double x2 = x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 40; ++k) {
    term *= (2 * k - 1) / (2.0 * x2);
    if (term > 1.0) break;  // asymptotic series started diverging
    sum += term;
    if (term < 1e-17) break;
  }
  return std::exp(x2) / (x * std::sqrt(M_PI)) * sum;
}

}  // namespace

double erfi(double x) { return x < 0 ? -erfi_real_pos(-x) : erfi_real_pos(x); }

std::complex<double> erfi(std::complex<double> z) {
  // odd function, conjugate-symmetric: reduce to x >= 0, y >= 0
  if (z.real() < 0) return -erfi(-z);
  if (z.imag() < 0) return std::conj(erfi(std::conj(z)));
  const double x = z.real(), y = z.imag();
  if (x * x > 650.0)
    throw std::overflow_error("erfi: real part too large for double range");

  // path 0 -> x along the real axis, then x -> x+iy vertically:
  // erfi(z) = erfi(x) + 2i/sqrt(pi) * int_0^y e^{(x+is)^2} ds.
  // |e^{(x+is)^2}| = e^{x^2 - s^2}; beyond s = 9 + x the integrand is below
  // double precision relative to the real-leg value.
  std::complex<double> out(erfi_real_pos(x), 0.0);
  const double s_max = std::min(y, x + 9.0);
  if (s_max > 0) {
    static const auto unit = [] {
      std::vector<double> xn, xw;
      gauss_legendre(96, 0.0, 1.0, xn, xw);
      return std::pair(xn, xw);
    }();
    double re = 0.0, im = 0.0;
    for (int j = 0; j < 96; ++j) {
      const double s = s_max * unit.first[j];
      const double w = s_max * unit.second[j];
      const double mag = std::exp(x * x - s * s);
      const double ph = 2.0 * x * s;
      re += w * mag * std::cos(ph);
      im += w * mag * std::sin(ph);
    }
    // i * (re + i im)
    out += 2.0 * inv_sqrt_pi * std::complex<double>(-im, re);
  }
  return out;
}

std::complex<double> square_well_gaussian_coeff_closed_form(int n, double alpha,
                                                            double d, double L) {
  using C = std::complex<double>;
  const C i(0.0, 1.0);
  const double npi = n * M_PI;
  const double sa = std::sqrt(alpha);
  const C pref = -i * std::exp(C(npi * npi / (4 * alpha * L * L), npi * d / L)) /
                 std::sqrt(2.0 * alpha * L / M_PI);
  const auto arg = [&](double factor) {
    return C(npi, 2.0 * alpha * L * factor) / (2.0 * sa * L);
  };
  const C t1 = -erfi(arg(d - L));
  const C t2 = std::exp(2.0 * i * d * npi / L) * (erfi(arg(L - d)) - erfi(arg(-(d + L))));
  const C t3 = erfi(arg(d + L));
  return pref * (t1 + t2 + t3);
}

std::vector<ErfiCrossCheckRow> erfi_cross_check(const EigenSystem& well, double alpha,
                                                double d, int n_count) {
  if (!well.is_square_well())
    throw std::invalid_argument("erfi_cross_check: needs a square-well system");
  CoefficientSpec cs;
  cs.family = CoefficientFamily::gaussian_projection;
  cs.alpha = alpha;
  cs.d = d;
  const std::vector<double> C = coefficient_sequence(cs, well);
  const double L = well.potential().well_length();

  std::vector<ErfiCrossCheckRow> rows;
  for (int n = 1; n <= n_count && n <= (int)C.size(); ++n) {
    ErfiCrossCheckRow r;
    r.n = n;
    r.quadrature = C[n - 1];
    r.closed_form = square_well_gaussian_coeff_closed_form(n, alpha, d, L);
    r.abs_ratio = std::abs(r.quadrature) > 1e-300
                      ? std::abs(r.closed_form) / std::abs(r.quadrature)
                      : std::numeric_limits<double>::infinity();
    rows.push_back(r);
  }
  return rows;
}

}  // namespace wavecorr
