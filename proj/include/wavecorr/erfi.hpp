#pragma once

#include <complex>
#include <vector>

#include "wavecorr/eigensolve.hpp"

namespace wavecorr {

// imaginary error function erfi(z) = -i erf(iz) for complex z
std::complex<double> erfi(std::complex<double> z);
double erfi(double x);

// The closed-form square-well Gaussian expansion coefficient, transcribed
// verbatim for cross-checking against the quadrature projection. Known to
// disagree with the projection (see the cross-check report); never used to
// build packets.
std::complex<double> square_well_gaussian_coeff_closed_form(int n, double alpha,
                                                            double d, double L);

struct ErfiCrossCheckRow {
  int n;
  double quadrature;                 // C(n) by projection
  std::complex<double> closed_form;  // paper-style expression
  double abs_ratio;                  // |closed_form| / |quadrature| (inf if quadrature ~ 0)
};

// report-only comparison for a square-well system; never asserts
std::vector<ErfiCrossCheckRow> erfi_cross_check(const EigenSystem& well, double alpha,
                                                double d, int n_count);

}  // namespace wavecorr
