#include "wavecorr/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wavecorr {

void GridSpec::validate() const {
  if (nu < 2 || nv < 2) throw std::invalid_argument("grid: nu and nv must be >= 2");
  if (!(umax > umin) || !(vmax > vmin))
    throw std::invalid_argument("grid: extent must be positive");
}

bool ScalarField2D::contains(double u, double v) const {
  return u >= grid.umin && u <= grid.umax && v >= grid.vmin && v <= grid.vmax;
}

double ScalarField2D::bilinear(double u, double v) const {
  if (!contains(u, v))
    throw std::domain_error("field: bilinear sample outside the grid");
  const double fu = (u - grid.umin) / grid.du();
  const double fv = (v - grid.vmin) / grid.dv();
  int i = std::min((int)fu, grid.nu - 2);
  int j = std::min((int)fv, grid.nv - 2);
  const double tu = fu - i, tv = fv - j;
  return (1 - tu) * (1 - tv) * at(i, j) + tu * (1 - tv) * at(i + 1, j) +
         (1 - tu) * tv * at(i, j + 1) + tu * tv * at(i + 1, j + 1);
}

double ScalarField2D::max_abs() const {
  double m = 0.0;
  for (double x : values) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace wavecorr
