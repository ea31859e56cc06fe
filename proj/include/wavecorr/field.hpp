#pragma once

#include <string>
#include <vector>

namespace wavecorr {

struct GridSpec {
  double umin = -1, umax = 1, vmin = -1, vmax = 1;
  int nu = 2, nv = 2;

  double du() const { return (umax - umin) / (nu - 1); }
  double dv() const { return (vmax - vmin) / (nv - 1); }
  double u(int i) const { return umin + i * du(); }
  double v(int j) const { return vmin + j * dv(); }
  void validate() const;  // nu,nv >= 2, positive extent
};

// Uniform (u,v) grid of reals, row-major with v-major rows:
// values[j*nu + i] = f(u_i, v_j).
struct ScalarField2D {
  GridSpec grid;
  std::vector<double> values;

  ScalarField2D() = default;
  explicit ScalarField2D(const GridSpec& g) : grid(g), values((size_t)g.nu * g.nv, 0.0) {
    g.validate();
  }
  double& at(int i, int j) { return values[(size_t)j * grid.nu + i]; }
  double at(int i, int j) const { return values[(size_t)j * grid.nu + i]; }
  bool contains(double u, double v) const;
  double bilinear(double u, double v) const;
  double max_abs() const;
};

}  // namespace wavecorr
