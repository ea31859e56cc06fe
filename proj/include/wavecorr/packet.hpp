#pragma once

#include <array>
#include <complex>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "wavecorr/eigensolve.hpp"

namespace wavecorr {

enum class CoefficientFamily { coherent, n_weighted_coherent, gaussian_projection, explicit_list };

CoefficientFamily coefficient_family_from_string(std::string_view s);
std::string to_string(CoefficientFamily f);

struct CoefficientSpec {
  CoefficientFamily family = CoefficientFamily::coherent;
  double zeta = 0.0;      // coherent families
  double alpha = 0.0;     // gaussian_projection: exp(-alpha (u - d)^2)
  double d = 0.0;
  int n_max = 40;         // retained states per parity class
  std::vector<double> explicit_coeffs;  // C(n) by label, starting at first_label
};

// C(n) for every retained label of the system, index = label - first_label.
// coherent: C(n) = zeta^n / sqrt(2^n n!) * exp(-zeta^2/4); n_weighted
// multiplies by n; gaussian_projection integrates exp(-alpha(u-d)^2) against
// psi_n over the full box.
std::vector<double> coefficient_sequence(const CoefficientSpec& cs, const EigenSystem& sys);

// x,y = Re/Im of Psi with first and second partials in u and v
struct PacketJet {
  double x = 0, y = 0;
  double xu = 0, yu = 0, xv = 0, yv = 0;
  double xuu = 0, yuu = 0, xvv = 0, yvv = 0;
  std::complex<double> value() const { return {x, y}; }
};

struct GridSpec;  // field.hpp

// Component fields of Psi on a tensor grid, (nv x nu), row j = v_j.
struct PacketGrids {
  Eigen::MatrixXd x, y;
  Eigen::MatrixXd xu, yu, xv, yv, xuu, yuu, xvv, yvv;  // empty unless with_derivs
};

// Wave packet Psi(u,v) = sum_even A_n psi_n(u) psi_n(v)
//                      + i sum_odd B_n psi_n(u) psi_n(v),
// with A_n = C(n)/psi_n(0) and B_n = sqrt(E_n) C(n)/psi_n'(0). Even-parity
// states carry the A (real-part) terms, odd-parity states the B terms.
// Immutable; evaluation is pure and concurrently callable.
class WavePacket {
 public:
  const EigenSystem& system() const { return *sys_; }
  std::shared_ptr<const EigenSystem> system_ptr() const { return sys_; }
  int states_per_parity() const { return n_used_; }
  double a_coeff(int i) const { return a_[i]; }
  double b_coeff(int i) const { return b_[i]; }
  double c_even(int i) const { return c_even_[i]; }   // C at the i-th even-parity state
  double c_odd(int i) const { return c_odd_[i]; }
  double max_used_energy() const;

  PacketJet jet(double u, double v) const;
  std::complex<double> evaluate(double u, double v) const;
  // (dPsi/du, dPsi/dv)
  std::array<std::complex<double>, 2> evaluate_grad(double u, double v) const;
  std::vector<double> initial_slice(const std::vector<double>& u) const;

  PacketGrids grids(const GridSpec& g, bool with_derivs) const;

 private:
  friend WavePacket coefficients(const CoefficientSpec&, std::shared_ptr<const EigenSystem>);
  std::shared_ptr<const EigenSystem> sys_;
  int n_used_ = 0;
  Eigen::VectorXd a_, b_;           // per parity-class index
  std::vector<double> c_even_, c_odd_;
};

WavePacket coefficients(const CoefficientSpec& cs, std::shared_ptr<const EigenSystem> sys);

// argmax of |Psi(u, 0)| over u in (0, a); golden-section refined
double axis_ridge(const WavePacket& p);

}  // namespace wavecorr
