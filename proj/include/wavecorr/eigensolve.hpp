#pragma once

#include <Eigen/Dense>
#include <vector>

#include "wavecorr/potentials.hpp"

namespace wavecorr {

enum class Parity { even, odd };

struct SpectralConfig {
  double box_half_length = 16.0;
  int n_basis_per_parity = 120;
  int quadrature_order = 256;
  int n_states = 40;  // retained eigenpairs per parity
};

// per-potential desk-scale defaults (box sized for states up to the
// zeta <= 4 packet weights)
SpectralConfig default_spectral_config(const PotentialSpec& spec);

struct EigenState {
  int label;      // 0-based for smooth potentials, 1-based for the square well
  Parity parity;
  double energy;
  Eigen::VectorXd coeffs;  // expansion in the parity block's box modes
  double origin;  // psi(0) for even states, psi'(0) for odd states
};

// Parity-separated eigensystem of -psi'' + (V - V(0)) psi = E psi on
// [-a, a] with hard walls, expanded in box modes: cos((2k-1) pi q / 2a)/sqrt(a)
// for the even block and sin(k pi q / a)/sqrt(a) for the odd block. The
// square well is the exact case (the modes are its eigenfunctions).
//
// Sign convention: each eigenfunction is positive beyond its last node
// (standard Sturm-Liouville normalization), so origin values alternate in
// sign with the number of positive-axis nodes. The square well keeps the
// textbook cos/sin forms, whose origins are positive.
//
// Immutable after solve(); safe to share across threads.
class EigenSystem {
 public:
  double box_half_length() const { return a_; }
  const PotentialSpec& potential() const { return potential_; }
  bool is_square_well() const { return potential_.is_square_well(); }
  int states_per_parity() const { return n_per_parity_; }
  int first_label() const { return is_square_well() ? 1 : 0; }

  // all retained states, ascending energy (== ascending label)
  const std::vector<EigenState>& states() const { return states_; }
  const EigenState& state_by_label(int n) const;
  // i-th retained state of a parity class, i in [0, states_per_parity)
  const EigenState& parity_state(Parity p, int i) const;

  double eval_state(int label, double q) const;
  double eval_state_deriv(int label, double q) const;
  double eval_state_deriv2(int label, double q) const;

  // values (deriv = 0), first (1) or second (2) derivatives of the first
  // `count` states of a parity class at one point
  void eval_block(Parity p, int count, double q,
                  double* val, double* der, double* der2) const;
  // same over many points; rows = states, cols = points
  Eigen::MatrixXd eval_block_grid(Parity p, int count,
                                  const std::vector<double>& q, int deriv) const;

  // max |psi_n| over the outer 5% of the box / max |psi_n| over the box
  double boundary_decay(int label) const;

 private:
  friend EigenSystem solve(const PotentialSpec&, const SpectralConfig&);
  PotentialSpec potential_;
  double a_ = 0.0;
  int n_per_parity_ = 0;
  Eigen::VectorXd kappa_even_, kappa_odd_;   // mode wavenumbers
  Eigen::MatrixXd coef_even_, coef_odd_;     // (n_states x n_basis)
  std::vector<EigenState> states_;
  std::vector<int> even_index_, odd_index_;  // parity class -> states_ index

  void check_point(double q) const;
};

EigenSystem solve(const PotentialSpec& spec, const SpectralConfig& cfg);

}  // namespace wavecorr
