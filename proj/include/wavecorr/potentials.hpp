#pragma once

#include <limits>
#include <map>
#include <string>
#include <string_view>

namespace wavecorr {

// Symmetric 1D potentials, dimensionless units. The five closed-form kinds
// are shifted so that V(0) = 0; the square well is V = 0 on [-L/2, L/2] with
// hard walls (domain restriction, never a finite wall value).
enum class PotentialKind { square_well, harmonic, quartic, double_well, gauss_exp, cosh };

struct PotentialSpec {
  PotentialKind kind = PotentialKind::harmonic;
  std::map<std::string, double> params;  // square_well: "L"

  static PotentialSpec make(PotentialKind k);
  static PotentialSpec square(double L);

  bool is_square_well() const { return kind == PotentialKind::square_well; }
  double well_length() const;  // L; throws unless square_well
  // half-width of the evaluation domain: L/2 for the well, +inf otherwise
  double domain_half_width() const;
};

PotentialKind potential_kind_from_string(std::string_view s);
std::string to_string(PotentialKind k);

double evaluate(const PotentialSpec& spec, double q);
double derivative(const PotentialSpec& spec, double q);

}  // namespace wavecorr
