#include "wavecorr/potentials.hpp"

#include <cmath>
#include <stdexcept>

namespace wavecorr {

PotentialSpec PotentialSpec::make(PotentialKind k) {
  PotentialSpec s;
  s.kind = k;
  if (k == PotentialKind::square_well) s.params["L"] = 10.0;
  return s;
}

PotentialSpec PotentialSpec::square(double L) {
  if (!(L > 0)) throw std::invalid_argument("square_well: L must be positive");
  PotentialSpec s;
  s.kind = PotentialKind::square_well;
  s.params["L"] = L;
  return s;
}

double PotentialSpec::well_length() const {
  if (!is_square_well()) throw std::logic_error("well_length: not a square well");
  auto it = params.find("L");
  if (it == params.end() || !(it->second > 0))
    throw std::invalid_argument("square_well: missing or non-positive parameter L");
  return it->second;
}

double PotentialSpec::domain_half_width() const {
  return is_square_well() ? 0.5 * well_length() : std::numeric_limits<double>::infinity();
}

PotentialKind potential_kind_from_string(std::string_view s) {
  if (s == "square_well") return PotentialKind::square_well;
  if (s == "harmonic") return PotentialKind::harmonic;
  if (s == "quartic") return PotentialKind::quartic;
  if (s == "double_well") return PotentialKind::double_well;
  if (s == "gauss_exp") return PotentialKind::gauss_exp;
  if (s == "cosh") return PotentialKind::cosh;
  throw std::invalid_argument("unknown potential kind '" + std::string(s) + "'");
}

std::string to_string(PotentialKind k) {
  switch (k) {
    case PotentialKind::square_well: return "square_well";
    case PotentialKind::harmonic: return "harmonic";
    case PotentialKind::quartic: return "quartic";
    case PotentialKind::double_well: return "double_well";
    case PotentialKind::gauss_exp: return "gauss_exp";
    case PotentialKind::cosh: return "cosh";
  }
  throw std::logic_error("bad PotentialKind");
}

namespace {

void check_well_domain(const PotentialSpec& spec, double q) {
  const double half = 0.5 * spec.well_length();
  if (std::abs(q) > half)
    throw std::domain_error("square_well: |q| = " + std::to_string(std::abs(q)) +
                            " outside the box [-L/2, L/2], L/2 = " + std::to_string(half));
}

}  // namespace

double evaluate(const PotentialSpec& spec, double q) {
  switch (spec.kind) {
    case PotentialKind::square_well:
      check_well_domain(spec, q);
      return 0.0;
    case PotentialKind::harmonic: return q * q;
    case PotentialKind::quartic: return q * q * q * q;
    case PotentialKind::double_well: return -3.0 * q * q + q * q * q * q;
    case PotentialKind::gauss_exp: return std::exp(q * q / 8.0) - 1.0;
    case PotentialKind::cosh: return std::cosh(q) - 1.0;
  }
  throw std::logic_error("bad PotentialKind");
}

double derivative(const PotentialSpec& spec, double q) {
  switch (spec.kind) {
    case PotentialKind::square_well:
      check_well_domain(spec, q);
      return 0.0;  // zero force between the walls
    case PotentialKind::harmonic: return 2.0 * q;
    case PotentialKind::quartic: return 4.0 * q * q * q;
    case PotentialKind::double_well: return -6.0 * q + 4.0 * q * q * q;
    case PotentialKind::gauss_exp: return 0.25 * q * std::exp(q * q / 8.0);
    case PotentialKind::cosh: return std::sinh(q);
  }
  throw std::logic_error("bad PotentialKind");
}

}  // namespace wavecorr
