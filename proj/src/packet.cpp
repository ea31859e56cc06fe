#include "wavecorr/packet.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include "wavecorr/field.hpp"
#include "wavecorr/quadrature.hpp"

namespace wavecorr {

CoefficientFamily coefficient_family_from_string(std::string_view s) {
  if (s == "coherent") return CoefficientFamily::coherent;
  if (s == "n_weighted_coherent") return CoefficientFamily::n_weighted_coherent;
  if (s == "gaussian_projection") return CoefficientFamily::gaussian_projection;
  if (s == "explicit") return CoefficientFamily::explicit_list;
  throw std::invalid_argument("unknown coefficient family '" + std::string(s) + "'");
}

std::string to_string(CoefficientFamily f) {
  switch (f) {
    case CoefficientFamily::coherent: return "coherent";
    case CoefficientFamily::n_weighted_coherent: return "n_weighted_coherent";
    case CoefficientFamily::gaussian_projection: return "gaussian_projection";
    case CoefficientFamily::explicit_list: return "explicit";
  }
  throw std::logic_error("bad CoefficientFamily");
}

std::vector<double> coefficient_sequence(const CoefficientSpec& cs, const EigenSystem& sys) {
  const int first = sys.first_label();
  const int last = sys.states().back().label;
  std::vector<double> C(last - first + 1, 0.0);

  switch (cs.family) {
    case CoefficientFamily::coherent:
    case CoefficientFamily::n_weighted_coherent: {
      // C(n) = zeta^n / sqrt(2^n n!) e^{-zeta^2/4}, by the stable recurrence
      // C(n) = C(n-1) * zeta / sqrt(2n)
      double c = std::exp(-cs.zeta * cs.zeta / 4.0);
      for (int n = 0; n <= last; ++n) {
        if (n > 0) c *= cs.zeta / std::sqrt(2.0 * n);
        if (n >= first)
          C[n - first] = (cs.family == CoefficientFamily::n_weighted_coherent) ? n * c : c;
      }
      break;
    }
    case CoefficientFamily::gaussian_projection: {
      if (!(cs.alpha > 0))
        throw std::invalid_argument("packet: gaussian_projection requires alpha > 0");
      const double a = sys.box_half_length();
      const int order = 512;
      std::vector<double> qn, qw;
      gauss_legendre(order, -a, a, qn, qw);
      std::vector<double> g(order);
      for (int j = 0; j < order; ++j)
        g[j] = qw[j] * std::exp(-cs.alpha * (qn[j] - cs.d) * (qn[j] - cs.d));
      for (Parity p : {Parity::even, Parity::odd}) {
        const Eigen::MatrixXd psi = sys.eval_block_grid(p, sys.states_per_parity(), qn, 0);
        for (int i = 0; i < sys.states_per_parity(); ++i) {
          double acc = 0.0;
          for (int j = 0; j < order; ++j) acc += g[j] * psi(i, j);
          C[sys.parity_state(p, i).label - first] = acc;
        }
      }
      break;
    }
    case CoefficientFamily::explicit_list: {
      if (cs.explicit_coeffs.empty())
        throw std::invalid_argument("packet: explicit family requires a coefficient list");
      for (size_t k = 0; k < cs.explicit_coeffs.size() && (int)k < (int)C.size(); ++k)
        C[k] = cs.explicit_coeffs[k];
      break;
    }
  }
  return C;
}

WavePacket coefficients(const CoefficientSpec& cs, std::shared_ptr<const EigenSystem> sys) {
  if (!sys) throw std::invalid_argument("packet: null eigensystem");
  if (cs.n_max < 1 || cs.n_max > sys->states_per_parity())
    throw std::invalid_argument("packet: need 1 <= n_max <= retained states per parity");

  const std::vector<double> C = coefficient_sequence(cs, *sys);
  const int first = sys->first_label();

  WavePacket p;
  p.sys_ = sys;
  p.n_used_ = cs.n_max;
  p.a_.resize(cs.n_max);
  p.b_.resize(cs.n_max);
  p.c_even_.resize(cs.n_max);
  p.c_odd_.resize(cs.n_max);
  for (int i = 0; i < cs.n_max; ++i) {
    const EigenState& se = sys->parity_state(Parity::even, i);
    const EigenState& so = sys->parity_state(Parity::odd, i);
    if (std::abs(se.origin) < 1e-12 || std::abs(so.origin) < 1e-12)
      throw std::runtime_error("packet: origin value/slope below 1e-12 at label " +
                               std::to_string(std::abs(se.origin) < 1e-12 ? se.label : so.label));
    if (!(so.energy > 0))
      throw std::runtime_error("packet: odd state " + std::to_string(so.label) +
                               " has non-positive energy; the slope prescription needs "
                               "sqrt(E_n) real");
    p.c_even_[i] = C[se.label - first];
    p.c_odd_[i] = C[so.label - first];
    p.a_[i] = p.c_even_[i] / se.origin;
    p.b_[i] = std::sqrt(so.energy) * p.c_odd_[i] / so.origin;
  }

  // truncation tail check for the coherent families (warn only)
  if (cs.family == CoefficientFamily::coherent ||
      cs.family == CoefficientFamily::n_weighted_coherent) {
    double cmax = 0.0;
    for (int i = 0; i < cs.n_max; ++i)
      cmax = std::max({cmax, std::abs(p.c_even_[i]), std::abs(p.c_odd_[i])});
    const double tail =
        std::max(std::abs(p.c_even_[cs.n_max - 1]), std::abs(p.c_odd_[cs.n_max - 1]));
    if (cmax > 0 && tail / cmax >= 1e-8)
      std::cerr << "packet: warning: truncation tail |C| ratio " << tail / cmax
                << " >= 1e-8 at n_max = " << cs.n_max << "\n";
  }
  return p;
}

double WavePacket::max_used_energy() const {
  double e = 0.0;
  for (int i = 0; i < n_used_; ++i) {
    e = std::max(e, std::abs(sys_->parity_state(Parity::even, i).energy));
    e = std::max(e, std::abs(sys_->parity_state(Parity::odd, i).energy));
  }
  return e;
}

PacketJet WavePacket::jet(double u, double v) const {
  const int S = n_used_;
  Eigen::VectorXd val_u(S), der_u(S), der2_u(S), val_v(S), der_v(S), der2_v(S);
  PacketJet out;
  for (Parity par : {Parity::even, Parity::odd}) {
    sys_->eval_block(par, S, u, val_u.data(), der_u.data(), der2_u.data());
    sys_->eval_block(par, S, v, val_v.data(), der_v.data(), der2_v.data());
    const Eigen::VectorXd& w = (par == Parity::even) ? a_ : b_;
    const double f = w.dot(val_u.cwiseProduct(val_v));
    const double fu = w.dot(der_u.cwiseProduct(val_v));
    const double fv = w.dot(val_u.cwiseProduct(der_v));
    const double fuu = w.dot(der2_u.cwiseProduct(val_v));
    const double fvv = w.dot(val_u.cwiseProduct(der2_v));
    if (par == Parity::even) {
      out.x = f; out.xu = fu; out.xv = fv; out.xuu = fuu; out.xvv = fvv;
    } else {
      out.y = f; out.yu = fu; out.yv = fv; out.yuu = fuu; out.yvv = fvv;
    }
  }
  return out;
}

std::complex<double> WavePacket::evaluate(double u, double v) const {
  const PacketJet j = jet(u, v);
  return {j.x, j.y};
}

std::array<std::complex<double>, 2> WavePacket::evaluate_grad(double u, double v) const {
  const PacketJet j = jet(u, v);
  return {std::complex<double>{j.xu, j.yu}, std::complex<double>{j.xv, j.yv}};
}

std::vector<double> WavePacket::initial_slice(const std::vector<double>& u) const {
  std::vector<double> out(u.size());
  for (size_t i = 0; i < u.size(); ++i) out[i] = jet(u[i], 0.0).x;
  return out;
}

PacketGrids WavePacket::grids(const GridSpec& g, bool with_derivs) const {
  g.validate();
  std::vector<double> us(g.nu), vs(g.nv);
  for (int i = 0; i < g.nu; ++i) us[i] = g.u(i);
  for (int j = 0; j < g.nv; ++j) vs[j] = g.v(j);

  PacketGrids out;
  for (Parity par : {Parity::even, Parity::odd}) {
    const Eigen::VectorXd& w = (par == Parity::even) ? a_ : b_;
    const Eigen::MatrixXd Vu = sys_->eval_block_grid(par, n_used_, us, 0);
    const Eigen::MatrixXd Vv = sys_->eval_block_grid(par, n_used_, vs, 0);
    const Eigen::MatrixXd WVu = w.asDiagonal() * Vu;
    Eigen::MatrixXd& f = (par == Parity::even) ? out.x : out.y;
    f = Vv.transpose() * WVu;
    if (with_derivs) {
      const Eigen::MatrixXd Du = sys_->eval_block_grid(par, n_used_, us, 1);
      const Eigen::MatrixXd D2u = sys_->eval_block_grid(par, n_used_, us, 2);
      const Eigen::MatrixXd Dv = sys_->eval_block_grid(par, n_used_, vs, 1);
      const Eigen::MatrixXd D2v = sys_->eval_block_grid(par, n_used_, vs, 2);
      if (par == Parity::even) {
        out.xu = Vv.transpose() * (w.asDiagonal() * Du);
        out.xuu = Vv.transpose() * (w.asDiagonal() * D2u);
        out.xv = Dv.transpose() * WVu;
        out.xvv = D2v.transpose() * WVu;
      } else {
        out.yu = Vv.transpose() * (w.asDiagonal() * Du);
        out.yuu = Vv.transpose() * (w.asDiagonal() * D2u);
        out.yv = Dv.transpose() * WVu;
        out.yvv = D2v.transpose() * WVu;
      }
    }
  }
  return out;
}

double axis_ridge(const WavePacket& p) {
  const double a = p.system().box_half_length();
  const int n = 4096;
  double best_u = 0.0, best_f = -1.0;
  for (int i = 1; i <= n; ++i) {
    const double u = a * 0.999 * i / n;
    const double f = std::abs(p.jet(u, 0.0).x);
    if (f > best_f) { best_f = f; best_u = u; }
  }
  // golden-section refinement in the bracketing interval
  const double step = a * 0.999 / n;
  double lo = std::max(1e-12, best_u - step), hi = std::min(a * 0.999, best_u + step);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  double fc = std::abs(p.jet(c, 0.0).x), fd = std::abs(p.jet(d, 0.0).x);
  while (hi - lo > 1e-12) {
    if (fc > fd) {
      hi = d; d = c; fd = fc;
      c = hi - gr * (hi - lo);
      fc = std::abs(p.jet(c, 0.0).x);
    } else {
      lo = c; c = d; fc = fd;
      d = lo + gr * (hi - lo);
      fd = std::abs(p.jet(d, 0.0).x);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace wavecorr
