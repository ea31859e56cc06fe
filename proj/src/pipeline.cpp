#include "wavecorr/pipeline.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "wavecorr/analysis.hpp"

namespace wavecorr {

namespace {

[[noreturn]] void rethrow_tagged(const std::string& stage, const std::exception& e) {
  throw std::runtime_error("[stage " + stage + "] " + e.what());
}

}  // namespace

std::shared_ptr<const EigenSystem> stage_eigen(const RunConfig& cfg) {
  try {
    return std::make_shared<const EigenSystem>(solve(cfg.potential, cfg.spectral));
  } catch (const std::exception& e) {
    rethrow_tagged("eigen", e);
  }
}

WavePacket stage_packet(const RunConfig& cfg, std::shared_ptr<const EigenSystem> sys) {
  try {
    return coefficients(cfg.packet, std::move(sys));
  } catch (const std::exception& e) {
    rethrow_tagged("packet", e);
  }
}

ClassicalIC resolve_classical_ic(const RunConfig& cfg, const WavePacket& packet) {
  try {
    ClassicalIC ic;
    if (cfg.classical.auto_from_ridge) {
      ic.u0 = axis_ridge(packet);
      const double E = evaluate(cfg.potential, ic.u0) - evaluate(cfg.potential, 0.0);
      if (!(E > 1e-9))
        throw std::runtime_error("auto_from_ridge: ridge energy V(u0)-V(0) = " +
                                 std::to_string(E) + " is not positive");
      ic.vdot0 = 2.0 * std::sqrt(E);
    } else {
      ic.u0 = cfg.classical.u0;
      if (cfg.classical.vdot0_given) {
        ic.vdot0 = cfg.classical.vdot0;
      } else if (cfg.potential.is_square_well()) {
        throw std::runtime_error("square_well: explicit ICs need vdot0 (the travel speed)");
      } else {
        const double E = evaluate(cfg.potential, ic.u0) - evaluate(cfg.potential, 0.0);
        if (!(E >= 0))
          throw std::runtime_error("explicit IC: V(u0) - V(0) is negative; no real vdot0");
        ic.vdot0 = 2.0 * std::sqrt(E);
      }
    }
    validate_equal_energy(cfg.potential, ic);
    return ic;
  } catch (const std::exception& e) {
    rethrow_tagged("classical", e);
  }
}

double resolve_classical_t_end(const RunConfig& cfg, const ClassicalIC& ic) {
  try {
    if (!cfg.classical.auto_t_end) return cfg.classical.t_end;
    return cfg.classical.n_periods * period_estimate(cfg.potential, ic);
  } catch (const std::exception& e) {
    rethrow_tagged("classical", e);
  }
}

Trajectory stage_classical(const RunConfig& cfg, const ClassicalIC& ic, double t_end) {
  try {
    return integrate(cfg.potential, ic, t_end, cfg.classical.h);
  } catch (const std::exception& e) {
    rethrow_tagged("classical", e);
  }
}

std::vector<std::array<double, 2>> resolve_bohmian_starts(const RunConfig& cfg,
                                                          const WavePacket& packet) {
  try {
    if (!cfg.bohmian.auto_start) return cfg.bohmian.starts;
    return {{axis_ridge(packet), 0.0}};
  } catch (const std::exception& e) {
    rethrow_tagged("bohmian", e);
  }
}

PipelineResult run_pipeline(const RunConfig& cfg, const std::string& out_dir,
                            bool eigen_only) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  PipelineResult result;
  result.out_dir = out_dir;
  std::vector<std::string> files;
  const auto emit = [&](const std::string& name) { files.push_back(name); };

  {
    std::ofstream echo(out_dir + "/config_echo.cfg", std::ios::binary);
    if (!echo) throw std::runtime_error("[stage config] cannot write echo file");
    echo << echo_config(cfg);
  }
  emit("config_echo.cfg");

  auto sys = stage_eigen(cfg);
  write_eigen_csv(out_dir + "/eigen.csv", *sys);
  emit("eigen.csv");

  if (!eigen_only) {
    const WavePacket packet = stage_packet(cfg, sys);
    ScalarField2D f2;
    try {
      f2 = psi2_field(packet, cfg.grid_spec());
      write_field(out_dir + "/psi2.field", f2, "psi2");
    } catch (const std::exception& e) {
      rethrow_tagged("packet", e);
    }
    emit("psi2.field");

    const ClassicalIC ic = resolve_classical_ic(cfg, packet);
    const double t_end = resolve_classical_t_end(cfg, ic);
    const Trajectory classical = stage_classical(cfg, ic, t_end);
    write_trajectory_csv(out_dir + "/classical.csv", classical);
    emit("classical.csv");

    double bohmian_t_end = cfg.bohmian.t_end;
    if (cfg.bohmian.auto_t_end) {
      try {
        bohmian_t_end = period(classical).T;
      } catch (const std::exception& e) {
        rethrow_tagged("bohmian", e);
      }
    }
    const GuidanceField g{&packet, cfg.bohmian.kappa, cfg.bohmian.node_epsilon};
    const auto starts = resolve_bohmian_starts(cfg, packet);
    for (size_t k = 0; k < starts.size(); ++k) {
      Trajectory btr;
      try {
        btr = integrate(g, starts[k], bohmian_t_end, cfg.bohmian.h);
      } catch (const std::exception& e) {
        rethrow_tagged("bohmian", e);
      }
      const std::string name = "bohmian_" + std::to_string(k) + ".csv";
      write_trajectory_csv(out_dir + "/" + name, btr);
      emit(name);
    }

    try {
      const Trajectory in_field =
          clip_to_field(classical, cfg.grid_spec(), cfg.grid.crest_window);
      const CrestReport rep = crest_offset(f2, in_field, cfg.grid.crest_window);
      write_crest_csv(out_dir + "/crest.csv", rep);
    } catch (const std::exception& e) {
      rethrow_tagged("analysis", e);
    }
    emit("crest.csv");
  }

  for (const std::string& f : files) result.manifest.push_back(manifest_entry(out_dir, f));
  write_manifest(out_dir + "/manifest.csv", result.manifest);
  return result;
}

}  // namespace wavecorr
