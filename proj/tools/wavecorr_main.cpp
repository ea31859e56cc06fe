// wavecorr batch CLI: config-driven construction of two-oscillator wave
// packets, classical and Bohmian trajectories, and correspondence
// diagnostics. Subcommands mirror the pipeline stages; `run` executes the
// whole chain and writes a checksum manifest.
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wavecorr/analysis.hpp"
#include "wavecorr/bohmian.hpp"
#include "wavecorr/config.hpp"
#include "wavecorr/erfi.hpp"
#include "wavecorr/io.hpp"
#include "wavecorr/pipeline.hpp"

namespace {

using namespace wavecorr;

struct CommonArgs {
  std::string config_path;
  std::string out_override;
};

RunConfig load(const CommonArgs& args, std::string& out_dir) {
  RunConfig cfg = load_config_file(args.config_path);
  out_dir = args.out_override.empty() ? cfg.output.directory : args.out_override;
  std::filesystem::create_directories(out_dir);
  std::ofstream echo(out_dir + "/config_echo.cfg", std::ios::binary);
  echo << echo_config(cfg);
  return cfg;
}

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "run-config file")->required();
  cmd->add_option("--out", args.out_override, "output directory (overrides the config)");
}

int cmd_eigen(const CommonArgs& args) {
  std::string out_dir;
  const RunConfig cfg = load(args, out_dir);
  auto sys = stage_eigen(cfg);
  write_eigen_csv(out_dir + "/eigen.csv", *sys);
  std::cout << "eigen: " << sys->states().size() << " states -> " << out_dir
            << "/eigen.csv\n";
  return 0;
}

int cmd_packet(const CommonArgs& args, bool erfi_check) {
  std::string out_dir;
  const RunConfig cfg = load(args, out_dir);
  auto sys = stage_eigen(cfg);
  const WavePacket packet = stage_packet(cfg, sys);
  write_field(out_dir + "/psi2.field", psi2_field(packet, cfg.grid_spec()), "psi2");
  std::cout << "packet: |Psi|^2 on " << cfg.grid.nu << "x" << cfg.grid.nv << " -> "
            << out_dir << "/psi2.field\n";
  if (erfi_check) {
    if (!sys->is_square_well() ||
        cfg.packet.family != CoefficientFamily::gaussian_projection) {
      std::cerr << "--erfi-check needs a square_well potential with the "
                   "gaussian_projection family\n";
      return 1;
    }
    std::cout << "erfi cross-check (closed form vs quadrature projection):\n";
    std::cout << "  n   C_quadrature      |C_closed_form|   abs_ratio\n";
    for (const ErfiCrossCheckRow& r :
         erfi_cross_check(*sys, cfg.packet.alpha, cfg.packet.d, 10)) {
      std::printf("  %-3d %-17.10g %-17.10g %.6g\n", r.n, r.quadrature,
                  std::abs(r.closed_form), r.abs_ratio);
    }
    std::cout << "  (report only; the quadrature projection is authoritative)\n";
  }
  return 0;
}

int cmd_classical(const CommonArgs& args) {
  std::string out_dir;
  const RunConfig cfg = load(args, out_dir);
  auto sys = stage_eigen(cfg);
  const WavePacket packet = stage_packet(cfg, sys);
  const ClassicalIC ic = resolve_classical_ic(cfg, packet);
  const double t_end = resolve_classical_t_end(cfg, ic);
  const Trajectory tr = stage_classical(cfg, ic, t_end);
  write_trajectory_csv(out_dir + "/classical.csv", tr);
  const PeriodResult pr = period(tr);
  std::cout << "classical: u0 = " << ic.u0 << ", vdot0 = " << ic.vdot0 << ", T = " << pr.T
            << ", quarter-shift defect = " << pr.quarter_shift_defect << " -> " << out_dir
            << "/classical.csv\n";
  return 0;
}

int cmd_bohmian(const CommonArgs& args) {
  std::string out_dir;
  const RunConfig cfg = load(args, out_dir);
  auto sys = stage_eigen(cfg);
  const WavePacket packet = stage_packet(cfg, sys);
  double t_end = cfg.bohmian.t_end;
  if (cfg.bohmian.auto_t_end) {
    const ClassicalIC ic = resolve_classical_ic(cfg, packet);
    const Trajectory ctr = stage_classical(cfg, ic, resolve_classical_t_end(cfg, ic));
    t_end = period(ctr).T;
  }
  const GuidanceField g{&packet, cfg.bohmian.kappa, cfg.bohmian.node_epsilon};
  const auto starts = resolve_bohmian_starts(cfg, packet);
  for (size_t k = 0; k < starts.size(); ++k) {
    const Trajectory tr = integrate(g, starts[k], t_end, cfg.bohmian.h);
    const std::string name = "bohmian_" + std::to_string(k) + ".csv";
    write_trajectory_csv(out_dir + "/" + name, tr);
    std::cout << "bohmian: start (" << starts[k][0] << ", " << starts[k][1] << "), "
              << tr.samples.size() << " samples";
    if (tr.status == TrajectoryStatus::node_encounter)
      std::cout << " [stopped at a node: (" << tr.stop_u << ", " << tr.stop_v << ")]";
    if (tr.status == TrajectoryStatus::domain_exit)
      std::cout << " [left the box at (" << tr.stop_u << ", " << tr.stop_v << ")]";
    std::cout << " -> " << out_dir << "/" << name << "\n";
  }
  return 0;
}

int cmd_residual(const CommonArgs& args) {
  std::string out_dir;
  const RunConfig cfg = load(args, out_dir);
  auto sys = stage_eigen(cfg);
  const WavePacket packet = stage_packet(cfg, sys);
  const GridSpec g = cfg.grid_spec();
  const ScalarField2D analytic = pde_residual_analytic(packet, g);
  write_field(out_dir + "/residual_analytic.field", analytic, "residual");
  const ScalarField2D fd = pde_residual_fd(packet, g);
  std::cout << "residual: analytic relative = " << relative_residual(analytic, packet)
            << ", fd max = " << fd.max_abs() << " at h = " << g.du() << " -> " << out_dir
            << "/residual_analytic.field\n";
  return 0;
}

int cmd_compare(const CommonArgs& args) {
  std::string out_dir;
  const RunConfig cfg = load(args, out_dir);
  auto sys = stage_eigen(cfg);
  const WavePacket packet = stage_packet(cfg, sys);
  const ClassicalIC ic = resolve_classical_ic(cfg, packet);
  const Trajectory classical = stage_classical(cfg, ic, resolve_classical_t_end(cfg, ic));
  const GridSpec g = cfg.grid_spec();
  const ScalarField2D f2 = psi2_field(packet, g);
  const Trajectory in_field = clip_to_field(classical, g, cfg.grid.crest_window);
  const CrestReport rep = crest_offset(f2, in_field, cfg.grid.crest_window);
  write_crest_csv(out_dir + "/crest.csv", rep);
  const QField qf = quantum_potential(packet, g, cfg.bohmian.node_epsilon);
  write_field(out_dir + "/qpotential.field", qf.q, "qpotential");
  const double step = std::max(g.du(), g.dv());
  std::cout << "compare: mean offset = " << rep.mean_offset << " (" << rep.mean_offset / step
            << " grid steps), max = " << rep.max_offset << " (" << rep.max_offset / step
            << " grid steps), flagged = " << rep.flagged_count << "\n";
  std::cout << "compare: median |Q| / |V(u)-V(v)| along the orbit = "
            << q_suppression_median(packet, in_field, cfg.bohmian.node_epsilon)
            << " (masked grid points: " << qf.masked_count << ")\n";
  std::cout << "compare: -> " << out_dir << "/crest.csv, " << out_dir
            << "/qpotential.field\n";
  return 0;
}

int cmd_run(const CommonArgs& args, bool eigen_only) {
  RunConfig cfg = load_config_file(args.config_path);
  const std::string out_dir =
      args.out_override.empty() ? cfg.output.directory : args.out_override;
  const PipelineResult res = run_pipeline(cfg, out_dir, eigen_only);
  std::cout << "run: " << res.manifest.size() << " artifacts -> " << out_dir
            << " (manifest.csv)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wavecorr: classically-corresponding wave packets on the "
               "two-oscillator hyperbolic equation"};
  app.require_subcommand(1);

  CommonArgs args;
  bool erfi_check = false, eigen_only = false;

  CLI::App* c_eigen = app.add_subcommand("eigen", "solve the eigenproblem, write eigen.csv");
  add_common(c_eigen, args);
  CLI::App* c_packet = app.add_subcommand("packet", "build the packet, write |Psi|^2 field");
  add_common(c_packet, args);
  c_packet->add_flag("--erfi-check", erfi_check,
                     "print the square-well closed-form coefficient cross-check");
  CLI::App* c_classical = app.add_subcommand("classical", "integrate the classical orbit");
  add_common(c_classical, args);
  CLI::App* c_bohmian = app.add_subcommand("bohmian", "integrate Bohmian trajectories");
  add_common(c_bohmian, args);
  CLI::App* c_residual = app.add_subcommand("residual", "hyperbolic PDE residual fields");
  add_common(c_residual, args);
  CLI::App* c_compare = app.add_subcommand("compare", "crest offsets and Q suppression");
  add_common(c_compare, args);
  CLI::App* c_run = app.add_subcommand("run", "full pipeline with manifest");
  add_common(c_run, args);
  c_run->add_flag("--eigen-only", eigen_only, "stop after the eigen stage");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_eigen->parsed()) return cmd_eigen(args);
    if (c_packet->parsed()) return cmd_packet(args, erfi_check);
    if (c_classical->parsed()) return cmd_classical(args);
    if (c_bohmian->parsed()) return cmd_bohmian(args);
    if (c_residual->parsed()) return cmd_residual(args);
    if (c_compare->parsed()) return cmd_compare(args);
    if (c_run->parsed()) return cmd_run(args, eigen_only);
  } catch (const std::exception& e) {
    std::cerr << "wavecorr: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
