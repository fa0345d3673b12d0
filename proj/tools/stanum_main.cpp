// stanum: spacetime-algebra field verification and neutrino mass spectrum.
//
// Subcommands:
//   verify          run the full identity suite, write report.json
//   spectrum        compute the quantized mass spectrum (JSON/CSV)
//   field sample    sample a field configuration to CSV with a JSON sidecar
//   spinor check    spinor equation residuals and kinematic samples
//
// Exit codes: 0 all checks passed, 1 at least one check failed, 2 usage or
// configuration error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "stanum/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace stanum;

namespace {

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void write_text_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

int run_verify(const report::RunConfig& cfg) {
  const report::SuiteReport rep = report::run_verify_suite(cfg);

  for (const auto& c : rep.checks) {
    const char* tag = c.passed ? (c.expected_inconsistent ? "INCONSISTENT-BY-CONSTRUCTION"
                                                          : "PASS")
                               : "FAIL";
    std::printf("[%s] %-36s max=%-11.3e thr=%-11.3e", tag, c.id.c_str(), c.max_abs,
                c.threshold);
    if (c.min_order > 0) std::printf(" order=%.2f", c.order_estimate);
    std::printf("\n");
  }
  std::printf("%d/%zu checks passed\n", rep.n_passed(), rep.checks.size());

  const fs::path out = fs::path(cfg.output_dir) / "report.json";
  write_text_file(out, report::to_json(rep).dump(2) + "\n");
  std::printf("report written to %s\n", out.string().c_str());
  return rep.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spacetime-algebra field verification and neutrino mass spectrum"};
  app.require_subcommand(1);

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "run the full identity suite");
  std::string cfg_file, out_dir, units;
  double tol_abs = 0, tol_rel = 0, h_div = 0;
  std::uint64_t seed = 0;
  int grid_points = 0;
  auto* o_cfg = verify->add_option("--config", cfg_file, "JSON config file");
  auto* o_ta = verify->add_option("--tol-abs", tol_abs, "absolute tolerance knob");
  auto* o_tr = verify->add_option("--tol-rel", tol_rel, "relative tolerance knob");
  auto* o_seed = verify->add_option("--seed", seed, "seed for randomized property checks");
  auto* o_gp = verify->add_option("--grid-points", grid_points, "per-axis sample counts");
  auto* o_hd = verify->add_option("--grid-h-divisor", h_div, "fd step = wavelength / divisor");
  auto* o_units =
      verify->add_option("--units", units, "unit system: natural | gaussian-symbolic");
  auto* o_out = verify->add_option("--out", out_dir, "output directory for report.json");

  // ---- spectrum ----
  auto* spec = app.add_subcommand("spectrum", "quantized neutrino mass spectrum");
  report::SpectrumRequest sreq;
  std::vector<int> n_set;
  std::string spec_json_path, spec_csv_path;
  double sum_bound = 0, m_param = 0;
  spec->add_option("--N", sreq.N, "level constant (need not be integer)");
  auto* o_sum = spec->add_option("--sum-bound", sum_bound, "fit the scale to this mass sum [eV]");
  auto* o_m = spec->add_option("--m-param", m_param, "mass scale directly [eV]");
  o_sum->excludes(o_m);
  spec->add_option("--n-set", n_set, "flavor indices (default 0 1 2)");
  spec->add_option("--alpha", sreq.alpha, "fine structure constant");
  spec->add_option("--json", spec_json_path, "write the JSON output here");
  spec->add_option("--csv", spec_csv_path, "write a mass-table CSV here");

  // ---- field sample ----
  auto* field = app.add_subcommand("field", "field configuration tools");
  field->require_subcommand(1);
  auto* sample = field->add_subcommand("sample", "sample a configuration over a grid");
  std::string sample_cfg, sample_out, sample_csv_path;
  sample->add_option("--config", sample_cfg, "JSON field/grid description")->required();
  sample->add_option("--out", sample_out, "output directory (default: config's directory)");
  bool sample_stdout = false;
  sample->add_flag("--stdout", sample_stdout, "print the CSV to stdout instead");

  // ---- spinor check ----
  auto* spinor_cmd = app.add_subcommand("spinor", "spinor equation tools");
  spinor_cmd->require_subcommand(1);
  auto* check = spinor_cmd->add_subcommand("check", "residuals and kinematic samples");
  double sp_mass = 1.0, sp_k = 1.0;
  std::uint64_t sp_seed = 12345;
  std::string sp_json_path;
  check->add_option("--mass", sp_mass, "mass parameter (inverse length)");
  check->add_option("--k", sp_k, "wave number of the plane-wave solutions");
  check->add_option("--seed", sp_seed, "seed for the sample points");
  check->add_option("--json", sp_json_path, "write the JSON output here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) {
      report::RunConfig cfg;
      if (*o_cfg) cfg = report::run_config_from_json(load_json_file(cfg_file));
      if (const char* env = std::getenv("STANUM_OUTPUT_DIR")) cfg.output_dir = env;
      if (*o_ta) cfg.tol_abs = tol_abs;
      if (*o_tr) cfg.tol_rel = tol_rel;
      if (*o_seed) cfg.seed = seed;
      if (*o_gp) cfg.grid_points = grid_points;
      if (*o_hd) cfg.grid_h_divisor = h_div;
      if (*o_units) cfg.units = report::unit_system_from_name(units);
      if (*o_out) cfg.output_dir = out_dir;
      cfg.validate();
      return run_verify(cfg);
    }

    if (spec->parsed()) {
      if (!n_set.empty()) sreq.n_set = n_set;
      if (*o_m) {
        sreq.use_sum_bound = false;
        sreq.m_param_ev = m_param;
      } else if (*o_sum) {
        sreq.use_sum_bound = true;
        sreq.sum_bound_ev = sum_bound;
      }
      const json out = report::cmd_spectrum(sreq);
      std::printf("m_param = %.6g eV\n", out.at("params").at("m_param_ev").get<double>());
      for (const auto& e : out.at("masses"))
        std::printf("m_nu_%d = %.4g eV\n", e.at("n").get<int>(),
                    e.at("mass_ev").get<double>());
      std::printf("sum = %.6g eV\n", out.at("sum_ev").get<double>());
      std::cout << out.dump(2) << "\n";
      if (!spec_json_path.empty()) write_text_file(spec_json_path, out.dump(2) + "\n");
      if (!spec_csv_path.empty()) write_text_file(spec_csv_path, report::spectrum_csv(out));
      return 0;
    }

    if (sample->parsed()) {
      const json cfg = load_json_file(sample_cfg);
      const report::FieldSampleOutput out = report::cmd_field_sample(cfg);
      if (sample_stdout) {
        std::cout << out.csv;
        return 0;
      }
      fs::path dir = sample_out.empty() ? fs::path(sample_cfg).parent_path() : fs::path(sample_out);
      if (const char* env = std::getenv("STANUM_OUTPUT_DIR"); env && sample_out.empty())
        dir = env;
      if (dir.empty()) dir = ".";
      write_text_file(dir / "field_sample.csv", out.csv);
      write_text_file(dir / "field_sample.json", out.sidecar.dump(2) + "\n");
      std::printf("wrote %s and %s\n", (dir / "field_sample.csv").string().c_str(),
                  (dir / "field_sample.json").string().c_str());
      return 0;
    }

    if (check->parsed()) {
      const json out = report::cmd_spinor_check(sp_mass, sp_k, sp_seed);
      std::cout << out.dump(2) << "\n";
      if (!sp_json_path.empty()) write_text_file(sp_json_path, out.dump(2) + "\n");
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
