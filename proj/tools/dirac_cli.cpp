#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "dirac/io.hpp"
#include "dirac/weyl.hpp"

namespace {

using namespace dirac;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-")
    std::cout << content;
  else
    write_text_file(path, content);
}

std::string rho_table(const std::vector<Mat>& C, const Signature& sig) {
  std::ostringstream os;
  os << "k";
  for (int r = 0; r < sig.m1; ++r)
    for (int c = 0; c < sig.m2; ++c)
      os << ",rho_" << r << c << "_re,rho_" << r << c << "_im";
  os << ",rho_norm\n";
  for (size_t k = 0; k < C.size(); ++k) {
    const Mat rho = rho_from_potential(C[k], sig);
    os << k;
    for (int r = 0; r < sig.m1; ++r)
      for (int c = 0; c < sig.m2; ++c)
        os << "," << fmt(rho(r, c).real()) << "," << fmt(rho(r, c).imag());
    os << "," << fmt(spectral_norm(rho)) << "\n";
  }
  return os.str();
}

int run_direct(const std::string& triple_path, long k_max,
               const std::string& out, const std::string& rho_out) {
  const AdmissibleTriple t = triple_from_json_text(read_text_file(triple_path));
  const std::vector<Mat> C = potential(t, k_max);
  emit(out, potential_to_json(C, t.sig));
  if (!rho_out.empty()) emit(rho_out, rho_table(C, t.sig));
  return 0;
}

int run_weyl(const std::string& triple_path, const std::string& grid_path,
             const std::string& out) {
  const AdmissibleTriple t = triple_from_json_text(read_text_file(triple_path));
  const std::vector<Complex> grid = grid_from_json_text(read_text_file(grid_path));
  const WeylEvaluator ev(t);
  std::vector<Mat> values;
  values.reserve(grid.size());
  for (const Complex& z : grid) values.push_back(ev.eval(z));
  emit(out, weyl_csv(grid, values, t.sig));
  return 0;
}

int run_inverse(const std::string& real_path, long k_max, const std::string& out,
                const std::string& triple_out) {
  const Realization r = realization_from_json_text(read_text_file(real_path));
  const InverseResult res = inverse_problem(r, k_max);
  emit(out, potential_to_json(res.C, r.sig));
  if (!triple_out.empty()) emit(triple_out, triple_to_json(res.triple));
  std::cerr << "weyl_agreement " << fmt(res.weyl_agreement) << "\n";
  return 0;
}

int run_roundtrip(const std::string& triple_path, long k_max, double tol) {
  const AdmissibleTriple t = triple_from_json_text(read_text_file(triple_path));
  const std::vector<Mat> C_ref = potential(t, k_max);
  const Realization r = realization_from_triple(t);
  const InverseResult res = inverse_problem(r, k_max);
  double disc = 0.0;
  for (long k = 0; k <= k_max; ++k)
    disc = std::max(disc, spectral_norm(C_ref[k] - res.C[k]));
  std::cout << "max_discrepancy " << fmt(disc) << "\n";
  if (disc > tol) {
    std::cerr << "roundtrip discrepancy " << fmt(disc) << " exceeds tol "
              << fmt(tol) << "\n";
    return 3;
  }
  return 0;
}

int run_asymptotics(const std::string& triple_path, long k_max, double rho_tol,
                    const std::string& out_csv, const std::string& out_json) {
  const AdmissibleTriple t = triple_from_json_text(read_text_file(triple_path));
  const AsymptoticsReport rep = asymptotics_report(t, k_max, rho_tol);
  emit(out_csv, asymptotics_csv(rep));
  emit(out_json, asymptotics_footer_json(rep));
  return 0;
}

int run_stability(const std::string& real_path, std::vector<double> deltas,
                  int samples, long k_max, unsigned long long seed,
                  const std::string& out_csv, const std::string& out_json) {
  const Realization r = realization_from_json_text(read_text_file(real_path));
  PerturbationSpec spec;
  spec.samples = samples;
  spec.k_max = k_max;
  spec.seed = seed;
  const StabilityReport rep = stability_sweep(r, deltas, spec);
  emit(out_csv, stability_csv(rep));
  emit(out_json, stability_summary_json(rep));
  return 0;
}

int run_disks(const std::string& triple_path, double z_re, double z_im,
              long r_max, unsigned long long seed, int directions) {
  const AdmissibleTriple t = triple_from_json_text(read_text_file(triple_path));
  const Complex z(z_re, z_im);
  if (z.imag() >= 0.0) throw InputError("disks need Im z < 0");
  const std::vector<Mat> C = potential(t, r_max);
  double worst_nesting = 0.0, worst_invariance = 0.0, worst_center = 0.0;
  bool pullback_keeps_property = true;
  Rng seeder(seed);
  for (int d = 0; d < directions; ++d) {
    const Mat P = sample_property_j(t.sig, seeder.next_u64());
    for (long r = 0; r + 1 <= r_max; ++r) {
      const Mat deep = disk_transform(C, t.sig, z, r + 1, P);
      const Mat pulled = disk_pullback(C, t.sig, z, r, P);
      if (!has_property_j(pulled, t.sig)) pullback_keeps_property = false;
      const Mat shallow = disk_transform(C, t.sig, z, r, pulled);
      worst_nesting = std::max(worst_nesting, spectral_norm(deep - shallow));
      worst_center = std::max(worst_center, spectral_norm(deep));
    }
    // Right multiplication by an invertible factor fixes the transform.
    Mat c = Mat::Identity(t.sig.m2, t.sig.m2);
    Rng mix(seeder.next_u64());
    c += 0.5 * mix.cmatrix(t.sig.m2, t.sig.m2);
    if (is_invertible(c)) {
      const Mat a = disk_transform(C, t.sig, z, r_max, P);
      const Mat b = disk_transform(C, t.sig, z, r_max, P * c);
      worst_invariance = std::max(worst_invariance, spectral_norm(a - b));
    }
  }
  std::cout << "nesting_consistency " << fmt(worst_nesting) << "\n"
            << "scale_invariance " << fmt(worst_invariance) << "\n"
            << "max_disk_norm " << fmt(worst_center) << "\n"
            << "pullback_keeps_property_j "
            << (pullback_keeps_property ? 1 : 0) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete Dirac systems: direct and inverse spectral tools"};
  app.require_subcommand(1);

  std::string triple_path, real_path, grid_path;
  std::string out = "-", rho_out, triple_out, out_csv = "-", out_json = "-";
  long k_max = 100;
  double tol = 1e-8, rho_tol = 1e-3;
  double z_re = 0.0, z_im = -1.0;
  long r_max = 20;
  unsigned long long seed = 1;
  int samples = 8, directions = 4;
  std::vector<double> deltas{1e-8, 1e-6, 1e-4, 1e-2};

  CLI::App* direct = app.add_subcommand("direct", "potential from a triple");
  direct->add_option("--triple", triple_path, "triple JSON")->required();
  direct->add_option("--k-max", k_max, "last potential index");
  direct->add_option("--out", out, "potential JSON output ('-' = stdout)");
  direct->add_option("--rho-out", rho_out, "coefficient table CSV output");

  CLI::App* weyl = app.add_subcommand("weyl", "Weyl function on a grid");
  weyl->add_option("--triple", triple_path, "triple JSON")->required();
  weyl->add_option("--grid", grid_path, "grid JSON")->required();
  weyl->add_option("--out", out, "CSV output ('-' = stdout)");

  CLI::App* inverse = app.add_subcommand("inverse", "potential from a realization");
  inverse->add_option("--realization", real_path, "realization JSON")->required();
  inverse->add_option("--k-max", k_max, "last potential index");
  inverse->add_option("--out", out, "potential JSON output ('-' = stdout)");
  inverse->add_option("--triple-out", triple_out, "recovered triple JSON output");

  CLI::App* roundtrip = app.add_subcommand(
      "roundtrip", "direct then inverse, report the gap");
  roundtrip->add_option("--triple", triple_path, "triple JSON")->required();
  roundtrip->add_option("--k-max", k_max, "last potential index");
  roundtrip->add_option("--tol", tol, "acceptance threshold");

  CLI::App* asym = app.add_subcommand("asymptotics", "decay telemetry report");
  asym->add_option("--triple", triple_path, "triple JSON")->required();
  asym->add_option("--k-max", k_max, "last index");
  asym->add_option("--rho-tol", rho_tol, "smallness threshold for the coefficients");
  asym->add_option("--out-csv", out_csv, "row output ('-' = stdout)");
  asym->add_option("--out-json", out_json, "footer output ('-' = stdout)");

  CLI::App* stab = app.add_subcommand("stability", "perturbation sweep");
  stab->add_option("--realization", real_path, "realization JSON")->required();
  stab->add_option("--deltas", deltas, "perturbation sizes");
  stab->add_option("--samples", samples, "samples per size");
  stab->add_option("--k-max", k_max, "potential horizon");
  stab->add_option("--seed", seed, "base seed");
  stab->add_option("--out-csv", out_csv, "row output ('-' = stdout)");
  stab->add_option("--out-json", out_json, "summary output ('-' = stdout)");

  CLI::App* disks = app.add_subcommand("disks", "nesting diagnostics");
  disks->add_option("--triple", triple_path, "triple JSON")->required();
  disks->add_option("--z-re", z_re, "real part of z");
  disks->add_option("--z-im", z_im, "imaginary part of z (negative)");
  disks->add_option("--r-max", r_max, "deepest product index");
  disks->add_option("--seed", seed, "sampler seed");
  disks->add_option("--directions", directions, "sampled parameter matrices");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (direct->parsed()) return run_direct(triple_path, k_max, out, rho_out);
    if (weyl->parsed()) return run_weyl(triple_path, grid_path, out);
    if (inverse->parsed())
      return run_inverse(real_path, k_max, out, triple_out);
    if (roundtrip->parsed()) return run_roundtrip(triple_path, k_max, tol);
    if (asym->parsed())
      return run_asymptotics(triple_path, k_max, rho_tol, out_csv, out_json);
    if (stab->parsed())
      return run_stability(real_path, deltas, samples, k_max, seed, out_csv,
                           out_json);
    if (disks->parsed())
      return run_disks(triple_path, z_re, z_im, r_max, seed, directions);
  } catch (const dirac::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const dirac::Error& e) {
    std::cerr << e.name << "\n" << e.what() << "\n";
    return 2;
  } catch (const dirac::ToleranceError& e) {
    std::cerr << "tolerance failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
