#include "cli.hpp"

#include <gxray/boundary.hpp>
#include <gxray/io.hpp>
#include <gxray/xray.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <memory>
#include <optional>
#include <random>

namespace gxray::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path out_path(const RunConfig& cfg, const char* name) { return fs::path(cfg.out) / name; }

json sidecar(const RunConfig& cfg, const char* command) {
  return json{{"command", command}, {"config_hash", config_hash(cfg)}, {"config", to_json(cfg)}};
}

void write_json(const fs::path& path, const json& doc) { io::write_text(path, doc.dump(2) + "\n"); }

json complex_json(cplx v) { return json::array({v.real(), v.imag()}); }

BoundaryGrid load_sinogram(const RunConfig& cfg) {
  if (cfg.input.empty()) throw ConfigError("no input sinogram given (use --input or the config key 'input')");
  return io::read_sinogram_csv(cfg.input, cfg.boundary_layout());
}

double rms(const BoundaryGrid& g) {
  double s = 0.0;
  for (const auto& v : g.values()) s += std::norm(v);
  return g.size() ? std::sqrt(s / g.size()) : 0.0;
}

BoundaryGrid add_noise(const BoundaryGrid& g, const NoiseSpec& noise) {
  BoundaryGrid out = g;
  std::mt19937_64 rng(noise.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double scale = noise.level * rms(g) / std::sqrt(2.0);
  for (auto& v : out.values()) {
    const double re = normal(rng);
    const double im = normal(rng);
    v += scale * cplx{re, im};
  }
  return out;
}

double coeff_distance(const CoeffTable& a, const CoeffTable& b) {
  double s = 0.0;
  for (const auto& [idx, v] : a) s += std::norm(v - b.get(idx));
  return std::sqrt(s);
}

}  // namespace

DiskFunction make_phantom(const RunConfig& cfg) {
  const CurvatureParam cp = cfg.curvature();
  if (!cfg.coeffs.empty()) {
    const io::CoeffFile file = io::read_coeffs_json(cfg.coeffs);
    if (std::abs(file.kappa - cfg.kappa) > 1e-15) {
      std::ostringstream msg;
      msg << cfg.coeffs << ": coefficients were written for kappa = " << file.kappa << ", run uses " << cfg.kappa;
      throw ConfigError(msg.str());
    }
    auto table = std::make_shared<CoeffTable>(file.table);
    return [table, cp](cplx z) {
      cplx acc{};
      for (const auto& [idx, c] : *table) acc += c * zernike_kappa_hat(idx, z, cp);
      return weight_kappa(z, cp) * acc;
    };
  }
  if (cfg.phantom == "unit") return [](cplx) { return cplx{1.0, 0.0}; };
  const cplx center{0.2, -0.1};
  return [center](cplx z) { return cplx{std::exp(-std::norm(z - center) / (2.0 * 0.25 * 0.25)), 0.0}; };
}

int cmd_basis(const RunConfig& cfg, std::ostream& out) {
  const CurvatureParam cp = cfg.curvature();
  {
    std::ostringstream csv;
    csv << std::setprecision(17) << "n,k,rho,Re,Im\n";
    const int nr = std::max(cfg.n_rho, 2);
    for (int n = 0; n <= cfg.nmax; ++n) {
      for (int k = 0; k <= n; ++k) {
        for (int i = 0; i < nr; ++i) {
          const double rho = double(i) / (nr - 1);
          const cplx v = zernike_kappa({n, k}, rho, cp);
          csv << n << ',' << k << ',' << rho << ',' << v.real() << ',' << v.imag() << '\n';
        }
      }
    }
    io::write_text(out_path(cfg, "basis.csv"), csv.str());
  }
  {
    std::ostringstream csv;
    csv << std::setprecision(17) << "n,k,alpha,Re,Im\n";
    const int na = std::max(cfg.n_alpha, 2);
    for (int n = 0; n <= cfg.nmax; ++n) {
      for (int k = 0; k <= n; ++k) {
        for (int i = 0; i < na; ++i) {
          const double alpha = -half_pi + pi * i / (na - 1);
          const cplx v = psi_kappa({n, k}, 0.0, alpha, cp);
          csv << n << ',' << k << ',' << alpha << ',' << v.real() << ',' << v.imag() << '\n';
        }
      }
    }
    io::write_text(out_path(cfg, "psi_fiber.csv"), csv.str());
  }
  write_json(out_path(cfg, "basis.json"), sidecar(cfg, "basis"));
  out << "wrote " << out_path(cfg, "basis.csv").string() << " and " << out_path(cfg, "psi_fiber.csv").string() << "\n";
  return exit_ok;
}

int cmd_forward(const RunConfig& cfg, std::ostream& out) {
  const DiskFunction f = make_phantom(cfg);
  const BoundaryGrid g = sinogram(f, cfg.boundary_layout(), cfg.forward_quadrature());
  io::write_sinogram_csv(out_path(cfg, "sinogram.csv"), g);
  json doc = sidecar(cfg, "forward");
  doc["quadrature"] = {{"nodes", cfg.forward_nodes}, {"panels", cfg.forward_panels}};
  doc["source"] = cfg.coeffs.empty() ? "phantom:" + cfg.phantom : "coeffs:" + cfg.coeffs;
  doc["grid"] = {{"n_beta", cfg.n_beta}, {"n_alpha", cfg.n_alpha}};
  write_json(out_path(cfg, "sinogram.json"), doc);
  out << "wrote " << out_path(cfg, "sinogram.csv").string() << " (" << g.size() << " samples)\n";
  return exit_ok;
}

int cmd_invert(const RunConfig& cfg, std::ostream& out) {
  if (cfg.nmax < 0) throw ConfigError("invert needs nmax >= 0");
  const BoundaryGrid clean = load_sinogram(cfg);
  const DiskGrid layout = cfg.disk_layout();
  const bool noisy = cfg.noise.level > 0.0;
  const BoundaryGrid data = noisy ? add_noise(clean, cfg.noise) : clean;
  const Inversion inv = invert(data, cfg.nmax, layout, cfg.regularization);

  json doc = sidecar(cfg, "invert");
  json modes = json::array();
  for (const auto& [idx, c] : inv.data_coeffs) {
    const double sigma = singular_value(idx.n, cfg.curvature());
    modes.push_back({{"n", idx.n},
                     {"k", idx.k},
                     {"sigma", sigma},
                     {"data", complex_json(c)},
                     {"accepted", inv.disk_coeffs.contains(idx)},
                     {"f", complex_json(inv.disk_coeffs.get(idx))}});
  }
  doc["modes"] = modes;
  doc["accepted_modes"] = inv.accepted_modes;
  doc["residual"] = inv.residual;
  doc["relative_residual"] = boundary_norm(data) > 0.0 ? inv.residual / boundary_norm(data) : 0.0;
  doc["discarded_energy"] = inv.discarded_energy;
  const MomentReport moments = moment_residuals(data, cfg.nmax, cfg.kpad, cfg.moment_threshold);
  doc["moments"] = {{"max_abs", moments.max_abs},
                    {"u_norm", moments.u_norm},
                    {"threshold", moments.threshold},
                    {"in_range", moments.in_range}};
  if (noisy) {
    const Inversion ref = invert(clean, cfg.nmax, layout, cfg.regularization);
    double sigma_min = std::numeric_limits<double>::infinity();
    for (const auto& [idx, c] : inv.disk_coeffs) sigma_min = std::min(sigma_min, singular_value(idx.n, cfg.curvature()));
    const double data_change = coeff_distance(inv.data_coeffs, ref.data_coeffs);
    const double recon_change = coeff_distance(inv.disk_coeffs, ref.disk_coeffs);
    const double ref_norm = std::sqrt(ref.disk_coeffs.norm_sq());
    BoundaryGrid diff = data;
    for (std::size_t n = 0; n < diff.size(); ++n) diff.values()[n] -= clean.values()[n];
    const double clean_norm = boundary_norm(clean);
    doc["noise"] = {{"seed", cfg.noise.seed},
                    {"level", cfg.noise.level},
                    {"relative_data_noise", clean_norm > 0.0 ? boundary_norm(diff) / clean_norm : 0.0},
                    {"noise_amplification", data_change > 0.0 ? recon_change / data_change : 0.0},
                    {"predicted_amplification", 1.0 / sigma_min},
                    {"relative_reconstruction_change", ref_norm > 0.0 ? recon_change / ref_norm : 0.0}};
  }
  io::write_disk_csv(out_path(cfg, "reconstruction.csv"), inv.f);
  io::write_coeffs_json(out_path(cfg, "coefficients.json"), inv.disk_coeffs, cfg.kappa);
  write_json(out_path(cfg, "report.json"), doc);
  out << "accepted " << inv.accepted_modes << " modes, residual " << inv.residual << ", moments "
      << (moments.in_range ? "consistent with the range" : "outside the range") << "\n";
  return exit_ok;
}

int cmd_project(const RunConfig& cfg, std::ostream& out) {
  const BoundaryGrid u = load_sinogram(cfg);
  const Projection proj = project_to_range(u, cfg.fiber_fft);
  BoundaryGrid diff = u;
  for (std::size_t n = 0; n < diff.size(); ++n) diff.values()[n] -= proj.projected.values()[n];
  const double base = boundary_norm(u);
  const double residual = base > 0.0 ? boundary_norm(diff) / base : 0.0;
  io::write_sinogram_csv(out_path(cfg, "projected.csv"), proj.projected);
  json doc = sidecar(cfg, "project");
  doc["removed_odd_norm"] = proj.removed_odd_norm;
  doc["relative_residual"] = residual;
  write_json(out_path(cfg, "project.json"), doc);
  out << "relative residual " << residual << " (removed S_A-odd norm " << proj.removed_odd_norm << ")\n";
  return exit_ok;
}

int cmd_moments(const RunConfig& cfg, std::ostream& out) {
  if (cfg.nmax < 0) throw ConfigError("moments needs nmax >= 0");
  const BoundaryGrid u = load_sinogram(cfg);
  const MomentReport report = moment_residuals(u, cfg.nmax, cfg.kpad, cfg.moment_threshold);
  io::write_moments_csv(out_path(cfg, "moments.csv"), report);
  json doc = sidecar(cfg, "moments");
  doc["max_abs"] = report.max_abs;
  doc["u_norm"] = report.u_norm;
  doc["in_range"] = report.in_range;
  write_json(out_path(cfg, "moments.json"), doc);
  out << "max |<u, psi>| = " << report.max_abs << ", verdict: " << (report.in_range ? "in range" : "not in range")
      << "\n";
  return exit_ok;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  std::ostringstream csv;
  csv << std::setprecision(17) << "n,k,sigma\n";
  if (cfg.nmax >= 0) {
    for (const auto& t : singular_values(cfg.nmax, cfg.curvature())) csv << t.index.n << ',' << t.index.k << ',' << t.sigma << '\n';
  }
  io::write_text(out_path(cfg, "spectrum.csv"), csv.str());
  write_json(out_path(cfg, "spectrum.json"), sidecar(cfg, "spectrum"));
  out << "wrote " << out_path(cfg, "spectrum.csv").string() << "\n";
  return exit_ok;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geodesic X-ray transform on constant-curvature disks"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<double> kappa;
  std::optional<int> nmax;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<double> noise;
  std::optional<std::string> input;
  std::optional<std::string> phantom;
  std::optional<std::string> coeffs;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration");
    sub->add_option("--kappa", kappa, "curvature parameter in (-1, 1)");
    sub->add_option("--nmax", nmax, "band limit");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "noise seed");
    sub->add_option("--noise", noise, "relative noise level");
  };
  auto with_input = [&](CLI::App* sub) {
    common(sub);
    sub->add_option("--input,input", input, "sinogram CSV");
  };

  CLI::App* basis = app.add_subcommand("basis", "radial profiles of Z^kappa and fiber profiles of psi");
  common(basis);
  CLI::App* forward = app.add_subcommand("forward", "sinogram of a phantom or coefficient file");
  common(forward);
  forward->add_option("--phantom", phantom, "built-in phantom: unit | gaussian");
  forward->add_option("--coeffs", coeffs, "coefficient JSON (f = w sum c Zhat)");
  CLI::App* inv = app.add_subcommand("invert", "truncated-SVD reconstruction");
  with_input(inv);
  CLI::App* project = app.add_subcommand("project", "project a sinogram onto the range");
  with_input(project);
  CLI::App* moments = app.add_subcommand("moments", "moment-condition residuals");
  with_input(moments);
  CLI::App* spectrum = app.add_subcommand("spectrum", "singular values");
  common(spectrum);
  CLI::App* selftest = app.add_subcommand("selftest", "invariant suite at reduced sizes");
  common(selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_config;
  }

  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    if (kappa) cfg.kappa = *kappa;
    if (nmax) cfg.nmax = *nmax;
    if (out_dir) cfg.out = *out_dir;
    if (seed) cfg.noise.seed = *seed;
    if (noise) cfg.noise.level = *noise;
    if (input) cfg.input = *input;
    if (phantom) cfg.phantom = *phantom;
    if (coeffs) cfg.coeffs = *coeffs;
    cfg.validate();

    if (*basis) return cmd_basis(cfg, out);
    if (*forward) return cmd_forward(cfg, out);
    if (*inv) return cmd_invert(cfg, out);
    if (*project) return cmd_project(cfg, out);
    if (*moments) return cmd_moments(cfg, out);
    if (*spectrum) return cmd_spectrum(cfg, out);
    if (*selftest) return cmd_selftest(cfg, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return exit_io;
  } catch (const fs::filesystem_error& e) {
    err << "i/o error: " << e.what() << "\n";
    return exit_io;
  } catch (const std::exception& e) {
    err << "numerical error: " << e.what() << "\n";
    return exit_numerical;
  }
  return exit_config;
}

}  // namespace gxray::cli
