#include "cli.hpp"

#include <gxray/boundary.hpp>
#include <gxray/xray.hpp>

#include <gxray/fft.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <random>
#include <string>
#include <vector>

namespace gxray::cli {

namespace {

struct Check {
  std::string name;
  double measured;
  double tolerance;
  bool pass() const { return std::isfinite(measured) && measured <= tolerance; }
};

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  cplx in_disk(double rmax) { return std::polar(rmax * std::sqrt(uniform(0.0, 1.0)), uniform(0.0, two_pi)); }

 private:
  std::mt19937_64 rng_;
};

double isometry_check(const CurvatureParam& cp, Sampler& s) {
  double worst = 0.0;
  for (int n = 0; n < 200; ++n) {
    const MoebiusMap t = isometry_from_tangent(s.in_disk(0.9), s.uniform(0.0, two_pi), cp);
    const cplx z = s.in_disk(0.9);
    const cplx zeta = s.in_disk(1.0);
    const double before = metric_norm_sq(z, zeta, cp);
    const double after = metric_norm_sq(t(z), t.derivative(z) * zeta, cp);
    worst = std::max(worst, std::abs(after - before) / before);
  }
  return worst;
}

double scattering_check(const CurvatureParam& cp, Sampler& s) {
  double worst = 0.0;
  for (int n = 0; n < 200; ++n) {
    const FanBeamPoint bp{s.uniform(0.0, two_pi), s.uniform(-half_pi, half_pi)};
    const cplx end = geodesic_point(bp, exit_time(bp.alpha, cp), cp);
    const FanBeamPoint out = scattering(bp, cp);
    worst = std::max(worst, std::abs(end - std::polar(1.0, out.beta)));
  }
  return worst;
}

double signature_check(const CurvatureParam& cp, Sampler& s) {
  const double k = cp.kappa();
  double worst = 0.0;
  for (int n = 0; n < 200; ++n) {
    const double a = s.uniform(-pi, pi);
    const double sa = sig(a, cp);
    const cplx lhs = std::polar(1.0, 2.0 * sa) * (1.0 + k * std::polar(1.0, 2.0 * a));
    worst = std::max(worst, std::abs(lhs - (std::polar(1.0, 2.0 * a) + k)));
    const cplx root = std::polar(1.0, a) * (std::polar(1.0, -sa) - k * std::polar(1.0, sa)) / std::sqrt(1.0 - k * k);
    worst = std::max(worst, std::abs(root - std::sqrt(sig_prime(a, cp))));
    worst = std::max(worst, std::abs(sig(sig_inverse(a, cp), cp) - a));
  }
  return worst;
}

double footpoint_check(const CurvatureParam& cp, Sampler& s) {
  const double k = cp.kappa();
  double worst = 0.0;
  for (int n = 0; n < 200; ++n) {
    const double rho = s.uniform(0.0, 0.95);
    const double theta = s.uniform(0.0, two_pi);
    const FanBeamPoint fp = footpoint(rho, 0.0, theta, cp);
    const double lhs = std::sin(sig(fp.alpha, cp)) / std::sqrt(sig_prime(fp.alpha, cp));
    worst = std::max(worst, std::abs(lhs + std::sqrt(1.0 - k * k) * rho * std::sin(theta) / (1.0 + k * rho * rho)));
  }
  return worst;
}

// Coefficients of e^{2is} decay like |kappa|^j in e^{2ij alpha}; the grid
// grows past 512 points when that decay is too slow to avoid aliasing.
int holomorphy_size(double kappa) {
  int n = 512;
  const double a = std::abs(kappa);
  if (a > 0.0) {
    while (n < (1 << 16) && std::pow(a, n / 4.0) > 1e-14) n *= 2;
  }
  return n;
}

double holomorphy_check(const CurvatureParam& cp) {
  const int n = holomorphy_size(cp.kappa());
  std::vector<cplx> v(n);
  for (int m = 0; m < n; ++m) v[m] = std::polar(1.0, 2.0 * sig(two_pi * m / n, cp));
  detail::fft_inplace(v, -1);
  double worst = std::abs(v[0] / double(n) - cp.kappa());
  for (int b = 1; b < n; ++b) {
    const int m = detail::signed_mode(b, n);
    if (m < 0 || m % 2 != 0) worst = std::max(worst, std::abs(v[b]) / n);
  }
  return worst;
}

double psi_orthonormality(const CurvatureParam& cp) {
  const BoundaryGrid layout(cp, 16, 128);
  std::vector<BasisIndex> modes;
  for (int n = 0; n <= 4; ++n) {
    for (int k = -1; k <= n + 1; ++k) modes.push_back({n, k});
  }
  std::vector<BoundaryGrid> grids;
  for (const auto& idx : modes) {
    BoundaryGrid g = layout.blank_like();
    for (int j = 0; j < g.n_beta(); ++j) {
      for (int i = 0; i < g.n_alpha(); ++i) g.at(j, i) = psi_kappa_hat(idx, g.beta(j), g.alpha(i), cp);
    }
    grids.push_back(std::move(g));
  }
  double worst = 0.0;
  for (std::size_t a = 0; a < grids.size(); ++a) {
    for (std::size_t b = 0; b < grids.size(); ++b) {
      worst = std::max(worst, std::abs(boundary_inner(grids[a], grids[b]) - (a == b ? 1.0 : 0.0)));
    }
  }
  return worst;
}

double zernike_orthonormality(const CurvatureParam& cp) {
  const DiskGrid layout(cp, 48, 32, DiskMeasure::weighted_volume);
  std::vector<DiskGrid> grids;
  for (int n = 0; n <= 4; ++n) {
    for (int k = 0; k <= n; ++k) {
      DiskGrid f = layout.blank_like(DiskMeasure::weighted_volume);
      for (int i = 0; i < f.n_rho(); ++i) {
        for (int j = 0; j < f.n_omega(); ++j) f.at(i, j) = zernike_kappa_hat({n, k}, f.point(i, j), cp);
      }
      grids.push_back(std::move(f));
    }
  }
  double worst = 0.0;
  for (std::size_t a = 0; a < grids.size(); ++a) {
    for (std::size_t b = 0; b < grids.size(); ++b) {
      worst = std::max(worst, std::abs(disk_inner(grids[a], grids[b]) - (a == b ? 1.0 : 0.0)));
    }
  }
  return worst;
}

double svd_diagonal(const CurvatureParam& cp) {
  const BoundaryGrid layout(cp, 16, 64);
  double worst = 0.0;
  for (int n = 0; n <= 3; ++n) {
    for (int k = 0; k <= n; ++k) {
      const BasisIndex idx{n, k};
      const BoundaryGrid g =
          sinogram([&](cplx z) { return weight_kappa(z, cp) * zernike_kappa_hat(idx, z, cp); }, layout);
      for (const auto& [j, c] : analyze(g, 3)) {
        worst = std::max(worst, std::abs(c - (j == idx ? singular_value(n, cp) : 0.0)));
      }
    }
  }
  return worst;
}

double adjoint_kernel(const CurvatureParam& cp, Sampler& s) {
  double worst = 0.0;
  for (int n = 0; n <= 3; ++n) {
    for (int k : {-1, n + 1}) {
      const BasisIndex idx{n, k};
      for (int m = 0; m < 4; ++m) {
        const cplx z = s.in_disk(0.9);
        worst = std::max(worst, std::abs(adjoint_sharp(
                                    [&](double b, double a) { return psi_over_mu(idx, b, a, cp); }, z, cp)));
      }
    }
  }
  return worst;
}

double adjoint_reproduces(const CurvatureParam& cp, Sampler& s) {
  double worst = 0.0;
  for (int n = 0; n <= 3; ++n) {
    for (int k = 0; k <= n; ++k) {
      const BasisIndex idx{n, k};
      const cplx z = s.in_disk(0.9);
      const cplx val = adjoint_sharp([&](double b, double a) { return psi_over_mu(idx, b, a, cp); }, z, cp);
      worst = std::max(worst, std::abs(val - zernike_kappa(idx, z, cp)));
    }
  }
  return worst;
}

double operator_rules(const CurvatureParam& cp, int n_fiber) {
  const BoundaryGrid layout(cp, 16, 32);
  double worst = 0.0;
  for (auto [p, q] : {std::pair{0, 0}, {1, 2}, {-3, 1}, {2, 0}, {3, 1}, {-3, -2}, {1, 1}}) {
    const PQTable t{{{p, q}, 1.0}};
    const BoundaryGrid u = synthesize_pq(t, PQFamily::u, layout);
    const BoundaryGrid v = synthesize_pq(t, PQFamily::v, layout);
    const BoundaryGrid cu = c_minus(u, n_fiber);
    const BoundaryGrid pv = p_minus(v, n_fiber);
    const BoundaryGrid cu_ref = synthesize_pq(c_minus_spectral(t), PQFamily::u, layout);
    const BoundaryGrid pv_ref = synthesize_pq(p_minus_spectral(t), PQFamily::u, layout);
    const double su = std::max(boundary_norm(u), 1.0);
    const double sv = std::max(boundary_norm(v), 1.0);
    for (std::size_t n = 0; n < layout.size(); ++n) {
      worst = std::max(worst, std::abs(cu.values()[n] - cu_ref.values()[n]) / su);
      worst = std::max(worst, std::abs(pv.values()[n] - pv_ref.values()[n]) / sv);
    }
  }
  return worst;
}

double round_trip(const CurvatureParam& cp) {
  const BoundaryGrid layout(cp, 16, 64);
  const DiskGrid disk(cp, 32, 32, DiskMeasure::volume);
  auto truth = [&](cplx z) {
    return weight_kappa(z, cp) * (0.7 * zernike_kappa_hat({1, 0}, z, cp) + cplx{0.0, 0.2} * zernike_kappa_hat({3, 2}, z, cp));
  };
  const Inversion inv = invert(sinogram(truth, layout), 4, disk);
  DiskGrid ref = disk.blank_like(DiskMeasure::volume);
  for (int i = 0; i < ref.n_rho(); ++i) {
    for (int j = 0; j < ref.n_omega(); ++j) ref.at(i, j) = truth(ref.point(i, j));
  }
  DiskGrid diff = inv.f;
  for (std::size_t n = 0; n < diff.size(); ++n) diff.values()[n] -= ref.values()[n];
  return disk_norm(diff, DiskMeasure::volume) / disk_norm(ref, DiskMeasure::volume);
}

double serial_parallel(const CurvatureParam& cp) {
  const BoundaryGrid layout(cp, 16, 32);
  auto f = [&](cplx z) { return weight_kappa(z, cp) * zernike_kappa_hat({2, 1}, z, cp); };
  const BoundaryGrid a = sinogram(f, layout, {}, Exec::parallel);
  const BoundaryGrid b = sinogram_reference(f, layout);
  double worst = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) worst = std::max(worst, std::abs(a.values()[n] - b.values()[n]));
  return worst;
}

}  // namespace

int cmd_selftest(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const CurvatureParam cp = cfg.curvature();
  if (cp.lambda() < 1e-2 || cp.lambda() > 1e2) {
    err << "warning: near-degenerate geometry, lambda = " << cp.lambda()
        << "; fiber quantities vary by a factor " << std::max(cp.lambda(), 1.0 / cp.lambda()) << "\n";
  }
  Sampler s(cfg.noise.seed);
  std::vector<Check> checks;
  checks.push_back({"isometry invariance", isometry_check(cp, s), 1e-10});
  checks.push_back({"scattering endpoints", scattering_check(cp, s), 1e-9});
  checks.push_back({"signature identities", signature_check(cp, s), 1e-10});
  checks.push_back({"footpoint sine relation", footpoint_check(cp, s), 1e-10});
  checks.push_back({"holomorphy of e^{2is}", holomorphy_check(cp), 1e-10});
  checks.push_back({"psi orthonormality", psi_orthonormality(cp), 1e-10});
  checks.push_back({"Z^kappa orthonormality", zernike_orthonormality(cp), 1e-8});
  checks.push_back({"SVD diagonal (n <= 3)", svd_diagonal(cp), 1e-7});
  checks.push_back({"adjoint kernel", adjoint_kernel(cp, s), 1e-8});
  checks.push_back({"adjoint reproduces Z^kappa", adjoint_reproduces(cp, s), 1e-7});
  checks.push_back({"P_- / C_- spectral rules", operator_rules(cp, cfg.fiber_fft), 1e-6});
  checks.push_back({"round-trip inversion", round_trip(cp), 1e-6});
  checks.push_back({"serial vs parallel sinogram", serial_parallel(cp), 1e-13});

  int failed = 0;
  out << std::left << std::setw(32) << "check" << std::setw(14) << "measured" << std::setw(12) << "tolerance"
      << "status\n";
  for (const auto& c : checks) {
    out << std::left << std::setw(32) << c.name << std::setw(14) << std::setprecision(3) << std::scientific
        << c.measured << std::setw(12) << c.tolerance << (c.pass() ? "pass" : "FAIL") << "\n";
    if (!c.pass()) ++failed;
  }
  out << std::defaultfloat << checks.size() - failed << "/" << checks.size() << " checks passed at kappa = " << cfg.kappa
      << "\n";
  return failed == 0 ? exit_ok : exit_numerical;
}

}  // namespace gxray::cli
