#include <gxray/quadrature.hpp>
#include <gxray/xray.hpp>

#include <gxray/fft.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>

namespace gxray {

namespace {

const QuadratureRule& unit_rule(int n) {
  thread_local std::map<int, QuadratureRule> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gauss_legendre(n, 0.0, 1.0)).first;
  return it->second;
}

// Quadrature nodes along the chord entering at beta = 0 with angle alpha.
struct Chord {
  std::vector<double> t;
  std::vector<cplx> points;
  std::vector<double> weights;
};

Chord make_chord(double alpha, const CurvatureParam& cp, const ForwardQuadrature& quad) {
  if (quad.nodes < 1 || quad.panels < 1) throw std::invalid_argument("forward quadrature needs positive node and panel counts");
  Chord ch;
  const double tau = exit_time(alpha, cp);
  if (tau <= 0.0) return ch;
  const double tau0 = exit_time(0.0, cp);
  const int panels = std::max(1, static_cast<int>(std::ceil(quad.panels * tau / tau0 - 1e-12)));
  const QuadratureRule& rule = unit_rule(quad.nodes);
  const double h = tau / panels;
  const cplx e = std::polar(1.0, alpha);
  const double k = cp.kappa();
  for (int p = 0; p < panels; ++p) {
    for (std::size_t m = 0; m < rule.nodes.size(); ++m) {
      const double t = (p + rule.nodes[m]) * h;
      const double z = geodesic_profile(t, cp);
      ch.t.push_back(t);
      ch.points.push_back((1.0 - e * z) / (1.0 + k * e * z));
      ch.weights.push_back(rule.weights[m] * h);
    }
  }
  return ch;
}

cplx integrate_chord(const DiskFunction& f, const Chord& ch, cplx rotation, double beta, double alpha) {
  cplx acc{};
  for (std::size_t m = 0; m < ch.points.size(); ++m) {
    const cplx v = f(rotation * ch.points[m]);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      std::ostringstream msg;
      msg << "non-finite integrand at t = " << ch.t[m] << " on the geodesic (beta, alpha) = (" << beta << ", " << alpha
          << ")";
      throw NumericalError(msg.str());
    }
    acc += ch.weights[m] * v;
  }
  return acc;
}

class ErrorLog {
 public:
  void add(const std::string& what) {
    std::lock_guard lock(mutex_);
    ++count_;
    if (messages_.size() < 5) messages_.push_back(what);
  }

  void raise_if_any(const char* context) const {
    if (count_ == 0) return;
    std::ostringstream msg;
    msg << context << ": " << count_ << " node(s) failed";
    for (const auto& m : messages_) msg << "\n  " << m;
    throw NumericalError(msg.str());
  }

 private:
  std::mutex mutex_;
  std::size_t count_ = 0;
  std::vector<std::string> messages_;
};

void require_interior(cplx z) {
  if (!(std::abs(z) < 1.0)) {
    std::ostringstream msg;
    msg << "adjoint: point " << z << " is not interior";
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

cplx forward(const DiskFunction& f, const FanBeamPoint& bp, const CurvatureParam& cp, const ForwardQuadrature& quad) {
  if (!bp.is_inward()) {
    std::ostringstream msg;
    msg << "forward: (beta, alpha) = (" << bp.beta << ", " << bp.alpha << ") is not inward";
    throw std::invalid_argument(msg.str());
  }
  const double alpha = (bp.alpha >= -pi && bp.alpha < pi) ? bp.alpha : wrap_pi(bp.alpha);
  if (std::abs(alpha) >= half_pi) return 0.0;
  const Chord ch = make_chord(alpha, cp, quad);
  return integrate_chord(f, ch, std::polar(1.0, bp.beta), bp.beta, bp.alpha);
}

DiskFunction interpolate(const DiskGrid& grid) {
  auto interp = std::make_shared<DiskInterpolant>(grid);
  return [interp](cplx z) { return (*interp)(z); };
}

BoundaryGrid sinogram(const DiskFunction& f, const BoundaryGrid& layout, const ForwardQuadrature& quad, Exec exec) {
  BoundaryGrid out = layout.blank_like();
  const CurvatureParam& cp = layout.curvature();
  const int na = layout.n_alpha();
  const int nb = layout.n_beta();
  ErrorLog errors;
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
  for (int i = 0; i < na; ++i) {
    Chord ch;
    try {
      ch = make_chord(layout.alpha(i), cp, quad);
    } catch (const std::exception& e) {
      errors.add(e.what());
      continue;
    }
    for (int j = 0; j < nb; ++j) {
      try {
        out.at(j, i) = integrate_chord(f, ch, std::polar(1.0, layout.beta(j)), layout.beta(j), layout.alpha(i));
      } catch (const std::exception& e) {
        errors.add(e.what());
      }
    }
  }
  errors.raise_if_any("sinogram");
  return out;
}

BoundaryGrid sinogram_reference(const DiskFunction& f, const BoundaryGrid& layout, const ForwardQuadrature& quad) {
  BoundaryGrid out = layout.blank_like();
  ErrorLog errors;
  for (int j = 0; j < layout.n_beta(); ++j) {
    for (int i = 0; i < layout.n_alpha(); ++i) {
      try {
        out.at(j, i) = forward(f, {layout.beta(j), layout.alpha(i)}, layout.curvature(), quad);
      } catch (const std::exception& e) {
        errors.add(e.what());
      }
    }
  }
  errors.raise_if_any("sinogram");
  return out;
}

cplx adjoint_sharp(const BoundaryFunction& g, cplx z, const CurvatureParam& cp, int n_theta) {
  require_interior(z);
  if (n_theta < 1) throw std::invalid_argument("adjoint: fiber node count must be positive");
  const double rho = std::abs(z);
  const double omega = rho > 0.0 ? std::arg(z) : 0.0;
  const double h = two_pi / n_theta;
  cplx acc{};
  for (int j = 0; j < n_theta; ++j) {
    const FanBeamPoint fp = footpoint(rho, omega, omega + j * h, cp);
    acc += g(fp.beta, fp.alpha);
  }
  return acc * h;
}

cplx adjoint_sharp(const BoundaryGrid& g, cplx z, int n_theta) {
  const BoundaryInterpolant interp(g);
  return adjoint_sharp([&](double b, double a) { return interp(b, a); }, z, g.curvature(), n_theta);
}

DiskGrid adjoint_grid(const BoundaryFunction& g, const DiskGrid& layout, int n_theta, Exec exec) {
  if (n_theta < 1) throw std::invalid_argument("adjoint: fiber node count must be positive");
  DiskGrid out = layout.blank_like(layout.measure());
  const CurvatureParam& cp = layout.curvature();
  const double h = two_pi / n_theta;
  ErrorLog errors;
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
  for (int i = 0; i < layout.n_rho(); ++i) {
    try {
      std::vector<FanBeamPoint> base(static_cast<std::size_t>(n_theta));
      for (int j = 0; j < n_theta; ++j) base[j] = footpoint(layout.rho(i), 0.0, j * h, cp);
      for (int l = 0; l < layout.n_omega(); ++l) {
        const double omega = layout.omega(l);
        cplx acc{};
        for (const auto& fp : base) acc += g(fp.beta + omega, fp.alpha);
        out.at(i, l) = acc * h;
      }
    } catch (const std::exception& e) {
      errors.add(e.what());
    }
  }
  errors.raise_if_any("adjoint");
  return out;
}

DiskGrid adjoint_grid_reference(const BoundaryFunction& g, const DiskGrid& layout, int n_theta) {
  DiskGrid out = layout.blank_like(layout.measure());
  for (int i = 0; i < layout.n_rho(); ++i) {
    for (int l = 0; l < layout.n_omega(); ++l) {
      out.at(i, l) = adjoint_sharp(g, layout.point(i, l), layout.curvature(), n_theta);
    }
  }
  return out;
}

cplx boundary_inner(const BoundaryGrid& g1, const BoundaryGrid& g2) {
  if (!g1.same_layout(g2)) throw std::invalid_argument("boundary_inner: grids do not match");
  cplx acc{};
  for (int j = 0; j < g1.n_beta(); ++j) {
    for (int i = 0; i < g1.n_alpha(); ++i) acc += g1.weight(j, i) * g1.at(j, i) * std::conj(g2.at(j, i));
  }
  return acc;
}

cplx disk_inner(const DiskGrid& f1, const DiskGrid& f2, DiskMeasure m) {
  if (!f1.same_layout(f2)) throw std::invalid_argument("disk_inner: grids do not match");
  cplx acc{};
  for (int i = 0; i < f1.n_rho(); ++i) {
    for (int j = 0; j < f1.n_omega(); ++j) acc += f1.weight(i, j, m) * f1.at(i, j) * std::conj(f2.at(i, j));
  }
  return acc;
}

cplx disk_inner(const DiskGrid& f1, const DiskGrid& f2) {
  if (f1.measure() != f2.measure()) throw std::invalid_argument("disk_inner: measure tags differ");
  return disk_inner(f1, f2, f1.measure());
}

double boundary_norm(const BoundaryGrid& g) { return std::sqrt(std::max(0.0, boundary_inner(g, g).real())); }

double disk_norm(const DiskGrid& f, DiskMeasure m) { return std::sqrt(std::max(0.0, disk_inner(f, f, m).real())); }

void check_resolvable(const BoundaryGrid& g, int nmax) {
  if (nmax < 0) throw std::invalid_argument("band limit must be non-negative");
  if (2 * (nmax + 1) > g.n_alpha() || g.n_beta() < 2 * nmax + 1) {
    std::ostringstream msg;
    msg << "band limit " << nmax << " is not resolved by a " << g.n_beta() << " x " << g.n_alpha()
        << " boundary grid (need n_alpha >= " << 2 * (nmax + 1) << ", n_beta >= " << 2 * nmax + 1 << ")";
    throw std::invalid_argument(msg.str());
  }
}

CoeffTable analyze(const BoundaryGrid& g, int nmax) {
  check_resolvable(g, nmax);
  const CurvatureParam& cp = g.curvature();
  const int nb = g.n_beta();
  CoeffTable out(nmax);
  std::vector<cplx> acc(static_cast<std::size_t>((nmax + 1) * (nmax + 1)), cplx{});
  std::vector<cplx> column(static_cast<std::size_t>(nb));
  for (int i = 0; i < g.n_alpha(); ++i) {
    for (int j = 0; j < nb; ++j) column[j] = g.at(j, i);
    detail::fft_inplace(column, -1);
    const double w = g.weight(0, i);
    for (int n = 0; n <= nmax; ++n) {
      for (int k = 0; k <= n; ++k) {
        const BasisIndex idx{n, k};
        const int bin = ((idx.p() % nb) + nb) % nb;
        acc[static_cast<std::size_t>(n * (nmax + 1) + k)] +=
            w * column[bin] * std::conj(psi_kappa_hat(idx, 0.0, g.alpha(i), cp));
      }
    }
  }
  for (int n = 0; n <= nmax; ++n) {
    for (int k = 0; k <= n; ++k) out.set({n, k}, acc[static_cast<std::size_t>(n * (nmax + 1) + k)]);
  }
  return out;
}

BoundaryGrid synthesize(const CoeffTable& c, const BoundaryGrid& layout) {
  BoundaryGrid out = layout.blank_like();
  const CurvatureParam& cp = layout.curvature();
  for (int i = 0; i < layout.n_alpha(); ++i) {
    std::vector<std::pair<int, cplx>> terms;
    for (const auto& [idx, coeff] : c) terms.emplace_back(idx.p(), coeff * psi_kappa_hat(idx, 0.0, layout.alpha(i), cp));
    for (int j = 0; j < layout.n_beta(); ++j) {
      cplx acc{};
      for (const auto& [p, v] : terms) acc += v * std::polar(1.0, p * layout.beta(j));
      out.at(j, i) = acc;
    }
  }
  return out;
}

DiskGrid synthesize(const CoeffTable& c, const DiskGrid& layout, Exec exec) {
  DiskGrid out = layout.blank_like(layout.measure());
  const CurvatureParam& cp = layout.curvature();
  const double k = cp.kappa();
  const int nmax = c.nmax();
  // Zhat(rho e^{iw}) = radial(rho) e^{i p w}, p in [-nmax, nmax]
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
  for (int i = 0; i < layout.n_rho(); ++i) {
    const double rho = layout.rho(i);
    const double a = k * rho * rho;
    const double scale = std::sqrt((1.0 - k) / (1.0 + k)) * (1.0 + a) / (1.0 - a);
    const double mapped = (1.0 - k) * rho / (1.0 - a);
    std::vector<cplx> by_p(static_cast<std::size_t>(2 * nmax + 1), cplx{});
    for (const auto& [idx, coeff] : c) {
      const double radial = scale * radial_profile(idx.n, idx.k, mapped) / std::sqrt(norms(idx, cp).zk_norm_sq);
      by_p[static_cast<std::size_t>(idx.p() + nmax)] += coeff * radial;
    }
    for (int l = 0; l < layout.n_omega(); ++l) {
      cplx acc{};
      for (int p = -nmax; p <= nmax; ++p) acc += by_p[static_cast<std::size_t>(p + nmax)] * std::polar(1.0, p * layout.omega(l));
      out.at(i, l) = acc;
    }
  }
  return out;
}

DiskGrid synthesize_reference(const CoeffTable& c, const DiskGrid& layout) {
  DiskGrid out = layout.blank_like(layout.measure());
  for (int i = 0; i < layout.n_rho(); ++i) {
    for (int l = 0; l < layout.n_omega(); ++l) {
      cplx acc{};
      for (const auto& [idx, coeff] : c) acc += coeff * zernike_kappa_hat(idx, layout.point(i, l), layout.curvature());
      out.at(i, l) = acc;
    }
  }
  return out;
}

Inversion invert(const BoundaryGrid& g, int nmax, const DiskGrid& layout, const Regularization& reg) {
  if (g.curvature().kappa() != layout.curvature().kappa()) {
    throw std::invalid_argument("invert: sinogram and disk grid use different curvature");
  }
  const CurvatureParam& cp = g.curvature();
  Inversion out{layout.blank_like(layout.measure()), analyze(g, nmax), CoeffTable(nmax)};
  for (const auto& [idx, coeff] : out.data_coeffs) {
    const double sigma = singular_value(idx.n, cp);
    if (reg.accepts(sigma)) {
      out.disk_coeffs.set(idx, coeff / sigma);
      ++out.accepted_modes;
    } else {
      out.discarded_energy += std::norm(coeff);
    }
  }
  if (out.accepted_modes == 0) throw NumericalError("invert: regularization accepted no modes");
  out.f = synthesize(out.disk_coeffs, layout);
  for (int i = 0; i < layout.n_rho(); ++i) {
    const double w = weight_kappa(layout.rho(i), cp);
    for (int l = 0; l < layout.n_omega(); ++l) out.f.at(i, l) *= w;
  }
  const double g_sq = boundary_inner(g, g).real();
  out.residual = std::sqrt(std::max(0.0, g_sq - out.data_coeffs.norm_sq()));
  return out;
}

std::vector<SvdTriple> singular_values(int nmax, const CurvatureParam& cp) {
  if (nmax < 0) throw std::invalid_argument("singular_values: nmax must be non-negative");
  std::vector<SvdTriple> out;
  for (int n = 0; n <= nmax; ++n) {
    for (int k = 0; k <= n; ++k) out.push_back({{n, k}, singular_value(n, cp), cp});
  }
  return out;
}

}  // namespace gxray
