#include <gxray/boundary.hpp>

#include <gxray/fft.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gxray {

namespace {

double parity_sign(Parity parity) { return parity == Parity::even ? 1.0 : -1.0; }

int sgn_odd(int m) { return m > 0 ? 1 : -1; }

// Coordinates of the inward point whose scattering image is the outward
// torus node alpha: S(beta + shift, inward_alpha) = (beta, alpha).
struct Preimage {
  double inward_alpha;
  double beta_shift;
};

Preimage outward_preimage(double alpha, const CurvatureParam& cp) {
  const double a = pi - alpha;
  return {a, -pi - 2.0 * sig(a, cp)};
}

}  // namespace

TorusGrid extend(const BoundaryGrid& u, Parity parity, int n_fiber, Exec exec) {
  TorusGrid out(u.curvature(), u.n_beta(), n_fiber);
  const BoundaryInterpolant interp(u);
  const CurvatureParam& cp = u.curvature();
  const double sign = parity_sign(parity);
  const int nb = u.n_beta();
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int m = 0; m < n_fiber; ++m) {
    std::vector<cplx> row(static_cast<std::size_t>(nb));
    double factor = 1.0;
    if (out.is_inward_node(m)) {
      interp.sample_row(wrap_pi(out.alpha(m)), 0.0, row);
    } else {
      const Preimage pre = outward_preimage(out.alpha(m), cp);
      interp.sample_row(pre.inward_alpha, pre.beta_shift, row);
      factor = sign;
    }
    for (int j = 0; j < nb; ++j) out.at(j, m) = factor * row[j];
  }
  return out;
}

TorusGrid extend(const BoundaryFunction& u, const CurvatureParam& cp, int n_beta, Parity parity, int n_fiber) {
  TorusGrid out(cp, n_beta, n_fiber);
  const double sign = parity_sign(parity);
  for (int m = 0; m < n_fiber; ++m) {
    for (int j = 0; j < n_beta; ++j) {
      if (out.is_inward_node(m)) {
        out.at(j, m) = u(out.beta(j), wrap_pi(out.alpha(m)));
      } else {
        const Preimage pre = outward_preimage(out.alpha(m), cp);
        out.at(j, m) = sign * u(out.beta(j) + pre.beta_shift, pre.inward_alpha);
      }
    }
  }
  return out;
}

TorusGrid hilbert(const TorusGrid& u, HilbertPart part, Exec exec) {
  TorusGrid out = u;
  const int nf = u.n_fiber();
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int j = 0; j < u.n_beta(); ++j) {
    std::span<cplx> row = out.row(j);
    detail::fft_inplace(row, -1);
    for (int b = 0; b < nf; ++b) {
      const int m = detail::signed_mode(b, nf);
      const bool drop = detail::is_nyquist(b, nf) || m == 0 || (part == HilbertPart::even && m % 2 != 0) ||
                        (part == HilbertPart::odd && m % 2 == 0);
      row[b] = drop ? cplx{} : row[b] * cplx{0.0, m > 0 ? -1.0 : 1.0} / double(nf);
    }
    detail::fft_inplace(row, +1);
  }
  return out;
}

BoundaryGrid restrict_star(const TorusGrid& u, Parity parity, const BoundaryGrid& layout, Exec exec) {
  if (u.n_beta() != layout.n_beta() || u.curvature().kappa() != layout.curvature().kappa()) {
    std::ostringstream msg;
    msg << "restrict_star: torus grid (" << u.n_beta() << " beta nodes) does not match the boundary layout ("
        << layout.n_beta() << " beta nodes)";
    throw std::invalid_argument(msg.str());
  }
  const int nb = u.n_beta();
  const int nf = u.n_fiber();
  const CurvatureParam& cp = layout.curvature();
  // two-dimensional spectrum, [p_bin * nf + m_bin]
  std::vector<cplx> spec(u.values().begin(), u.values().end());
  for (int j = 0; j < nb; ++j) detail::fft_inplace(std::span<cplx>(spec).subspan(static_cast<std::size_t>(j) * nf, nf), -1);
  std::vector<cplx> column(static_cast<std::size_t>(nb));
  const double norm = 1.0 / (double(nb) * nf);
  for (int b = 0; b < nf; ++b) {
    for (int j = 0; j < nb; ++j) column[j] = spec[static_cast<std::size_t>(j) * nf + b];
    detail::fft_inplace(column, -1);
    for (int p = 0; p < nb; ++p) spec[static_cast<std::size_t>(p) * nf + b] = column[p] * norm;
  }

  BoundaryGrid out = layout.blank_like();
  const double sign = parity_sign(parity);
  const int na = layout.n_alpha();
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
  for (int i = 0; i < na; ++i) {
    std::vector<cplx> phase(static_cast<std::size_t>(nf));
    std::vector<cplx> direct(static_cast<std::size_t>(nb));
    std::vector<cplx> scattered(static_cast<std::size_t>(nb));
    auto sample = [&](double alpha, double shift, std::vector<cplx>& row) {
      for (int b = 0; b < nf; ++b) phase[b] = detail::mode_phase(b, nf, alpha);
      for (int p = 0; p < nb; ++p) {
        const cplx* s = &spec[static_cast<std::size_t>(p) * nf];
        cplx acc{};
        for (int b = 0; b < nf; ++b) acc += s[b] * phase[b];
        row[p] = acc * detail::mode_phase(p, nb, shift);
      }
      detail::fft_inplace(row, +1);
    };
    const double a = layout.alpha(i);
    sample(a, 0.0, direct);
    sample(pi - a, pi + 2.0 * sig(a, cp), scattered);
    for (int j = 0; j < nb; ++j) out.at(j, i) = direct[j] + sign * scattered[j];
  }
  return out;
}

namespace {

// Each operator sees only the S_A class it acts on: P_- w = P_- w_-, P_+ w = P_+ w_+, C_- w = C_- w_+, C_+ w = C_+ w_-.
BoundaryGrid compose(const BoundaryGrid& w, Parity keep, Parity ext, HilbertPart part, double factor, int n_fiber,
                     Exec exec) {
  SymmetrySplit parts = split_antipodal(w);
  const BoundaryGrid& input = keep == Parity::even ? parts.even : parts.odd;
  BoundaryGrid out = restrict_star(hilbert(extend(input, ext, n_fiber, exec), part, exec), Parity::odd, w, exec);
  if (factor != 1.0) {
    for (auto& x : out.values()) x *= factor;
  }
  return out;
}

}  // namespace

BoundaryGrid p_minus(const BoundaryGrid& w, int n_fiber, Exec exec) {
  return compose(w, Parity::odd, Parity::even, HilbertPart::odd, 1.0, n_fiber, exec);
}

BoundaryGrid p_plus(const BoundaryGrid& w, int n_fiber, Exec exec) {
  return compose(w, Parity::even, Parity::even, HilbertPart::even, 1.0, n_fiber, exec);
}

BoundaryGrid c_minus(const BoundaryGrid& u, int n_fiber, Exec exec) {
  return compose(u, Parity::even, Parity::odd, HilbertPart::odd, 0.5, n_fiber, exec);
}

BoundaryGrid c_plus(const BoundaryGrid& u, int n_fiber, Exec exec) {
  return compose(u, Parity::odd, Parity::odd, HilbertPart::even, 0.5, n_fiber, exec);
}

BoundaryGrid synthesize_pq(const PQTable& c, PQFamily family, const BoundaryGrid& layout) {
  BoundaryGrid out = layout.blank_like();
  const CurvatureParam& cp = layout.curvature();
  for (int j = 0; j < layout.n_beta(); ++j) {
    for (int i = 0; i < layout.n_alpha(); ++i) {
      cplx acc{};
      for (const auto& [pq, coeff] : c) {
        const auto vals = boundary_family(pq.first, pq.second, layout.beta(j), layout.alpha(i), cp);
        acc += coeff * (family == PQFamily::u ? vals.u : vals.v);
      }
      out.at(j, i) = acc;
    }
  }
  return out;
}

cplx c_minus_eigenvalue(int p, int q) {
  return cplx{0.0, -0.5} * double(sgn_odd(2 * q + 1) + sgn_odd(2 * p - 2 * q - 1));
}

cplx p_minus_singular_factor(int p, int q) {
  return cplx{0.0, -1.0} * double(sgn_odd(2 * q + 1) - sgn_odd(2 * p - 2 * q - 1));
}

PQTable c_minus_spectral(const PQTable& u_coeffs) {
  PQTable out;
  for (const auto& [pq, c] : u_coeffs) out[pq] += c_minus_eigenvalue(pq.first, pq.second) * c;
  return out;
}

PQTable p_minus_spectral(const PQTable& v_coeffs) {
  PQTable out;
  for (const auto& [pq, c] : v_coeffs) out[pq] += p_minus_singular_factor(pq.first, pq.second) * c;
  return out;
}

BoundaryGrid pullback_antipodal(const BoundaryGrid& u) {
  BoundaryGrid out = u.blank_like();
  const BoundaryInterpolant interp(u);
  const int na = u.n_alpha();
  std::vector<cplx> row(static_cast<std::size_t>(u.n_beta()));
  for (int i = 0; i < na; ++i) {
    // -alpha_i is the node na - 1 - i
    interp.sample_row(u.alpha(na - 1 - i), pi + 2.0 * sig(u.alpha(i), u.curvature()), row);
    for (int j = 0; j < u.n_beta(); ++j) out.at(j, i) = row[j];
  }
  return out;
}

SymmetrySplit split_antipodal(const BoundaryGrid& u) {
  const BoundaryGrid pulled = pullback_antipodal(u);
  SymmetrySplit out{u.blank_like(), u.blank_like()};
  for (std::size_t n = 0; n < u.size(); ++n) {
    out.even.values()[n] = 0.5 * (u.values()[n] + pulled.values()[n]);
    out.odd.values()[n] = 0.5 * (u.values()[n] - pulled.values()[n]);
  }
  return out;
}

SymmetryClass classify(const BoundaryGrid& u) {
  const double norm = boundary_norm(u);
  if (norm == 0.0) return {Parity::even, 0.0};
  const SymmetrySplit parts = split_antipodal(u);
  // u - S_A^* u = 2 odd, u + S_A^* u = 2 even
  const double even_defect = 2.0 * boundary_norm(parts.odd) / norm;
  const double odd_defect = 2.0 * boundary_norm(parts.even) / norm;
  if (even_defect <= odd_defect) return {Parity::even, even_defect};
  return {Parity::odd, odd_defect};
}

Projection project_to_range(const BoundaryGrid& u, int n_fiber, Exec exec) {
  SymmetrySplit parts = split_antipodal(u);
  Projection out{parts.even, boundary_norm(parts.odd), 0.0};
  const BoundaryGrid twice = c_minus(c_minus(parts.even, n_fiber, exec), n_fiber, exec);
  for (std::size_t n = 0; n < u.size(); ++n) out.projected.values()[n] += twice.values()[n];
  const double base = boundary_norm(parts.even);
  out.relative_change = base > 0.0 ? boundary_norm(twice) / base : 0.0;
  return out;
}

MomentReport moment_residuals(const BoundaryGrid& u, int nmax, int kpad, double threshold) {
  if (nmax < 0 || kpad < 1) throw std::invalid_argument("moment_residuals: need nmax >= 0 and kpad >= 1");
  const CurvatureParam& cp = u.curvature();
  const int nb = u.n_beta();
  std::vector<BasisIndex> modes;
  for (int n = 0; n <= nmax; ++n) {
    for (int k = -kpad; k <= n + kpad; ++k) {
      if (k < 0 || k > n) modes.push_back({n, k});
    }
  }
  std::vector<cplx> acc(modes.size(), cplx{});
  std::vector<cplx> column(static_cast<std::size_t>(nb));
  for (int i = 0; i < u.n_alpha(); ++i) {
    for (int j = 0; j < nb; ++j) column[j] = u.at(j, i);
    detail::fft_inplace(column, -1);
    const double w = u.weight(0, i);
    for (std::size_t m = 0; m < modes.size(); ++m) {
      const int bin = ((modes[m].p() % nb) + nb) % nb;
      acc[m] += w * column[bin] * std::conj(psi_kappa(modes[m], 0.0, u.alpha(i), cp));
    }
  }
  MomentReport report;
  report.u_norm = boundary_norm(u);
  report.threshold = threshold;
  for (std::size_t m = 0; m < modes.size(); ++m) {
    const double v = std::abs(acc[m]);
    report.entries.push_back({modes[m], v});
    report.max_abs = std::max(report.max_abs, v);
  }
  report.in_range = report.max_abs <= threshold * report.u_norm;
  return report;
}

}  // namespace gxray
