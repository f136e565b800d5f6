#pragma once

#include <gxray/basis.hpp>
#include <gxray/common.hpp>
#include <gxray/geometry.hpp>
#include <gxray/grids.hpp>

#include <functional>
#include <vector>

namespace gxray {

using DiskFunction = std::function<cplx(cplx)>;
using BoundaryFunction = std::function<cplx(double beta, double alpha)>;

// Composite Gauss-Legendre in arclength. The panel count is scaled by
// tau(alpha) / tau(0), so short chords near tangency get fewer panels.
struct ForwardQuadrature {
  int nodes = 64;
  int panels = 1;
};

inline constexpr int default_fiber_nodes = 512;

// I_0 f at one inward fan-beam point.
cplx forward(const DiskFunction& f, const FanBeamPoint& bp, const CurvatureParam& cp, const ForwardQuadrature& quad = {});

// Bicubic interpolant of DiskGrid samples wrapped as a DiskFunction.
DiskFunction interpolate(const DiskGrid& grid);

// Fill a copy of `layout` with I_0 f at its nodes. The parallel kernel shares
// one geodesic per alpha across all beta by rotation; sinogram_reference
// calls forward() node by node.
BoundaryGrid sinogram(const DiskFunction& f, const BoundaryGrid& layout, const ForwardQuadrature& quad = {},
                      Exec exec = Exec::parallel);
BoundaryGrid sinogram_reference(const DiskFunction& f, const BoundaryGrid& layout, const ForwardQuadrature& quad = {});

// I_0^# g(z) = integral over the fiber of g at the footpoint, trapezoid in theta.
cplx adjoint_sharp(const BoundaryFunction& g, cplx z, const CurvatureParam& cp, int n_theta = default_fiber_nodes);
cplx adjoint_sharp(const BoundaryGrid& g, cplx z, int n_theta = default_fiber_nodes);

// I_0^# g on every node of a copy of `layout`.
DiskGrid adjoint_grid(const BoundaryFunction& g, const DiskGrid& layout, int n_theta = default_fiber_nodes,
                      Exec exec = Exec::parallel);
DiskGrid adjoint_grid_reference(const BoundaryFunction& g, const DiskGrid& layout, int n_theta = default_fiber_nodes);

// Conjugate-linear in the second argument.
cplx boundary_inner(const BoundaryGrid& g1, const BoundaryGrid& g2);
cplx disk_inner(const DiskGrid& f1, const DiskGrid& f2, DiskMeasure m);
// Uses the common measure tag; mismatched tags are rejected.
cplx disk_inner(const DiskGrid& f1, const DiskGrid& f2);

double boundary_norm(const BoundaryGrid& g);
double disk_norm(const DiskGrid& f, DiskMeasure m);

// c_{n,k} = <g, psi_hat_{n,k}> for 0 <= k <= n <= nmax.
CoeffTable analyze(const BoundaryGrid& g, int nmax);
void check_resolvable(const BoundaryGrid& g, int nmax);

// sum c_{n,k} psi_hat_{n,k} on the boundary layout.
BoundaryGrid synthesize(const CoeffTable& c, const BoundaryGrid& layout);
// sum c_{n,k} Zhat_{n,k} on the disk layout.
DiskGrid synthesize(const CoeffTable& c, const DiskGrid& layout, Exec exec = Exec::parallel);
DiskGrid synthesize_reference(const CoeffTable& c, const DiskGrid& layout);

struct Regularization {
  enum class Kind { truncation, spectral_cutoff };
  Kind kind = Kind::truncation;
  double sigma_min = 0.0;  // spectral_cutoff keeps modes with sigma >= sigma_min

  bool accepts(double sigma) const { return kind == Kind::truncation || sigma >= sigma_min; }
};

struct Inversion {
  DiskGrid f;                  // w_kappa sum (c / sigma) Zhat
  CoeffTable data_coeffs;      // c_{n,k} = <g, psi_hat>
  CoeffTable disk_coeffs;      // accepted c / sigma
  double residual = 0.0;       // norm of g outside the analyzed band
  double discarded_energy = 0.0;
  int accepted_modes = 0;
};

Inversion invert(const BoundaryGrid& g, int nmax, const DiskGrid& layout, const Regularization& reg = {});

struct SvdTriple {
  BasisIndex index;
  double sigma = 0.0;
  CurvatureParam cp{0.0};

  cplx left(double beta, double alpha) const { return psi_kappa_hat(index, beta, alpha, cp); }
  cplx right(cplx z) const { return zernike_kappa_hat(index, z, cp); }
};

std::vector<SvdTriple> singular_values(int nmax, const CurvatureParam& cp);

}  // namespace gxray
