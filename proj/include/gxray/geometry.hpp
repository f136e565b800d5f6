#pragma once

#include <gxray/common.hpp>

namespace gxray {

// Curvature parameter kappa of the metric (1 + kappa |z|^2)^-2 |dz|^2 on the
// unit disk (Gaussian curvature 4 kappa). Construction rejects |kappa| >= 1.
class CurvatureParam {
 public:
  explicit CurvatureParam(double kappa);

  double kappa() const { return kappa_; }
  // (1 - kappa) / (1 + kappa)
  double lambda() const { return lambda_; }
  // conformal factor on the boundary circle, 1 + kappa
  double c1() const { return 1.0 + kappa_; }

 private:
  double kappa_;
  double lambda_;
};

// Boundary phase-space point in fan-beam coordinates: e^{i beta} on the
// circle, alpha measured from the inward normal. Values are kept as given;
// reduced() maps beta to [0, 2pi) and alpha to [-pi, pi).
struct FanBeamPoint {
  double beta = 0.0;
  double alpha = 0.0;

  bool is_inward() const;
  FanBeamPoint reduced() const;
};

// z -> (a z + b) / (-kappa conj(b) z + conj(a)) with |a|^2 + kappa |b|^2 = 1.
class MoebiusMap {
 public:
  MoebiusMap(cplx a, cplx b, double kappa);

  cplx a() const { return a_; }
  cplx b() const { return b_; }
  double kappa() const { return kappa_; }

  cplx operator()(cplx z) const;
  cplx derivative(cplx z) const;
  // | |a|^2 + kappa |b|^2 - 1 |
  double normalization_defect() const;

 private:
  cplx a_;
  cplx b_;
  double kappa_;
};

// 1 + kappa |z|^2
double conformal_factor(cplx z, const CurvatureParam& cp);

// Squared g_kappa-length of the tangent vector zeta at z.
double metric_norm_sq(cplx z, cplx zeta, const CurvatureParam& cp);

// The isometry T with T(0) = z1 and T'(0) = c(z1) e^{i theta}.
MoebiusMap isometry_from_tangent(cplx z1, double theta, const CurvatureParam& cp);

// Exit time of the inward geodesic with fan-beam angle alpha in [-pi/2, pi/2].
double exit_time(double alpha, const CurvatureParam& cp);

// Arclength profile of the geodesic through 0 along the real axis.
double geodesic_profile(double t, const CurvatureParam& cp);

// Unit-speed geodesic entering at e^{i beta} with fan-beam angle alpha,
// evaluated at arclength t in [0, exit_time].
cplx geodesic_point(const FanBeamPoint& bp, double t, const CurvatureParam& cp);

// d/dt of geodesic_point.
cplx geodesic_velocity(const FanBeamPoint& bp, double t, const CurvatureParam& cp);

// Scattering signature s(alpha) = arctan(lambda tan alpha), continuous branch
// with s(0) = 0 and s(alpha + pi) = s(alpha) + pi.
double sig(double alpha, const CurvatureParam& cp);
double sig_prime(double alpha, const CurvatureParam& cp);
// s_kappa^{-1} = s_{-kappa}
double sig_inverse(double alpha, const CurvatureParam& cp);
// d/ds of sig_inverse at s.
double sig_inverse_prime(double s, const CurvatureParam& cp);

// (beta, alpha) -> (beta + pi + 2 s(alpha), pi - alpha), reduced.
FanBeamPoint scattering(const FanBeamPoint& bp, const CurvatureParam& cp);
// (beta, alpha) -> (beta + pi + 2 s(alpha), -alpha), reduced.
FanBeamPoint antipodal_scattering(const FanBeamPoint& bp, const CurvatureParam& cp);

struct FiberChange {
  double theta_prime;
  double jacobian;
};

// theta' = theta - arg(1 + kappa rho^2 e^{2 i theta}) and d theta'/d theta.
FiberChange fiber_change(double rho, double theta, const CurvatureParam& cp);

// Fan-beam coordinates (beta_-, alpha_-) of the geodesic through the interior
// point rho e^{i omega} with direction angle theta. beta_- is not reduced.
FanBeamPoint footpoint(double rho, double omega, double theta, const CurvatureParam& cp);

}  // namespace gxray
