#include <gxray/geometry.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gxray {

double wrap_two_pi(double angle) {
  double r = std::fmod(angle, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r = 0.0;
  return r;
}

double wrap_pi(double angle) {
  double r = wrap_two_pi(angle + pi) - pi;
  return r;
}

CurvatureParam::CurvatureParam(double kappa) : kappa_(kappa), lambda_(0.0) {
  if (!(std::abs(kappa) < 1.0)) {
    std::ostringstream msg;
    msg << "curvature parameter must lie in (-1, 1), got " << kappa;
    throw std::invalid_argument(msg.str());
  }
  lambda_ = (1.0 - kappa) / (1.0 + kappa);
}

bool FanBeamPoint::is_inward() const {
  return std::abs(wrap_pi(alpha)) <= half_pi + 1e-12;
}

FanBeamPoint FanBeamPoint::reduced() const {
  return {wrap_two_pi(beta), wrap_pi(alpha)};
}

MoebiusMap::MoebiusMap(cplx a, cplx b, double kappa) : a_(a), b_(b), kappa_(kappa) {}

cplx MoebiusMap::operator()(cplx z) const {
  return (a_ * z + b_) / (-kappa_ * std::conj(b_) * z + std::conj(a_));
}

cplx MoebiusMap::derivative(cplx z) const {
  const cplx den = -kappa_ * std::conj(b_) * z + std::conj(a_);
  const double det = std::norm(a_) + kappa_ * std::norm(b_);
  return det / (den * den);
}

double MoebiusMap::normalization_defect() const {
  return std::abs(std::norm(a_) + kappa_ * std::norm(b_) - 1.0);
}

double conformal_factor(cplx z, const CurvatureParam& cp) {
  return 1.0 + cp.kappa() * std::norm(z);
}

double metric_norm_sq(cplx z, cplx zeta, const CurvatureParam& cp) {
  const double c = conformal_factor(z, cp);
  return std::norm(zeta) / (c * c);
}

MoebiusMap isometry_from_tangent(cplx z1, double theta, const CurvatureParam& cp) {
  if (std::abs(z1) > 1.0 + 1e-12) {
    throw std::invalid_argument("isometry_from_tangent: base point outside the closed unit disk");
  }
  const double scale = 1.0 / std::sqrt(conformal_factor(z1, cp));
  const cplx half = std::polar(1.0, 0.5 * theta);
  return MoebiusMap(half * scale, z1 * std::conj(half) * scale, cp.kappa());
}

double exit_time(double alpha, const CurvatureParam& cp) {
  const double a = wrap_pi(alpha);
  if (std::abs(a) > half_pi + 1e-12) {
    std::ostringstream msg;
    msg << "exit_time: alpha = " << alpha << " is not inward";
    throw std::invalid_argument(msg.str());
  }
  if (std::abs(a) >= half_pi) return 0.0;
  const double k = cp.kappa();
  const double x = std::max(0.0, 2.0 * std::cos(a) / (1.0 - k));
  if (k > 0.0) {
    const double r = std::sqrt(k);
    return std::atan(r * x) / r;
  }
  if (k < 0.0) {
    const double r = std::sqrt(-k);
    return std::atanh(r * x) / r;
  }
  return x;
}

double geodesic_profile(double t, const CurvatureParam& cp) {
  const double k = cp.kappa();
  if (k > 0.0) {
    const double r = std::sqrt(k);
    return std::tan(r * t) / r;
  }
  if (k < 0.0) {
    const double r = std::sqrt(-k);
    return std::tanh(r * t) / r;
  }
  return t;
}

namespace {

void check_arclength(const FanBeamPoint& bp, double t, const CurvatureParam& cp) {
  if (!bp.is_inward()) {
    throw std::invalid_argument("geodesic: fan-beam point is not inward");
  }
  const double tau = exit_time(bp.alpha, cp);
  const double slack = 1e-12 * (1.0 + tau);
  if (t < -slack || t > tau + slack) {
    std::ostringstream msg;
    msg << "geodesic: arclength " << t << " outside [0, " << tau << "]";
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

cplx geodesic_point(const FanBeamPoint& bp, double t, const CurvatureParam& cp) {
  check_arclength(bp, t, cp);
  const double z = geodesic_profile(t, cp);
  const cplx e = std::polar(1.0, bp.alpha);
  return std::polar(1.0, bp.beta) * (1.0 - e * z) / (1.0 + cp.kappa() * e * z);
}

cplx geodesic_velocity(const FanBeamPoint& bp, double t, const CurvatureParam& cp) {
  check_arclength(bp, t, cp);
  const double k = cp.kappa();
  const double z = geodesic_profile(t, cp);
  const cplx e = std::polar(1.0, bp.alpha);
  const cplx den = 1.0 + k * e * z;
  const cplx dT = -e * (1.0 + k) / (den * den);
  return std::polar(1.0, bp.beta) * dT * (1.0 + k * z * z);
}

double sig(double alpha, const CurvatureParam& cp) {
  const double m = std::round(alpha / pi);
  const double r = alpha - m * pi;
  return std::atan2(cp.lambda() * std::sin(r), std::cos(r)) + m * pi;
}

double sig_prime(double alpha, const CurvatureParam& cp) {
  const double k = cp.kappa();
  return (1.0 - k * k) / (1.0 + k * k + 2.0 * k * std::cos(2.0 * alpha));
}

double sig_inverse(double alpha, const CurvatureParam& cp) {
  return sig(alpha, CurvatureParam(-cp.kappa()));
}

double sig_inverse_prime(double s, const CurvatureParam& cp) {
  return sig_prime(s, CurvatureParam(-cp.kappa()));
}

FanBeamPoint scattering(const FanBeamPoint& bp, const CurvatureParam& cp) {
  return FanBeamPoint{bp.beta + pi + 2.0 * sig(bp.alpha, cp), pi - bp.alpha}.reduced();
}

FanBeamPoint antipodal_scattering(const FanBeamPoint& bp, const CurvatureParam& cp) {
  return FanBeamPoint{bp.beta + pi + 2.0 * sig(bp.alpha, cp), -bp.alpha}.reduced();
}

FiberChange fiber_change(double rho, double theta, const CurvatureParam& cp) {
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw std::invalid_argument("fiber_change: rho must lie in [0, 1)");
  }
  const double kr2 = cp.kappa() * rho * rho;
  const double s = std::sin(theta);
  FiberChange out{};
  out.theta_prime = theta - std::atan2(kr2 * std::sin(2.0 * theta), 1.0 + kr2 * std::cos(2.0 * theta));
  out.jacobian = (1.0 - kr2 * kr2) / ((1.0 + kr2) * (1.0 + kr2) - 4.0 * kr2 * s * s);
  return out;
}

FanBeamPoint footpoint(double rho, double omega, double theta, const CurvatureParam& cp) {
  if (!(rho >= 0.0 && rho < 1.0)) {
    std::ostringstream msg;
    msg << "footpoint: rho = " << rho << " is not an interior radius";
    throw std::invalid_argument(msg.str());
  }
  const double k = cp.kappa();
  const double local = theta - omega;
  const double sin_alpha = std::clamp(-(1.0 + k) * rho * std::sin(local) / (1.0 + k * rho * rho), -1.0, 1.0);
  const double alpha = std::asin(sin_alpha);
  const double theta_prime = fiber_change(rho, local, cp).theta_prime;
  return {theta_prime - pi - sig(alpha, cp) + omega, alpha};
}

}  // namespace gxray
