#pragma once

#include <gxray/common.hpp>
#include <gxray/geometry.hpp>

#include <compare>
#include <map>
#include <vector>

namespace gxray {

// Disk/boundary basis index (n, k). The boundary family uses the alternative
// indexing p = n - 2k, q = n - k.
struct BasisIndex {
  int n = 0;
  int k = 0;

  int p() const { return n - 2 * k; }
  int q() const { return n - k; }
  static BasisIndex from_pq(int p, int q);

  bool in_disk_range() const { return n >= 0 && k >= 0 && k <= n; }

  auto operator<=>(const BasisIndex&) const = default;
};

// Coefficients indexed by (n, k) with n <= nmax, iterated lexicographically.
class CoeffTable {
 public:
  using Map = std::map<BasisIndex, cplx>;

  CoeffTable() = default;
  explicit CoeffTable(int nmax);

  int nmax() const { return nmax_; }
  void set(BasisIndex idx, cplx value);
  cplx get(BasisIndex idx) const;
  bool contains(BasisIndex idx) const { return entries_.count(idx) != 0; }
  std::size_t size() const { return entries_.size(); }
  double norm_sq() const;

  Map::const_iterator begin() const { return entries_.begin(); }
  Map::const_iterator end() const { return entries_.end(); }

 private:
  int nmax_ = 0;
  Map entries_;
};

// W_n(t) = i^n U_n(t) via W_{n+1} = 2 i t W_n + W_{n-1}.
cplx cheb_w(int n, double t);

// Monomial coefficients c_m of the real radial profile R_{n,k}(rho) =
// sum_m c_m rho^m, taken from a process-wide cache.
const std::vector<double>& radial_coefficients(int n, int k);

// R_{n,k}(rho) such that Z_{n,k}(rho e^{i w}) = e^{i (n - 2k) w} R_{n,k}(rho).
double radial_profile(int n, int k, double rho);

// Zernike polynomial with Z_{n,0} = z^n and Z_{n,k}(e^{iw}) = (-1)^k e^{i(n-2k)w}.
cplx zernike(BasisIndex idx, cplx z);

// Deformed Zernike function for the curvature parameter.
cplx zernike_kappa(BasisIndex idx, cplx z, const CurvatureParam& cp);

// Z^kappa_{n,k} divided by its L^2(M, w dVol) norm.
cplx zernike_kappa_hat(BasisIndex idx, cplx z, const CurvatureParam& cp);

// (1 + kappa |z|^2) / (1 - kappa |z|^2)
double weight_kappa(cplx z, const CurvatureParam& cp);

// Boundary singular function psi^kappa_{n,k}(beta, alpha), any integer k.
cplx psi_kappa(BasisIndex idx, double beta, double alpha, const CurvatureParam& cp);
cplx psi_kappa_hat(BasisIndex idx, double beta, double alpha, const CurvatureParam& cp);

// psi^kappa_{n,k} / cos(alpha), evaluated through W_n so that no division by
// cos(alpha) occurs; finite at tangential directions.
cplx psi_over_mu(BasisIndex idx, double beta, double alpha, const CurvatureParam& cp);

// e_{p,l} = e^{i (p beta + l s(alpha))}
cplx e_pl(int p, int l, double beta, double alpha, const CurvatureParam& cp);

struct BoundaryFamilyValues {
  cplx e_pl;  // e_{p, 2q+1}
  cplx phi;   // sqrt(s') e_{p, 2q+1}
  cplx u;     // phi_{p,q} + (-1)^p phi_{p, p-q-1}
  cplx v;     // phi_{p,q} - (-1)^p phi_{p, p-q-1}
};

BoundaryFamilyValues boundary_family(int p, int q, double beta, double alpha, const CurvatureParam& cp);

struct BasisNorms {
  double psi_norm_sq;  // in L^2(boundary, dSigma^2)
  double zk_norm_sq;   // in L^2(M, w dVol)
};

BasisNorms norms(BasisIndex idx, const CurvatureParam& cp);

// Singular value of I_0 w_kappa for mode n.
double singular_value(int n, const CurvatureParam& cp);

}  // namespace gxray
