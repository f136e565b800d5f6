#include <gxray/basis.hpp>

#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <utility>

namespace gxray {

BasisIndex BasisIndex::from_pq(int p, int q) {
  const BasisIndex idx{2 * q - p, q - p};
  if (idx.n < 0) {
    std::ostringstream msg;
    msg << "(p, q) = (" << p << ", " << q << ") maps to negative n";
    throw std::invalid_argument(msg.str());
  }
  return idx;
}

CoeffTable::CoeffTable(int nmax) : nmax_(nmax) {
  if (nmax < 0) throw std::invalid_argument("CoeffTable: nmax must be non-negative");
}

void CoeffTable::set(BasisIndex idx, cplx value) {
  if (idx.n < 0 || idx.n > nmax_) {
    std::ostringstream msg;
    msg << "CoeffTable: index (" << idx.n << ", " << idx.k << ") exceeds band limit " << nmax_;
    throw std::out_of_range(msg.str());
  }
  entries_[idx] = value;
}

cplx CoeffTable::get(BasisIndex idx) const {
  auto it = entries_.find(idx);
  return it == entries_.end() ? cplx{} : it->second;
}

double CoeffTable::norm_sq() const {
  double s = 0.0;
  for (const auto& [idx, c] : entries_) s += std::norm(c);
  return s;
}

cplx cheb_w(int n, double t) {
  if (n < 0) throw std::invalid_argument("cheb_w: negative degree");
  const cplx y{0.0, 2.0 * t};
  cplx prev{1.0, 0.0};
  if (n == 0) return prev;
  cplx cur = y;
  for (int m = 1; m < n; ++m) {
    const cplx next = y * cur + prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace {

double binomial(int n, int r) {
  if (r < 0 || r > n) return 0.0;
  r = std::min(r, n - r);
  double b = 1.0;
  for (int i = 1; i <= r; ++i) b = b * (n - r + i) / i;
  return std::round(b);
}

// Harmonic e^{-i(n-2k) theta} of W_n(-rho sin theta), expanded through
// W_n(t) = sum_j C(n-j, j) (2it)^{n-2j}.
std::vector<double> build_radial(int n, int k) {
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  for (int j = 0; j <= std::min(k, n - k); ++j) {
    const double sign = ((k - j) % 2 == 0) ? 1.0 : -1.0;
    c[static_cast<std::size_t>(n - 2 * j)] += binomial(n - j, j) * binomial(n - 2 * j, k - j) * sign;
  }
  return c;
}

struct RadialCache {
  std::shared_mutex mutex;
  std::map<std::pair<int, int>, std::vector<double>> table;
};

RadialCache& radial_cache() {
  static RadialCache cache;
  return cache;
}

}  // namespace

const std::vector<double>& radial_coefficients(int n, int k) {
  if (n < 0 || k < 0 || k > n) {
    std::ostringstream msg;
    msg << "radial profile requires 0 <= k <= n, got (" << n << ", " << k << ")";
    throw std::invalid_argument(msg.str());
  }
  auto& cache = radial_cache();
  const auto key = std::make_pair(n, k);
  {
    std::shared_lock lock(cache.mutex);
    auto it = cache.table.find(key);
    if (it != cache.table.end()) return it->second;
  }
  std::unique_lock lock(cache.mutex);
  auto [it, inserted] = cache.table.try_emplace(key);
  if (inserted) it->second = build_radial(n, k);
  return it->second;
}

double radial_profile(int n, int k, double rho) {
  const auto& c = radial_coefficients(n, k);
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * rho + *it;
  return acc;
}

cplx zernike(BasisIndex idx, cplx z) {
  if (!idx.in_disk_range()) {
    std::ostringstream msg;
    msg << "zernike: index (" << idx.n << ", " << idx.k << ") outside 0 <= k <= n";
    throw std::invalid_argument(msg.str());
  }
  const double rho = std::abs(z);
  const int m = idx.p();
  const double r = radial_profile(idx.n, idx.k, rho);
  if (rho == 0.0) return (m == 0) ? cplx{r, 0.0} : cplx{};
  // e^{i m w} = (z / |z|)^m
  const cplx unit = z / rho;
  cplx phase{1.0, 0.0};
  const cplx step = m >= 0 ? unit : std::conj(unit);
  for (int i = 0; i < std::abs(m); ++i) phase *= step;
  return r * phase;
}

double weight_kappa(cplx z, const CurvatureParam& cp) {
  const double a = cp.kappa() * std::norm(z);
  return (1.0 + a) / (1.0 - a);
}

cplx zernike_kappa(BasisIndex idx, cplx z, const CurvatureParam& cp) {
  const double k = cp.kappa();
  const double a = k * std::norm(z);
  const double scale = std::sqrt((1.0 - k) / (1.0 + k)) * (1.0 + a) / (1.0 - a);
  return scale * zernike(idx, (1.0 - k) / (1.0 - a) * z);
}

cplx zernike_kappa_hat(BasisIndex idx, cplx z, const CurvatureParam& cp) {
  return zernike_kappa(idx, z, cp) / std::sqrt(norms(idx, cp).zk_norm_sq);
}

cplx psi_kappa(BasisIndex idx, double beta, double alpha, const CurvatureParam& cp) {
  if (idx.n < 0) throw std::invalid_argument("psi_kappa: negative n");
  const double s = sig(alpha, cp);
  const double sign = (idx.n % 2 == 0) ? 1.0 : -1.0;
  const cplx g = std::polar(1.0, (idx.n + 1) * s) + sign * std::polar(1.0, -(idx.n + 1) * s);
  return sign / (4.0 * pi) * std::sqrt(sig_prime(alpha, cp)) * std::polar(1.0, idx.p() * (beta + s)) * g;
}

cplx psi_kappa_hat(BasisIndex idx, double beta, double alpha, const CurvatureParam& cp) {
  return 2.0 * std::sqrt(cp.c1()) * psi_kappa(idx, beta, alpha, cp);
}

cplx psi_over_mu(BasisIndex idx, double beta, double alpha, const CurvatureParam& cp) {
  if (idx.n < 0) throw std::invalid_argument("psi_over_mu: negative n");
  const double k = cp.kappa();
  const double s = sig(alpha, cp);
  const double sign = (idx.n % 2 == 0) ? 1.0 : -1.0;
  const double scale = sign / (4.0 * pi) * std::sqrt((1.0 + k) / (1.0 - k)) * sig_prime(alpha, cp);
  return scale * std::polar(1.0, idx.p() * (beta + s)) * 2.0 * cheb_w(idx.n, std::sin(s));
}

cplx e_pl(int p, int l, double beta, double alpha, const CurvatureParam& cp) {
  return std::polar(1.0, p * beta + l * sig(alpha, cp));
}

BoundaryFamilyValues boundary_family(int p, int q, double beta, double alpha, const CurvatureParam& cp) {
  const double root = std::sqrt(sig_prime(alpha, cp));
  const double sign = (p % 2 == 0) ? 1.0 : -1.0;
  BoundaryFamilyValues out{};
  out.e_pl = e_pl(p, 2 * q + 1, beta, alpha, cp);
  out.phi = root * out.e_pl;
  const cplx partner = root * e_pl(p, 2 * (p - q - 1) + 1, beta, alpha, cp);
  out.u = out.phi + sign * partner;
  out.v = out.phi - sign * partner;
  return out;
}

BasisNorms norms(BasisIndex idx, const CurvatureParam& cp) {
  const double k = cp.kappa();
  return {1.0 / (4.0 * (1.0 + k)), pi / ((1.0 - k * k) * (idx.n + 1))};
}

double singular_value(int n, const CurvatureParam& cp) {
  if (n < 0) throw std::invalid_argument("singular_value: negative n");
  return 2.0 * std::sqrt(pi) / (std::sqrt(1.0 - cp.kappa()) * std::sqrt(n + 1.0));
}

}  // namespace gxray
