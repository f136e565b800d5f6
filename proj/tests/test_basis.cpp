#include "oracles.hpp"

#include <gxray/basis.hpp>
#include <gxray/fft.hpp>
#include <gxray/grids.hpp>
#include <gxray/xray.hpp>

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace gxray;

namespace {

cplx sgn_pow(int n) { return n % 2 == 0 ? 1.0 : -1.0; }

// Composite Gauss-Legendre on [a, b].
struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

Rule composite(double a, double b, int panels, int nodes) {
  std::vector<double> gx;
  std::vector<double> gw;
  oracle::gauss_legendre(nodes, gx, gw);
  Rule r;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    for (int i = 0; i < nodes; ++i) {
      r.x.push_back(a + h * (p + 0.5 * (gx[i] + 1.0)));
      r.w.push_back(0.5 * h * gw[i]);
    }
  }
  return r;
}

}  // namespace

TEST_SUITE("basis") {

TEST_CASE("chebyshev recursion") {
  CHECK(cheb_w(0, 0.7) == cplx{1.0, 0.0});
  CHECK(std::abs(cheb_w(1, 0.3) - cplx{0.0, 0.6}) < 1e-15);
  CHECK(std::abs(cheb_w(2, 0.5)) < 1e-15);
  CHECK_THROWS_AS(cheb_w(-1, 0.0), std::invalid_argument);
  oracle::Gen gen(21);
  for (int m = 0; m < 50; ++m) {
    const int n = gen.integer(0, 10);
    const double t = gen.uniform(-0.99, 0.99);
    CHECK(std::abs(cheb_w(n, -t) - sgn_pow(n) * cheb_w(n, t)) < 1e-12);
    const double phi = std::acos(t);
    const double u = std::sin((n + 1) * phi) / std::sin(phi);
    const cplx in = std::pow(cplx{0.0, 1.0}, n);
    CHECK(std::abs(cheb_w(n, t) - in * u) < 1e-11);
  }
}

TEST_CASE("index conventions") {
  oracle::Gen gen(22);
  for (int m = 0; m < 100; ++m) {
    const BasisIndex idx{gen.integer(0, 20), gen.integer(-20, 20)};
    const BasisIndex back = BasisIndex::from_pq(idx.p(), idx.q());
    CHECK(back == idx);
  }
  CHECK_THROWS_AS(BasisIndex::from_pq(3, 1), std::invalid_argument);
  CHECK(BasisIndex{2, 1}.in_disk_range());
  CHECK_FALSE(BasisIndex{2, 3}.in_disk_range());
  CHECK_FALSE(BasisIndex{2, -1}.in_disk_range());
}

TEST_CASE("coefficient table") {
  CoeffTable t(3);
  t.set({3, 1}, 2.0);
  t.set({0, 0}, cplx{0.0, 1.0});
  t.set({2, 2}, -1.0);
  CHECK(t.size() == 3);
  CHECK(t.norm_sq() == doctest::Approx(6.0));
  CHECK(t.get({1, 0}) == cplx{});
  CHECK(t.contains({3, 1}));
  std::vector<BasisIndex> order;
  for (const auto& [idx, c] : t) order.push_back(idx);
  CHECK(order == std::vector<BasisIndex>{{0, 0}, {2, 2}, {3, 1}});
  CHECK_THROWS_AS(t.set({4, 0}, 1.0), std::out_of_range);
  CHECK_THROWS_AS(CoeffTable(-1), std::invalid_argument);
}

TEST_CASE("zernike examples") {
  const cplx z = std::polar(0.5, 0.2);
  CHECK(std::abs(zernike({3, 0}, z) - z * z * z) < 1e-15);
  for (int n = 0; n <= 8; ++n) {
    for (int k = 0; k <= n; ++k) {
      CHECK(std::abs(zernike({n, k}, 1.0) - sgn_pow(k)) < 1e-12);
      const double w = 0.37 * (n + 1);
      CHECK(std::abs(zernike({n, k}, std::polar(1.0, w)) - sgn_pow(k) * std::polar(1.0, (n - 2 * k) * w)) < 1e-12);
    }
  }
  oracle::Gen gen(23);
  for (int m = 0; m < 100; ++m) {
    const int n = gen.integer(0, 8);
    const int k = gen.integer(0, n);
    const cplx zz = gen.in_disk(1.0);
    CHECK(std::abs(zernike({n, n - k}, zz) - sgn_pow(n) * std::conj(zernike({n, k}, zz))) < 1e-13);
  }
  CHECK_THROWS_AS(zernike({2, 3}, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(zernike({2, -1}, 0.1), std::invalid_argument);
}

TEST_CASE("zernike agrees with the quadrature definition") {
  oracle::Gen gen(24);
  for (int n = 0; n <= 12; ++n) {
    for (int k = 0; k <= n; ++k) {
      const cplx z = gen.in_disk(1.0);
      CHECK(std::abs(zernike({n, k}, z) - oracle::zernike(n, k, z)) < 1e-12);
    }
  }
}

TEST_CASE("cauchy-riemann chain") {
  oracle::Gen gen(25);
  for (int n = 0; n <= 6; ++n) {
    const cplx z = gen.in_disk(0.8);
    auto zk = [n](int k) { return [n, k](cplx w) { return zernike({n, k}, w); }; };
    for (int k = 0; k < n; ++k) {
      CHECK(std::abs(oracle::d_dz(zk(k), z) + oracle::d_dzbar(zk(k + 1), z)) < 1e-6);
    }
    CHECK(std::abs(oracle::d_dzbar(zk(0), z)) < 1e-6);
    CHECK(std::abs(oracle::d_dz(zk(n), z)) < 1e-6);
  }
}

TEST_CASE("zernike boundary recursion") {
  for (int n = 2; n <= 10; ++n) {
    for (int k = 1; k <= n - 1; ++k) {
      const cplx lhs = zernike({n, k}, 1.0);
      const cplx rhs = zernike({n - 2, k - 1}, 1.0) - zernike({n - 1, k - 1}, 1.0) + zernike({n - 1, k}, 1.0);
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
}

TEST_CASE("euclidean zernike gram matrix") {
  const Rule r = composite(0.0, 1.0, 1, 24);
  const int m_omega = 64;
  std::vector<std::vector<cplx>> vals;
  std::vector<int> ns;
  for (int n = 0; n <= 8; ++n) {
    for (int k = 0; k <= n; ++k) {
      std::vector<cplx> v;
      for (double rho : r.x) {
        for (int j = 0; j < m_omega; ++j) v.push_back(zernike({n, k}, std::polar(rho, two_pi * j / m_omega)));
      }
      vals.push_back(std::move(v));
      ns.push_back(n);
    }
  }
  double worst = 0.0;
  for (std::size_t a = 0; a < vals.size(); ++a) {
    for (std::size_t b = 0; b < vals.size(); ++b) {
      cplx acc = 0.0;
      for (std::size_t i = 0; i < r.x.size(); ++i) {
        for (int j = 0; j < m_omega; ++j) {
          const std::size_t at = i * m_omega + j;
          acc += r.w[i] * r.x[i] * two_pi / m_omega * vals[a][at] * std::conj(vals[b][at]);
        }
      }
      const double expect = a == b ? pi / (ns[a] + 1) : 0.0;
      worst = std::max(worst, std::abs(acc - expect));
    }
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("deformed zernike") {
  oracle::Gen gen(26);
  const CurvatureParam flat(0.0);
  for (int m = 0; m < 50; ++m) {
    const int n = gen.integer(0, 8);
    const int k = gen.integer(0, n);
    const cplx z = gen.in_disk(1.0);
    CHECK(std::abs(zernike_kappa({n, k}, z, flat) - zernike({n, k}, z)) < 1e-14);
    const double kap = gen.kappa();
    const CurvatureParam cp(kap);
    const double root = std::sqrt((1.0 - kap) / (1.0 + kap));
    CHECK(std::abs(zernike_kappa({n, k}, 0.0, cp) - root * zernike({n, k}, 0.0)) < 1e-14);
    const double w = gen.uniform(0.0, two_pi);
    const cplx edge = zernike_kappa({n, k}, std::polar(1.0, w), cp);
    CHECK(std::abs(edge - std::sqrt((1.0 + kap) / (1.0 - kap)) * sgn_pow(k) * std::polar(1.0, (n - 2 * k) * w)) < 1e-12);
  }
  const CurvatureParam half(0.5);
  for (int n = 0; n <= 4; ++n) {
    for (int k = 0; k <= n; ++k) {
      CHECK(std::abs(zernike_kappa({n, k}, 0.0, half) - std::sqrt(1.0 / 3.0) * zernike({n, k}, 0.0)) < 1e-15);
    }
  }
}

TEST_CASE("deformed zernike orthogonality") {
  const Rule r = composite(0.0, 1.0, 8, 24);
  const int m_omega = 48;
  for (double kap : {-0.9, -0.5, 0.5, 0.9}) {
    CAPTURE(kap);
    const CurvatureParam cp(kap);
    std::vector<std::vector<cplx>> vals;
    std::vector<int> ns;
    for (int n = 0; n <= 8; ++n) {
      for (int k = 0; k <= n; ++k) {
        std::vector<cplx> v;
        for (double rho : r.x) {
          for (int j = 0; j < m_omega; ++j) v.push_back(zernike_kappa({n, k}, std::polar(rho, two_pi * j / m_omega), cp));
        }
        vals.push_back(std::move(v));
        ns.push_back(n);
      }
    }
    std::vector<double> weight;
    for (std::size_t i = 0; i < r.x.size(); ++i) {
      const double kr2 = kap * r.x[i] * r.x[i];
      weight.push_back(r.w[i] * r.x[i] * two_pi / m_omega / ((1.0 + kr2) * (1.0 - kr2)));
    }
    double worst = 0.0;
    for (std::size_t a = 0; a < vals.size(); ++a) {
      for (std::size_t b = a; b < vals.size(); ++b) {
        cplx acc = 0.0;
        for (std::size_t i = 0; i < r.x.size(); ++i) {
          for (int j = 0; j < m_omega; ++j) {
            const std::size_t at = i * m_omega + j;
            acc += weight[i] * vals[a][at] * std::conj(vals[b][at]);
          }
        }
        const double expect = a == b ? pi / ((1.0 - kap * kap) * (ns[a] + 1)) : 0.0;
        if (a == b) CHECK(norms({ns[a], 0}, cp).zk_norm_sq == doctest::Approx(expect).epsilon(1e-15));
        worst = std::max(worst, std::abs(acc - expect));
      }
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("boundary functions") {
  CHECK(std::abs(psi_kappa({0, 0}, 0.0, 0.0, CurvatureParam(0.0)) - 1.0 / (2.0 * pi)) < 1e-16);
  oracle::Gen gen(27);
  const CurvatureParam flat(0.0);
  for (int m = 0; m < 200; ++m) {
    const int n = gen.integer(0, 8);
    const int k = gen.integer(-3, n + 3);
    const double beta = gen.uniform(0.0, two_pi);
    const double alpha = gen.uniform(-half_pi, half_pi);
    CHECK(std::abs(psi_kappa({n, k}, beta, alpha, flat) - oracle::psi_euclid(n, k, beta, alpha)) < 1e-14);

    const CurvatureParam cp(gen.kappa());
    const FanBeamPoint sa = antipodal_scattering({beta, alpha}, cp);
    const cplx here = psi_kappa({n, k}, beta, alpha, cp);
    CHECK(std::abs(psi_kappa({n, k}, sa.beta, sa.alpha, cp) - here) < 1e-13);

    const BasisIndex idx{n, k};
    const BoundaryFamilyValues fam = boundary_family(idx.p(), idx.q(), beta, alpha, cp);
    CHECK(std::abs(here - sgn_pow(n) / (4.0 * pi) * fam.u) < 1e-14);
    CHECK(std::abs(psi_kappa_hat(idx, beta, alpha, cp) - 2.0 * std::sqrt(1.0 + cp.kappa()) * here) < 1e-14);

    if (std::abs(alpha) < 1.5) {
      const cplx over = psi_over_mu(idx, beta, alpha, cp);
      CHECK(std::abs(over - here / std::cos(alpha)) < 1e-12 * (1.0 + std::abs(over)));
    }
  }
  const CurvatureParam cp(0.6);
  for (int n = 0; n <= 4; ++n) CHECK(std::isfinite(std::abs(psi_over_mu({n, 1}, 0.3, half_pi, cp))));
}

TEST_CASE("boundary family redundancies") {
  oracle::Gen gen(28);
  for (int m = 0; m < 200; ++m) {
    const CurvatureParam cp(gen.kappa());
    const int p = gen.integer(-8, 8);
    const int q = gen.integer(-8, 8);
    const double beta = gen.uniform(0.0, two_pi);
    const double alpha = gen.uniform(-half_pi, half_pi);
    const BoundaryFamilyValues a = boundary_family(p, q, beta, alpha, cp);
    const BoundaryFamilyValues b = boundary_family(p, p - q - 1, beta, alpha, cp);
    CHECK(std::abs(a.u - sgn_pow(p) * b.u) < 1e-13);
    CHECK(std::abs(a.v + sgn_pow(p) * b.v) < 1e-13);
    CHECK(std::abs(a.phi - std::sqrt(sig_prime(alpha, cp)) * a.e_pl) < 1e-14);
    const BoundaryFamilyValues flat = boundary_family(p, q, beta, alpha, CurvatureParam(0.0));
    CHECK(std::abs(flat.phi - std::polar(1.0, p * beta + (2 * q + 1) * alpha)) < 1e-13);
  }
}

TEST_CASE("boundary family orthogonality in dSigma^2") {
  const Rule ra = composite(-half_pi, half_pi, 64, 20);
  const int m_beta = 32;
  for (double kap : {-0.9, 0.0, 0.3, 0.9}) {
    CAPTURE(kap);
    const CurvatureParam cp(kap);
    std::vector<std::vector<cplx>> vals;
    for (int n = 0; n <= 8; ++n) {
      for (int k = -2; k <= n + 2; ++k) {
        std::vector<cplx> v;
        for (int j = 0; j < m_beta; ++j) {
          for (double a : ra.x) v.push_back(psi_kappa({n, k}, two_pi * j / m_beta, a, cp));
        }
        vals.push_back(std::move(v));
      }
    }
    const double expect_norm = 1.0 / (4.0 * (1.0 + kap));
    CHECK(norms({3, 7}, cp).psi_norm_sq == doctest::Approx(expect_norm));
    double worst = 0.0;
    for (std::size_t a = 0; a < vals.size(); ++a) {
      for (std::size_t b = a; b < vals.size(); ++b) {
        cplx acc = 0.0;
        for (int j = 0; j < m_beta; ++j) {
          for (std::size_t i = 0; i < ra.x.size(); ++i) {
            const std::size_t at = j * ra.x.size() + i;
            acc += ra.w[i] * vals[a][at] * std::conj(vals[b][at]);
          }
        }
        acc *= two_pi / m_beta / (1.0 + kap);
        worst = std::max(worst, std::abs(acc - (a == b ? expect_norm : 0.0)));
      }
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("fiber hilbert transform of phi'") {
  const int m = 1024;
  const CurvatureParam cp(0.5);
  double worst = 0.0;
  for (int p = -6; p <= 6; ++p) {
    for (int q = -6; q <= 6; ++q) {
      std::vector<cplx> v(m);
      std::vector<cplx> ref(m);
      for (int j = 0; j < m; ++j) {
        v[j] = boundary_family(p, q, 0.4, two_pi * j / m, cp).phi;
        ref[j] = cplx{0.0, -1.0} * double(2 * q + 1 > 0 ? 1 : -1) * v[j];
      }
      detail::fft_inplace(v, -1);
      for (int b = 0; b < m; ++b) {
        const int mode = detail::signed_mode(b, m);
        const double s = detail::is_nyquist(b, m) ? 0.0 : (mode > 0 ? 1.0 : (mode < 0 ? -1.0 : 0.0));
        v[b] *= cplx{0.0, -s} / double(m);
      }
      detail::fft_inplace(v, 1);
      for (int j = 0; j < m; ++j) worst = std::max(worst, std::abs(v[j] - ref[j]));
    }
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("norms and singular values") {
  CHECK(norms({4, 2}, CurvatureParam(0.0)).psi_norm_sq == doctest::Approx(0.25));
  CHECK(norms({0, 0}, CurvatureParam(0.0)).zk_norm_sq == doctest::Approx(pi));
  CHECK(norms({3, 1}, CurvatureParam(0.5)).zk_norm_sq == doctest::Approx(pi / 3.0));
  CHECK(singular_value(0, CurvatureParam(0.0)) == doctest::Approx(2.0 * std::sqrt(pi)));
  CHECK(singular_value(0, CurvatureParam(0.0)) == doctest::Approx(3.5449).epsilon(1e-4));
  CHECK(singular_value(3, CurvatureParam(0.5)) == doctest::Approx(2.5066).epsilon(1e-4));
  CHECK_THROWS_AS(singular_value(-1, CurvatureParam(0.0)), std::invalid_argument);

  const CurvatureParam cp(-0.3);
  const auto triples = singular_values(7, cp);
  CHECK(triples.size() == 36);
  for (std::size_t i = 1; i < triples.size(); ++i) {
    CHECK(triples[i].sigma > 0.0);
    if (triples[i].index.n > triples[i - 1].index.n) CHECK(triples[i].sigma < triples[i - 1].sigma);
    if (triples[i].index.n == triples[i - 1].index.n) CHECK(triples[i].sigma == triples[i - 1].sigma);
  }
  const auto five = singular_values(5, cp);
  double s50 = 0.0;
  double s55 = 0.0;
  for (const auto& t : five) {
    if (t.index == BasisIndex{5, 0}) s50 = t.sigma;
    if (t.index == BasisIndex{5, 5}) s55 = t.sigma;
  }
  CHECK(s50 == s55);
  const SvdTriple& t = five.back();
  CHECK(std::abs(t.left(0.2, 0.3) - psi_kappa_hat(t.index, 0.2, 0.3, cp)) < 1e-15);
  CHECK(std::abs(t.right(0.1) - zernike_kappa_hat(t.index, 0.1, cp)) < 1e-15);
  CHECK_THROWS_AS(singular_values(-1, cp), std::invalid_argument);
}

TEST_CASE("radial cache under concurrent readers") {
  std::vector<double> got(64, 0.0);
#pragma omp parallel for
  for (int i = 0; i < 64; ++i) got[i] = radial_profile(20 + i % 4, i % 5, 0.7);
  for (int i = 0; i < 64; ++i) {
    CHECK(got[i] == doctest::Approx(oracle::zernike_radial(20 + i % 4, i % 5, 0.7).real()).epsilon(1e-10));
  }
}

}  // TEST_SUITE
