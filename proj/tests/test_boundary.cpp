#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace gxray;
using helpers::fill;
using helpers::max_diff;

namespace {

double rel_diff(const BoundaryGrid& a, const BoundaryGrid& b) {
  return boundary_norm(helpers::minus(a, b)) / std::max(boundary_norm(b), 1e-300);
}

double sgn(int m) { return m > 0 ? 1.0 : (m < 0 ? -1.0 : 0.0); }

// Random u' expansion restricted to S_A-even data, |p|, |q| <= 5.
BoundaryGrid random_even(oracle::Gen& gen, const BoundaryGrid& layout) {
  return synthesize_pq(helpers::random_pq(gen, 5, 12), PQFamily::u, layout);
}

}  // namespace

TEST_SUITE("boundary") {

TEST_CASE("torus grid") {
  const CurvatureParam cp(0.2);
  CHECK_THROWS_AS(TorusGrid(cp, 8, 12), std::invalid_argument);
  CHECK_THROWS_AS(TorusGrid(cp, 8, 2), std::invalid_argument);
  CHECK_THROWS_AS(TorusGrid(cp, 0, 16), std::invalid_argument);
  const TorusGrid t(cp, 8, 16);
  int inward = 0;
  for (int m = 0; m < 16; ++m) {
    const bool in = std::cos(t.alpha(m)) >= -1e-12;
    CHECK(t.is_inward_node(m) == in);
    inward += in;
  }
  CHECK(inward == 9);
}

TEST_CASE("extension examples") {
  const CurvatureParam cp(0.45);
  const BoundaryFunction one = [](double, double) { return cplx{1.0, 0.0}; };
  const TorusGrid even = extend(one, cp, 8, Parity::even, 64);
  const TorusGrid odd = extend(one, cp, 8, Parity::odd, 64);
  for (int j = 0; j < even.n_beta(); ++j) {
    for (int m = 0; m < even.n_fiber(); ++m) {
      CHECK(std::abs(even.at(j, m) - 1.0) < 1e-13);
      CHECK(std::abs(odd.at(j, m) - (even.is_inward_node(m) ? 1.0 : -1.0)) < 1e-13);
    }
  }
}

TEST_CASE("extension matches the callable form and the scattering relation") {
  oracle::Gen gen(51);
  for (double k : {-0.5, 0.3}) {
    const CurvatureParam cp(k);
    const BoundaryGrid layout(cp, 16, 32);
    const PQTable t = helpers::random_pq(gen, 5, 6);
    auto u = [&](double b, double a) {
      cplx acc = 0.0;
      for (const auto& [pq, c] : t) acc += c * boundary_family(pq.first, pq.second, b, a, cp).u;
      return acc;
    };
    for (Parity parity : {Parity::even, Parity::odd}) {
      const TorusGrid from_grid = extend(fill(layout, u), parity, 256);
      const TorusGrid from_fn = extend(u, cp, 16, parity, 256);
      double worst = 0.0;
      for (std::size_t n = 0; n < from_fn.values().size(); ++n) {
        worst = std::max(worst, std::abs(from_grid.values()[n] - from_fn.values()[n]));
      }
      CHECK(worst < 1e-11);
      const double sign = parity == Parity::even ? 1.0 : -1.0;
      for (int m = 0; m < 256; m += 7) {
        for (int j = 0; j < 16; j += 3) {
          const double beta = from_fn.beta(j);
          const double alpha = from_fn.alpha(m);
          if (from_fn.is_inward_node(m)) {
            CHECK(std::abs(from_fn.at(j, m) - u(beta, wrap_pi(alpha))) < 1e-13);
          } else {
            // the value is +-u at the inward point scattered onto (beta, alpha)
            const double a_in = pi - alpha;
            const FanBeamPoint img = scattering({beta - pi - 2.0 * sig(a_in, cp), a_in}, cp);
            CHECK(oracle::angle_gap(img.beta, beta) < 1e-12);
            CHECK(oracle::angle_gap(img.alpha, alpha) < 1e-12);
            CHECK(std::abs(from_fn.at(j, m) - sign * u(beta - pi - 2.0 * sig(a_in, cp), a_in)) < 1e-13);
          }
        }
      }
    }
  }
}

TEST_CASE("restriction examples") {
  oracle::Gen gen(52);
  const CurvatureParam cp(-0.35);
  const BoundaryGrid layout(cp, 16, 32);
  // v' data extends smoothly by evenness, u' data by oddness
  const BoundaryGrid w = synthesize_pq(helpers::random_pq(gen, 5, 12), PQFamily::v, layout);
  CHECK(rel_diff(restrict_star(extend(w, Parity::even), Parity::even, layout), helpers::scaled(w, 2.0)) < 1e-12);
  const BoundaryGrid u = random_even(gen, layout);
  CHECK(rel_diff(restrict_star(extend(u, Parity::odd), Parity::odd, layout), helpers::scaled(u, 2.0)) < 1e-12);
  CHECK(boundary_norm(restrict_star(extend(u, Parity::odd), Parity::even, layout)) < 1e-12 * boundary_norm(u));

  // fiberwise odd U: A_-^* U is S_A-even
  TorusGrid big(cp, 16, 256);
  std::vector<std::pair<std::pair<int, int>, cplx>> modes;
  for (int r = 0; r < 10; ++r) modes.push_back({{gen.integer(-5, 5), 2 * gen.integer(-6, 5) + 1}, gen.complex_normal()});
  for (int j = 0; j < big.n_beta(); ++j) {
    for (int m = 0; m < big.n_fiber(); ++m) {
      cplx acc = 0.0;
      for (const auto& [pm, c] : modes) acc += c * std::polar(1.0, pm.first * big.beta(j) + pm.second * big.alpha(m));
      big.at(j, m) = acc;
    }
  }
  const BoundaryGrid r = restrict_star(big, Parity::odd, layout);
  CHECK(boundary_norm(r) > 1e-3);
  const BoundaryGrid pulled = pullback_antipodal(r);
  CHECK(rel_diff(pulled, r) < 1e-8);

  CHECK_THROWS_AS(restrict_star(TorusGrid(cp, 8, 64), Parity::odd, layout), std::invalid_argument);
}

TEST_CASE("hilbert transform examples") {
  const CurvatureParam cp(0.0);
  TorusGrid e(cp, 4, 64);
  TorusGrid c(cp, 4, 64);
  for (int j = 0; j < 4; ++j) {
    for (int m = 0; m < 64; ++m) {
      e.at(j, m) = std::polar(1.0, e.alpha(m));
      c.at(j, m) = std::cos(c.alpha(m));
    }
  }
  const TorusGrid he = hilbert(e, HilbertPart::full);
  const TorusGrid hc = hilbert(c, HilbertPart::full);
  const TorusGrid he_even = hilbert(e, HilbertPart::even);
  for (int j = 0; j < 4; ++j) {
    for (int m = 0; m < 64; ++m) {
      CHECK(std::abs(he.at(j, m) - cplx{0.0, -1.0} * e.at(j, m)) < 1e-14);
      CHECK(std::abs(hc.at(j, m) - std::sin(c.alpha(m))) < 1e-14);
      CHECK(std::abs(he_even.at(j, m)) < 1e-15);
    }
  }

  // eigenrelation of phi' on the torus
  for (double k : {-0.5, 0.5}) {
    const CurvatureParam cq(k);
    double worst = 0.0;
    for (int p = -6; p <= 6; ++p) {
      for (int q = -6; q <= 6; ++q) {
        TorusGrid phi(cq, 16, 1024);
        for (int j = 0; j < 16; ++j) {
          for (int m = 0; m < 1024; ++m) phi.at(j, m) = boundary_family(p, q, phi.beta(j), phi.alpha(m), cq).phi;
        }
        const TorusGrid h = hilbert(phi, HilbertPart::full);
        const TorusGrid h_odd = hilbert(phi, HilbertPart::odd);
        const cplx factor{0.0, -sgn(2 * q + 1)};
        for (std::size_t n = 0; n < phi.values().size(); ++n) {
          worst = std::max(worst, std::abs(h.values()[n] - factor * phi.values()[n]));
          worst = std::max(worst, std::abs(h_odd.values()[n] - h.values()[n]));
        }
      }
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("operator spot checks") {
  const CurvatureParam cp(0.5);
  const BoundaryGrid layout(cp, 16, 32);
  for (auto [p, q] : {std::pair{0, 0}, {1, 2}, {-3, 1}, {2, 0}}) {
    CAPTURE(p);
    CAPTURE(q);
    const PQTable t{{{p, q}, 1.0}};
    const BoundaryGrid v = synthesize_pq(t, PQFamily::v, layout);
    const BoundaryGrid u = synthesize_pq(t, PQFamily::u, layout);
    const bool nonzero = q >= 0 && 2 * p < 2 * q + 1;
    const BoundaryGrid expect = nonzero ? helpers::scaled(u, cplx{0.0, -2.0}) : layout.blank_like();
    CHECK(max_diff(p_minus(v), expect) < 1e-7);
    CHECK(p_minus_singular_factor(p, q) == (nonzero ? cplx{0.0, -2.0} : cplx{}));
  }
  const std::array<std::pair<std::pair<int, int>, cplx>, 3> eig{{{{4, 1}, {0.0, -1.0}}, {{-4, -2}, {0.0, 1.0}}, {{1, 1}, 0.0}}};
  for (const auto& [pq, lam] : eig) {
    const PQTable t{{pq, 1.0}};
    const BoundaryGrid u = synthesize_pq(t, PQFamily::u, layout);
    CHECK(boundary_norm(u) > 0.1);
    CHECK(max_diff(c_minus(u), helpers::scaled(u, lam)) < 1e-7);
    CHECK(c_minus_eigenvalue(pq.first, pq.second) == lam);
  }

  // S_A-odd inputs in the domain of C_- are annihilated; A_-^* of a fiberwise even U is one
  oracle::Gen gen(53);
  const BoundaryGrid fine(cp, 16, 64);
  TorusGrid big(cp, 16, 256);
  std::vector<std::pair<std::pair<int, int>, cplx>> modes;
  for (int r = 0; r < 8; ++r) modes.push_back({{gen.integer(-4, 4), 2 * gen.integer(-2, 2)}, gen.complex_normal()});
  for (int j = 0; j < big.n_beta(); ++j) {
    for (int m = 0; m < big.n_fiber(); ++m) {
      cplx acc = 0.0;
      for (const auto& [pm, c] : modes) acc += c * std::polar(1.0, pm.first * big.beta(j) + pm.second * big.alpha(m));
      big.at(j, m) = acc;
    }
  }
  const BoundaryGrid w_odd = restrict_star(big, Parity::odd, fine);
  CHECK(classify(w_odd).antipodal == Parity::odd);
  CHECK(classify(w_odd).defect < 1e-8);
  CHECK(max_diff(c_minus(w_odd), fine.blank_like()) < 1e-8 * max_diff(w_odd, fine.blank_like()));
}

TEST_CASE("grid operators follow the spectral rules") {
  oracle::Gen gen(54);
  for (double k : {-0.5, 0.0, 0.5}) {
    CAPTURE(k);
    const CurvatureParam cp(k);
    const BoundaryGrid layout(cp, 16, 32);
    for (int trial = 0; trial < 3; ++trial) {
      const PQTable t = helpers::random_pq(gen, 5, 10);
      const BoundaryGrid u = synthesize_pq(t, PQFamily::u, layout);
      const BoundaryGrid v = synthesize_pq(t, PQFamily::v, layout);
      const BoundaryGrid cu = c_minus(u);
      const BoundaryGrid pv = p_minus(v);
      CHECK(boundary_norm(helpers::minus(cu, synthesize_pq(c_minus_spectral(t), PQFamily::u, layout))) <
            1e-6 * boundary_norm(u));
      CHECK(boundary_norm(helpers::minus(pv, synthesize_pq(p_minus_spectral(t), PQFamily::u, layout))) <
            1e-6 * boundary_norm(v));
      // P_- output is S_A-even
      CHECK(rel_diff(pullback_antipodal(pv), pv) < 1e-8);
      // C_- P_- = 0
      CHECK(boundary_norm(c_minus(pv)) < 1e-7 * boundary_norm(v));
    }
  }
}

TEST_CASE("operators at strong curvature with a finer fiber") {
  const CurvatureParam cp(0.9);
  const BoundaryGrid layout(cp, 16, 32);
  oracle::Gen gen(55);
  const PQTable t = helpers::random_pq(gen, 5, 6);
  const BoundaryGrid u = synthesize_pq(t, PQFamily::u, layout);
  const BoundaryGrid expect = synthesize_pq(c_minus_spectral(t), PQFamily::u, layout);
  CHECK(boundary_norm(helpers::minus(c_minus(u, 4096), expect)) < 1e-6 * boundary_norm(u));
}

TEST_CASE("full hilbert splits into even and odd parts") {
  oracle::Gen gen(56);
  const CurvatureParam cp(0.25);
  const BoundaryGrid layout(cp, 16, 32);
  const BoundaryGrid w = random_even(gen, layout);
  const BoundaryGrid whole = restrict_star(hilbert(extend(w, Parity::even), HilbertPart::full), Parity::odd, layout);
  CHECK(rel_diff(helpers::plus(p_plus(w), p_minus(w)), whole) < 1e-12);
  const BoundaryGrid whole_c =
      helpers::scaled(restrict_star(hilbert(extend(w, Parity::odd), HilbertPart::full), Parity::odd, layout), 0.5);
  CHECK(rel_diff(helpers::plus(c_plus(w), c_minus(w)), whole_c) < 1e-12);
}

TEST_CASE("range projection") {
  oracle::Gen gen(57);
  const CurvatureParam cp(0.4);
  const BoundaryGrid layout(cp, 16, 32);

  const BoundaryGrid in_range = sinogram(helpers::phantom(helpers::random_table(gen, 4), cp), layout);
  const Projection p = project_to_range(in_range);
  CHECK(rel_diff(p.projected, in_range) < 1e-6);
  CHECK(p.relative_change < 1e-6);
  CHECK(p.removed_odd_norm < 1e-8 * boundary_norm(in_range));

  const BoundaryGrid cokernel = synthesize_pq({{{4, 1}, 1.0}}, PQFamily::u, layout);
  CHECK(boundary_norm(project_to_range(cokernel).projected) < 1e-6 * boundary_norm(cokernel));

  const BoundaryGrid u = random_even(gen, layout);
  const BoundaryGrid once = project_to_range(u).projected;
  const BoundaryGrid twice = project_to_range(once).projected;
  CHECK(boundary_norm(helpers::minus(twice, once)) < 1e-8 * boundary_norm(u));

  // the odd part is removed and reported
  const BoundaryGrid odd = synthesize_pq(helpers::random_pq(gen, 5, 6), PQFamily::v, layout);
  const Projection mixed = project_to_range(helpers::plus(u, odd));
  CHECK(mixed.removed_odd_norm == doctest::Approx(boundary_norm(odd)).epsilon(1e-8));
  CHECK(boundary_norm(helpers::minus(mixed.projected, once)) < 1e-8 * boundary_norm(u));

  // self-adjoint on S_A-even data
  const BoundaryGrid a = random_even(gen, layout);
  const BoundaryGrid b = random_even(gen, layout);
  const cplx ab = boundary_inner(project_to_range(a).projected, b);
  const cplx ba = boundary_inner(a, project_to_range(b).projected);
  CHECK(std::abs(ab - ba) < 1e-8 * boundary_norm(a) * boundary_norm(b));

  // the projection lands in the range
  const MomentReport rep = moment_residuals(once, 6, 3);
  CHECK(rep.max_abs < 1e-6 * rep.u_norm);

  const Projection zero = project_to_range(layout.blank_like());
  CHECK(boundary_norm(zero.projected) == 0.0);
}

TEST_CASE("moment residuals") {
  const CurvatureParam cp(0.35);
  const BoundaryGrid layout(cp, 32, 32);
  const BoundaryGrid g =
      sinogram([&](cplx z) { return weight_kappa(z, cp) * zernike_kappa_hat({2, 1}, z, cp); }, layout);
  const MomentReport rep = moment_residuals(g, 6, 3);
  CHECK(rep.entries.size() == 7 * 6);
  CHECK(rep.max_abs < 1e-7 * rep.u_norm);
  CHECK(rep.in_range);

  const BoundaryGrid psi = fill(layout, [&](double b, double a) { return psi_kappa({3, -1}, b, a, cp); });
  const MomentReport one = moment_residuals(psi, 6, 3);
  CHECK_FALSE(one.in_range);
  for (const auto& e : one.entries) {
    if (e.index == BasisIndex{3, -1}) {
      CHECK(e.abs_inner == doctest::Approx(1.0 / (4.0 * (1.0 + 0.35))).epsilon(1e-10));
    } else {
      CHECK(e.abs_inner < 1e-12);
    }
  }

  const MomentReport zero = moment_residuals(layout.blank_like(), 4, 2);
  CHECK(zero.max_abs == 0.0);
  CHECK(zero.in_range);
  CHECK_THROWS_AS(moment_residuals(g, 4, 0), std::invalid_argument);
}

TEST_CASE("antipodal pullback and classification") {
  oracle::Gen gen(58);
  const CurvatureParam cp(-0.6);
  const BoundaryGrid layout(cp, 16, 32);
  const BoundaryGrid psi = fill(layout, [&](double b, double a) { return psi_kappa({4, 5}, b, a, cp); });
  CHECK(rel_diff(pullback_antipodal(psi), psi) < 1e-12);

  const BoundaryGrid even = random_even(gen, layout);
  const BoundaryGrid odd = synthesize_pq(helpers::random_pq(gen, 5, 6), PQFamily::v, layout);
  const SymmetryClass ce = classify(even);
  const SymmetryClass co = classify(odd);
  CHECK(ce.antipodal == Parity::even);
  CHECK(ce.defect < 1e-12);
  CHECK(co.antipodal == Parity::odd);
  CHECK(co.defect < 1e-12);

  const SymmetrySplit parts = split_antipodal(helpers::plus(even, odd));
  CHECK(rel_diff(parts.even, even) < 1e-12);
  CHECK(rel_diff(parts.odd, odd) < 1e-12);
  // applying the pullback twice is the identity
  CHECK(rel_diff(pullback_antipodal(pullback_antipodal(odd)), odd) < 1e-12);
}

TEST_CASE("boundary kernels match serial execution") {
  oracle::Gen gen(59);
  const CurvatureParam cp(0.15);
  const BoundaryGrid layout(cp, 16, 24);
  const BoundaryGrid u = random_even(gen, layout);
  const TorusGrid ep = extend(u, Parity::odd, 256, Exec::parallel);
  const TorusGrid es = extend(u, Parity::odd, 256, Exec::serial);
  CHECK(std::equal(ep.values().begin(), ep.values().end(), es.values().begin()));
  const TorusGrid hp = hilbert(ep, HilbertPart::odd, Exec::parallel);
  const TorusGrid hs = hilbert(ep, HilbertPart::odd, Exec::serial);
  CHECK(std::equal(hp.values().begin(), hp.values().end(), hs.values().begin()));
  CHECK(max_diff(restrict_star(hp, Parity::odd, layout, Exec::parallel), restrict_star(hp, Parity::odd, layout, Exec::serial)) ==
        0.0);
  CHECK(max_diff(c_minus(u, 256, Exec::parallel), c_minus(u, 256, Exec::serial)) == 0.0);
}

}  // TEST_SUITE
