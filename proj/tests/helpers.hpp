#pragma once

#include "oracles.hpp"

#include <gxray/basis.hpp>
#include <gxray/boundary.hpp>
#include <gxray/grids.hpp>
#include <gxray/xray.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace helpers {

using namespace gxray;

template <class F>
BoundaryGrid fill(const BoundaryGrid& layout, F fn) {
  BoundaryGrid g = layout.blank_like();
  for (int j = 0; j < g.n_beta(); ++j) {
    for (int i = 0; i < g.n_alpha(); ++i) g.at(j, i) = fn(g.beta(j), g.alpha(i));
  }
  return g;
}

template <class F>
DiskGrid fill(const DiskGrid& layout, F fn) {
  DiskGrid f = layout.blank_like(layout.measure());
  for (int i = 0; i < f.n_rho(); ++i) {
    for (int j = 0; j < f.n_omega(); ++j) f.at(i, j) = fn(f.point(i, j));
  }
  return f;
}

template <class G>
double max_diff(const G& a, const G& b) {
  double worst = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) worst = std::max(worst, std::abs(a.values()[n] - b.values()[n]));
  return worst;
}

inline BoundaryGrid minus(const BoundaryGrid& a, const BoundaryGrid& b) {
  BoundaryGrid out = a;
  for (std::size_t n = 0; n < out.size(); ++n) out.values()[n] -= b.values()[n];
  return out;
}

inline BoundaryGrid plus(const BoundaryGrid& a, const BoundaryGrid& b) {
  BoundaryGrid out = a;
  for (std::size_t n = 0; n < out.size(); ++n) out.values()[n] += b.values()[n];
  return out;
}

inline BoundaryGrid scaled(const BoundaryGrid& a, cplx s) {
  BoundaryGrid out = a;
  for (auto& v : out.values()) v *= s;
  return out;
}

inline DiskGrid minus(const DiskGrid& a, const DiskGrid& b) {
  DiskGrid out = a;
  for (std::size_t n = 0; n < out.size(); ++n) out.values()[n] -= b.values()[n];
  return out;
}

// Random coefficients for 0 <= k <= n <= nmax.
inline CoeffTable random_table(oracle::Gen& gen, int nmax) {
  CoeffTable t(nmax);
  for (int n = 0; n <= nmax; ++n) {
    for (int k = 0; k <= n; ++k) t.set({n, k}, gen.complex_normal());
  }
  return t;
}

// w_kappa sum c Zhat as a callable.
inline DiskFunction phantom(const CoeffTable& t, const CurvatureParam& cp) {
  return [t, cp](cplx z) {
    cplx acc = 0.0;
    for (const auto& [idx, c] : t) acc += c * zernike_kappa_hat(idx, z, cp);
    return weight_kappa(z, cp) * acc;
  };
}

inline PQTable random_pq(oracle::Gen& gen, int bound, int count) {
  PQTable t;
  for (int m = 0; m < count; ++m) t[{gen.integer(-bound, bound), gen.integer(-bound, bound)}] = gen.complex_normal();
  return t;
}

}  // namespace helpers
