#pragma once

#include <gxray/basis.hpp>
#include <gxray/common.hpp>
#include <gxray/grids.hpp>
#include <gxray/xray.hpp>

#include <map>
#include <utility>
#include <vector>

namespace gxray {

enum class Parity { even, odd };
enum class HilbertPart { full, even, odd };

inline constexpr int default_fiber_fft = 1024;

// A_+ / A_- : extension to the whole torus by +-u(S(x, v)) on outward nodes.
TorusGrid extend(const BoundaryGrid& u, Parity parity, int n_fiber = default_fiber_fft, Exec exec = Exec::parallel);
TorusGrid extend(const BoundaryFunction& u, const CurvatureParam& cp, int n_beta, Parity parity,
                 int n_fiber = default_fiber_fft);

// Fiberwise multiplier -i sign(m); `even` / `odd` keep only those fiber modes.
TorusGrid hilbert(const TorusGrid& u, HilbertPart part, Exec exec = Exec::parallel);

// A_+^* / A_-^* : U(x, v) +- U(S(x, v)) on the inward nodes of `layout`.
BoundaryGrid restrict_star(const TorusGrid& u, Parity parity, const BoundaryGrid& layout, Exec exec = Exec::parallel);

// P_+- = A_-^* H_+- A_+ and C_+- = 1/2 A_-^* H_+- A_-, each applied to the S_A part it acts on
// (w_- for P_-, w_+ for P_+ and C_-, w_- for C_+).
BoundaryGrid p_minus(const BoundaryGrid& w, int n_fiber = default_fiber_fft, Exec exec = Exec::parallel);
BoundaryGrid p_plus(const BoundaryGrid& w, int n_fiber = default_fiber_fft, Exec exec = Exec::parallel);
BoundaryGrid c_minus(const BoundaryGrid& u, int n_fiber = default_fiber_fft, Exec exec = Exec::parallel);
BoundaryGrid c_plus(const BoundaryGrid& u, int n_fiber = default_fiber_fft, Exec exec = Exec::parallel);

// Expansions over u'_{p,q} or v'_{p,q}, keyed by (p, q).
using PQTable = std::map<std::pair<int, int>, cplx>;
enum class PQFamily { u, v };

// Sum of c_{p,q} u'_{p,q} (or v'_{p,q}) on the layout.
BoundaryGrid synthesize_pq(const PQTable& c, PQFamily family, const BoundaryGrid& layout);

// Closed-form action on coefficient tables: the result is an expansion over u'.
//   C_- u'_{p,q} = -i/2 (sgn(2q+1) + sgn(2p-2q-1)) u'_{p,q}
//   P_- v'_{p,q} = -i (sgn(2q+1) - sgn(2p-2q-1)) u'_{p,q}
PQTable c_minus_spectral(const PQTable& u_coeffs);
PQTable p_minus_spectral(const PQTable& v_coeffs);
cplx c_minus_eigenvalue(int p, int q);
cplx p_minus_singular_factor(int p, int q);

// (S_A^* u)(beta, alpha) = u(beta + pi + 2 s(alpha), -alpha).
BoundaryGrid pullback_antipodal(const BoundaryGrid& u);

struct SymmetrySplit {
  BoundaryGrid even;  // (u + S_A^* u) / 2
  BoundaryGrid odd;   // (u - S_A^* u) / 2
};
SymmetrySplit split_antipodal(const BoundaryGrid& u);

struct SymmetryClass {
  Parity antipodal;  // parity under S_A^*
  double defect;     // || u -+ S_A^* u || / || u || for the reported parity
};
SymmetryClass classify(const BoundaryGrid& u);

struct Projection {
  BoundaryGrid projected;
  double removed_odd_norm = 0.0;  // || odd part || removed before projecting
  double relative_change = 0.0;   // || u_even - proj || / || u_even ||
};
// u + C_-(C_- u) after removing the S_A^*-odd part.
Projection project_to_range(const BoundaryGrid& u, int n_fiber = default_fiber_fft, Exec exec = Exec::parallel);

struct MomentEntry {
  BasisIndex index;
  double abs_inner;
};

struct MomentReport {
  std::vector<MomentEntry> entries;
  double max_abs = 0.0;
  double u_norm = 0.0;
  double threshold = 0.0;  // relative to || u ||
  bool in_range = true;
};

// |<u, psi_{n,k}>| for n <= nmax and k in [-kpad, n + kpad] outside [0, n].
MomentReport moment_residuals(const BoundaryGrid& u, int nmax, int kpad, double threshold = 1e-6);

}  // namespace gxray
