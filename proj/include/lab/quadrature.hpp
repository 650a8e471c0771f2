#pragma once

#include <functional>
#include <vector>

#include "lab/errors.hpp"

namespace lab {

// Tolerances and budgets shared by the 1D integrators. boundary_offset is
// the distance 1 - r kept from the unit circle when an integral is improper
// at r = 1 and no analytic tail is supplied.
struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_subdivisions = 4000;
    double boundary_offset = 1e-4;

    void validate(const char* op) const;
};

struct Integral {
    double value = 0.0;
    double error = 0.0;  // estimated bound, incl. any truncated-tail bracket
    int panels = 0;
};

using RealFn = std::function<double(double)>;

// Single 15-point Gauss-Legendre panel on [a,b]. Exact through degree 29.
double gauss15(const RealFn& f, double a, double b);

// Composite adaptive Gauss-Legendre on a finite interval. Bisects panels on
// the |coarse - refined| estimate; throws NonConvergence when the
// subdivision budget runs out with the error still above tolerance.
Integral integrate(const RealFn& f, double a, double b, const QuadratureSpec& spec,
                   const char* op = "integrate");

// Bracket [lo,hi] for a truncated tail integral; callers supply one when
// they can bound what lies beyond the cut analytically.
struct TailBracket {
    double lo = 0.0;
    double hi = 0.0;
};
using TailFn = std::function<TailBracket(double r_cut)>;

// ∫_a^b f with b <= 1; an endpoint at 1 is truncated to 1 - boundary_offset
// and the supplied bracket (if any) is folded in as value midpoint + error
// halfwidth.
Integral integrate_radial(const RealFn& f, double a, double b, const QuadratureSpec& spec,
                          const TailFn& tail = nullptr, const char* op = "integrate_radial");

// Aitken extrapolation of F(offset) as offset -> 0 over a decreasing offset
// ladder (default the {1e-3, 3e-4, 1e-4} ladder). Falls back to the last
// value when the differences do not contract.
double extrapolate_offsets(const RealFn& F, const std::vector<double>& offsets = {1e-3, 3e-4, 1e-4});

// Graded dyadic engine for ∫_{r0}^{1} f(r) dr with the integrand supplied in
// u = 1 - r coordinates (g(u) = f(1-u)), so the nodes stay meaningful
// arbitrarily close to the circle. Octave panels [2^-j-1, 2^-j] are summed
// until the running geometric tail bound drops below tolerance; integrands
// whose octave masses do not contract (non-integrable or log-flat without a
// closed tail) raise NonConvergence.
Integral integrate_graded_u(const RealFn& g_of_u, double r0, double abs_tol, double rel_tol,
                            int max_octaves = 360, const char* op = "integrate_graded_u");

}  // namespace lab
