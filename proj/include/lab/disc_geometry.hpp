#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "lab/quadrature.hpp"
#include "lab/radial_weight.hpp"

namespace lab {

using cplx = std::complex<double>;

// pseudohyperbolic distance |(z-w)/(1 - conj(z) w)|
double rho(cplx z, cplx w);

// disc automorphism phi_a(z) = (a - z)/(1 - conj(a) z)
cplx automorphism(cplx a, cplx z);

// The pseudohyperbolic disc Delta(a, r) as a Euclidean disc.
struct PseudoDisc {
    cplx a;
    double r = 0.0;
    cplx center() const;
    double radius() const;
    bool contains(cplx z) const { return rho(a, z) < r; }
};

// Carleson box S(a): |a| <= |z| < 1, |arg z - arg a| <= (1-|a|)/2.
struct CarlesonBox {
    cplx a;
    bool contains(cplx z) const;
};

// w-mass of S(a) under normalized area: (1-|a|)/pi * ∫_{|a|}^1 s w(s) ds.
double box_mass(const RadialWeight& w, cplx a);

struct PolarRect {
    double r_lo = 0.0, r_hi = 0.0;    // [r_lo, r_hi)
    double th_lo = 0.0, th_hi = 0.0;  // [th_lo, th_hi)
    bool contains(cplx z) const;
    double area() const;  // normalized area
};

struct WholeDisc {};

using Region = std::variant<WholeDisc, PseudoDisc, CarlesonBox, PolarRect>;

// ∫_region f dA with dA = dx dy / pi. Radial direction uses graded panels
// toward the circle; the angular direction doubles a uniform rule until
// stable.
Integral integrate_region(const std::function<double(cplx)>& f, const Region& region,
                          const QuadratureSpec& spec);

// Dyadic polar rectangles: level n holds 2^n rectangles over the arcs
// [2 pi k / 2^n, 2 pi (k+1)/2^n) with radial band [1-2^-n, 1-2^-n-1).
// The level-0 rectangle is the central disc, associated with the point 1/2.
struct DyadicRect {
    int level = 0;
    int index = 0;
    PolarRect box;
    cplx center;  // distinguished point z_I
};

class DyadicDecomposition {
public:
    explicit DyadicDecomposition(int max_level);

    int max_level() const { return max_level_; }
    std::size_t size() const { return rects_.size(); }
    const DyadicRect& rect(std::size_t i) const { return rects_[i]; }
    const std::vector<DyadicRect>& rects() const { return rects_; }
    const std::vector<DyadicRect>& level(int n) const { return by_level_[n]; }

    // the unique rectangle containing z; DomainError outside the covered part
    const DyadicRect& locate(cplx z) const;

private:
    int max_level_;
    std::vector<DyadicRect> rects_;
    std::vector<std::vector<DyadicRect>> by_level_;
};

// delta-lattice: a 5*delta net that is uniformly discrete with separation
// delta/5. Deterministic greedy construction on circles with hyperbolic
// spacing; the net and separation properties are verified post-hoc
// (ConstructionFailed otherwise).
struct Lattice {
    double delta = 0.0;
    std::vector<cplx> points;  // ordered by increasing modulus, starts at 0
};

Lattice delta_lattice(double delta, double coverage_radius);

// Sampled function on a polar grid (radii x uniform angles).
struct PolarGrid {
    std::vector<double> radii;
    int n_angles = 0;
    std::vector<double> values;  // radii.size() * n_angles, angle-major rows

    double& at(std::size_t i_r, int j) { return values[i_r * n_angles + j]; }
    double at(std::size_t i_r, int j) const { return values[i_r * n_angles + j]; }
    double angle(int j) const;
    cplx point(std::size_t i_r, int j) const;
};

PolarGrid make_polar_grid(std::vector<double> radii, int n_angles,
                          const std::function<double(cplx)>& f);

// Non-tangential maximal function on the grid: for each grid point zeta the
// sup of |g| over grid points inside the approach region
// { z : |arg zeta - arg z| < (1 - |z|/|zeta|)/2 }, never below |g(zeta)|.
// Grid points with an empty discrete region fall back to |g(zeta)| and are
// counted in empty_regions.
struct NontangentialMax {
    PolarGrid values;
    int empty_regions = 0;
};

NontangentialMax nontangential_max(const PolarGrid& g);

}  // namespace lab
