#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lab/self_map.hpp"

namespace lab {

// Winding number of f along |zeta| = r about w, by trapezoidal argument
// tracking. Sampling starts at min_samples and doubles whenever a step turns
// by more than 3 pi/4 (the aliasing guard); WindingAmbiguous when the guard
// still trips at max_samples, BoundaryRoot when the contour passes through a
// zero of f - w.
int winding_count(const std::function<cplx(cplx)>& f, cplx w, double r, int min_samples = 4096,
                  int max_samples = 1 << 16);

// Same, but reports failure as nullopt instead of throwing (for bisection).
std::optional<int> winding_count_or_null(const std::function<cplx(cplx)>& f, cplx w, double r,
                                         int min_samples = 4096, int max_samples = 1 << 16);

// n(r, w): preimages of w under phi with |zeta| <= r, with multiplicity.
// Algebraically solvable forms go through the root finder (nudging r by
// 1e-12 steps off any root modulus, BoundaryRoot when the budget is spent);
// everything else through winding_count.
int count_preimages(const SelfMap& phi, cplx w, double r);

// Jump radii of r -> n(r, w) over (0, 1), located by bisection on the
// winding count (independent of the root finder), each with its jump size.
// Brackets that the sampling cannot split are finished by a Newton polish of
// the isolated preimage.
struct JumpRadius {
    double rho = 0.0;
    int multiplicity = 0;
};
std::vector<JumpRadius> preimage_moduli_by_winding(const SelfMap& phi, cplx w);

}  // namespace lab
