#pragma once

#include <complex>
#include <vector>

namespace lab {

using cplx = std::complex<double>;

// All complex roots of c[0] + c[1] z + ... + c[d] z^d by Aberth-Ehrlich
// simultaneous iteration, with a deflation fallback for stragglers. Degrees
// 1 and 2 go through stable closed forms.
std::vector<cplx> polynomial_roots(std::vector<cplx> coeffs);

// Horner value of the polynomial at z.
cplx polynomial_eval(const std::vector<cplx>& coeffs, cplx z);

// Newton refinement of a nearby root of f (with derivative df); returns the
// refined point, or z0 unchanged if the iteration does not contract.
cplx newton_polish(const std::function<cplx(cplx)>& f, const std::function<cplx(cplx)>& df,
                   cplx z0, int max_iter = 40);

}  // namespace lab
