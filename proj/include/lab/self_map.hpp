#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lab {

using cplx = std::complex<double>;

// An analytic self-map of the disc in one of the supported closed forms.
// Construction validates |phi| <= 1 + 1e-9 on a boundary sample grid.
class SelfMap {
public:
    SelfMap() = default;

    static SelfMap identity();
    static SelfMap polynomial(std::vector<cplx> coeffs);
    static SelfMap moebius(cplx a);          // (a - z)/(1 - conj(a) z)
    static SelfMap affine(cplx s, cplx c);   // s z + c
    static SelfMap lens(double gamma);       // 1 - (1-z)^gamma, 0 < gamma < 1
    static SelfMap blaschke(std::vector<cplx> zeros);  // product of (a_k - z)/(1 - conj(a_k) z)
    static SelfMap compose(std::vector<SelfMap> outer_to_inner);

    cplx operator()(cplx z) const;
    cplx derivative(cplx z) const;
    cplx at_zero() const;
    double boundary_margin() const;  // sup |phi| on the |z| = 1 - 1e-6 sample circle
    const std::string& describe() const;

    // phi(z) - w as a polynomial equation num(z) - w den(z) = 0, available
    // for the algebraically solvable forms.
    struct RationalForm {
        std::vector<cplx> num, den;
    };
    const std::optional<RationalForm>& rational() const;
    bool has_preimage_enumeration() const { return rational().has_value(); }
    // all preimages of w inside the open disc, with multiplicity
    std::vector<cplx> preimages(cplx w) const;

    // closed-form inverse for the univalent forms (moebius, affine, lens,
    // and compositions of such); empty when w has no preimage in the disc
    bool has_analytic_inverse() const;
    std::optional<cplx> inverse(cplx w) const;

    bool valid() const { return impl_ != nullptr; }

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    explicit SelfMap(std::shared_ptr<Impl> p);
};

}  // namespace lab
