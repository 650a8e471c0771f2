#include "lab/self_map.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "lab/errors.hpp"
#include "lab/roots.hpp"

namespace lab {

namespace {

std::vector<cplx> poly_mul(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    std::vector<cplx> c(a.size() + b.size() - 1, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

std::vector<cplx> poly_derivative(const std::vector<cplx>& c) {
    if (c.size() <= 1) return {cplx(0.0, 0.0)};
    std::vector<cplx> d(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = double(k) * c[k];
    return d;
}

}  // namespace

struct SelfMap::Impl {
    enum class Form { Polynomial, Moebius, Affine, Lens, Blaschke, Compose } form;
    std::string name;
    std::vector<cplx> coeffs;    // polynomial
    cplx a{};                    // moebius
    cplx s{}, c{};               // affine
    double gamma = 0.0;          // lens
    std::vector<cplx> zeros;     // blaschke
    std::vector<SelfMap> chain;  // compose, outer first
    std::optional<RationalForm> rat;
    double margin = 0.0;

    cplx eval(cplx z) const {
        switch (form) {
            case Form::Polynomial:
                return polynomial_eval(coeffs, z);
            case Form::Moebius:
                return (a - z) / (1.0 - std::conj(a) * z);
            case Form::Affine:
                return s * z + c;
            case Form::Lens:
                return 1.0 - std::pow(1.0 - z, gamma);
            case Form::Blaschke: {
                cplx v(1.0, 0.0);
                for (const cplx& ak : zeros) v *= (ak - z) / (1.0 - std::conj(ak) * z);
                return v;
            }
            case Form::Compose: {
                cplx v = z;
                for (auto it = chain.rbegin(); it != chain.rend(); ++it) v = (*it)(v);
                return v;
            }
        }
        return z;
    }

    cplx deriv(cplx z) const {
        switch (form) {
            case Form::Polynomial:
                return polynomial_eval(poly_derivative(coeffs), z);
            case Form::Moebius: {
                const cplx d = 1.0 - std::conj(a) * z;
                return (std::norm(a) - 1.0) / (d * d);
            }
            case Form::Affine:
                return s;
            case Form::Lens:
                return gamma * std::pow(1.0 - z, gamma - 1.0);
            case Form::Blaschke: {
                // logarithmic derivative of the product
                cplx v = eval(z);
                cplx sum(0.0, 0.0);
                for (const cplx& ak : zeros) {
                    const cplx top = ak - z, bot = 1.0 - std::conj(ak) * z;
                    sum += -1.0 / top + std::conj(ak) / bot;
                }
                return v * sum;
            }
            case Form::Compose: {
                cplx v = z;
                cplx d(1.0, 0.0);
                for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
                    d *= it->derivative(v);
                    v = (*it)(v);
                }
                return d;
            }
        }
        return cplx(1.0, 0.0);
    }
};

SelfMap::SelfMap(std::shared_ptr<Impl> p) : impl_(std::move(p)) {}

namespace {

void check_self_map(const SelfMap::Impl& m, const std::string& name) {
    double sup = 0.0;
    const double r = 1.0 - 1e-6;
    for (int j = 0; j < 1024; ++j) {
        const cplx z = std::polar(r, 2.0 * std::numbers::pi * j / 1024.0);
        sup = std::max(sup, std::abs(m.eval(z)));
    }
    if (sup > 1.0 + 1e-9)
        throw DomainError("SelfMap", name + ": |phi| exceeds 1 on the boundary sample");
}

std::shared_ptr<SelfMap::Impl> finish(std::shared_ptr<SelfMap::Impl> p) {
    check_self_map(*p, p->name);
    double sup = 0.0;
    const double r = 1.0 - 1e-6;
    for (int j = 0; j < 1024; ++j)
        sup = std::max(sup, std::abs(p->eval(std::polar(r, 2.0 * std::numbers::pi * j / 1024.0))));
    p->margin = sup;
    return p;
}

}  // namespace

SelfMap SelfMap::identity() { return polynomial({cplx(0.0, 0.0), cplx(1.0, 0.0)}); }

SelfMap SelfMap::polynomial(std::vector<cplx> coeffs) {
    if (coeffs.empty()) throw DomainError("SelfMap::polynomial", "empty coefficient list");
    while (coeffs.size() > 1 && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
    if (coeffs.size() == 1) throw DomainError("SelfMap::polynomial", "constant map not supported");
    auto p = std::make_shared<Impl>();
    p->form = Impl::Form::Polynomial;
    p->coeffs = coeffs;
    p->name = "polynomial(deg " + std::to_string(coeffs.size() - 1) + ")";
    p->rat = RationalForm{coeffs, {cplx(1.0, 0.0)}};
    return SelfMap(finish(std::move(p)));
}

SelfMap SelfMap::moebius(cplx a) {
    if (std::abs(a) >= 1.0) throw DomainError("SelfMap::moebius", "|a| must be < 1");
    auto p = std::make_shared<Impl>();
    p->form = Impl::Form::Moebius;
    p->a = a;
    p->name = "moebius";
    p->rat = RationalForm{{a, cplx(-1.0, 0.0)}, {cplx(1.0, 0.0), -std::conj(a)}};
    return SelfMap(finish(std::move(p)));
}

SelfMap SelfMap::affine(cplx s, cplx c) {
    if (std::abs(s) + std::abs(c) > 1.0 + 1e-12)
        throw DomainError("SelfMap::affine", "|s| + |c| must not exceed 1");
    if (std::abs(s) == 0.0) throw DomainError("SelfMap::affine", "constant map not supported");
    auto p = std::make_shared<Impl>();
    p->form = Impl::Form::Affine;
    p->s = s;
    p->c = c;
    p->name = "affine";
    p->rat = RationalForm{{c, s}, {cplx(1.0, 0.0)}};
    return SelfMap(finish(std::move(p)));
}

SelfMap SelfMap::lens(double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("SelfMap::lens", "gamma must lie in (0,1)");
    auto p = std::make_shared<Impl>();
    p->form = Impl::Form::Lens;
    p->gamma = gamma;
    p->name = "lens(" + std::to_string(gamma) + ")";
    return SelfMap(finish(std::move(p)));
}

SelfMap SelfMap::blaschke(std::vector<cplx> zeros) {
    if (zeros.empty()) throw DomainError("SelfMap::blaschke", "need at least one factor");
    for (const cplx& a : zeros)
        if (std::abs(a) >= 1.0) throw DomainError("SelfMap::blaschke", "factors must lie in the disc");
    auto p = std::make_shared<Impl>();
    p->form = Impl::Form::Blaschke;
    p->zeros = zeros;
    p->name = "blaschke(" + std::to_string(zeros.size()) + ")";
    std::vector<cplx> num{cplx(1.0, 0.0)}, den{cplx(1.0, 0.0)};
    for (const cplx& a : zeros) {
        num = poly_mul(num, {a, cplx(-1.0, 0.0)});
        den = poly_mul(den, {cplx(1.0, 0.0), -std::conj(a)});
    }
    p->rat = RationalForm{num, den};
    return SelfMap(finish(std::move(p)));
}

SelfMap SelfMap::compose(std::vector<SelfMap> outer_to_inner) {
    if (outer_to_inner.empty()) throw DomainError("SelfMap::compose", "empty chain");
    for (const auto& m : outer_to_inner)
        if (!m.valid()) throw DomainError("SelfMap::compose", "invalid element in chain");
    auto p = std::make_shared<Impl>();
    p->form = Impl::Form::Compose;
    p->chain = std::move(outer_to_inner);
    p->name = "compose(" + std::to_string(p->chain.size()) + ")";
    return SelfMap(finish(std::move(p)));
}

cplx SelfMap::operator()(cplx z) const { return impl_->eval(z); }
cplx SelfMap::derivative(cplx z) const { return impl_->deriv(z); }
cplx SelfMap::at_zero() const { return impl_->eval(cplx(0.0, 0.0)); }
double SelfMap::boundary_margin() const { return impl_->margin; }
const std::string& SelfMap::describe() const { return impl_->name; }
const std::optional<SelfMap::RationalForm>& SelfMap::rational() const { return impl_->rat; }

std::vector<cplx> SelfMap::preimages(cplx w) const {
    if (!impl_->rat)
        throw UnsupportedForm("counting_direct",
                              impl_->name + ": no algebraic preimage enumeration");
    const auto& [num, den] = *impl_->rat;
    std::vector<cplx> poly(std::max(num.size(), den.size()), cplx(0.0, 0.0));
    for (std::size_t k = 0; k < num.size(); ++k) poly[k] += num[k];
    for (std::size_t k = 0; k < den.size(); ++k) poly[k] -= w * den[k];
    std::vector<cplx> out;
    for (const cplx& z : polynomial_roots(poly)) {
        if (std::abs(z) >= 1.0) continue;
        if (std::abs(impl_->eval(z) - w) > 1e-8 * (1.0 + std::abs(w))) continue;
        out.push_back(z);
    }
    std::sort(out.begin(), out.end(), [](cplx x, cplx y) { return std::abs(x) < std::abs(y); });
    return out;
}

bool SelfMap::has_analytic_inverse() const {
    switch (impl_->form) {
        case Impl::Form::Moebius:
        case Impl::Form::Affine:
        case Impl::Form::Lens:
            return true;
        case Impl::Form::Polynomial:
            return impl_->coeffs.size() == 2;
        case Impl::Form::Compose:
            return std::all_of(impl_->chain.begin(), impl_->chain.end(),
                               [](const SelfMap& m) { return m.has_analytic_inverse(); });
        default:
            return false;
    }
}

std::optional<cplx> SelfMap::inverse(cplx w) const {
    cplx z;
    switch (impl_->form) {
        case Impl::Form::Moebius:
            z = (impl_->a - w) / (1.0 - std::conj(impl_->a) * w);  // involution
            break;
        case Impl::Form::Affine:
            z = (w - impl_->c) / impl_->s;
            break;
        case Impl::Form::Lens:
            z = 1.0 - std::pow(1.0 - w, 1.0 / impl_->gamma);
            break;
        case Impl::Form::Polynomial:
            if (impl_->coeffs.size() != 2)
                throw UnsupportedForm("inverse", impl_->name + ": not univalent closed form");
            z = (w - impl_->coeffs[0]) / impl_->coeffs[1];
            break;
        case Impl::Form::Compose: {
            cplx v = w;
            for (const SelfMap& m : impl_->chain) {  // outer first: peel outward-in
                auto inv = m.inverse(v);
                if (!inv) return std::nullopt;
                v = *inv;
            }
            z = v;
            break;
        }
        default:
            throw UnsupportedForm("inverse", impl_->name + ": not univalent closed form");
    }
    if (std::abs(z) >= 1.0) return std::nullopt;
    // branch validation
    if (std::abs(impl_->eval(z) - w) > 1e-9 * (1.0 + std::abs(w))) return std::nullopt;
    return z;
}

}  // namespace lab
