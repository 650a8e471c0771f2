#include "lab/roots.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "lab/errors.hpp"

namespace lab {

cplx polynomial_eval(const std::vector<cplx>& c, cplx z) {
    cplx s{0.0, 0.0};
    for (std::size_t k = c.size(); k-- > 0;) s = s * z + c[k];
    return s;
}

namespace {

cplx poly_deriv_eval(const std::vector<cplx>& c, cplx z) {
    cplx s{0.0, 0.0};
    for (std::size_t k = c.size(); k-- > 1;) s = s * z + double(k) * c[k];
    return s;
}

std::vector<cplx> deflate(const std::vector<cplx>& c, cplx root) {
    // synthetic division by (z - root); c has degree >= 1
    const std::size_t d = c.size() - 1;
    std::vector<cplx> q(d);
    cplx carry = c[d];
    for (std::size_t k = d; k-- > 0;) {
        q[k] = carry;
        carry = c[k] + carry * root;
    }
    return q;
}

std::vector<cplx> quadratic_roots(cplx a, cplx b, cplx c) {
    // a z^2 + b z + c, a != 0; stable formula
    cplx disc = std::sqrt(b * b - 4.0 * a * c);
    if (std::real(std::conj(b) * disc) < 0.0) disc = -disc;
    cplx q = -0.5 * (b + disc);
    std::vector<cplx> out;
    if (std::abs(q) > 0.0) {
        out.push_back(q / a);
        out.push_back(c / q);
    } else {
        out.push_back(cplx(0.0, 0.0));
        out.push_back(cplx(0.0, 0.0));
    }
    return out;
}

std::vector<cplx> aberth(const std::vector<cplx>& c, int max_iter) {
    const std::size_t d = c.size() - 1;
    // initial guesses on a slightly eccentric circle inside the Cauchy bound
    double cauchy = 0.0;
    for (std::size_t k = 0; k < d; ++k)
        cauchy = std::max(cauchy, std::pow(std::abs(c[k] / c[d]), 1.0 / double(d - k)));
    const double r0 = 0.5 + 1.2 * cauchy;
    std::vector<cplx> z(d);
    for (std::size_t i = 0; i < d; ++i) {
        const double th = 2.0 * std::numbers::pi * (double(i) + 0.35) / double(d) + 0.42;
        z[i] = r0 * cplx(std::cos(th), std::sin(th));
    }
    std::vector<bool> done(d, false);
    for (int it = 0; it < max_iter; ++it) {
        double worst = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            if (done[i]) continue;
            const cplx p = polynomial_eval(c, z[i]);
            const cplx dp = poly_deriv_eval(c, z[i]);
            cplx ratio;
            if (std::abs(dp) > 1e-300) {
                ratio = p / dp;
            } else {
                z[i] += cplx(1e-7, 1e-7);
                worst = 1.0;
                continue;
            }
            cplx rep{0.0, 0.0};
            for (std::size_t j = 0; j < d; ++j) {
                if (j == i) continue;
                cplx diff = z[i] - z[j];
                if (std::abs(diff) < 1e-300) diff = cplx(1e-12, 1e-12);
                rep += 1.0 / diff;
            }
            const cplx denom = 1.0 - ratio * rep;
            cplx step = (std::abs(denom) > 1e-300) ? ratio / denom : ratio;
            z[i] -= step;
            const double rel = std::abs(step) / (1.0 + std::abs(z[i]));
            worst = std::max(worst, rel);
            if (rel < 1e-14) done[i] = true;
        }
        if (worst < 1e-14) break;
    }
    return z;
}

}  // namespace

std::vector<cplx> polynomial_roots(std::vector<cplx> c) {
    // strip vanishing leading coefficients
    double scale = 0.0;
    for (const auto& v : c) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) throw DomainError("polynomial_roots", "zero polynomial");
    while (c.size() > 1 && std::abs(c.back()) <= 1e-14 * scale) c.pop_back();
    const std::size_t d = c.size() - 1;
    if (d == 0) return {};
    if (d == 1) return {-c[0] / c[1]};
    if (d == 2) return quadratic_roots(c[2], c[1], c[0]);

    std::vector<cplx> roots = aberth(c, 240);

    // residual check; rescue stragglers by deflation restart
    auto bad = [&](cplx r) {
        double zb = std::max(1.0, std::abs(r));
        double mag = std::abs(c.back());
        for (std::size_t k = c.size() - 1; k-- > 0;) mag = mag * zb + std::abs(c[k]);
        return std::abs(polynomial_eval(c, r)) > 1e-10 * mag;
    };
    bool any_bad = std::any_of(roots.begin(), roots.end(), bad);
    if (any_bad) {
        std::vector<cplx> good;
        std::vector<cplx> work = c;
        for (cplx r : roots) {
            if (!bad(r)) {
                good.push_back(r);
                work = deflate(work, r);
            }
        }
        if (work.size() > 1) {
            std::vector<cplx> rest =
                (work.size() - 1 <= 2) ? polynomial_roots(work) : aberth(work, 400);
            for (cplx r : rest) {
                // polish against the undeflated polynomial
                auto f = [&](cplx x) { return polynomial_eval(c, x); };
                auto df = [&](cplx x) { return poly_deriv_eval(c, x); };
                good.push_back(newton_polish(f, df, r));
            }
        }
        roots = std::move(good);
    }
    return roots;
}

cplx newton_polish(const std::function<cplx(cplx)>& f, const std::function<cplx(cplx)>& df,
                   cplx z0, int max_iter) {
    cplx z = z0;
    double best = std::abs(f(z));
    cplx zbest = z;
    for (int i = 0; i < max_iter; ++i) {
        const cplx d = df(z);
        if (std::abs(d) < 1e-300) break;
        const cplx step = f(z) / d;
        z -= step;
        const double r = std::abs(f(z));
        if (r < best) {
            best = r;
            zbest = z;
        }
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
    }
    return zbest;
}

}  // namespace lab
