#include "lab/preimages.hpp"

#include <cmath>
#include <numbers>

#include "lab/errors.hpp"
#include "lab/roots.hpp"

namespace lab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct WindingPass {
    bool aliased = false;     // some step exceeded the turn guard
    bool on_contour = false;  // |f - w| vanished at a sample
    double raw = 0.0;
    double min_mod = 1e300;
    double min_mod_theta = 0.0;
};

WindingPass winding_pass(const std::function<cplx(cplx)>& f, cplx w, double r, int m) {
    WindingPass out;
    cplx prev = f(std::polar(r, 0.0)) - w;
    const cplx first = prev;
    double total = 0.0;
    for (int j = 1; j <= m; ++j) {
        const double th = kTwoPi * j / m;
        const cplx cur = (j == m) ? first : f(std::polar(r, th)) - w;
        const double pm = std::abs(prev);
        if (pm < 1e-13) {
            out.on_contour = true;
            return out;
        }
        if (pm < out.min_mod) {
            out.min_mod = pm;
            out.min_mod_theta = kTwoPi * (j - 1) / m;
        }
        const double step = std::arg(cur * std::conj(prev));
        if (std::abs(step) > 0.75 * std::numbers::pi) {
            out.aliased = true;
            return out;
        }
        total += step;
        prev = cur;
    }
    out.raw = total / kTwoPi;
    return out;
}

}  // namespace

std::optional<int> winding_count_or_null(const std::function<cplx(cplx)>& f, cplx w, double r,
                                         int min_samples, int max_samples) {
    for (int m = min_samples; m <= max_samples; m *= 2) {
        WindingPass p = winding_pass(f, w, r, m);
        if (p.on_contour) return std::nullopt;
        if (p.aliased) continue;
        const double nearest = std::round(p.raw);
        if (std::abs(p.raw - nearest) >= 0.25) return std::nullopt;
        return static_cast<int>(nearest);
    }
    return std::nullopt;
}

int winding_count(const std::function<cplx(cplx)>& f, cplx w, double r, int min_samples,
                  int max_samples) {
    for (int m = min_samples; m <= max_samples; m *= 2) {
        WindingPass p = winding_pass(f, w, r, m);
        if (p.on_contour)
            throw BoundaryRoot("count_preimages", "zero of phi - w on the contour");
        if (p.aliased) continue;
        const double nearest = std::round(p.raw);
        if (std::abs(p.raw - nearest) >= 0.25)
            throw WindingAmbiguous("count_preimages", "argument-residue check failed");
        return static_cast<int>(nearest);
    }
    throw WindingAmbiguous("count_preimages", "turn guard still tripping at max sampling");
}

int count_preimages(const SelfMap& phi, cplx w, double r) {
    if (!(std::abs(w) < 1.0)) throw DomainError("count_preimages", "target must lie in the disc");
    if (!(r > 0.0 && r < 1.0)) throw DomainError("count_preimages", "radius must lie in (0,1)");
    if (phi.has_preimage_enumeration()) {
        double rr = r;
        for (int tries = 0; tries < 16; ++tries) {
            bool clean = true;
            int count = 0;
            for (const cplx& z : phi.preimages(w)) {
                const double m = std::abs(z);
                if (std::abs(m - rr) < 1e-12) {
                    clean = false;
                    break;
                }
                if (m <= rr) ++count;
            }
            if (clean) return count;
            rr += 1e-12;
        }
        throw BoundaryRoot("count_preimages", "preimage on the contour beyond perturbation budget");
    }
    auto f = [&phi](cplx z) { return phi(z); };
    return winding_count(f, w, r);
}

std::vector<JumpRadius> preimage_moduli_by_winding(const SelfMap& phi, cplx w) {
    auto f = [&phi](cplx z) { return phi(z); };
    auto count_at = [&](double r) { return winding_count_or_null(f, w, r, 4096, 1 << 16); };

    const double r_lo0 = 1e-7, r_hi0 = 1.0 - 1e-7;
    auto must_count = [&](double r) {
        // nudge the cut a little when the contour sits on a preimage
        for (int k = 0; k < 8; ++k) {
            const double rr = r * (1.0 + 3e-5 * k);
            if (rr >= 1.0) break;
            if (auto c = count_at(rr)) return std::pair<double, int>{rr, *c};
        }
        throw WindingAmbiguous("counting_integral", "could not establish a decisive contour");
    };

    auto [lo, c_lo] = must_count(r_lo0);
    auto [hi, c_hi] = must_count(r_hi0);
    std::vector<JumpRadius> jumps;
    if (c_lo > 0) jumps.push_back({0.5 * lo, c_lo});  // preimages below the floor radius
    if (c_hi == c_lo) return jumps;

    struct Bracket {
        double lo, hi;
        int c_lo, c_hi;
    };
    std::vector<Bracket> stack{{lo, hi, c_lo, c_hi}};
    while (!stack.empty()) {
        Bracket b = stack.back();
        stack.pop_back();
        if (b.c_hi == b.c_lo) continue;
        if (b.hi - b.lo < 1e-10) {
            jumps.push_back({0.5 * (b.lo + b.hi), b.c_hi - b.c_lo});
            continue;
        }
        const double mid = 0.5 * (b.lo + b.hi);
        std::optional<int> cm = count_at(mid);
        if (!cm) {
            // nudge the cut off the nearby preimage modulus
            for (int k = 1; k <= 6 && !cm; ++k) {
                const double shift = k * 4e-5 * (k % 2 == 1 ? 1.0 : -1.0);
                const double m2 = mid + shift * (b.hi - b.lo < 1e-3 ? (b.hi - b.lo) : 1.0);
                if (m2 > b.lo && m2 < b.hi) {
                    if (auto c2 = count_at(m2)) {
                        stack.push_back({b.lo, m2, b.c_lo, *c2});
                        stack.push_back({m2, b.hi, *c2, b.c_hi});
                        cm = c2;
                    }
                }
            }
            if (cm) continue;
            // sampling saturated: the bracket isolates preimages too close to
            // every contour we tried; polish one by Newton from the closest
            // sample and split the bracket around its modulus.
            WindingPass p = winding_pass(f, w, mid, 1 << 14);
            cplx z0 = std::polar(mid, p.min_mod_theta);
            auto fd = [&phi](cplx z) { return phi.derivative(z); };
            auto fw = [&phi, w](cplx z) { return phi(z) - w; };
            const cplx root = newton_polish(fw, fd, z0);
            const double rm = std::abs(root);
            if (!(rm > b.lo && rm < b.hi))
                throw WindingAmbiguous("counting_integral", "bracket refinement failed");
            const double eps = 5e-5 * std::max(1.0, rm);
            auto [la, ca] = must_count(std::max(b.lo * 1.000001, rm - eps));
            auto [lb, cb] = must_count(std::min(b.hi * 0.999999, rm + eps));
            if (ca > b.c_lo) stack.push_back({b.lo, la, b.c_lo, ca});
            if (cb > ca) jumps.push_back({rm, cb - ca});
            if (b.c_hi > cb) stack.push_back({lb, b.hi, cb, b.c_hi});
            continue;
        }
        if (*cm > b.c_lo) stack.push_back({b.lo, mid, b.c_lo, *cm});
        if (b.c_hi > *cm) stack.push_back({mid, b.hi, *cm, b.c_hi});
    }
    std::sort(jumps.begin(), jumps.end(),
              [](const JumpRadius& x, const JumpRadius& y) { return x.rho < y.rho; });
    return jumps;
}

}  // namespace lab
