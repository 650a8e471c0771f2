#include "lab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace lab {

namespace {

// 15-point Gauss-Legendre nodes (positive half) and weights on [-1,1].
constexpr double kNodes[8] = {
    0.0000000000000000, 0.2011940939974345, 0.3941513470775634, 0.5709721726085388,
    0.7244177313601701, 0.8482065834104272, 0.9372733924007060, 0.9879925180204854,
};
constexpr double kWeights[8] = {
    0.2025782419255613, 0.1984314853271116, 0.1861610000155622, 0.1662692058169940,
    0.1395706779261543, 0.1071592204671719, 0.0703660474881081, 0.0307532419961173,
};

}  // namespace

void QuadratureSpec::validate(const char* op) const {
    if (!(abs_tol > 0.0)) throw DomainError(op, "abs_tol must be positive");
    if (!(rel_tol > 0.0)) throw DomainError(op, "rel_tol must be positive");
    if (max_subdivisions < 1) throw DomainError(op, "max_subdivisions must be >= 1");
    if (!(boundary_offset > 0.0 && boundary_offset < 0.5))
        throw DomainError(op, "boundary_offset must lie in (0, 0.5)");
}

double gauss15(const RealFn& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double s = kWeights[0] * f(c);
    for (int i = 1; i < 8; ++i) {
        const double d = h * kNodes[i];
        s += kWeights[i] * (f(c + d) + f(c - d));
    }
    return s * h;
}

namespace {

struct Panel {
    double a, b;
    double coarse;   // GL15 over [a,b]
    double refined;  // GL15 over halves
    double err;      // |coarse - refined|
};

Panel make_panel(const RealFn& f, double a, double b) {
    Panel p;
    p.a = a;
    p.b = b;
    p.coarse = gauss15(f, a, b);
    const double m = 0.5 * (a + b);
    p.refined = gauss15(f, a, m) + gauss15(f, m, b);
    p.err = std::abs(p.coarse - p.refined);
    return p;
}

}  // namespace

Integral integrate(const RealFn& f, double a, double b, const QuadratureSpec& spec,
                   const char* op) {
    spec.validate(op);
    if (a == b) return {0.0, 0.0, 0};
    if (!(a < b)) throw DomainError(op, "interval endpoints out of order");

    auto worse = [](const Panel& x, const Panel& y) { return x.err < y.err; };
    std::priority_queue<Panel, std::vector<Panel>, decltype(worse)> heap(worse);
    heap.push(make_panel(f, a, b));
    double total = heap.top().refined;
    double err = heap.top().err;
    int splits = 0;

    auto tol = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };
    while (err > tol()) {
        if (splits >= spec.max_subdivisions)
            throw NonConvergence(op, "subdivision budget exhausted with error above tolerance");
        Panel worst = heap.top();
        heap.pop();
        const double m = 0.5 * (worst.a + worst.b);
        Panel l = make_panel(f, worst.a, m);
        Panel r = make_panel(f, m, worst.b);
        total += l.refined + r.refined - worst.refined;
        err += l.err + r.err - worst.err;
        heap.push(l);
        heap.push(r);
        ++splits;
        if (worst.b - worst.a < 1e-15 * (b - a))
            throw NonConvergence(op, "panel width collapsed below resolution");
    }
    return {total, err, splits + 1};
}

Integral integrate_radial(const RealFn& f, double a, double b, const QuadratureSpec& spec,
                          const TailFn& tail, const char* op) {
    spec.validate(op);
    if (!(a < b) || b > 1.0) throw DomainError(op, "need a < b <= 1");
    double cut = b;
    bool improper = b >= 1.0;
    if (improper) cut = 1.0 - spec.boundary_offset;
    if (cut <= a) throw DomainError(op, "truncation cut below lower endpoint");
    Integral res = integrate(f, a, cut, spec, op);
    if (improper && tail) {
        TailBracket t = tail(cut);
        res.value += 0.5 * (t.lo + t.hi);
        res.error += 0.5 * (t.hi - t.lo);
    }
    return res;
}

double extrapolate_offsets(const RealFn& F, const std::vector<double>& offsets) {
    std::vector<double> v;
    v.reserve(offsets.size());
    for (double h : offsets) v.push_back(F(h));
    if (v.size() < 3) return v.back();
    // Aitken on the last three values; guard against flat or non-contracting
    // differences.
    const double x0 = v[v.size() - 3], x1 = v[v.size() - 2], x2 = v.back();
    const double d0 = x1 - x0, d1 = x2 - x1;
    const double den = d1 - d0;
    if (std::abs(den) < 1e-14 * (std::abs(x2) + 1e-300) || std::abs(d1) >= std::abs(d0))
        return x2;
    return x2 - d1 * d1 / den;
}

Integral integrate_graded_u(const RealFn& g, double r0, double abs_tol, double rel_tol,
                            int max_octaves, const char* op) {
    if (!(r0 >= 0.0 && r0 < 1.0)) throw DomainError(op, "r0 must lie in [0,1)");
    const double u_top = 1.0 - r0;
    double sum = 0.0;
    int panels = 0;

    // Top partial panel [2^-j0, u_top], then full octaves downward.
    int j0 = static_cast<int>(std::ceil(-std::log2(u_top)));
    if (std::ldexp(1.0, -j0) > u_top) ++j0;  // paranoia against rounding
    double hi = u_top;
    double lo = std::ldexp(1.0, -j0);
    if (lo < hi) {
        sum += gauss15(g, lo, hi);
        ++panels;
    }

    double prev = 0.0, pprev = 0.0;
    int settled = 0;
    for (int j = j0; j < j0 + max_octaves; ++j) {
        const double b = std::ldexp(1.0, -j);
        const double a = 0.5 * b;
        const double c = gauss15(g, a, b);
        sum += c;
        ++panels;
        const double tol = std::max(abs_tol, rel_tol * std::abs(sum));
        const double ca = std::abs(c), pa = std::abs(prev), ppa = std::abs(pprev);
        if (panels >= 4 && ca <= 0.0625 * tol && pa <= 0.0625 * tol) {
            return {sum, ca + pa, panels};
        }
        if (panels >= 4 && pa > 0.0 && ppa > 0.0) {
            const double rho = std::max(ca / pa, pa / ppa);
            if (rho < 0.90) {
                ++settled;
                const double tail_bound = ca * rho / (1.0 - rho);
                if (settled >= 3 && tail_bound <= tol) return {sum, tail_bound, panels};
            } else {
                settled = 0;
            }
        }
        pprev = prev;
        prev = c;
    }
    throw NonConvergence(op, "octave masses did not contract; no analytic tail available");
}

}  // namespace lab
