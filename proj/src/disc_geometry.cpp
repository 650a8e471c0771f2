#include "lab/disc_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lab/errors.hpp"

namespace lab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double t) {
    t = std::fmod(t, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    return t;
}

double angle_diff(double a, double b) {
    double d = std::abs(wrap_angle(a) - wrap_angle(b));
    return std::min(d, kTwoPi - d);
}
}  // namespace

double rho(cplx z, cplx w) {
    return std::abs((z - w) / (1.0 - std::conj(z) * w));
}

cplx automorphism(cplx a, cplx z) { return (a - z) / (1.0 - std::conj(a) * z); }

cplx PseudoDisc::center() const {
    const double a2 = std::norm(a);
    return a * (1.0 - r * r) / (1.0 - r * r * a2);
}

double PseudoDisc::radius() const {
    const double a2 = std::norm(a);
    return r * (1.0 - a2) / (1.0 - r * r * a2);
}

bool CarlesonBox::contains(cplx z) const {
    const double m = std::abs(a);
    if (m <= 0.0) throw DomainError("carleson_box", "box undefined at a = 0");
    const double zm = std::abs(z);
    if (zm < m || zm >= 1.0) return false;
    return angle_diff(std::arg(z), std::arg(a)) <= 0.5 * (1.0 - m);
}

double box_mass(const RadialWeight& w, cplx a) {
    const double m = std::abs(a);
    if (m <= 0.0) throw DomainError("carleson_box", "box undefined at a = 0");
    if (m >= 1.0) return 0.0;
    return (1.0 - m) / std::numbers::pi * w.smoment_tail(m);
}

bool PolarRect::contains(cplx z) const {
    const double r = std::abs(z);
    if (r < r_lo || r >= r_hi) return false;
    if (th_hi - th_lo >= kTwoPi) return true;
    const double t = wrap_angle(std::arg(z));
    const double lo = wrap_angle(th_lo);
    double span = th_hi - th_lo;
    double d = t - lo;
    if (d < 0.0) d += kTwoPi;
    return d < span;
}

double PolarRect::area() const {
    return (th_hi - th_lo) / kTwoPi * (r_hi * r_hi - r_lo * r_lo);
}

namespace {

// ∫_{r_lo}^{r_hi} g(r) dr with octave grading toward 1 above 1/2.
double radial_graded(const std::function<double(double)>& g, double r_lo, double r_hi,
                     const QuadratureSpec& spec) {
    double total = 0.0;
    if (r_lo < 0.5) {
        const double hi = std::min(r_hi, 0.5);
        total += integrate(g, r_lo, hi, spec, "integrate_region").value;
        r_lo = hi;
    }
    if (r_hi <= r_lo) return total;
    // u-octaves from u_lo = 1-r_lo down to u_hi = 1-r_hi
    double u_hi = 1.0 - r_lo;
    const double u_lo = 1.0 - r_hi;
    while (u_hi > u_lo * (1.0 + 1e-12)) {
        double u_next = std::max(u_lo, 0.5 * u_hi);
        auto gu = [&](double u) { return g(1.0 - u); };
        total += gauss15(gu, u_next, u_hi);
        u_hi = u_next;
    }
    return total;
}

double angular_mean(const std::function<double(cplx)>& f, double r, double th_lo, double th_hi,
                    int k) {
    // uniform rule on the arc; exact-midpoint style for the full circle
    double s = 0.0;
    const double span = th_hi - th_lo;
    for (int j = 0; j < k; ++j) {
        const double th = th_lo + span * (j + 0.5) / k;
        s += f(std::polar(r, th));
    }
    return s / k;
}

double region_integral_pass(const std::function<double(cplx)>& f, double r_lo, double r_hi,
                            double th_lo, double th_hi, int k, const QuadratureSpec& spec) {
    const double span = th_hi - th_lo;
    auto g = [&](double r) { return angular_mean(f, r, th_lo, th_hi, k) * r * span; };
    return radial_graded(g, r_lo, r_hi, spec) / std::numbers::pi;
}

}  // namespace

Integral integrate_region(const std::function<double(cplx)>& f, const Region& region,
                          const QuadratureSpec& spec) {
    spec.validate("integrate_disc");
    double r_lo = 0.0, r_hi = 1.0 - spec.boundary_offset, th_lo = 0.0, th_hi = kTwoPi;
    if (const auto* pd = std::get_if<PseudoDisc>(&region)) {
        // Euclidean disc: polar coordinates around its center
        const cplx c = pd->center();
        const double R = pd->radius();
        int k = 32;
        double prev = 0.0;
        for (;;) {
            auto g = [&](double s) {
                double acc = 0.0;
                for (int j = 0; j < k; ++j) {
                    const double th = kTwoPi * (j + 0.5) / k;
                    acc += f(c + std::polar(s, th));
                }
                return acc / k * s * kTwoPi;
            };
            const double v = integrate(g, 0.0, R, spec, "integrate_disc").value / std::numbers::pi;
            if (k > 32 && std::abs(v - prev) <= std::max(spec.abs_tol, 10 * spec.rel_tol * std::abs(v)))
                return {v, std::abs(v - prev), k};
            if (k >= 2048) throw NonConvergence("integrate_disc", "angular rule did not stabilize");
            prev = v;
            k *= 2;
        }
    }
    if (const auto* cb = std::get_if<CarlesonBox>(&region)) {
        const double m = std::abs(cb->a);
        if (m <= 0.0) throw DomainError("integrate_disc", "carleson box undefined at a = 0");
        r_lo = m;
        const double th_c = std::arg(cb->a);
        th_lo = th_c - 0.5 * (1.0 - m);
        th_hi = th_c + 0.5 * (1.0 - m);
    } else if (const auto* pr = std::get_if<PolarRect>(&region)) {
        r_lo = pr->r_lo;
        r_hi = std::min(pr->r_hi, r_hi);
        th_lo = pr->th_lo;
        th_hi = pr->th_hi;
    }
    if (r_hi <= r_lo) return {0.0, 0.0, 0};

    int k = 64;
    double prev = 0.0;
    for (;;) {
        const double v = region_integral_pass(f, r_lo, r_hi, th_lo, th_hi, k, spec);
        if (k > 64 && std::abs(v - prev) <= std::max(spec.abs_tol, 10 * spec.rel_tol * std::abs(v)))
            return {v, std::abs(v - prev), k};
        if (k >= 4096) throw NonConvergence("integrate_disc", "angular rule did not stabilize");
        prev = v;
        k *= 2;
    }
}

DyadicDecomposition::DyadicDecomposition(int max_level) : max_level_(max_level) {
    if (max_level < 1 || max_level > 24)
        throw DomainError("dyadic_decomposition", "max_level must lie in [1, 24]");
    by_level_.resize(max_level + 1);
    for (int n = 0; n <= max_level; ++n) {
        const int count = 1 << n;
        const double r_lo = 1.0 - std::exp2(double(-n));
        const double r_hi = 1.0 - std::exp2(double(-n - 1));
        for (int k = 0; k < count; ++k) {
            DyadicRect rect;
            rect.level = n;
            rect.index = k;
            rect.box = PolarRect{r_lo, r_hi, kTwoPi * k / count, kTwoPi * (k + 1) / count};
            if (n == 0) {
                rect.center = cplx(0.5, 0.0);  // the distinguished point of the central disc
            } else {
                const double mid = kTwoPi * (k + 0.5) / count;
                rect.center = std::polar(r_lo, mid);
            }
            by_level_[n].push_back(rect);
            rects_.push_back(rect);
        }
    }
}

const DyadicRect& DyadicDecomposition::locate(cplx z) const {
    const double r = std::abs(z);
    if (r >= 1.0 - std::exp2(double(-max_level_ - 1)))
        throw DomainError("dyadic_decomposition", "point beyond covered levels");
    int n = 0;
    if (r >= 0.5) n = static_cast<int>(std::floor(-std::log2(1.0 - r)));
    n = std::clamp(n, 0, max_level_);
    const int count = 1 << n;
    int k = static_cast<int>(std::floor(wrap_angle(std::arg(z)) / kTwoPi * count));
    k = std::clamp(k, 0, count - 1);
    return by_level_[n][k];
}

Lattice delta_lattice(double delta, double coverage_radius) {
    if (!(delta > 0.05 && delta < 0.9))
        throw DomainError("delta_lattice", "delta must lie in (0.05, 0.9)");
    if (!(coverage_radius > 0.0 && coverage_radius < 1.0))
        throw DomainError("delta_lattice", "coverage radius must lie in (0,1)");

    const double sep = 0.5 * delta;  // target spacing between neighbors
    Lattice lat;
    lat.delta = delta;
    lat.points.push_back(cplx(0.0, 0.0));

    double r = 0.0;
    int ring = 0;
    while (r < coverage_radius) {
        r = (r + sep) / (1.0 + r * sep);
        ++ring;
        // choose the smallest count whose angular neighbor distance is <= sep
        int m = 3;
        auto gap = [&](int count) {
            const cplx p = std::polar(r, 0.0);
            const cplx q = std::polar(r, kTwoPi / count);
            return rho(p, q);
        };
        while (gap(m) > sep) m = m < 16 ? m + 1 : m + m / 8;
        const double offset = (ring % 2) * std::numbers::pi / m;
        for (int j = 0; j < m; ++j) lat.points.push_back(std::polar(r, offset + kTwoPi * j / m));
    }

    std::sort(lat.points.begin(), lat.points.end(),
              [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });

    // verify uniform discreteness with constant delta/5
    const double gamma = delta / 5.0;
    const std::size_t n = lat.points.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double mi = std::abs(lat.points[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double mj = std::abs(lat.points[j]);
            // moduli alone already separate distant rings
            if ((mj - mi) / (1.0 - mi * mj) > 6.0 * delta) break;
            if (rho(lat.points[i], lat.points[j]) < gamma)
                throw ConstructionFailed("delta_lattice", "separation below delta/5");
        }
    }

    // verify the 5*delta net property on a polar probe grid
    const double net = 5.0 * delta;
    for (int ir = 0; ir <= 48; ++ir) {
        const double pr = coverage_radius * ir / 48.0;
        for (int j = 0; j < 64; ++j) {
            const cplx z = std::polar(pr, kTwoPi * j / 64.0);
            bool hit = false;
            for (const cplx& p : lat.points) {
                if (rho(z, p) < net) {
                    hit = true;
                    break;
                }
            }
            if (!hit) throw ConstructionFailed("delta_lattice", "net property failed at a probe");
        }
    }
    return lat;
}

double PolarGrid::angle(int j) const { return kTwoPi * j / n_angles; }

cplx PolarGrid::point(std::size_t i_r, int j) const { return std::polar(radii[i_r], angle(j)); }

PolarGrid make_polar_grid(std::vector<double> radii, int n_angles,
                          const std::function<double(cplx)>& f) {
    std::sort(radii.begin(), radii.end());
    PolarGrid g;
    g.radii = std::move(radii);
    g.n_angles = n_angles;
    g.values.resize(g.radii.size() * n_angles);
    for (std::size_t i = 0; i < g.radii.size(); ++i)
        for (int j = 0; j < n_angles; ++j) g.at(i, j) = f(g.point(i, j));
    return g;
}

NontangentialMax nontangential_max(const PolarGrid& g) {
    NontangentialMax out;
    out.values = g;
    const std::size_t nr = g.radii.size();
    for (std::size_t i = 0; i < nr; ++i) {
        const double r_out = g.radii[i];
        for (int j = 0; j < g.n_angles; ++j) {
            double best = std::abs(g.at(i, j));
            bool any = false;
            if (r_out > 0.0) {
                const double th = g.angle(j);
                for (std::size_t i2 = 0; i2 < nr && g.radii[i2] < r_out; ++i2) {
                    const double half = 0.5 * (1.0 - g.radii[i2] / r_out);
                    for (int j2 = 0; j2 < g.n_angles; ++j2) {
                        if (angle_diff(th, g.angle(j2)) < half) {
                            any = true;
                            best = std::max(best, std::abs(g.at(i2, j2)));
                        }
                    }
                }
            }
            if (!any) ++out.empty_regions;
            out.values.at(i, j) = best;
        }
    }
    return out;
}

}  // namespace lab
