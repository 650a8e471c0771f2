#include "lab/radial_weight.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <unordered_map>

#include "lab/errors.hpp"
#include "lab/quadrature.hpp"
#include "lab/simd.hpp"

namespace lab {

namespace {

constexpr int kRSidePanels = 60;  // dyadic panels toward r = 0
constexpr int kUSidePanels = 48;  // dyadic panels toward r = 1
constexpr int kDefaultMomentCache = 512;

constexpr double kNodes15[8] = {
    0.0000000000000000, 0.2011940939974345, 0.3941513470775634, 0.5709721726085388,
    0.7244177313601701, 0.8482065834104272, 0.9372733924007060, 0.9879925180204854,
};
constexpr double kWeights15[8] = {
    0.2025782419255613, 0.1984314853271116, 0.1861610000155622, 0.1662692058169940,
    0.1395706779261543, 0.1071592204671719, 0.0703660474881081, 0.0307532419961173,
};

// Fritsch-Carlson monotone cubic interpolant on a sample table.
struct Pchip {
    std::vector<double> x, y, d;

    explicit Pchip(const std::vector<std::pair<double, double>>& samples) {
        for (auto& [xi, yi] : samples) {
            x.push_back(xi);
            y.push_back(yi);
        }
        const std::size_t n = x.size();
        d.assign(n, 0.0);
        if (n < 2) return;
        std::vector<double> h(n - 1), del(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            h[i] = x[i + 1] - x[i];
            del[i] = (y[i + 1] - y[i]) / h[i];
        }
        d[0] = del[0];
        d[n - 1] = del[n - 2];
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (del[i - 1] * del[i] <= 0.0) {
                d[i] = 0.0;
            } else {
                const double w1 = 2.0 * h[i] + h[i - 1];
                const double w2 = h[i] + 2.0 * h[i - 1];
                d[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
            }
        }
    }

    double operator()(double q) const {
        if (x.empty()) return 0.0;
        if (q <= x.front()) return y.front();
        if (q >= x.back()) return y.back();
        std::size_t i = std::upper_bound(x.begin(), x.end(), q) - x.begin() - 1;
        const double h = x[i + 1] - x[i];
        const double t = (q - x[i]) / h;
        const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
        const double h10 = t * (1 - t) * (1 - t);
        const double h01 = t * t * (3 - 2 * t);
        const double h11 = t * t * (t - 1);
        return h00 * y[i] + h10 * h * d[i] + h01 * y[i + 1] + h11 * h * d[i + 1];
    }
};

double e1(double x) { return -std::expint(-x); }

}  // namespace

struct RadialWeight::Impl {
    std::string label;
    std::function<double(double)> dens_u;  // density as function of u = 1-r

    // optional closed forms
    std::function<double(double)> tail_u;          // tail as function of u
    std::function<double(double)> log_tail_u;      // log tail (underflow-safe)
    std::function<double(double)> smoment_tail_r;  // m(t) = ∫_t^1 s w(s) ds
    std::function<double(double)> moment_x;        // moment(x)
    std::function<double(double)> star_r;          // star(r)

    struct Mesh {
        std::vector<double> r, logr, w, dens;  // nodes, log r, quad weights, density
        double r_end = 0.0;                    // last covered radius
        double tail_at_end = 0.0;              // ∫_{r_end}^1 w
    };
    Mesh mesh;
    std::vector<double> int_moments;  // moment(n) for n = 0..cache
    double total_mass = 0.0;

    mutable std::mutex memo_mx;
    mutable std::unordered_map<double, double> tail_memo, star_memo, smoment_memo;

    double dens_r(double r) const { return dens_u(1.0 - r); }

    double tail_impl(double r) const {
        if (r >= 1.0) return 0.0;
        if (r < 0.0) r = 0.0;
        if (tail_u) return tail_u(1.0 - r);
        {
            std::lock_guard lk(memo_mx);
            auto it = tail_memo.find(r);
            if (it != tail_memo.end()) return it->second;
        }
        double v = integrate_graded_u(dens_u, r, 1e-13, 1e-10, 360, "omega_hat").value;
        std::lock_guard lk(memo_mx);
        tail_memo.emplace(r, v);
        return v;
    }

    double log_tail_impl(double r) const {
        if (log_tail_u) return log_tail_u(1.0 - r);
        const double t = tail_impl(r);
        return t > 0.0 ? std::log(t) : -std::numeric_limits<double>::infinity();
    }

    // m(t) = tail(t) - ∫_0^{1-t} u dens_u(u) du ; the correction integrand has
    // geometrically contracting octave masses whenever the weight is integrable.
    double smoment_impl(double t) const {
        if (t >= 1.0) return 0.0;
        if (t < 0.0) t = 0.0;
        if (smoment_tail_r) return smoment_tail_r(t);
        {
            std::lock_guard lk(memo_mx);
            auto it = smoment_memo.find(t);
            if (it != smoment_memo.end()) return it->second;
        }
        auto g = [&](double u) { return u * dens_u(u); };
        double corr = integrate_graded_u(g, t, 1e-13, 1e-10, 360, "smoment_tail").value;
        double v = tail_impl(t) - corr;
        std::lock_guard lk(memo_mx);
        smoment_memo.emplace(t, v);
        return v;
    }

    // star(r) = log(1/r) m(r) - ∫_r^1 s log(1/s) w(s) ds
    double star_impl(double r) const {
        if (r <= 0.0) throw DomainError("omega_star", "star weight undefined at r = 0");
        if (r >= 1.0) return 0.0;
        if (star_r) return star_r(r);
        {
            std::lock_guard lk(memo_mx);
            auto it = star_memo.find(r);
            if (it != star_memo.end()) return it->second;
        }
        auto g = [&](double u) {
            const double s = 1.0 - u;
            return -s * std::log1p(-u) * dens_u(u);
        };
        const double k = integrate_graded_u(g, r, 1e-14, 1e-11, 360, "omega_star").value;
        double v = -std::log(r) * smoment_impl(r) - k;
        if (v < 0.0) v = 0.0;  // rounding guard near the boundary
        std::lock_guard lk(memo_mx);
        star_memo.emplace(r, v);
        return v;
    }

    double moment_impl(double x) const {
        if (!(x > -1.0)) throw DomainError("moment", "moment order must exceed -1");
        if (x == std::floor(x) && x >= 0.0 && x < double(int_moments.size()))
            return int_moments[std::size_t(x)];
        if (moment_x) return moment_x(x);
        return moment_mesh(x);
    }

    double moment_mesh(double x) const {
        const std::size_t n = mesh.r.size();
        std::vector<double> p(n);
        const double e = 2.0 * x + 1.0;
        for (std::size_t i = 0; i < n; ++i) p[i] = std::exp(e * mesh.logr[i]);
        double v = simd::dot3(mesh.w.data(), p.data(), mesh.dens.data(), n);
        // bracketed tail beyond the mesh: r^{2x+1} between r_end^{2x+1} and 1
        const double hi = mesh.tail_at_end;
        const double lo = hi * std::exp(e * std::log(mesh.r_end));
        return v + 0.5 * (lo + hi);
    }

    void build_mesh() {
        auto add_panel = [&](double a, double b, bool r_side) {
            const double c = 0.5 * (a + b), h = 0.5 * (b - a);
            for (int i = 0; i < 8; ++i) {
                const int copies = (i == 0) ? 1 : 2;
                for (int sgn = 0; sgn < copies; ++sgn) {
                    const double d = (sgn == 0 ? 1.0 : -1.0) * h * kNodes15[i];
                    const double q = c + d;  // r if r_side else u
                    const double r = r_side ? q : 1.0 - q;
                    const double u = r_side ? 1.0 - q : q;
                    mesh.r.push_back(r);
                    mesh.logr.push_back(r_side ? std::log(q) : std::log1p(-q));
                    mesh.w.push_back(kWeights15[i] * h);
                    const double dv = dens_u(u);
                    if (!(dv >= 0.0) || !std::isfinite(dv))
                        throw DomainError("RadialWeight", label + ": density must be finite and >= 0");
                    mesh.dens.push_back(dv);
                }
            }
        };
        for (int k = kRSidePanels; k >= 1; --k)
            add_panel(std::ldexp(1.0, -k - 1), std::ldexp(1.0, -k), true);
        for (int j = 1; j <= kUSidePanels; ++j)
            add_panel(std::ldexp(1.0, -j - 1), std::ldexp(1.0, -j), false);
        mesh.r_end = 1.0 - std::ldexp(1.0, -kUSidePanels - 1);
        mesh.tail_at_end = tail_impl(mesh.r_end);
    }
};

RadialWeight::RadialWeight(std::shared_ptr<Impl> p) : impl_(std::move(p)) {}

std::shared_ptr<RadialWeight::Impl> RadialWeight::finalize(std::shared_ptr<Impl> p,
                                                           int cache_order) {
    try {
        p->build_mesh();
        const double t0 = p->tail_impl(0.0);
        if (!std::isfinite(t0)) throw NotIntegrable("RadialWeight", p->label + ": infinite mass");
        p->int_moments.resize(std::size_t(cache_order) + 1);
        for (int k = 0; k <= cache_order; ++k) {
            p->int_moments[k] =
                p->moment_x ? p->moment_x(double(k)) : p->moment_mesh(double(k));
        }
        p->total_mass = 2.0 * p->int_moments[0];
        if (!std::isfinite(p->total_mass) || p->total_mass <= 0.0)
            throw NotIntegrable("RadialWeight", p->label + ": mass must be positive and finite");
    } catch (const NonConvergence& e) {
        throw NotIntegrable("RadialWeight", p->label + ": integrability check failed (" +
                                                std::string(e.what()) + ")");
    }
    return p;
}

RadialWeight RadialWeight::standard(double alpha) {
    if (!(alpha > -1.0)) throw DomainError("RadialWeight::standard", "alpha must exceed -1");
    auto p = std::make_shared<Impl>();
    p->label = alpha == 0.0 ? "standard(0)" : "standard(" + std::to_string(alpha) + ")";
    p->dens_u = [alpha](double u) { return std::pow(u * (2.0 - u), alpha); };
    const int ia = (alpha == std::floor(alpha) && alpha >= 0 && alpha <= 4) ? int(alpha) : -1;
    if (ia >= 0) {
        p->tail_u = [ia](double u) {
            const double r = 1.0 - u;
            switch (ia) {
                case 0: return u;
                case 1: return r * r * r / 3.0 - r + 2.0 / 3.0;
                case 2: return -std::pow(r, 5) / 5.0 + 2.0 * r * r * r / 3.0 - r + 8.0 / 15.0;
                case 3:
                    return std::pow(r, 7) / 7.0 - 3.0 * std::pow(r, 5) / 5.0 + r * r * r - r +
                           16.0 / 35.0;
                default:
                    return -std::pow(r, 9) / 9.0 + 4.0 * std::pow(r, 7) / 7.0 -
                           6.0 * std::pow(r, 5) / 5.0 + 4.0 * r * r * r / 3.0 - r + 128.0 / 315.0;
            }
        };
    }
    p->smoment_tail_r = [alpha](double t) {
        return std::pow(1.0 - t * t, alpha + 1.0) / (2.0 * (alpha + 1.0));
    };
    p->moment_x = [alpha](double x) {
        return 0.5 * std::exp(std::lgamma(x + 1.0) + std::lgamma(alpha + 1.0) -
                              std::lgamma(x + alpha + 2.0));
    };
    if (ia == 0) {
        p->star_r = [](double r) { return 0.25 * r * r - 0.5 * std::log(r) - 0.25; };
    } else if (ia == 1) {
        p->star_r = [](double r) {
            const double r2 = r * r;
            return -r2 * r2 / 16.0 + 0.25 * r2 - 0.25 * std::log(r) - 3.0 / 16.0;
        };
    }
    return RadialWeight(finalize(std::move(p), kDefaultMomentCache));
}

RadialWeight RadialWeight::log_power(double alpha) {
    if (!(alpha > 1.0)) throw DomainError("RadialWeight::log_power", "alpha must exceed 1");
    auto p = std::make_shared<Impl>();
    p->label = "log_power(" + std::to_string(alpha) + ")";
    p->dens_u = [alpha](double u) {
        if (u <= 0.0) return 0.0;
        return 1.0 / (u * std::pow(1.0 - std::log(u), alpha));
    };
    p->tail_u = [alpha](double u) {
        if (u <= 0.0) return 0.0;
        return std::pow(1.0 - std::log(u), 1.0 - alpha) / (alpha - 1.0);
    };
    p->log_tail_u = [alpha](double u) {
        return (1.0 - alpha) * std::log(1.0 - std::log(u)) - std::log(alpha - 1.0);
    };
    return RadialWeight(finalize(std::move(p), kDefaultMomentCache));
}

RadialWeight RadialWeight::log_minus() {
    auto p = std::make_shared<Impl>();
    p->label = "log_minus";
    p->dens_u = [](double u) { return u <= 0.0 ? 0.0 : -std::log(u); };
    p->tail_u = [](double u) { return u <= 0.0 ? 0.0 : u * (1.0 - std::log(u)); };
    p->smoment_tail_r = [](double t) {
        const double L = -std::log1p(-t);  // log(1/(1-t))
        return 0.5 * (1.0 - t * t) * L + 0.25 * (1.0 - t) * (3.0 + t);
    };
    return RadialWeight(finalize(std::move(p), kDefaultMomentCache));
}

RadialWeight RadialWeight::exponential(double c) {
    if (!(c > 0.0)) throw DomainError("RadialWeight::exponential", "c must be positive");
    auto p = std::make_shared<Impl>();
    p->label = "exponential(" + std::to_string(c) + ")";
    p->dens_u = [c](double u) { return u <= 0.0 ? 0.0 : std::exp(-c / u); };
    p->tail_u = [c](double u) {
        if (u <= 0.0) return 0.0;
        const double a = c / u;
        if (a > 700.0) return 0.0;  // below double range; use log_tail instead
        return u * std::exp(-a) - c * e1(a);
    };
    p->log_tail_u = [c](double u) {
        if (u <= 0.0) return -std::numeric_limits<double>::infinity();
        const double a = c / u;
        if (a <= 30.0) {
            const double t = u * std::exp(-a) - c * e1(a);
            return std::log(t);
        }
        // tail = e^{-a} u^2/c (1 - 2/a + 6/a^2 - 24/a^3 + ...)
        const double s = 1.0 - 2.0 / a + 6.0 / (a * a) - 24.0 / (a * a * a);
        return -a + 2.0 * std::log(u) - std::log(c) + std::log(s);
    };
    return RadialWeight(finalize(std::move(p), kDefaultMomentCache));
}

RadialWeight RadialWeight::custom(std::string label, std::function<double(double)> density_of_u) {
    auto p = std::make_shared<Impl>();
    p->label = std::move(label);
    p->dens_u = std::move(density_of_u);
    return RadialWeight(finalize(std::move(p), kDefaultMomentCache));
}

RadialWeight RadialWeight::table(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 2)
        throw DomainError("RadialWeight::table", "need at least two samples");
    auto interp = std::make_shared<Pchip>(samples);
    auto p = std::make_shared<Impl>();
    p->label = "table[" + std::to_string(samples.size()) + "]";
    p->dens_u = [interp](double u) { return std::max(0.0, (*interp)(1.0 - u)); };
    return RadialWeight(finalize(std::move(p), kDefaultMomentCache));
}

RadialWeight RadialWeight::star_weight(const RadialWeight& base) {
    if (!base.valid()) throw DomainError("RadialWeight::star_weight", "invalid base weight");
    auto b = base.impl_;
    auto p = std::make_shared<Impl>();
    p->label = "star(" + b->label + ")";
    p->dens_u = [b](double u) {
        const double r = 1.0 - u;
        if (r <= 0.0) return b->star_impl(1e-300);
        if (r >= 1.0) return 0.0;
        return b->star_impl(r);
    };
    return RadialWeight(finalize(std::move(p), kDefaultMomentCache));
}

RadialWeight RadialWeight::shifted(double beta) const {
    if (!valid()) throw DomainError("RadialWeight::shifted", "invalid weight");
    if (beta == 0.0) return *this;
    auto b = impl_;
    auto p = std::make_shared<Impl>();
    p->label = b->label + "*(1-r)^" + std::to_string(beta);
    p->dens_u = [b, beta](double u) {
        if (u <= 0.0) return 0.0;
        return std::pow(u, beta) * b->dens_u(u);
    };
    return RadialWeight(finalize(std::move(p), kDefaultMomentCache));
}

RadialWeight RadialWeight::scaled(double factor) const {
    if (!valid()) throw DomainError("RadialWeight::scaled", "invalid weight");
    if (!(factor > 0.0)) throw DomainError("RadialWeight::scaled", "factor must be positive");
    auto b = impl_;
    auto p = std::make_shared<Impl>();
    p->label = std::to_string(factor) + "*" + b->label;
    p->dens_u = [b, factor](double u) { return factor * b->dens_u(u); };
    if (b->tail_u) p->tail_u = [b, factor](double u) { return factor * b->tail_u(u); };
    if (b->log_tail_u)
        p->log_tail_u = [b, factor](double u) { return std::log(factor) + b->log_tail_u(u); };
    if (b->smoment_tail_r)
        p->smoment_tail_r = [b, factor](double t) { return factor * b->smoment_tail_r(t); };
    if (b->moment_x) p->moment_x = [b, factor](double x) { return factor * b->moment_x(x); };
    if (b->star_r) p->star_r = [b, factor](double r) { return factor * b->star_r(r); };
    return RadialWeight(finalize(std::move(p), kDefaultMomentCache));
}

RadialWeight RadialWeight::with_moment_cache(int max_order) const {
    if (!valid()) throw DomainError("RadialWeight::with_moment_cache", "invalid weight");
    if (max_order <= moment_cache_order()) return *this;
    auto b = impl_;
    auto p = std::make_shared<Impl>();
    p->label = b->label;
    p->dens_u = b->dens_u;
    p->tail_u = b->tail_u;
    p->log_tail_u = b->log_tail_u;
    p->smoment_tail_r = b->smoment_tail_r;
    p->moment_x = b->moment_x;
    p->star_r = b->star_r;
    return RadialWeight(finalize(std::move(p), max_order));
}

double RadialWeight::operator()(double r) const { return impl_->dens_u(1.0 - r); }
double RadialWeight::density_u(double u) const { return impl_->dens_u(u); }
double RadialWeight::tail(double r) const { return impl_->tail_impl(r); }
double RadialWeight::log_tail(double r) const { return impl_->log_tail_impl(r); }
double RadialWeight::smoment_tail(double t) const { return impl_->smoment_impl(t); }
double RadialWeight::star(double r) const { return impl_->star_impl(r); }
double RadialWeight::moment(double x) const { return impl_->moment_impl(x); }
double RadialWeight::mellin(double x) const {
    if (!(x >= 0.0)) throw DomainError("mellin", "order must be nonnegative");
    return impl_->moment_impl(0.5 * (x - 1.0));
}
double RadialWeight::mass() const { return impl_->total_mass; }
const std::string& RadialWeight::label() const { return impl_->label; }
int RadialWeight::moment_cache_order() const { return int(impl_->int_moments.size()) - 1; }

}  // namespace lab
