#include "lab/weight_classes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lab/errors.hpp"
#include "lab/quadrature.hpp"

namespace lab {

namespace {

constexpr double kLn2 = 0.6931471805599453;

double grid_depth_octaves(const std::vector<double>& g) {
    double depth = 0.0;
    for (double r : g) depth = std::max(depth, -std::log2(1.0 - r));
    return depth;
}

// least half-integer exponent e in [0.5, 40] such that
//   max over r <= t of [f(r) - f(t) - e*(l(r) - l(t))] <= log C_max,
// where f = log tail and l = log(1-r). Returns {exponent, log C at it}.
std::pair<double, double> fit_half_integer_exponent(const std::vector<double>& log_tail,
                                                    const std::vector<double>& log_one_minus,
                                                    double log_c_max) {
    const std::size_t n = log_tail.size();
    for (double e = 0.5; e <= 40.0; e += 0.5) {
        double best = -std::numeric_limits<double>::infinity();
        double run_min = std::numeric_limits<double>::infinity();
        // pairs r <= t scanned backward: run_min tracks min over t >= r
        for (std::size_t k = n; k-- > 0;) {
            const double h = log_tail[k] - e * log_one_minus[k];
            if (run_min < std::numeric_limits<double>::infinity())
                best = std::max(best, h - run_min);
            run_min = std::min(run_min, h);
        }
        if (best <= log_c_max) return {e, best};
    }
    return {40.0, std::numeric_limits<double>::infinity()};
}

}  // namespace

std::vector<double> default_class_grid() {
    std::vector<double> g;
    for (int k = 0; k <= 40; ++k) g.push_back(1.0 - std::exp2(-0.25 * k));
    return g;
}

std::vector<double> refine_grid(const std::vector<double>& grid) {
    const double depth = grid_depth_octaves(grid) + 4.0;
    const int n = 8 * static_cast<int>(std::ceil(depth));
    std::vector<double> g;
    for (int k = 0; k <= n; ++k) g.push_back(1.0 - std::exp2(-depth * k / double(n)));
    return g;
}

WeightClassReport classify_weight(const RadialWeight& w, std::vector<double> grid) {
    if (grid.empty()) throw DomainError("classify_weight", "empty grid");
    std::sort(grid.begin(), grid.end());
    if (grid.back() < 0.99)
        throw DomainError("classify_weight", "grid must include points >= 0.99");
    const std::vector<double> fine = refine_grid(grid);

    auto log_doubling_sup = [&](const std::vector<double>& g) {
        double sup = -std::numeric_limits<double>::infinity();
        for (double r : g) sup = std::max(sup, w.log_tail(r) - w.log_tail(0.5 * (1.0 + r)));
        return sup;
    };
    auto log_doubling_inf = [&](const std::vector<double>& g) {
        double inf = std::numeric_limits<double>::infinity();
        for (double r : g) inf = std::min(inf, w.log_tail(r) - w.log_tail(0.5 * (1.0 + r)));
        return inf;
    };

    WeightClassReport rep;
    rep.grid = grid;

    const double sup_base = log_doubling_sup(grid);
    const double sup_fine = log_doubling_sup(fine);
    rep.in_D_hat = sup_fine <= sup_base + std::log(1.25);
    rep.doubling_constant = std::exp(sup_fine);
    rep.inconclusive = std::abs(sup_fine - sup_base - std::log(1.25)) < 0.1 * std::log(1.25);

    const double inf_base = log_doubling_inf(grid);
    const double inf_fine = log_doubling_inf(fine);
    if (inf_fine > std::log(1.02) && inf_fine >= 0.8 * inf_base) {
        rep.reverse_doubling_C = std::exp(inf_fine);
        rep.reverse_alpha = inf_fine / kLn2;
    }

    // regularity: density(r)(1-r)/tail(r) of stable bounded spread on [1/2, 1)
    auto spread = [&](const std::vector<double>& g) {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (double r : g) {
            if (r < 0.5) continue;
            const double q = w(r) * (1.0 - r) / w.tail(r);
            lo = std::min(lo, q);
            hi = std::max(hi, q);
        }
        return (lo > 0.0 && std::isfinite(hi)) ? hi / lo : std::numeric_limits<double>::infinity();
    };
    const double sp_base = spread(grid);
    const double sp_fine = spread(fine);
    rep.is_regular = rep.in_D_hat && sp_fine <= 50.0 && sp_fine <= 1.15 * sp_base;

    // fitted growth exponent on the refined grid
    std::vector<double> lt, l1;
    for (double r : fine) {
        lt.push_back(w.log_tail(r));
        l1.push_back(std::log1p(-r));
    }
    rep.beta_exponent = fit_half_integer_exponent(lt, l1, std::log(100.0)).first;
    return rep;
}

LemmaBatteryReport lemmaA_battery(const RadialWeight& w, const std::vector<double>& grid) {
    LemmaBatteryReport rep;
    const std::vector<double> fine = refine_grid(grid);

    std::vector<double> lt, l1;
    for (double r : fine) {
        lt.push_back(w.log_tail(r));
        l1.push_back(std::log1p(-r));
    }
    auto [beta, beta_logC] = fit_half_integer_exponent(lt, l1, std::log(100.0));
    rep.beta = beta;
    rep.beta_C = std::exp(beta_logC);

    // (iii): least gamma with (1-t)^g ∫_0^t (1-s)^{-g} w(s) ds <= C tail(t)
    QuadratureSpec qs;
    qs.abs_tol = 1e-12;
    qs.rel_tol = 1e-9;
    auto decay_logC = [&](double g) {
        double worst = -std::numeric_limits<double>::infinity();
        for (double t : grid) {
            if (t <= 0.0) continue;
            const double l1t = std::log1p(-t);
            auto f = [&](double s) { return std::exp(g * (l1t - std::log1p(-s))) * w(s); };
            const double num = integrate(f, 0.0, t, qs, "lemma_battery").value;
            if (num <= 0.0) continue;
            worst = std::max(worst, std::log(num) - w.log_tail(t));
        }
        return worst;
    };
    rep.gamma = 40.0;
    rep.gamma_C = std::numeric_limits<double>::infinity();
    for (double g = 0.5; g <= 40.0; g += 0.5) {
        const double c = decay_logC(g);
        if (c <= std::log(100.0)) {
            rep.gamma = g;
            rep.gamma_C = std::exp(c);
            break;
        }
    }

    // (iv): mellin(x) vs tail(1 - 1/x) over x in [1, 1000]
    {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (double x : {1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0, 200.0, 500.0, 1000.0}) {
            const double q = w.mellin(x) / w.tail(1.0 - 1.0 / x);
            lo = std::min(lo, q);
            hi = std::max(hi, q);
        }
        rep.mellin_vs_tail = {lo, hi, lo >= 0.01 && hi <= 100.0};
    }

    // (iv'): star(r) vs tail(r)(1-r) on [1/2, 1)
    {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (double r : fine) {
            if (r < 0.5) continue;
            const double q = w.star(r) / (w.tail(r) * (1.0 - r));
            lo = std::min(lo, q);
            hi = std::max(hi, q);
        }
        rep.star_vs_tail = {lo, hi, lo >= 0.01 && hi <= 100.0};
    }

    rep.all_pass = rep.beta_C <= 100.0 && rep.gamma_C <= 100.0 && rep.mellin_vs_tail.bounded &&
                   rep.star_vs_tail.bounded;
    return rep;
}

StarIterationReport star_iteration_check(const RadialWeight& w, double alpha,
                                         const std::vector<double>& grid) {
    if (!(alpha > 0.0)) throw DomainError("star_iteration_check", "alpha must be positive");
    StarIterationReport rep;
    const RadialWeight ws = RadialWeight::star_weight(w);
    const RadialWeight shifted = ws.shifted(alpha - 2.0);

    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double r : grid) {
        if (r < 0.5) continue;
        const double num = shifted.star(r);
        const double den = std::pow(1.0 - r, alpha) * ws(r);
        const double q = num / den;
        lo = std::min(lo, q);
        hi = std::max(hi, q);
    }
    rep.star_iterate = {lo, hi, lo >= 1.0 / 100.0 && hi <= 100.0};

    lo = std::numeric_limits<double>::infinity();
    hi = 0.0;
    for (int n : {1, 2, 5, 10, 20, 50, 100, 200}) {
        const double num = std::pow(n + 1.0, 2.0 - alpha) * ws.moment(double(n));
        const double den = shifted.moment(double(n));
        const double q = num / den;
        lo = std::min(lo, q);
        hi = std::max(hi, q);
    }
    rep.moment_relation = {lo, hi, lo >= 1.0 / 100.0 && hi <= 100.0};
    return rep;
}

ExtraConditionReport extra_condition_check(const RadialWeight& w) {
    auto fit = [&](const std::vector<double>& g) {
        double worst = -std::numeric_limits<double>::infinity();
        for (double r : g)
            for (double t : g) {
                if (t < r) continue;
                const double m = (t - r) / (1.0 - t * r);
                const double v = w.log_tail(m) - w.log_tail(t) + w.log_tail(r);
                worst = std::max(worst, v);
            }
        return worst;
    };
    ExtraConditionReport rep;
    const auto base = default_class_grid();
    rep.log_M_base = fit(base);
    rep.log_M_refined = fit(refine_grid(base));
    rep.holds = std::isfinite(rep.log_M_refined) &&
                rep.log_M_refined <= rep.log_M_base + std::log(1.2);
    return rep;
}

}  // namespace lab
