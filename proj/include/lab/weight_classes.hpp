#pragma once

#include <optional>
#include <vector>

#include "lab/radial_weight.hpp"

namespace lab {

// Quarter-octave grid r_k = 1 - 2^{-k/4}, k = 0..40 (reaches 1 - 2^{-10}).
std::vector<double> default_class_grid();
// Double the density and extend four octaves deeper toward the circle.
std::vector<double> refine_grid(const std::vector<double>& grid);

// Verdicts about the doubling structure of a radial weight. All "bounded
// ratio" verdicts compare the supplied grid against its refinement; a flag
// is granted only when the extremal ratio is stable under refinement.
struct WeightClassReport {
    bool in_D_hat = false;
    double doubling_constant = 0.0;  // sup over grid of tail(r)/tail((1+r)/2)
    double beta_exponent = 0.0;      // least half-integer growth exponent with C <= 100
    bool is_regular = false;
    std::optional<double> reverse_doubling_C;  // inf ratio, when > 1 and stable
    std::optional<double> reverse_alpha;       // log2 of the inf ratio
    std::vector<double> grid;
    bool inconclusive = false;
};

WeightClassReport classify_weight(const RadialWeight& w,
                                  std::vector<double> grid = default_class_grid());

struct RatioBand {
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    bool bounded = false;  // within [1/100, 100]
};

// Numerical check of the equivalent-property battery for doubling weights:
// fitted growth exponent (ii), fitted moment-decay exponent (iii), the
// Mellin-vs-tail comparison over x in [1, 1000] (iv), and star vs
// tail*(1-r) (iv'). Verifies, never proves.
struct LemmaBatteryReport {
    double beta = 0.0;
    double beta_C = 0.0;
    double gamma = 0.0;
    double gamma_C = 0.0;
    RatioBand mellin_vs_tail;
    RatioBand star_vs_tail;
    bool all_pass = false;
};

LemmaBatteryReport lemmaA_battery(const RadialWeight& w,
                                  const std::vector<double>& grid = default_class_grid());

// Iterated star-weight comparisons for the alpha-shifted scale: the star of
// (1-r)^{alpha-2} w*(r) against (1-r)^alpha w*(r) on the grid, and the
// moment relation (n+1)^{2-alpha} (w*)_n vs the moments of the shifted star.
struct StarIterationReport {
    RatioBand star_iterate;
    RatioBand moment_relation;
};

StarIterationReport star_iteration_check(const RadialWeight& w, double alpha,
                                         const std::vector<double>& grid);

// Growth condition tail(phi_t(r)) <= M tail(t)/tail(r) over 0 <= r <= t < 1,
// with phi_t(r) = (t-r)/(1-tr). Fitted log M on the base and refined grids;
// holds when the fit is stable under refinement.
struct ExtraConditionReport {
    double log_M_base = 0.0;
    double log_M_refined = 0.0;
    bool holds = false;
};

ExtraConditionReport extra_condition_check(const RadialWeight& w);

}  // namespace lab
