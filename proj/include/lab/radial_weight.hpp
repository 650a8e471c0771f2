#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace lab {

// A radial weight w on the unit disc together with its derived functionals:
//
//   tail(r)          ∫_r^1 w(s) ds
//   smoment_tail(t)  ∫_t^1 s w(s) ds
//   star(r)          ∫_r^1 w(s) log(s/r) s ds
//   moment(x)        ∫_0^1 r^{2x+1} w(r) dr
//   mellin(x)        ∫_0^1 s^x w(s) ds
//   mass()           w-measure of the disc under normalized area, = 2 moment(0)
//
// Construction validates integrability (NotIntegrable otherwise). Built-in
// families carry closed forms for as many functionals as they admit; the
// rest go through a shared graded-octave mesh toward the circle, with a
// bracketed analytic tail beyond the last node. Densities are supplied in
// u = 1 - r coordinates so nothing degenerates near the boundary.
//
// Instances are immutable after construction; integer moments up to the
// declared cache order are precomputed eagerly, so all accessors are safe
// to call concurrently.
class RadialWeight {
public:
    RadialWeight() = default;

    // (1 - r^2)^alpha, alpha > -1. alpha = 0 is the constant weight.
    static RadialWeight standard(double alpha);
    // (1-r)^{-1} (log(e/(1-r)))^{-alpha}, alpha > 1
    static RadialWeight log_power(double alpha);
    // log(e/(1-r)) - 1
    static RadialWeight log_minus();
    // exp(-c/(1-r)), c > 0
    static RadialWeight exponential(double c);
    // arbitrary nonnegative density, given as a function of u = 1 - r
    static RadialWeight custom(std::string label, std::function<double(double)> density_of_u);
    // sampled (r, w(r)) table, monotone-cubic interpolated, last value extended
    static RadialWeight table(const std::vector<std::pair<double, double>>& samples);
    // weight whose density is base.star(r)
    static RadialWeight star_weight(const RadialWeight& base);

    // (1-r)^beta * this; NotIntegrable when the result fails the check
    RadialWeight shifted(double beta) const;
    RadialWeight scaled(double factor) const;

    double operator()(double r) const;
    double density_u(double u) const;
    double tail(double r) const;
    double log_tail(double r) const;
    double smoment_tail(double t) const;
    double star(double r) const;  // r in (0,1); DomainError at r <= 0
    double moment(double x) const;
    double mellin(double x) const;
    double mass() const;
    const std::string& label() const;
    int moment_cache_order() const;

    bool valid() const { return impl_ != nullptr; }

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    explicit RadialWeight(std::shared_ptr<Impl> p);
    static std::shared_ptr<Impl> finalize(std::shared_ptr<Impl> p, int cache_order);
};

}  // namespace lab
