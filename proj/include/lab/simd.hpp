#pragma once

#include <complex>
#include <cstddef>
#include <string>

// Data-parallel inner loops of the library: plain-array reductions and
// batched complex arithmetic. Each kernel has a scalar reference
// implementation and an AVX2+FMA variant; the active one is chosen at load
// time from CPUID (override with LAB_SIMD=scalar|avx2). The scalar versions
// are the semantics; the vector versions must agree to rounding noise and
// are equivalence-tested in tests/test_simd.cpp.

namespace lab::simd {

// sum of x[0..n)
using sum_fn = double (*)(const double*, std::size_t);
// sum of x[i]*y[i]
using dot_fn = double (*)(const double*, const double*, std::size_t);
// sum of x[i]*y[i]*z[i]
using dot3_fn = double (*)(const double*, const double*, const double*, std::size_t);
// out[i] = re[i]^2 + im[i]^2
using abs2_fn = void (*)(const double*, const double*, double*, std::size_t);
// (wr,wi) *= (xr,xi) pointwise, in place
using cmul_fn = void (*)(double*, double*, const double*, const double*, std::size_t);
// sum of w[i] * (a[i] * conj(b[i])), complex result in (re,im)
using wdot_conj_fn = void (*)(const double* w, const double* ar, const double* ai,
                              const double* br, const double* bi, std::size_t n,
                              double* re, double* im);
// Horner evaluation of a real-coefficient polynomial c[0..m) at the complex
// points (xr[i], xi[i]); results into (outr, outi).
using horner_fn = void (*)(const double* c, std::size_t m, const double* xr,
                           const double* xi, double* outr, double* outi, std::size_t n);

extern sum_fn sum;
extern dot_fn dot;
extern dot3_fn dot3;
extern abs2_fn abs2;
extern cmul_fn cmul_inplace;
extern wdot_conj_fn wdot_conj;
extern horner_fn horner;

namespace scalar {
double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
double dot3(const double* x, const double* y, const double* z, std::size_t n);
void abs2(const double* re, const double* im, double* out, std::size_t n);
void cmul_inplace(double* wr, double* wi, const double* xr, const double* xi, std::size_t n);
void wdot_conj(const double* w, const double* ar, const double* ai, const double* br,
               const double* bi, std::size_t n, double* re, double* im);
void horner(const double* c, std::size_t m, const double* xr, const double* xi,
            double* outr, double* outi, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
double dot3(const double* x, const double* y, const double* z, std::size_t n);
void abs2(const double* re, const double* im, double* out, std::size_t n);
void cmul_inplace(double* wr, double* wi, const double* xr, const double* xi, std::size_t n);
void wdot_conj(const double* w, const double* ar, const double* ai, const double* br,
               const double* bi, std::size_t n, double* re, double* im);
void horner(const double* c, std::size_t m, const double* xr, const double* xi,
            double* outr, double* outi, std::size_t n);
}  // namespace avx2
#endif

// Name of the dispatch target in use ("scalar" or "avx2").
const std::string& active_target();

inline std::complex<double> weighted_dot_conj(const double* w, const double* ar,
                                              const double* ai, const double* br,
                                              const double* bi, std::size_t n) {
    double re = 0.0, im = 0.0;
    wdot_conj(w, ar, ai, br, bi, n, &re, &im);
    return {re, im};
}

}  // namespace lab::simd
