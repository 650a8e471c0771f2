#include "lab/simd.hpp"

#include <cstdlib>

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#endif

namespace lab::simd {

namespace scalar {

double sum(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
}

double dot(const double* x, const double* y, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

double dot3(const double* x, const double* y, const double* z, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i] * z[i];
    return s;
}

void abs2(const double* re, const double* im, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = re[i] * re[i] + im[i] * im[i];
}

void cmul_inplace(double* wr, double* wi, const double* xr, const double* xi, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double r = wr[i] * xr[i] - wi[i] * xi[i];
        double m = wr[i] * xi[i] + wi[i] * xr[i];
        wr[i] = r;
        wi[i] = m;
    }
}

void wdot_conj(const double* w, const double* ar, const double* ai, const double* br,
               const double* bi, std::size_t n, double* re, double* im) {
    double sr = 0.0, si = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        // a * conj(b)
        sr += w[i] * (ar[i] * br[i] + ai[i] * bi[i]);
        si += w[i] * (ai[i] * br[i] - ar[i] * bi[i]);
    }
    *re = sr;
    *im = si;
}

void horner(const double* c, std::size_t m, const double* xr, const double* xi,
            double* outr, double* outi, std::size_t n) {
    if (m == 0) {
        for (std::size_t i = 0; i < n; ++i) outr[i] = outi[i] = 0.0;
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        double sr = c[m - 1], si = 0.0;
        for (std::size_t k = m - 1; k-- > 0;) {
            double r = sr * xr[i] - si * xi[i] + c[k];
            si = sr * xi[i] + si * xr[i];
            sr = r;
        }
        outr[i] = sr;
        outi[i] = si;
    }
}

}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)

#define LAB_AVX2 __attribute__((target("avx2,fma")))

namespace avx2 {

LAB_AVX2 static inline double hadd(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

LAB_AVX2 double sum(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    double s = hadd(acc);
    for (; i < n; ++i) s += x[i];
    return s;
}

LAB_AVX2 double dot(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
    double s = hadd(acc);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

LAB_AVX2 double dot3(const double* x, const double* y, const double* z, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d xy = _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        acc = _mm256_fmadd_pd(xy, _mm256_loadu_pd(z + i), acc);
    }
    double s = hadd(acc);
    for (; i < n; ++i) s += x[i] * y[i] * z[i];
    return s;
}

LAB_AVX2 void abs2(const double* re, const double* im, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d r = _mm256_loadu_pd(re + i);
        __m256d m = _mm256_loadu_pd(im + i);
        _mm256_storeu_pd(out + i, _mm256_fmadd_pd(r, r, _mm256_mul_pd(m, m)));
    }
    for (; i < n; ++i) out[i] = re[i] * re[i] + im[i] * im[i];
}

LAB_AVX2 void cmul_inplace(double* wr, double* wi, const double* xr, const double* xi,
                           std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d a = _mm256_loadu_pd(wr + i);
        __m256d b = _mm256_loadu_pd(wi + i);
        __m256d c = _mm256_loadu_pd(xr + i);
        __m256d d = _mm256_loadu_pd(xi + i);
        _mm256_storeu_pd(wr + i, _mm256_fmsub_pd(a, c, _mm256_mul_pd(b, d)));
        _mm256_storeu_pd(wi + i, _mm256_fmadd_pd(a, d, _mm256_mul_pd(b, c)));
    }
    for (; i < n; ++i) {
        double r = wr[i] * xr[i] - wi[i] * xi[i];
        double m = wr[i] * xi[i] + wi[i] * xr[i];
        wr[i] = r;
        wi[i] = m;
    }
}

LAB_AVX2 void wdot_conj(const double* w, const double* ar, const double* ai, const double* br,
                        const double* bi, std::size_t n, double* re, double* im) {
    __m256d accr = _mm256_setzero_pd();
    __m256d acci = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vw = _mm256_loadu_pd(w + i);
        __m256d var = _mm256_loadu_pd(ar + i);
        __m256d vai = _mm256_loadu_pd(ai + i);
        __m256d vbr = _mm256_loadu_pd(br + i);
        __m256d vbi = _mm256_loadu_pd(bi + i);
        __m256d pr = _mm256_fmadd_pd(var, vbr, _mm256_mul_pd(vai, vbi));
        __m256d pi = _mm256_fmsub_pd(vai, vbr, _mm256_mul_pd(var, vbi));
        accr = _mm256_fmadd_pd(vw, pr, accr);
        acci = _mm256_fmadd_pd(vw, pi, acci);
    }
    double sr = hadd(accr), si = hadd(acci);
    for (; i < n; ++i) {
        sr += w[i] * (ar[i] * br[i] + ai[i] * bi[i]);
        si += w[i] * (ai[i] * br[i] - ar[i] * bi[i]);
    }
    *re = sr;
    *im = si;
}

LAB_AVX2 void horner(const double* c, std::size_t m, const double* xr, const double* xi,
                     double* outr, double* outi, std::size_t n) {
    if (m == 0) {
        for (std::size_t i = 0; i < n; ++i) outr[i] = outi[i] = 0.0;
        return;
    }
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vxr = _mm256_loadu_pd(xr + i);
        __m256d vxi = _mm256_loadu_pd(xi + i);
        __m256d sr = _mm256_set1_pd(c[m - 1]);
        __m256d si = _mm256_setzero_pd();
        for (std::size_t k = m - 1; k-- > 0;) {
            __m256d r = _mm256_fmadd_pd(sr, vxr, _mm256_set1_pd(c[k]));
            r = _mm256_fnmadd_pd(si, vxi, r);
            si = _mm256_fmadd_pd(sr, vxi, _mm256_mul_pd(si, vxr));
            sr = r;
        }
        _mm256_storeu_pd(outr + i, sr);
        _mm256_storeu_pd(outi + i, si);
    }
    if (i < n) scalar::horner(c, m, xr + i, xi + i, outr + i, outi + i, n - i);
}

}  // namespace avx2

#endif  // x86_64

namespace {

bool want_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    if (const char* env = std::getenv("LAB_SIMD")) {
        std::string v(env);
        if (v == "scalar") return false;
        if (v == "avx2") return true;
    }
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const bool use_avx2 = want_avx2();

}  // namespace

#if defined(__x86_64__) || defined(_M_X64)
sum_fn sum = use_avx2 ? avx2::sum : scalar::sum;
dot_fn dot = use_avx2 ? avx2::dot : scalar::dot;
dot3_fn dot3 = use_avx2 ? avx2::dot3 : scalar::dot3;
abs2_fn abs2 = use_avx2 ? avx2::abs2 : scalar::abs2;
cmul_fn cmul_inplace = use_avx2 ? avx2::cmul_inplace : scalar::cmul_inplace;
wdot_conj_fn wdot_conj = use_avx2 ? avx2::wdot_conj : scalar::wdot_conj;
horner_fn horner = use_avx2 ? avx2::horner : scalar::horner;
#else
sum_fn sum = scalar::sum;
dot_fn dot = scalar::dot;
dot3_fn dot3 = scalar::dot3;
abs2_fn abs2 = scalar::abs2;
cmul_fn cmul_inplace = scalar::cmul_inplace;
wdot_conj_fn wdot_conj = scalar::wdot_conj;
horner_fn horner = scalar::horner;
#endif

const std::string& active_target() {
    static const std::string name = use_avx2 ? "avx2" : "scalar";
    return name;
}

}  // namespace lab::simd
