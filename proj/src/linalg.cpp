#include "lab/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <lapacke.h>

#include "lab/errors.hpp"

namespace lab {

double CMatrix::max_asymmetry() const {
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            worst = std::max(worst, std::abs(at(i, j) - std::conj(at(j, i))));
    return worst;
}

double CMatrix::frobenius_sq() const {
    double s = 0.0;
    for (const auto& v : a) s += std::norm(v);
    return s;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& m, const char* op) {
    if (m.n == 0) return {};
    double scale = 0.0;
    for (const auto& v : m.a) scale = std::max(scale, std::abs(v));
    if (m.max_asymmetry() > 1e-10 * std::max(1.0, scale))
        throw NotHermitian(op, "asymmetry exceeds 1e-10 tolerance");

    const int n = m.n;
    std::vector<std::complex<double>> work(std::size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            work[std::size_t(i) * n + j] = 0.5 * (m.at(i, j) + std::conj(m.at(j, i)));

    std::vector<double> evals(n);
    const lapack_int info = LAPACKE_zheev(
        LAPACK_ROW_MAJOR, 'N', 'U', n,
        reinterpret_cast<lapack_complex_double*>(work.data()), n, evals.data());
    if (info != 0) throw NonConvergence(op, "zheev failed to converge");
    std::reverse(evals.begin(), evals.end());
    return evals;
}

std::vector<double> singular_values(const CMatrix& m) {
    const int n = m.n;
    CMatrix gram(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::complex<double> s{0.0, 0.0};
            for (int k = 0; k < n; ++k) s += std::conj(m.at(k, i)) * m.at(k, j);
            gram.at(i, j) = s;
        }
    std::vector<double> ev = hermitian_eigenvalues(gram, "singular_values");
    for (double& v : ev) v = std::sqrt(std::max(0.0, v));
    return ev;
}

}  // namespace lab
