#pragma once

#include <complex>
#include <vector>

namespace lab {

// Dense complex matrix, row-major.
struct CMatrix {
    int n = 0;
    std::vector<std::complex<double>> a;

    CMatrix() = default;
    explicit CMatrix(int dim) : n(dim), a(std::size_t(dim) * dim) {}
    std::complex<double>& at(int i, int j) { return a[std::size_t(i) * n + j]; }
    const std::complex<double>& at(int i, int j) const { return a[std::size_t(i) * n + j]; }

    double max_asymmetry() const;  // max |a_ij - conj(a_ji)|
    double frobenius_sq() const;   // sum |a_ij|^2
};

// Eigenvalues of a Hermitian matrix, sorted descending. The input is checked
// against tolerance 1e-10 (relative to its magnitude) and symmetrized before
// the solve; NotHermitian otherwise. Backed by LAPACK zheev.
std::vector<double> hermitian_eigenvalues(const CMatrix& m,
                                          const char* op = "hermitian_eigenvalues");

// Singular values of a (generally non-Hermitian) matrix via the Hermitian
// Gram form A*A, sorted descending.
std::vector<double> singular_values(const CMatrix& m);

}  // namespace lab
