#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace sturmspec {

/// Dense symmetric matrix in row-major storage.
struct SymMatrix {
    std::size_t n = 0;
    std::vector<double> a; // n*n

    double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    static SymMatrix zero(std::size_t n) { return {n, std::vector<double>(n * n, 0.0)}; }

    double frobenius() const {
        double s = 0;
        for (double x : a) s += x * x;
        return std::sqrt(s);
    }
};

struct EigenResult {
    std::vector<double> values;           // ascending
    std::vector<std::vector<double>> vectors; // vectors[i] pairs with values[i]
};

/// Cyclic Jacobi rotations, deterministic (p,q) sweep order; converges when
/// the off-diagonal Frobenius norm drops below 1e-13 * ||M||_F.
EigenResult jacobi_eigen(SymMatrix m, bool want_vectors = true);

inline std::vector<double> jacobi_eigenvalues(SymMatrix m) {
    return jacobi_eigen(std::move(m), false).values;
}

} // namespace sturmspec
