#pragma once

#include "sturmspec/contfrac.hpp"
#include "sturmspec/jacobi.hpp"

#include <vector>

namespace sturmspec {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr std::size_t kDenseEigenCap = 600;

/// Periodic-approximant matrix H(theta): nq x nq, diagonal n repetitions of
/// V*omega(0..q-1), unit off-diagonals, and the corner phase
/// e^{-i theta} at (1,nq) / e^{i theta} at (nq,1); theta in {0, pi} keeps it
/// real symmetric.  For size 1 the corner folds onto the diagonal (2 cos theta).
struct FloquetMatrix {
    long long q = 0;     // period length
    int n_copies = 1;
    double theta = 0;    // 0 or pi
    double V = 0;
    std::vector<double> diag; // size n_copies * q

    std::size_t size() const { return diag.size(); }
    double corner() const { return std::cos(theta); }
    SymMatrix dense() const;
};

FloquetMatrix build_floquet(const ContFrac& c, double V, double theta, int n_copies = 1);
FloquetMatrix build_floquet(const std::vector<int>& word, double V, double theta, int n_copies = 1);

/// All eigenvalues with multiplicity, ascending, via the dense Jacobi solver.
/// Throws SizeCap above kDenseEigenCap.
std::vector<double> floquet_eigenvalues(const FloquetMatrix& m);

/// Eigenvalue counting function N(lambda; H) = #{ eigenvalues < lambda },
/// computed by LDL^T inertia of the bordered tridiagonal; O(size) per call.
long long floquet_counting(double lambda, const FloquetMatrix& m);

/// All eigenvalues by counting-function bisection; works at any size.
std::vector<double> floquet_eigenvalues_bisect(const FloquetMatrix& m, double tol = 1e-12);

/// Single eigenvalue lambda_j by counting-function bisection.
double floquet_eigenvalue_at(const FloquetMatrix& m, long long j, double tol = 1e-12);

/// Eigenvalues inside [lo, hi] with their global indices; any size.
std::vector<std::pair<long long, double>>
floquet_eigenvalues_window(const FloquetMatrix& m, double lo, double hi, double tol = 1e-12);

} // namespace sturmspec
