#pragma once

#include "sturmspec/floquet.hpp"

#include <vector>

namespace sturmspec {

/// lambda_{j-1}(X + vv^T) <= lambda_j(X) <= lambda_j(X + vv^T) for all j.
bool rank1_interlace_check(const SymMatrix& x, const std::vector<double>& v,
                           double tol = 1e-10);

struct Rank2Decomp {
    SymMatrix Y;              // H_[c,m,n](theta_cmn)
    SymMatrix Z;              // parity-ordered direct sum H^xn_[c,m] (+) H_c
    std::vector<double> x, y; // Y - Z = xx^T - yy^T
    bool cm_block_first = false;
    double residual = 0;      // ||Y - Z - xx^T + yy^T||_F
    double trace = 0;         // tr(Y - Z)
    double third_singular = 0;
    bool orthogonality_forces_zero = true; // Lemma parts (a), (b)
};

/// Explicit perturbation decomposition between H_[c,m,n](theta_cmn) and the
/// direct sum of H^xn_[c,m](theta_cm) and H_c(theta_c), in the block order
/// fixed by the word concatenation.  Throws NotAdmissible unless
/// theta_c + theta_cm + theta_cmn lies in {0, 2pi}.
Rank2Decomp rank2_decomposition(const ContFrac& c, long long m, long long n, double V,
                                double theta_c, double theta_cm, double theta_cmn);

struct InterlaceReport {
    bool holds = true;        // lambda_{j-1}(Y) <= lambda_j(X) <= lambda_{j+1}(Y)
    bool strict_ok = true;    // strict at simple eigenvalues of X
    double min_margin = 0;    // smallest strict margin observed
    std::vector<double> x_eigen, y_eigen;
};

/// Eigenvalue interlacing between Y = H_[c,m,n](theta_cmn) and
/// X = H^xn_[c,m](theta_cm) (+) H_c(theta_c); strictness is asserted at
/// X-eigenvalues that are simple at gap tolerance `simple_gap`.
InterlaceReport interlacing_check(const ContFrac& c, long long m, long long n, double V,
                                  double theta_c, double theta_cm, double theta_cmn,
                                  double simple_gap = 1e-9);

} // namespace sturmspec
