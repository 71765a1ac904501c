#pragma once

#include "sturmspec/chebyshev.hpp"
#include "sturmspec/contfrac.hpp"
#include "sturmspec/poly.hpp"

#include <array>

namespace sturmspec {

/// Exact trace polynomial t_c(E, V) in E for a fixed rational V.
struct TracePoly {
    Poly coeffs; // ascending in E
    Rational V;

    int degree() const { return poly_degree(coeffs); }
    Rational eval(const Rational& E) const { return poly_eval(coeffs, E); }
    double eval(double E) const { return poly_eval_d(coeffs, E); }
};

/// tr(M_c(.,V)) with M_[0] = [[1,-V],[0,1]], M_[0,0] = [[E,-1],[1,0]] and
/// M_c = M_{c<=k-2} M_{c<=k-1}^{c_k}; digit powers go through the
/// Chebyshev closed form M^m = S_{m-1}(tr M) M - S_{m-2}(tr M) I.
/// Memoized per (c, V); safe for concurrent readers.
TracePoly trace_poly(const ContFrac& c, const Rational& V);

/// Float transfer-matrix evaluation (exponent-by-squaring for digit powers).
/// Throws TraceOverflow when an intermediate entry leaves the double range.
double trace_eval(const ContFrac& c, double E, double V);

/// Exact rational transfer-matrix evaluation at a single point; the fallback
/// behind the float path and the oracle side of dual-route checks.
Rational trace_eval_exact(const ContFrac& c, const Rational& E, const Rational& V);

/// t_{[c,n+1]}^2 + t_{[c,n]}^2 + t_c^2 - t_{[c,n+1]} t_{[c,n]} t_c - (V^2+4).
double fricke_vogt_residual(const ContFrac& c, long long n, double E, double V);
Rational fricke_vogt_residual_exact(const ContFrac& c, long long n,
                                    const Rational& E, const Rational& V);

/// Exact polynomial verification of the trace-map identities up to n_max:
///   t_[c,m,0] = t_c,   t_[c,m,1] = t_[c,m+1],
///   t_[c,n+1] = t_c t_[c,n] - t_[c,n-1],
/// and the Chebyshev form t_[c,n+1] = S_{l+1}(t_c) t_[c,n-l] - S_l(t_c) t_[c,n-l-1].
bool trace_recursion_check(const ContFrac& c, long long m, int n_max, const Rational& V);

struct TraceEdgeReport {
    double t_cm = 0;   // |t_[c,m]| at the edge
    double t_cmn = 0;  // |t_[c,m,n]| at the edge
    bool weak_implication = true;   // |t_cm| >= 2 => |t_cmn| >= 2
    bool strict_implication = true; // |t_cm| >  2 => |t_cmn| >  2
    bool interior_implication = true; // phi(c) in (0,1) and |t_cm| >= 2 => |t_cmn| > 2
};

/// Checks the trace-estimate implications at a band edge E of sigma_c(V).
/// Throws NotAnEdge when |t_c(E,V)| differs from 2 beyond `edge_tol`.
TraceEdgeReport trace_edge_estimates(const ContFrac& c, long long m, long long n,
                                     double E, double V, double edge_tol = 1e-7);

} // namespace sturmspec
