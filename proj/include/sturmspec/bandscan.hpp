#pragma once

#include "sturmspec/contfrac.hpp"
#include "sturmspec/floquet.hpp"
#include "sturmspec/tracepoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sturmspec {

/// One closed spectral band of sigma_c(V).
struct Band {
    double left = 0;
    double right = 0;
    int index = 0;        // 0-based, counted from the left; independent of V
    int theta_left = 0;   // 0 -> theta = 0, 1 -> theta = pi
    int theta_right = 0;
    char type = '?';      // 'A' / 'B' once classified
};

/// The spectrum sigma_c(V) as an ordered band list; full_line marks the
/// sigma = R degenerate expansions.
struct BandSet {
    bool full_line = false;
    double V = 0;
    std::vector<Band> bands;

    const Band& band(int index) const { return bands.at(index); }
    double min_edge() const { return bands.front().left; }
    double max_edge() const { return bands.back().right; }
};

struct BandScanOptions {
    bool exact = false;          // Sturm-chain isolation instead of the eigen path
    double exact_width = 1e-12;  // bisection width on the exact path
};

/// Spectral bands of sigma_c(V): edges are the eigenvalues of H(0) and
/// H(pi) paired by the alternating theta pattern (right edge of the top
/// band always theta = 0).  The exact path isolates the roots of
/// (t-2)(t+2) by Sturm chains and serves as the cross-check oracle.
/// Throws ZeroCoupling for V = 0 and DegenerateExpansion for sigma = R.
BandSet spectrum_bands(const ContFrac& c, double V, const BandScanOptions& opt = {});

/// sigma for any expansion, including the degenerate ones
/// (full line or the single band of [0,0,-1]); used by the type machinery.
BandSet reference_spectrum(const ContFrac& c, double V);

enum class BandRelation {
    strict_subset,     // I strictly inside J
    subset,            // I inside J, not strictly
    strictly_left_of,  // R(I) < L(J)
    left_of,           // L(I) < L(J) and R(I) < R(J), intervals may overlap
    strictly_right_of,
    right_of,
    equal,
    contains,          // J inside I
    none
};

BandRelation band_relation(double il, double ir, double jl, double jr, double tol = 0.0);
inline BandRelation band_relation(const Band& i, const Band& j, double tol = 0.0) {
    return band_relation(i.left, i.right, j.left, j.right, tol);
}

/// The unique zero of t_c inside a band (bisection; t_c is strictly
/// monotone across a band).
double zentrum(const ContFrac& c, const Band& band, double V);

/// theta parity of a band edge: left edge uses ind - q, right edge ind + 1 - q.
enum class Side { left, right };
int edge_theta(int band_index, Side side, long long q);

/// Admissibility parity criterion:
/// ind_c + n*ind_cm + ind_cmn == side_c + n*side_cm + side_cmn (mod 2),
/// sides encoded L = 0, R = 1.
bool admissible(long long ind_c, long long ind_cm, long long ind_cmn,
                int side_c, int side_cm, int side_cmn, long long n);

/// Hausdorff distance between two band unions (same c, two couplings).
double hausdorff_distance(const BandSet& a, const BandSet& b);

/// JSON band record {cf, V, index, left, right, theta_left, theta_right, type}.
std::string band_record_json(const ContFrac& c, double V, const Band& b);

} // namespace sturmspec
