#pragma once

#include "sturmspec/bandscan.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sturmspec {

struct BackwardFlags {
    bool A = false;
    bool weakA = false;
    bool B = false;
    bool weakB = false;
};

/// Backward type of band `index` of sigma_c(V):
/// A  iff strictly contained in a band of sigma_[c,0](V),
/// B  iff strictly contained in a band of sigma_[c,-1](V);
/// the weak variants use non-strict containment with tolerance `tol`.
BackwardFlags backward_type(const ContFrac& c, int index, double V, double tol = 1e-9);

/// Associated bands of I_c under the extension [c,m] / [c,m,n], resolved at
/// V_ref > 4 and addressed by index so they stay meaningful at every V.
struct AssociatedBands {
    int M = 0;                       // m-1 for backward type A, m for B
    std::vector<int> icm;            // indices of I^1..I^M in sigma_[c,m]
    std::vector<int> icmn;           // indices of I^1..I^{M+1} in sigma_[c,m,n]
    std::optional<int> J;            // rightmost band of sigma_[c,m] left of I_c
    std::optional<int> K;            // leftmost band of sigma_[c,m] right of I_c
};

AssociatedBands associated_bands(const ContFrac& c, int band_index, long long m,
                                 long long n, double V_ref = 8.0);

/// Forward-type properties re-tested at coupling V for n = 1..n_max.
struct ForwardCheck {
    bool A1 = true; // I^i_[c,m] strictly inside I_c
    bool A2 = true; // I^i_[c,m] not of weak backward type B
    std::vector<bool> B1; // tower property per n
    std::vector<bool> B2; // not weak backward type A per n
    std::vector<bool> I;  // interlacing per n
    bool all() const;
};

ForwardCheck forward_check(const ContFrac& c, int band_index, long long m,
                           double V, int n_max);

struct TypeReport {
    int index = 0;
    char final = '?'; // 'A' or 'B'
    bool stable = true;
    std::vector<char> per_v;
};

/// A/B classification over a V grid using the containment characterization:
/// A iff strictly contained one level below; B iff not contained one level
/// below and strictly contained two levels below.  Throws when a band gets
/// inconsistent labels across the grid.
std::vector<TypeReport> classify(const ContFrac& c, const std::vector<double>& v_grid);

/// Classify the bands of an already-computed set at its own V.
void classify_bands(const ContFrac& c, BandSet& set);

/// Index identities between I_c, I^i_[c,m] and I^j_[c,m,n]:
///   ind(I^i_[c,m,n])   = n*ind(I^i_[c,m]) + ind(I_c)
///   ind(I^{i+1}_[c,m,n]) = n*(ind(I^i_[c,m])+1) + ind(I_c)
/// plus the M = 0 form through K and the type-B [c,1] form.
bool index_relation_check(const ContFrac& c, int band_index, long long m,
                          long long n, double V_ref = 8.0);

struct TraceLadderReport {
    bool applicable = false; // precondition E(V) inside the first tower band
    double E = 0;
    std::vector<double> ladder;    // |t_[c,m,n](E)| - |t_c(E)| for n = 1..n_max
    bool equality = true;          // ladder[n-1] == n*V within tolerance
    bool monotone = true;          // |t_[c,m,n]| strictly increasing in n
    bool sign_products = true;     // admissible triple products are +1
};

/// Trace ladder |t_[c,m,n](E)| - |t_c(E)| = n*V at E = R(J_[c,m](V)) for a
/// type-B band; skipped (applicable = false) when E falls outside the first
/// tower band.
TraceLadderReport trace_ladder_check(const ContFrac& c, int band_index, long long m,
                                     int n_max, double V, double tol = 1e-8);

std::string type_report_json(const ContFrac& c, const TypeReport& r);

} // namespace sturmspec
