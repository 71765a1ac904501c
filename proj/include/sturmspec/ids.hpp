#pragma once

#include "sturmspec/bandscan.hpp"
#include "sturmspec/spectree.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sturmspec {

/// Integrated density of states of the finite restriction H|_[1,n] with the
/// 1-based Sturmian potential V*omega_alpha(i): (#eigenvalues < E) / n by
/// Sturm-sequence inertia counting on the open tridiagonal (no corners).
double ids_bruteforce(const Rational& alpha, double V, double E, long long n);
double ids_bruteforce(const std::vector<long long>& alpha_tail, double V, double E, long long n);

struct IdsPathResult {
    double value = 0;      // N_alpha(gamma), V-independent
    double tail_bound = 0; // truncation bound from the unexpanded levels
};

/// Boundary-path IDS via the relative A-index series
///   N_alpha(gamma) = -alpha + sum_j (-1)^{l(j)} (relA + deltaA) (q_l alpha - p_l).
/// Throws InsufficientDepth when `precision` > 0 and the truncation bound
/// exceeds it.
IdsPathResult ids_path(const std::vector<long long>& alpha_tail, const BoundaryPath& path,
                       double precision = 0);

struct GapReport {
    double left = 0;
    double right = 0;
    double ids = 0;                // IDS value at the gap midpoint
    std::optional<long long> l;    // matched label: ids ~ l*alpha mod 1
    double residual = 0;           // |ids - (l alpha mod 1)|
};

/// Gaps of the union sigma_{alpha_k} U sigma_{alpha_{k+1}} with gap labels;
/// IDS evaluated at n = q_{k+1}, labels matched with tolerance 1/q_k
/// (ties resolved to the smaller |l|).
std::vector<GapReport> gaps(const std::vector<long long>& alpha_tail, int k, double V);

struct DryTmpReport {
    std::vector<GapReport> gap_list;
    bool all_labels_matched = true;       // every gap within 1/q_k of some l*alpha mod 1
    bool every_l_realized = true;         // every 1 <= |l| <= L carried by some gap
    std::vector<long long> missing_l;     // unmet labels (reported, not fatal at shallow k)
};

/// Desk-scale gap-label verification: (i) every detected gap label matches
/// some l*alpha mod 1 with |l| <= q_k within 1/q_k, (ii) every |l| <= L is
/// realized by a gap.  Throws ZeroCoupling for V = 0.
DryTmpReport dry_tmp_verify(const std::vector<long long>& alpha_tail, int k, double V, long long L);

struct NegativeVReport {
    bool band_mirror = true;    // sigma(-V) = -sigma(V) edgewise
    bool ids_complement = true; // N_{alpha,-V}(-E(gamma;V)) = 1 - N_alpha(gamma)
    double max_mirror_error = 0;
    double max_ids_error = 0;
};

NegativeVReport negative_v_check(const std::vector<long long>& alpha_tail, int k, double V);

/// CSV rows: alpha,V,k,gap_left,gap_right,ids,l,residual
std::string gaps_csv(const std::vector<long long>& alpha_tail, int k, double V);

} // namespace sturmspec
