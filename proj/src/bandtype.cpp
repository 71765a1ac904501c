#include "sturmspec/bandtype.hpp"

#include "sturmspec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace sturmspec {

namespace {

bool strictly_inside(const Band& I, const BandSet& ref) {
    if (ref.full_line) return true;
    for (const Band& J : ref.bands)
        if (J.left < I.left && I.right < J.right) return true;
    return false;
}

bool weakly_inside(const Band& I, const BandSet& ref, double tol) {
    if (ref.full_line) return true;
    for (const Band& J : ref.bands)
        if (J.left <= I.left + tol && I.right <= J.right + tol) return true;
    return false;
}

/// sigma one truncation level below c (full line below level 0).
BandSet level_below(const ContFrac& c, double V, int steps) {
    ContFrac cc = c;
    for (int s = 0; s < steps; ++s) {
        if (cc.k() <= 0) {
            BandSet out;
            out.full_line = true;
            out.V = V;
            return out;
        }
        cc = cc.truncated();
    }
    return reference_spectrum(cc, V);
}

char classify_one(const ContFrac& c, const Band& I, double V,
                  const BandSet& below1, const BandSet& below2, double tol) {
    if (strictly_inside(I, below1)) return 'A';
    if (!weakly_inside(I, below1, tol) && strictly_inside(I, below2)) return 'B';
    return '?';
}

} // namespace

BackwardFlags backward_type(const ContFrac& c, int index, double V, double tol) {
    const Phi phi = evaluate(c);
    if (phi.degenerate) throw DegenerateExpansion("backward type of " + c.str());
    if (!c.extendable()) throw MalformedDigits("[c,0] not well-formed for " + c.str());
    const Band I = spectrum_bands(c, V).band(index);
    const BandSet refA = reference_spectrum(c.extended(0), V);
    const BandSet refB = reference_spectrum(c.extended(-1), V);
    BackwardFlags f;
    f.A = strictly_inside(I, refA);
    f.weakA = weakly_inside(I, refA, tol);
    f.B = strictly_inside(I, refB);
    f.weakB = weakly_inside(I, refB, tol);
    return f;
}

std::vector<TypeReport> classify(const ContFrac& c, const std::vector<double>& v_grid) {
    const Phi phi = evaluate(c);
    if (phi.degenerate) throw DegenerateExpansion("classify on degenerate expansion");
    std::vector<TypeReport> reports;
    for (double V : v_grid) {
        const BandSet bs = spectrum_bands(c, V);
        const BandSet below1 = level_below(c, V, 1);
        const BandSet below2 = level_below(c, V, 2);
        if (reports.empty()) reports.resize(bs.bands.size());
        for (std::size_t i = 0; i < bs.bands.size(); ++i) {
            const char t = classify_one(c, bs.bands[i], V, below1, below2, 1e-9);
            reports[i].index = static_cast<int>(i);
            reports[i].per_v.push_back(t);
        }
    }
    for (auto& r : reports) {
        r.final = r.per_v.empty() ? '?' : r.per_v.front();
        for (char t : r.per_v)
            if (t != r.final) r.stable = false;
        if (!r.stable || r.final == '?')
            throw std::runtime_error("inconsistent A/B classification for " + c.str() +
                                     " band " + std::to_string(r.index));
    }
    return reports;
}

void classify_bands(const ContFrac& c, BandSet& set) {
    const BandSet below1 = level_below(c, set.V, 1);
    const BandSet below2 = level_below(c, set.V, 2);
    for (auto& b : set.bands) b.type = classify_one(c, b, set.V, below1, below2, 1e-9);
}

AssociatedBands associated_bands(const ContFrac& c, int band_index, long long m,
                                 long long n, double V_ref) {
    const BandSet bs_c = spectrum_bands(c, V_ref);
    const Band I = bs_c.band(band_index);
    const BackwardFlags bw = backward_type(c, band_index, V_ref);
    if (bw.A == bw.B)
        throw std::runtime_error("backward type unresolved at V_ref for " + c.str());
    AssociatedBands out;
    out.M = static_cast<int>(bw.A ? m - 1 : m);

    const ContFrac cm = c.extended(m);
    const BandSet bs_cm = spectrum_bands(cm, V_ref);
    for (const Band& b : bs_cm.bands) {
        if (b.left > I.left && b.right < I.right) out.icm.push_back(b.index);
        if (b.left < I.left && b.right < I.right &&
            (!out.J || b.index > *out.J))
            out.J = b.index;
        if (b.left > I.left && b.right > I.right && !out.K)
            out.K = b.index;
    }
    if (static_cast<int>(out.icm.size()) != out.M)
        throw std::runtime_error("unexpected associated band count in sigma_[c,m]");

    const BandSet bs_cmn = spectrum_bands(cm.extended(n), V_ref);
    for (const Band& b : bs_cmn.bands) {
        if (!(b.left > I.left && b.right < I.right)) continue;
        // type-B bands at level [c,m,n]: not inside any band one level below
        if (!weakly_inside(b, bs_cm, 0.0)) out.icmn.push_back(b.index);
    }
    if (static_cast<int>(out.icmn.size()) != out.M + 1)
        throw std::runtime_error("unexpected associated band count in sigma_[c,m,n]");
    return out;
}

bool ForwardCheck::all() const {
    if (!A1 || !A2) return false;
    for (bool b : B1) if (!b) return false;
    for (bool b : B2) if (!b) return false;
    for (bool b : I) if (!b) return false;
    return true;
}

ForwardCheck forward_check(const ContFrac& c, int band_index, long long m,
                           double V, int n_max) {
    ForwardCheck out;
    const Band I = spectrum_bands(c, V).band(band_index);
    const ContFrac cm = c.extended(m);
    const BandSet bs_cm = spectrum_bands(cm, V);

    const AssociatedBands a1 = associated_bands(c, band_index, m, 1);
    for (int idx : a1.icm) {
        const Band& b = bs_cm.band(idx);
        if (!(b.left > I.left && b.right < I.right)) out.A1 = false;
        if (backward_type(cm, idx, V).weakB) out.A2 = false;
    }

    std::vector<int> prev = {}; // tower level n-1 (n = 1 compares against I_c)
    for (int n = 1; n <= n_max; ++n) {
        const AssociatedBands an = associated_bands(c, band_index, m, n);
        const ContFrac cmn = cm.extended(n);
        const BandSet bs_cmn = spectrum_bands(cmn, V);
        const BandSet bs_prev = n > 1 ? spectrum_bands(cm.extended(n - 1), V) : BandSet{};

        bool b1 = true, b2 = true, inter = true;
        for (std::size_t j = 0; j < an.icmn.size(); ++j) {
            const Band& bn = bs_cmn.band(an.icmn[j]);
            const Band outer = n == 1 ? I : bs_prev.band(prev.at(j));
            if (!(outer.left < bn.left && bn.right < outer.right)) b1 = false;
            if (backward_type(cmn, an.icmn[j], V).weakA) b2 = false;
        }
        // interlacing I^1_[c,m,n] < I^1_[c,m] < I^2_[c,m,n] < ... < I^{M+1}_[c,m,n]
        for (int i = 0; i < an.M; ++i) {
            const Band& wn = bs_cmn.band(an.icmn[i]);
            const Band& um = bs_cm.band(an.icm[i]);
            const Band& wn1 = bs_cmn.band(an.icmn[i + 1]);
            if (!(wn.left < um.left && wn.right < um.right)) inter = false;
            if (!(um.left < wn1.left && um.right < wn1.right)) inter = false;
        }
        out.B1.push_back(b1);
        out.B2.push_back(b2);
        out.I.push_back(inter);
        prev = an.icmn;
    }
    return out;
}

bool index_relation_check(const ContFrac& c, int band_index, long long m,
                          long long n, double V_ref) {
    const AssociatedBands a = associated_bands(c, band_index, m, n, V_ref);
    const long long ic = band_index;
    if (a.M >= 1) {
        for (int i = 0; i < a.M; ++i) {
            if (a.icmn[i] != n * a.icm[i] + ic) return false;
            if (a.icmn[i + 1] != n * (a.icm[i] + 1) + ic) return false;
        }
    } else {
        if (a.K && a.icmn[0] != n * *a.K + ic) return false;
        if (a.J && a.icmn[0] != n * (*a.J + 1) + ic) return false;
    }
    // type-B form: ind(I^1_[c,1]) = ind(I_c) + ind(J_[c,0]) + 1 = ind(I_c) + ind(K_[c,0])
    const BackwardFlags bw = backward_type(c, band_index, V_ref);
    if (bw.B) {
        const BandSet b0 = reference_spectrum(c.extended(0), V_ref);
        if (!b0.full_line) {
            const Band I = spectrum_bands(c, V_ref).band(band_index);
            std::optional<int> J0, K0;
            for (const Band& b : b0.bands) {
                if (b.left < I.left && b.right < I.right) J0 = b.index;
                if (b.left > I.left && b.right > I.right && !K0) K0 = b.index;
            }
            const AssociatedBands am1 = associated_bands(c, band_index, 1, 1, V_ref);
            if (am1.M == 1) {
                const long long i1 = am1.icm[0];
                if (J0 && i1 != ic + *J0 + 1) return false;
                if (K0 && i1 != ic + *K0) return false;
            }
        }
    }
    return true;
}

TraceLadderReport trace_ladder_check(const ContFrac& c, int band_index, long long m,
                                     int n_max, double V, double tol) {
    TraceLadderReport rep;
    const AssociatedBands a = associated_bands(c, band_index, m, 1);
    if (!a.J) return rep; // no band to the left: precondition cannot hold
    const ContFrac cm = c.extended(m);
    const Band Jv = spectrum_bands(cm, V).band(*a.J);
    const double E = Jv.right;
    const Band tower1 = spectrum_bands(cm.extended(1), V).band(a.icmn.at(0));
    if (!(E >= tower1.left && E <= tower1.right)) return rep;

    rep.applicable = true;
    rep.E = E;
    const double tc = std::fabs(trace_eval(c, E, V));
    double prev_abs = tc, prev_val = trace_eval(c, E, V);
    const double tcm = trace_eval(cm, E, V);
    for (int n = 1; n <= n_max; ++n) {
        const double tn = trace_eval(cm.extended(n), E, V);
        rep.ladder.push_back(std::fabs(tn) - tc);
        if (std::fabs(rep.ladder.back() - n * V) > tol) rep.equality = false;
        if (!(std::fabs(tn) > prev_abs)) rep.monotone = false;
        if (!(tcm * prev_val * tn > 0)) rep.sign_products = false;
        prev_abs = std::fabs(tn);
        prev_val = tn;
    }
    return rep;
}

std::string type_report_json(const ContFrac& c, const TypeReport& r) {
    char buf[160];
    std::string grid(r.per_v.begin(), r.per_v.end());
    std::snprintf(buf, sizeof buf,
                  "{\"cf\":\"%s\",\"index\":%d,\"type\":\"%c\",\"stable\":%s,\"grid\":\"%s\"}",
                  c.str().c_str(), r.index, r.final, r.stable ? "true" : "false",
                  grid.c_str());
    return buf;
}

} // namespace sturmspec
