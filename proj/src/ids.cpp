#include "sturmspec/ids.hpp"

#include "sturmspec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace sturmspec {

double ids_bruteforce(const Rational& alpha, double V, double E, long long n) {
    if (n < 1) throw std::invalid_argument("ids_bruteforce: n >= 1");
    // LDL^T inertia of the tridiagonal H|_[1,n] - E with unit hoppings.
    const double tiny = 1e-300;
    long long neg = 0;
    double d = 1.0;
    const BigInt p = num(alpha), q = den(alpha);
    BigInt r = p % q; // n*p mod q, updated incrementally
    const long long qq = q.convert_to<long long>();
    const long long pp = p.convert_to<long long>();
    long long rr = r.convert_to<long long>();
    for (long long i = 1; i <= n; ++i) {
        const int bit = rr >= qq - pp ? 1 : 0;
        const double a = V * bit - E;
        d = (i == 1) ? a : a - 1.0 / d;
        if (std::fabs(d) < tiny) d = -tiny;
        if (d < 0) ++neg;
        rr += pp;
        if (rr >= qq) rr -= qq;
    }
    return static_cast<double>(neg) / static_cast<double>(n);
}

double ids_bruteforce(const std::vector<long long>& alpha_tail, double V, double E, long long n) {
    const Phi phi = evaluate(ContFrac::from_tail(alpha_tail));
    if (phi.degenerate) throw DegenerateExpansion("ids of a degenerate expansion");
    return ids_bruteforce(phi.value, V, E, n);
}

IdsPathResult ids_path(const std::vector<long long>& alpha_tail, const BoundaryPath& path,
                       double precision) {
    const int D = static_cast<int>(alpha_tail.size());
    const auto pq = convergents(alpha_tail, D);
    const Rational alpha(pq[D].first, pq[D].second);
    auto qa_minus_p = [&](int level) -> Rational {
        if (level < 0) return Rational(-1); // q_{-1} = 0, p_{-1} = 1
        return Rational(pq[level].second) * alpha - Rational(pq[level].first);
    };

    Rational acc = -alpha;
    int level = -1;
    char label = 'R';
    for (int slot : path) {
        long long relA;
        int deltaA;
        int next_level;
        char next_label;
        if (label == 'R') {
            if (slot < 0 || slot > 1) throw DepthExceeded("invalid root slot");
            relA = slot; // u^0 is the root's single A-child
            deltaA = 0;
            next_level = slot == 0 ? 0 : 1;
            next_label = slot == 0 ? 'A' : 'B';
        } else {
            const long long M = label == 'A' ? alpha_tail.at(level) - 1 : alpha_tail.at(level);
            if (slot < 0 || slot >= 2 * M + 1) throw DepthExceeded("invalid child slot");
            deltaA = label == 'A' ? 1 : 0;
            if (slot % 2 == 1) {
                relA = (slot - 1) / 2;
                next_level = level + 1;
                next_label = 'A';
            } else {
                relA = slot / 2;
                next_level = level + 2;
                next_label = 'B';
            }
        }
        if (next_level > D) throw DepthExceeded("path deeper than the digit list");
        const int sgn = (level % 2 == 0) ? 1 : -1; // (-1)^level, level may be -1
        acc += Rational(sgn) * Rational(relA + deltaA) * qa_minus_p(level);
        level = next_level;
        label = next_label;
    }

    // Unemitted terms: levels from the final vertex upward.
    Rational bound(0);
    for (int l = std::max(level, 0); l < D; ++l) {
        Rational t = qa_minus_p(l);
        if (t < 0) t = -t;
        bound += Rational(alpha_tail.at(l) + 1) * t;
    }
    IdsPathResult res{to_double(acc), to_double(bound)};
    if (precision > 0 && res.tail_bound > precision)
        throw InsufficientDepth("ids_path: requested precision unreachable at this depth");
    return res;
}

namespace {

std::vector<std::pair<double, double>> band_union(const BandSet& a, const BandSet& b) {
    std::vector<std::pair<double, double>> iv;
    for (const Band& x : a.bands) iv.emplace_back(x.left, x.right);
    for (const Band& x : b.bands) iv.emplace_back(x.left, x.right);
    std::sort(iv.begin(), iv.end());
    std::vector<std::pair<double, double>> merged;
    for (const auto& [l, r] : iv) {
        if (!merged.empty() && l <= merged.back().second) {
            merged.back().second = std::max(merged.back().second, r);
        } else {
            merged.emplace_back(l, r);
        }
    }
    return merged;
}

double label_value(long long l, const Rational& alpha) {
    Rational v = mod_one(Rational(l) * alpha);
    return to_double(v);
}

} // namespace

std::vector<GapReport> gaps(const std::vector<long long>& alpha_tail, int k, double V) {
    if (V == 0.0) throw ZeroCoupling("gap detection needs V != 0");
    if (k < 1 || static_cast<size_t>(k + 1) > alpha_tail.size())
        throw MalformedDigits("gap level out of range");
    const std::vector<long long> tk(alpha_tail.begin(), alpha_tail.begin() + k);
    const std::vector<long long> tk1(alpha_tail.begin(), alpha_tail.begin() + k + 1);
    const BandSet sk = spectrum_bands(ContFrac::from_tail(tk), V);
    const BandSet sk1 = spectrum_bands(ContFrac::from_tail(tk1), V);
    const auto merged = band_union(sk, sk1);

    const auto pqk = convergent(alpha_tail, k);
    const long long qk = pqk.second.convert_to<long long>();
    // At n = q_{k+1} the 1/n quantization aliases small-|l| labels onto exact
    // grid hits of large |l|; a deeper convergent keeps nearest-match faithful.
    const int deep = std::min<int>(static_cast<int>(alpha_tail.size()), k + 3);
    const auto pqd = convergent(alpha_tail, deep);
    const long long n = pqd.second.convert_to<long long>();
    const Rational alpha(pqd.first, pqd.second);
    const double tol = 1.0 / static_cast<double>(qk);

    std::vector<GapReport> out;
    for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
        GapReport g;
        g.left = merged[i].second;
        g.right = merged[i + 1].first;
        const double mid = 0.5 * (g.left + g.right);
        g.ids = ids_bruteforce(alpha, V, mid, n);
        double best = 2.0;
        long long best_l = 0;
        for (long long l = -qk; l <= qk; ++l) {
            const double r = std::fabs(g.ids - label_value(l, alpha));
            if (r < best - 1e-15 || (std::fabs(r - best) <= 1e-15 && std::llabs(l) < std::llabs(best_l))) {
                best = r;
                best_l = l;
            }
        }
        g.residual = best;
        if (best <= tol) g.l = best_l;
        out.push_back(g);
    }
    return out;
}

DryTmpReport dry_tmp_verify(const std::vector<long long>& alpha_tail, int k, double V, long long L) {
    if (V == 0.0) throw ZeroCoupling("dry-tmp verification needs V != 0");
    DryTmpReport rep;
    rep.gap_list = gaps(alpha_tail, k, V);
    for (const auto& g : rep.gap_list)
        if (!g.l) rep.all_labels_matched = false;
    for (long long l = -L; l <= L; ++l) {
        if (l == 0) continue;
        bool found = false;
        for (const auto& g : rep.gap_list)
            if (g.l && *g.l == l) found = true;
        if (!found) {
            rep.every_l_realized = false;
            rep.missing_l.push_back(l);
        }
    }
    return rep;
}

NegativeVReport negative_v_check(const std::vector<long long>& alpha_tail, int k, double V) {
    if (V <= 0) throw ZeroCoupling("negative_v_check expects V > 0");
    NegativeVReport rep;
    const std::vector<long long> tk(alpha_tail.begin(), alpha_tail.begin() + k);
    const ContFrac c = ContFrac::from_tail(tk);
    const BandSet plus = spectrum_bands(c, V);
    const BandSet minus = spectrum_bands(c, -V);
    const std::size_t q = plus.bands.size();
    for (std::size_t j = 0; j < q; ++j) {
        const Band& m = minus.bands[j];
        const Band& p = plus.bands[q - 1 - j];
        rep.max_mirror_error = std::max(rep.max_mirror_error, std::fabs(m.left + p.right));
        rep.max_mirror_error = std::max(rep.max_mirror_error, std::fabs(m.right + p.left));
    }
    rep.band_mirror = rep.max_mirror_error <= 1e-10;

    // IDS complement on a few sampled paths.
    const auto qk = convergent(alpha_tail, k).second.convert_to<long long>();
    const double tol_ids = 2.0 / static_cast<double>(qk);
    const int max_level = std::min<int>(k, static_cast<int>(alpha_tail.size()));
    for (unsigned seed = 1; seed <= 5; ++seed) {
        const BoundaryPath p = sample_boundary_path(alpha_tail, seed, max_level);
        const double E = energy_value(boundary_energy(alpha_tail, p, V, 1e-9));
        const double n_gamma = ids_path(alpha_tail, p).value;
        const double lhs = ids_bruteforce(alpha_tail, -V, -E, 4 * qk);
        rep.max_ids_error = std::max(rep.max_ids_error, std::fabs(lhs - (1.0 - n_gamma)));
    }
    rep.ids_complement = rep.max_ids_error <= tol_ids;
    return rep;
}

std::string gaps_csv(const std::vector<long long>& alpha_tail, int k, double V) {
    std::ostringstream os;
    os << "alpha,V,k,gap_left,gap_right,ids,l,residual\n";
    const auto pq = convergent(alpha_tail, k + 1);
    const std::string alpha = pq.first.str() + "/" + pq.second.str();
    char buf[256];
    for (const auto& g : gaps(alpha_tail, k, V)) {
        std::snprintf(buf, sizeof buf, "%s,%.12g,%d,%.12g,%.12g,%.12g,%s,%.12g\n",
                      alpha.c_str(), V, k, g.left, g.right, g.ids,
                      g.l ? std::to_string(*g.l).c_str() : "", g.residual);
        os << buf;
    }
    return os.str();
}

} // namespace sturmspec
