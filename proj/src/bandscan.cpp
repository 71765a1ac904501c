#include "sturmspec/bandscan.hpp"

#include "sturmspec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace sturmspec {

namespace {

bool trace_is_constant(const ContFrac& c) {
    // t is identically 2 exactly for [0], [0,0,0], [0,0,1,-1].
    const auto& d = c.digits();
    return d == std::vector<long long>{0} || d == std::vector<long long>{0, 0, 0} ||
           d == std::vector<long long>{0, 0, 1, -1};
}

BandSet bands_from_edges(std::vector<double> theta0, std::vector<double> thetapi, double V) {
    const std::size_t q = theta0.size();
    BandSet out;
    out.V = V;
    out.bands.resize(q);
    for (std::size_t j = 0; j < q; ++j) {
        // counted from the top: right edge of band q-1 has theta = 0,
        // parities alternate downwards (gap edges share theta).
        Band& b = out.bands[j];
        b.index = static_cast<int>(j);
        b.theta_left = edge_theta(b.index, Side::left, static_cast<long long>(q));
        b.theta_right = edge_theta(b.index, Side::right, static_cast<long long>(q));
        b.left = (b.theta_left == 0) ? theta0[j] : thetapi[j];
        b.right = (b.theta_right == 0) ? theta0[j] : thetapi[j];
    }
    return out;
}

BandSet exact_bands(const ContFrac& c, double V, const BandScanOptions& opt) {
    const Rational Vr = rational_from_double(V);
    const TracePoly tp = trace_poly(c, Vr);
    const int q = tp.degree();
    const Rational box = Rational(3) + (Vr < 0 ? -Vr : Vr);
    const Rational eps = rational_from_double(opt.exact_width);

    auto roots_of = [&](const Rational& level) {
        Poly p = poly_shift_const(tp.coeffs, -level);
        auto iso = isolate_roots(p, -box, box);
        std::vector<double> xs;
        for (auto& [lo, hi] : iso) {
            auto [a, b] = refine_root(p, lo, hi, eps);
            xs.push_back(to_double((a + b) / 2));
        }
        std::sort(xs.begin(), xs.end());
        return xs;
    };
    std::vector<double> theta0 = roots_of(Rational(2));   // t = 2 cos 0
    std::vector<double> thetapi = roots_of(Rational(-2)); // t = 2 cos pi
    if (static_cast<int>(theta0.size()) != q || static_cast<int>(thetapi.size()) != q)
        throw std::logic_error("exact path: unexpected root count for " + c.str());
    return bands_from_edges(std::move(theta0), std::move(thetapi), V);
}

BandSet eigen_bands(const ContFrac& c, double V) {
    const FloquetMatrix h0 = build_floquet(c, V, 0.0);
    const FloquetMatrix hpi = build_floquet(c, V, kPi);
    std::vector<double> e0, epi;
    if (h0.size() <= kDenseEigenCap) {
        e0 = floquet_eigenvalues(h0);
        epi = floquet_eigenvalues(hpi);
    } else {
        e0 = floquet_eigenvalues_bisect(h0);
        epi = floquet_eigenvalues_bisect(hpi);
    }
    return bands_from_edges(std::move(e0), std::move(epi), V);
}

} // namespace

BandSet spectrum_bands(const ContFrac& c, double V, const BandScanOptions& opt) {
    if (V == 0.0) throw ZeroCoupling("V = 0: all spectra collapse to [-2,2]");
    if (trace_is_constant(c)) throw DegenerateExpansion("sigma = R for " + c.str());
    const Phi phi = evaluate(c);
    if (phi.degenerate) {
        // [0,0,-1]: t = E + V, a single band [-2-V, 2-V].
        BandSet out;
        out.V = V;
        Band b;
        b.left = -2.0 - V;
        b.right = 2.0 - V;
        b.theta_left = edge_theta(0, Side::left, 1);
        b.theta_right = edge_theta(0, Side::right, 1);
        out.bands.push_back(b);
        return out;
    }
    return opt.exact ? exact_bands(c, V, opt) : eigen_bands(c, V);
}

BandSet reference_spectrum(const ContFrac& c, double V) {
    if (trace_is_constant(c)) {
        BandSet out;
        out.full_line = true;
        out.V = V;
        return out;
    }
    return spectrum_bands(c, V);
}

BandRelation band_relation(double il, double ir, double jl, double jr, double tol) {
    if (std::fabs(il - jl) <= tol && std::fabs(ir - jr) <= tol) return BandRelation::equal;
    if (jl < il - tol && ir < jr - tol) return BandRelation::strict_subset;
    if (jl <= il + tol && ir <= jr + tol && (jl < il || ir < jr)) return BandRelation::subset;
    if (il < jl - tol && jr < ir - tol) return BandRelation::contains;
    if (ir < jl - tol) return BandRelation::strictly_left_of;
    if (jr < il - tol) return BandRelation::strictly_right_of;
    if (il < jl - tol && ir < jr - tol) return BandRelation::left_of;
    if (jl < il - tol && jr < ir - tol) return BandRelation::right_of;
    return BandRelation::none;
}

double zentrum(const ContFrac& c, const Band& band, double V) {
    double lo = band.left, hi = band.right;
    double flo = trace_eval(c, lo, V);
    // t_c is strictly monotone on a band with |t| = 2 at the edges.
    for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + std::fabs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = trace_eval(c, mid, V);
        if ((fm >= 0) == (flo >= 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

int edge_theta(int band_index, Side side, long long q) {
    const long long v = side == Side::left ? band_index - q : band_index + 1 - q;
    return static_cast<int>(((v % 2) + 2) % 2);
}

bool admissible(long long ind_c, long long ind_cm, long long ind_cmn,
                int side_c, int side_cm, int side_cmn, long long n) {
    const long long lhs = ind_c + n * ind_cm + ind_cmn;
    const long long rhs = side_c + n * side_cm + side_cmn;
    return ((lhs - rhs) % 2 + 2) % 2 == 0;
}

namespace {

double dist_to_set(double x, const BandSet& s) {
    double best = std::numeric_limits<double>::infinity();
    for (const Band& b : s.bands) {
        if (x < b.left) best = std::min(best, b.left - x);
        else if (x > b.right) best = std::min(best, x - b.right);
        else return 0.0;
    }
    return best;
}

// sup over x in A of dist(x, B): attained at an A endpoint or at a B gap
// midpoint lying inside A.
double directed_hausdorff(const BandSet& a, const BandSet& b) {
    double best = 0.0;
    for (const Band& ba : a.bands) {
        best = std::max(best, dist_to_set(ba.left, b));
        best = std::max(best, dist_to_set(ba.right, b));
    }
    for (std::size_t i = 0; i + 1 < b.bands.size(); ++i) {
        const double mid = 0.5 * (b.bands[i].right + b.bands[i + 1].left);
        for (const Band& ba : a.bands)
            if (mid >= ba.left && mid <= ba.right) {
                best = std::max(best, dist_to_set(mid, b));
                break;
            }
    }
    return best;
}

} // namespace

double hausdorff_distance(const BandSet& a, const BandSet& b) {
    if (a.full_line || b.full_line)
        throw DegenerateExpansion("Hausdorff distance against sigma = R");
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

std::string band_record_json(const ContFrac& c, double V, const Band& b) {
    char buf[256];
    std::string cf = "[";
    const auto tail = c.tail();
    for (size_t i = 0; i < tail.size(); ++i) {
        if (i) cf += ",";
        cf += std::to_string(tail[i]);
    }
    cf += "]";
    std::snprintf(buf, sizeof buf,
                  "{\"cf\":%s,\"V\":%.12g,\"index\":%d,\"left\":%.12g,\"right\":%.12g,"
                  "\"theta_left\":\"%s\",\"theta_right\":\"%s\",\"type\":\"%c\"}",
                  cf.c_str(), V, b.index, b.left, b.right,
                  b.theta_left ? "pi" : "0", b.theta_right ? "pi" : "0", b.type);
    return buf;
}

} // namespace sturmspec
