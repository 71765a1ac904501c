#include "sturmspec/tracepoly.hpp"

#include "sturmspec/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>

namespace sturmspec {

namespace {

// 2x2 matrix with polynomial entries, determinant 1 throughout.
struct PolyMat {
    Poly a, b, c, d;

    Poly trace() const { return poly_add(a, d); }
    PolyMat inverse() const {
        auto neg = [](const Poly& p) {
            Poly r = p;
            for (auto& x : r) x = -x;
            return r;
        };
        return {d, neg(b), neg(c), a};
    }
};

PolyMat pm_mul(const PolyMat& x, const PolyMat& y) {
    return {poly_add(poly_mul(x.a, y.a), poly_mul(x.b, y.c)),
            poly_add(poly_mul(x.a, y.b), poly_mul(x.b, y.d)),
            poly_add(poly_mul(x.c, y.a), poly_mul(x.d, y.c)),
            poly_add(poly_mul(x.c, y.b), poly_mul(x.d, y.d))};
}

// M^m = S_{m-1}(t) M - S_{m-2}(t) I for det(M) = 1, t = tr(M).
PolyMat pm_pow(const PolyMat& m, long long e) {
    if (e == 0) return {{Rational(1)}, {}, {}, {Rational(1)}};
    if (e < 0) {
        PolyMat inv = m.inverse();
        return pm_pow(inv, -e);
    }
    Poly t = m.trace();
    Poly s1 = ChebyshevS::compose(static_cast<int>(e) - 1, t);
    Poly s2 = ChebyshevS::compose(static_cast<int>(e) - 2, t);
    PolyMat r;
    r.a = poly_sub(poly_mul(s1, m.a), s2);
    r.b = poly_mul(s1, m.b);
    r.c = poly_mul(s1, m.c);
    r.d = poly_sub(poly_mul(s1, m.d), s2);
    return r;
}

PolyMat transfer_matrix(const ContFrac& c, const Rational& V) {
    const PolyMat m0   = {{Rational(1)}, {-V}, {}, {Rational(1)}};             // M_[0]
    const PolyMat m00  = {{Rational(0), Rational(1)}, {Rational(-1)}, {Rational(1)}, {}}; // M_[0,0]
    if (c.digits().size() == 1) return m0;
    if (c.digits().size() == 2) return m00;
    const auto tail = c.tail();
    PolyMat prev2 = m0, prev1 = m00; // levels k-2, k-1
    for (size_t j = 0; j < tail.size(); ++j) {
        PolyMat cur = pm_mul(prev2, pm_pow(prev1, tail[j]));
        prev2 = std::move(prev1);
        prev1 = std::move(cur);
    }
    return prev1;
}

struct CacheKey {
    std::vector<long long> digits;
    Rational V;
    bool operator<(const CacheKey& o) const {
        if (digits != o.digits) return digits < o.digits;
        return V < o.V;
    }
};

std::map<CacheKey, TracePoly> g_cache;
std::shared_mutex g_cache_mutex;

} // namespace

TracePoly trace_poly(const ContFrac& c, const Rational& V) {
    CacheKey key{c.digits(), V};
    {
        std::shared_lock lock(g_cache_mutex);
        auto it = g_cache.find(key);
        if (it != g_cache.end()) return it->second;
    }
    TracePoly tp{transfer_matrix(c, V).trace(), V};
    std::unique_lock lock(g_cache_mutex);
    return g_cache.emplace(std::move(key), std::move(tp)).first->second;
}

namespace {

struct Mat2d {
    double a, b, c, d;
};

constexpr double kOverflowGuard = 1e280;

void check_overflow(const Mat2d& m) {
    double mx = std::max(std::max(std::fabs(m.a), std::fabs(m.b)),
                         std::max(std::fabs(m.c), std::fabs(m.d)));
    if (!(mx < kOverflowGuard))
        throw TraceOverflow("transfer-matrix entry overflow");
}

Mat2d md_mul(const Mat2d& x, const Mat2d& y) {
    Mat2d r{x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    check_overflow(r);
    return r;
}

Mat2d md_pow(Mat2d m, long long e) {
    if (e < 0) {
        m = Mat2d{m.d, -m.b, -m.c, m.a}; // det = 1
        e = -e;
    }
    Mat2d r{1, 0, 0, 1};
    while (e > 0) {
        if (e & 1) r = md_mul(r, m);
        e >>= 1;
        if (e) m = md_mul(m, m);
    }
    return r;
}

} // namespace

double trace_eval(const ContFrac& c, double E, double V) {
    const Mat2d m0{1, -V, 0, 1};
    const Mat2d m00{E, -1, 1, 0};
    if (c.digits().size() == 1) return 2.0;
    if (c.digits().size() == 2) return E;
    const auto tail = c.tail();
    Mat2d prev2 = m0, prev1 = m00;
    for (size_t j = 0; j < tail.size(); ++j) {
        Mat2d cur = md_mul(prev2, md_pow(prev1, tail[j]));
        prev2 = prev1;
        prev1 = cur;
    }
    return prev1.a + prev1.d;
}

namespace {

struct RatMat {
    Rational a, b, c, d;
};

RatMat rm_mul(const RatMat& x, const RatMat& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

RatMat rm_pow(RatMat m, long long e) {
    if (e < 0) {
        m = RatMat{m.d, -m.b, -m.c, m.a};
        e = -e;
    }
    RatMat r{Rational(1), Rational(0), Rational(0), Rational(1)};
    while (e > 0) {
        if (e & 1) r = rm_mul(r, m);
        e >>= 1;
        if (e) m = rm_mul(m, m);
    }
    return r;
}

} // namespace

Rational trace_eval_exact(const ContFrac& c, const Rational& E, const Rational& V) {
    const RatMat m0{Rational(1), -V, Rational(0), Rational(1)};
    const RatMat m00{E, Rational(-1), Rational(1), Rational(0)};
    if (c.digits().size() == 1) return Rational(2);
    if (c.digits().size() == 2) return E;
    const auto tail = c.tail();
    RatMat prev2 = m0, prev1 = m00;
    for (size_t j = 0; j < tail.size(); ++j) {
        RatMat cur = rm_mul(prev2, rm_pow(prev1, tail[j]));
        prev2 = std::move(prev1);
        prev1 = std::move(cur);
    }
    return prev1.a + prev1.d;
}

double fricke_vogt_residual(const ContFrac& c, long long n, double E, double V) {
    try {
        const double x = trace_eval(c.extended(n + 1), E, V);
        const double y = trace_eval(c.extended(n), E, V);
        const double z = trace_eval(c, E, V);
        const double res = x * x + y * y + z * z - x * y * z - (V * V + 4.0);
        // Absolute rounding error scales like eps * (x^2+y^2+z^2+|xyz|);
        // past float certification the exact path takes over.
        const double scale =
            x * x + y * y + z * z + std::fabs(x * y * z) + V * V + 4.0;
        if (scale * 1e-13 < 1e-9) return res;
    } catch (const TraceOverflow&) {
        // fall through to the exact path
    }
    return to_double(fricke_vogt_residual_exact(c, n, rational_from_double(E),
                                                rational_from_double(V)));
}

Rational fricke_vogt_residual_exact(const ContFrac& c, long long n,
                                    const Rational& E, const Rational& V) {
    const Rational x = trace_eval_exact(c.extended(n + 1), E, V);
    const Rational y = trace_eval_exact(c.extended(n), E, V);
    const Rational z = trace_eval_exact(c, E, V);
    return x * x + y * y + z * z - x * y * z - (V * V + 4);
}

bool trace_recursion_check(const ContFrac& c, long long m, int n_max, const Rational& V) {
    const Poly tc = trace_poly(c, V).coeffs;
    // t_[c,m,0] = t_c and t_[c,m,1] = t_[c,m+1]
    const ContFrac cm = c.extended(m);
    if (!poly_equal(trace_poly(cm.extended(0), V).coeffs, tc)) return false;
    if (!poly_equal(trace_poly(cm.extended(1), V).coeffs,
                    trace_poly(c.extended(m + 1), V).coeffs))
        return false;
    // three-term recursion and its Chebyshev form
    for (long long n = 0; n <= n_max; ++n) {
        const Poly tn1 = trace_poly(c.extended(n + 1), V).coeffs;
        const Poly tn = trace_poly(c.extended(n), V).coeffs;
        const Poly tnm1 = trace_poly(c.extended(n - 1), V).coeffs;
        if (!poly_equal(tn1, poly_sub(poly_mul(tc, tn), tnm1))) return false;
        for (long long l = -1; l <= std::min<long long>(n, 1); ++l) {
            const Poly sl1 = ChebyshevS::compose(static_cast<int>(l) + 1, tc);
            const Poly sl = ChebyshevS::compose(static_cast<int>(l), tc);
            const Poly lhs = poly_sub(poly_mul(sl1, trace_poly(c.extended(n - l), V).coeffs),
                                      poly_mul(sl, trace_poly(c.extended(n - l - 1), V).coeffs));
            if (!poly_equal(tn1, lhs)) return false;
        }
    }
    return true;
}

TraceEdgeReport trace_edge_estimates(const ContFrac& c, long long m, long long n,
                                     double E, double V, double edge_tol) {
    const double tc = trace_eval(c, E, V);
    if (std::fabs(std::fabs(tc) - 2.0) > edge_tol)
        throw NotAnEdge("|t_c(E,V)| != 2 at the proposed edge");
    TraceEdgeReport r;
    r.t_cm = std::fabs(trace_eval(c.extended(m), E, V));
    r.t_cmn = std::fabs(trace_eval(c.extended(m).extended(n), E, V));
    const Phi phi = evaluate(c);
    const bool interior = !phi.degenerate && phi.value > 0 && phi.value < 1;
    if (r.t_cm >= 2.0) r.weak_implication = (r.t_cmn >= 2.0 - edge_tol);
    if (r.t_cm > 2.0) r.strict_implication = (r.t_cmn > 2.0 - edge_tol);
    if (interior && r.t_cm >= 2.0) r.interior_implication = (r.t_cmn > 2.0 - edge_tol);
    return r;
}

} // namespace sturmspec
