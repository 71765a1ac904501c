#include "sturmspec/floquet.hpp"

#include "sturmspec/errors.hpp"

#include <algorithm>
#include <cmath>

namespace sturmspec {

EigenResult jacobi_eigen(SymMatrix m, bool want_vectors) {
    const std::size_t n = m.n;
    EigenResult res;
    if (n == 0) return res;

    std::vector<double> v;
    if (want_vectors) {
        v.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
    }

    auto off_norm = [&]() {
        double s = 0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) s += m.at(p, q) * m.at(p, q);
        return std::sqrt(2.0 * s);
    };

    const double target = 1e-13 * std::max(m.frobenius(), 1e-300);
    for (int sweep = 0; sweep < 64 && off_norm() > target; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = m.at(p, q);
                if (apq == 0.0) continue;
                const double app = m.at(p, p), aqq = m.at(q, q);
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = m.at(k, p), akq = m.at(k, q);
                    m.at(k, p) = c * akp - s * akq;
                    m.at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = m.at(p, k), aqk = m.at(q, k);
                    m.at(p, k) = c * apk - s * aqk;
                    m.at(q, k) = s * apk + c * aqk;
                }
                if (want_vectors) {
                    for (std::size_t k = 0; k < n; ++k) {
                        const double vkp = v[k * n + p], vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return m.at(a, a) < m.at(b, b); });

    res.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) res.values[i] = m.at(order[i], order[i]);
    if (want_vectors) {
        res.vectors.assign(n, std::vector<double>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) res.vectors[i][k] = v[k * n + order[i]];
    }
    return res;
}

SymMatrix FloquetMatrix::dense() const {
    const std::size_t s = size();
    SymMatrix m = SymMatrix::zero(s);
    for (std::size_t i = 0; i < s; ++i) m.at(i, i) = diag[i];
    for (std::size_t i = 0; i + 1 < s; ++i) m.at(i, i + 1) = m.at(i + 1, i) = 1.0;
    if (s == 1) {
        m.at(0, 0) += 2.0 * corner();
    } else {
        m.at(0, s - 1) += corner();
        m.at(s - 1, 0) += corner();
    }
    return m;
}

FloquetMatrix build_floquet(const std::vector<int>& word, double V, double theta, int n_copies) {
    FloquetMatrix f;
    f.q = static_cast<long long>(word.size());
    f.n_copies = n_copies;
    f.theta = theta;
    f.V = V;
    f.diag.reserve(word.size() * n_copies);
    for (int r = 0; r < n_copies; ++r)
        for (int bit : word) f.diag.push_back(V * bit);
    return f;
}

FloquetMatrix build_floquet(const ContFrac& c, double V, double theta, int n_copies) {
    return build_floquet(word_period(c), V, theta, n_copies);
}

std::vector<double> floquet_eigenvalues(const FloquetMatrix& m) {
    if (m.size() > kDenseEigenCap)
        throw SizeCap("dense eigensolver cap exceeded");
    return jacobi_eigenvalues(m.dense());
}

long long floquet_counting(double lambda, const FloquetMatrix& m) {
    const std::size_t n = m.size();
    if (n == 0) return 0;
    const double w = m.corner();
    if (n == 1) return (m.diag[0] + 2.0 * w < lambda) ? 1 : 0;

    // LDL^T inertia of the bordered tridiagonal A = T + corner pattern.
    // Fill only ever appears in the last column; vanishing pivots are
    // replaced by -pivmin (Kahan), sized so the border updates stay finite.
    double scale = 2.0;
    for (double x : m.diag) scale = std::max(scale, std::fabs(x) + 2.0);
    const double pivmin = 1e-14 * scale;
    long long neg = 0;
    if (n == 2) {
        const double b = 1.0 + w;
        double d1 = m.diag[0] - lambda;
        if (std::fabs(d1) < pivmin) d1 = -pivmin;
        if (d1 < 0) ++neg;
        double d2 = (m.diag[1] - lambda) - b * b / d1;
        if (d2 < 0) ++neg;
        return neg;
    }
    double d = m.diag[0] - lambda; // running pivot
    double f = w;                  // A(i, n) after updates
    double last = m.diag[n - 1] - lambda;
    for (std::size_t i = 0; i + 2 < n; ++i) {
        if (std::fabs(d) < pivmin) d = -pivmin;
        if (d < 0) ++neg;
        const double inv = 1.0 / d;
        last -= f * f * inv;
        const double fn = -f * inv; // fill for row i+1 (times b_i = 1)
        d = (m.diag[i + 1] - lambda) - inv;
        f = (i + 2 == n - 1) ? fn + 1.0 : fn; // merge with the superdiagonal at n-1
    }
    if (std::fabs(d) < pivmin) d = -pivmin;
    if (d < 0) ++neg;
    last -= f * f / d;
    if (last < 0) ++neg;
    return neg;
}

double floquet_eigenvalue_at(const FloquetMatrix& m, long long j, double tol) {
    double lo = m.diag[0], hi = m.diag[0];
    for (double d : m.diag) {
        lo = std::min(lo, d - 3.0);
        hi = std::max(hi, d + 3.0);
    }
    while (hi - lo > tol * std::max(1.0, std::fabs(lo) + std::fabs(hi))) {
        const double mid = 0.5 * (lo + hi);
        if (floquet_counting(mid, m) >= j + 1) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<std::pair<long long, double>>
floquet_eigenvalues_window(const FloquetMatrix& m, double lo, double hi, double tol) {
    std::vector<std::pair<long long, double>> out;
    const long long jlo = floquet_counting(lo, m);
    const long long jhi = floquet_counting(hi, m); // eigenvalues < hi
    for (long long j = jlo; j < jhi; ++j)
        out.emplace_back(j, floquet_eigenvalue_at(m, j, tol));
    return out;
}

std::vector<double> floquet_eigenvalues_bisect(const FloquetMatrix& m, double tol) {
    const std::size_t n = m.size();
    std::vector<double> out(n);
    if (n == 0) return out;
    // Gershgorin box
    double lo = m.diag[0], hi = m.diag[0];
    for (std::size_t i = 0; i < n; ++i) {
        lo = std::min(lo, m.diag[i] - 3.0);
        hi = std::max(hi, m.diag[i] + 3.0);
    }
    double prev = lo;
    for (std::size_t j = 0; j < n; ++j) {
        double a = prev, b = hi;
        // lambda_j = inf { x : N(x) >= j+1 }
        while (b - a > tol * std::max(1.0, std::fabs(a) + std::fabs(b))) {
            const double mid = 0.5 * (a + b);
            if (floquet_counting(mid, m) >= static_cast<long long>(j) + 1)
                b = mid;
            else
                a = mid;
        }
        out[j] = 0.5 * (a + b);
        prev = a;
    }
    return out;
}

} // namespace sturmspec
