#include "sturmspec/interlace.hpp"

#include "sturmspec/errors.hpp"

#include <algorithm>
#include <cmath>

namespace sturmspec {

bool rank1_interlace_check(const SymMatrix& x, const std::vector<double>& v, double tol) {
    if (x.n != v.size()) throw std::invalid_argument("rank1_interlace_check: size mismatch");
    SymMatrix xq = x;
    for (std::size_t i = 0; i < x.n; ++i)
        for (std::size_t j = 0; j < x.n; ++j) xq.at(i, j) += v[i] * v[j];
    const auto ex = jacobi_eigenvalues(x);
    const auto eq = jacobi_eigenvalues(std::move(xq));
    for (std::size_t j = 0; j < x.n; ++j) {
        if (j >= 1 && !(eq[j - 1] <= ex[j] + tol)) return false;
        if (!(ex[j] <= eq[j] + tol)) return false;
    }
    return true;
}

namespace {

bool is_admissible_thetas(double a, double b, double c) {
    const double s = (a + b + c) / kPi;
    return std::fabs(s) < 1e-9 || std::fabs(s - 2.0) < 1e-9;
}

std::vector<int> concat_words(const std::vector<int>& first, const std::vector<int>& second) {
    std::vector<int> w = first;
    w.insert(w.end(), second.begin(), second.end());
    return w;
}

std::vector<int> repeat_word(const std::vector<int>& w, long long times) {
    std::vector<int> out;
    out.reserve(w.size() * times);
    for (long long i = 0; i < times; ++i) out.insert(out.end(), w.begin(), w.end());
    return out;
}

} // namespace

Rank2Decomp rank2_decomposition(const ContFrac& c, long long m, long long n, double V,
                                double theta_c, double theta_cm, double theta_cmn) {
    if (!is_admissible_thetas(theta_c, theta_cm, theta_cmn))
        throw NotAdmissible("theta_c + theta_cm + theta_cmn not in {0, 2pi}");
    const ContFrac cm = c.extended(m);
    const ContFrac cmn = cm.extended(n);
    {
        const Phi phi3 = evaluate(cmn);
        if (phi3.degenerate || den(phi3.value) > kDenseEigenCap)
            throw SizeCap("rank2_decomposition beyond the dense cap");
    }
    const auto wc = word_period(c);
    const auto wcm = word_period(cm);
    const auto wcmn = word_period(cmn);
    const auto copies = repeat_word(wcm, n);

    Rank2Decomp out;
    // block order fixed by the exact word concatenation
    if (wcmn == concat_words(copies, wc)) out.cm_block_first = true;
    else if (wcmn == concat_words(wc, copies)) out.cm_block_first = false;
    else throw std::logic_error("word concatenation does not match either block order");

    const std::size_t q1 = wc.size(), q3 = wcmn.size();
    const std::size_t d1 = out.cm_block_first ? copies.size() : q1;
    const double theta_first = out.cm_block_first ? theta_cm : theta_c;
    const double theta_second = out.cm_block_first ? theta_c : theta_cm;

    out.Y = build_floquet(wcmn, V, theta_cmn).dense();
    const SymMatrix b1 = out.cm_block_first
                             ? build_floquet(wcm, V, theta_cm, static_cast<int>(n)).dense()
                             : build_floquet(wc, V, theta_c).dense();
    const SymMatrix b2 = out.cm_block_first
                             ? build_floquet(wc, V, theta_c).dense()
                             : build_floquet(wcm, V, theta_cm, static_cast<int>(n)).dense();
    out.Z = SymMatrix::zero(q3);
    for (std::size_t i = 0; i < b1.n; ++i)
        for (std::size_t j = 0; j < b1.n; ++j) out.Z.at(i, j) = b1.at(i, j);
    for (std::size_t i = 0; i < b2.n; ++i)
        for (std::size_t j = 0; j < b2.n; ++j) out.Z.at(d1 + i, d1 + j) = b2.at(i, j);

    // Support pattern {1, d1, d1+1, q3} (1-based) with signs solving
    //   s1 s2 = -cos(theta_first), s2 s3 = 1, s3 s4 = -cos(theta_second);
    // collisions at block size 1 accumulate coefficients.
    const double s1 = 1.0;
    const double s2 = -std::cos(theta_first);
    const double s3 = s2;
    const double s4 = s3 * (-std::cos(theta_second));
    const std::size_t idx[4] = {0, d1 - 1, d1, q3 - 1};
    const double invs2 = 1.0 / std::sqrt(2.0);
    out.x.assign(q3, 0.0);
    out.y.assign(q3, 0.0);
    const double sx[4] = {s1, s2, s3, s4};
    const double sy[4] = {-s1, s2, -s3, s4};
    for (int t = 0; t < 4; ++t) {
        out.x[idx[t]] += sx[t] * invs2;
        out.y[idx[t]] += sy[t] * invs2;
    }

    SymMatrix d = SymMatrix::zero(q3);
    out.trace = 0;
    double res2 = 0;
    for (std::size_t i = 0; i < q3; ++i) {
        for (std::size_t j = 0; j < q3; ++j) {
            d.at(i, j) = out.Y.at(i, j) - out.Z.at(i, j);
            const double r = d.at(i, j) - (out.x[i] * out.x[j] - out.y[i] * out.y[j]);
            res2 += r * r;
        }
        out.trace += d.at(i, i);
    }
    out.residual = std::sqrt(res2);
    auto sv = jacobi_eigenvalues(std::move(d));
    std::vector<double> mags;
    for (double e : sv) mags.push_back(std::fabs(e));
    std::sort(mags.rbegin(), mags.rend());
    out.third_singular = mags.size() >= 3 ? mags[2] : 0.0;

    // orthogonality-forces-zero: within each block, w perp x and w perp y
    // pins the block's first and last components (2x2 systems nonsingular)
    auto block_det = [&](std::size_t first, std::size_t last) {
        return out.x[first] * out.y[last] - out.x[last] * out.y[first];
    };
    if (d1 >= 2 && std::fabs(block_det(0, d1 - 1)) < 1e-12)
        out.orthogonality_forces_zero = false;
    if (q3 - d1 >= 2 && std::fabs(block_det(d1, q3 - 1)) < 1e-12)
        out.orthogonality_forces_zero = false;
    return out;
}

InterlaceReport interlacing_check(const ContFrac& c, long long m, long long n, double V,
                                  double theta_c, double theta_cm, double theta_cmn,
                                  double simple_gap) {
    const Rank2Decomp d =
        rank2_decomposition(c, m, n, V, theta_c, theta_cm, theta_cmn);
    if (d.Y.n > kDenseEigenCap) throw SizeCap("interlacing_check beyond dense cap");
    InterlaceReport rep;
    rep.y_eigen = jacobi_eigenvalues(d.Y);
    rep.x_eigen = jacobi_eigenvalues(d.Z);
    const std::size_t q3 = d.Y.n;
    const double tol = 1e-10;
    rep.min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < q3; ++j) {
        if (j >= 1 && !(rep.y_eigen[j - 1] <= rep.x_eigen[j] + tol)) rep.holds = false;
        if (j + 1 < q3 && !(rep.x_eigen[j] <= rep.y_eigen[j + 1] + tol)) rep.holds = false;
        const bool simple = (j == 0 || rep.x_eigen[j] - rep.x_eigen[j - 1] > simple_gap) &&
                            (j + 1 == q3 || rep.x_eigen[j + 1] - rep.x_eigen[j] > simple_gap);
        if (simple) {
            if (j >= 1) {
                const double margin = rep.x_eigen[j] - rep.y_eigen[j - 1];
                rep.min_margin = std::min(rep.min_margin, margin);
                if (!(margin > tol)) rep.strict_ok = false;
            }
            if (j + 1 < q3) {
                const double margin = rep.y_eigen[j + 1] - rep.x_eigen[j];
                rep.min_margin = std::min(rep.min_margin, margin);
                if (!(margin > tol)) rep.strict_ok = false;
            }
        }
    }
    return rep;
}

} // namespace sturmspec
