#include "sturmspec/poly.hpp"

#include <algorithm>
#include <cassert>

namespace sturmspec {

void poly_trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int poly_degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly poly_add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), Rational(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    poly_trim(r);
    return r;
}

Poly poly_sub(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), Rational(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    poly_trim(r);
    return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    poly_trim(r);
    return r;
}

Poly poly_scale(const Poly& a, const Rational& s) {
    if (s == 0) return {};
    Poly r = a;
    for (auto& c : r) c *= s;
    return r;
}

Poly poly_shift_const(const Poly& a, const Rational& s) {
    Poly r = a;
    if (r.empty()) r.push_back(s);
    else r[0] += s;
    poly_trim(r);
    return r;
}

Poly poly_derivative(const Poly& a) {
    if (a.size() <= 1) return {};
    Poly r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * Rational(static_cast<long long>(i));
    poly_trim(r);
    return r;
}

Rational poly_eval(const Poly& p, const Rational& x) {
    Rational acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double poly_eval_d(const Poly& p, double x) {
    double acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + to_double(*it);
    return acc;
}

bool poly_equal(const Poly& a, const Poly& b) {
    Poly ta = a, tb = b;
    poly_trim(ta);
    poly_trim(tb);
    return ta == tb;
}

Poly poly_rem(const Poly& a, const Poly& b) {
    assert(!b.empty());
    Poly r = a;
    poly_trim(r);
    const int db = poly_degree(b);
    const Rational lead = b.back();
    while (poly_degree(r) >= db) {
        const Rational f = r.back() / lead;
        const int shift = poly_degree(r) - db;
        for (int i = 0; i <= db; ++i) r[i + shift] -= f * b[i];
        r.pop_back();
        poly_trim(r);
        if (r.empty()) break;
    }
    return r;
}

Poly poly_primitive(const Poly& p) {
    if (p.empty()) return {};
    BigInt l(1);
    for (const auto& c : p) l = boost::multiprecision::lcm(l, den(c));
    BigInt g(0);
    for (const auto& c : p) g = boost::multiprecision::gcd(g, BigInt(num(c) * (l / den(c))));
    if (g == 0) return {};
    Poly r(p.size());
    for (size_t i = 0; i < p.size(); ++i) r[i] = Rational(num(p[i]) * (l / den(p[i])) / g);
    return r;
}

std::vector<Poly> sturm_chain(const Poly& p) {
    std::vector<Poly> chain;
    Poly p0 = poly_primitive(p);
    if (p0.empty()) return chain;
    chain.push_back(p0);
    Poly p1 = poly_primitive(poly_derivative(p0));
    if (p1.empty()) return chain;
    chain.push_back(p1);
    while (true) {
        Poly r = poly_rem(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(poly_primitive(r));
    }
    return chain;
}

namespace {

int sign_at(const Poly& p, const Rational& x) { return poly_eval(p, x).sign(); }

long long sign_variations(const std::vector<Poly>& chain, const Rational& x) {
    long long v = 0;
    int prev = 0;
    for (const auto& p : chain) {
        int s = sign_at(p, x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

} // namespace

long long sturm_count(const std::vector<Poly>& chain, const Rational& lo, const Rational& hi) {
    if (chain.empty()) return 0;
    return sign_variations(chain, lo) - sign_variations(chain, hi);
}

std::vector<std::pair<Rational, Rational>>
isolate_roots(const Poly& p, const Rational& lo, const Rational& hi) {
    std::vector<std::pair<Rational, Rational>> out;
    auto chain = sturm_chain(p);
    if (chain.empty()) return out;

    struct Seg { Rational lo, hi; long long n; };
    std::vector<Seg> stack;
    long long total = sturm_count(chain, lo, hi);
    if (total > 0) stack.push_back({lo, hi, total});
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        if (s.n == 1) {
            out.emplace_back(s.lo, s.hi);
            continue;
        }
        Rational mid = (s.lo + s.hi) / 2;
        long long nl = sturm_count(chain, s.lo, mid);
        long long nr = s.n - nl;
        // keep left-to-right order: push right first
        if (nr > 0) stack.push_back({mid, s.hi, nr});
        if (nl > 0) stack.push_back({s.lo, mid, nl});
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

std::pair<Rational, Rational>
refine_root(const Poly& p, Rational lo, Rational hi, const Rational& eps) {
    // (lo, hi] holds exactly one root; maintain the half-open bracket by the
    // sign at the right end (sign(hi) is the sign "past" the root).
    int shi = sign_at(p, hi);
    if (shi == 0) return {hi, hi};
    while (hi - lo > eps) {
        Rational mid = (lo + hi) / 2;
        int sm = sign_at(p, mid);
        if (sm == 0) return {mid, mid};
        if (sm == shi) hi = mid;
        else lo = mid;
    }
    return {lo, hi};
}

} // namespace sturmspec
