#include "sturmspec/contfrac.hpp"

#include <algorithm>
#include <sstream>

namespace sturmspec {

ContFrac ContFrac::from_digits(std::vector<long long> digits) {
    if (digits.empty()) throw MalformedDigits("empty digit list");
    if (digits[0] != 0) throw MalformedDigits("c_{-1} must be 0");
    if (digits.size() == 1) return ContFrac(std::move(digits)); // [0]
    if (digits[1] != 0) throw MalformedDigits("c_0 must be 0");
    for (size_t i = 2; i + 1 < digits.size(); ++i)
        if (digits[i] < 1) throw MalformedDigits("interior digit < 1");
    if (digits.size() > 2 && digits.back() < -1)
        throw MalformedDigits("last digit < -1");
    return ContFrac(std::move(digits));
}

ContFrac ContFrac::from_tail(const std::vector<long long>& tail) {
    std::vector<long long> d = {0, 0};
    d.insert(d.end(), tail.begin(), tail.end());
    return from_digits(std::move(d));
}

std::vector<long long> ContFrac::tail() const {
    if (digits_.size() <= 2) return {};
    return std::vector<long long>(digits_.begin() + 2, digits_.end());
}

bool ContFrac::extendable() const {
    if (digits_.size() == 1) return false; // [0]
    if (digits_.size() == 2) return true;  // [0,0]
    return digits_.back() != 0 && digits_.back() != -1;
}

ContFrac ContFrac::extended(long long m) const {
    if (!extendable()) throw MalformedDigits("extension of a closed expansion");
    std::vector<long long> d = digits_;
    d.push_back(m);
    return from_digits(std::move(d));
}

ContFrac ContFrac::truncated() const {
    if (digits_.size() <= 2) throw MalformedDigits("truncation below [0,0]");
    std::vector<long long> d(digits_.begin(), digits_.end() - 1);
    return from_digits(std::move(d));
}

std::string ContFrac::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < digits_.size(); ++i) {
        if (i) os << ",";
        os << digits_[i];
    }
    os << "]";
    return os.str();
}

Phi evaluate(const ContFrac& c) {
    if (c.digits().size() == 1) return {true, Rational(0)}; // [0]
    std::vector<long long> tail = c.tail();
    // Reduce trailing 0 / -1 digits per the evaluation map.
    while (!tail.empty()) {
        if (tail.back() == 0) {
            tail.pop_back();
            if (tail.empty()) return {true, Rational(0)}; // [0,0,0]
            tail.pop_back();                              // drop c_{k-1} as well
        } else if (tail.back() == -1) {
            tail.pop_back();
            if (tail.empty()) return {true, Rational(0)}; // [0,0,-1]
            --tail.back();                                // may become 0, loop again
        } else {
            break;
        }
    }
    if (tail.empty()) return {false, Rational(0)}; // [0,0]
    auto [p, q] = convergent(tail, static_cast<int>(tail.size()));
    return {false, Rational(p, q)};
}

std::pair<BigInt, BigInt> convergent(const std::vector<long long>& tail, int k) {
    BigInt pm1 = 1, p0 = 0, qm1 = 0, q0 = 1;
    for (int i = 1; i <= k; ++i) {
        BigInt ci = tail.at(i - 1);
        BigInt p = ci * p0 + pm1;
        BigInt q = ci * q0 + qm1;
        pm1 = p0; p0 = p;
        qm1 = q0; q0 = q;
    }
    return {p0, q0};
}

std::vector<std::pair<BigInt, BigInt>> convergents(const std::vector<long long>& tail, int kmax) {
    std::vector<std::pair<BigInt, BigInt>> out;
    out.reserve(kmax + 1);
    for (int k = 0; k <= kmax; ++k) out.push_back(convergent(tail, k));
    return out;
}

int mechanical_word(const Rational& alpha, const BigInt& n) {
    const BigInt p = num(alpha), q = den(alpha);
    BigInt r = (n * p) % q;
    if (r < 0) r += q;
    return r >= q - p ? 1 : 0;
}

std::vector<int> word_period_of(const Rational& alpha) {
    const BigInt q = den(alpha);
    std::vector<int> bits;
    bits.reserve(static_cast<size_t>(q.convert_to<long long>()));
    for (BigInt n = 0; n < q; ++n) bits.push_back(mechanical_word(alpha, n));
    return bits;
}

std::vector<int> word_period(const ContFrac& c) {
    Phi phi = evaluate(c);
    if (phi.degenerate) throw DegenerateExpansion("word period of a degenerate expansion");
    return word_period_of(phi.value);
}

std::vector<int> substitution_word(const std::vector<long long>& tail, int n, SeedConvention sc) {
    if (n < -1) throw MalformedDigits("substitution level < -1");
    std::vector<int> sm1, s0;
    if (sc == SeedConvention::paper) {
        sm1 = {0};
        s0 = {1};
    } else {
        sm1 = {1};
        s0 = {0};
    }
    if (n == -1) return sm1;
    if (n == 0) return s0;
    if (tail.empty()) throw MalformedDigits("substitution word needs digits");
    std::vector<int> s1;
    for (long long i = 0; i + 1 < tail[0]; ++i) s1.push_back(0);
    s1.push_back(1);
    if (n == 1) return s1;
    std::vector<int> a = s0, b = s1; // s_{n-1}, s_n
    for (int lvl = 1; lvl < n; ++lvl) {
        if (static_cast<size_t>(lvl) >= tail.size())
            throw MalformedDigits("substitution level beyond digit list");
        long long c = tail[lvl];
        std::vector<int> next;
        next.reserve(b.size() * c + a.size());
        for (long long i = 0; i < c; ++i) next.insert(next.end(), b.begin(), b.end());
        next.insert(next.end(), a.begin(), a.end());
        a = std::move(b);
        b = std::move(next);
    }
    return b;
}

bool is_rotation(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    std::vector<int> aa = a;
    aa.insert(aa.end(), a.begin(), a.end());
    return std::search(aa.begin(), aa.end(), b.begin(), b.end()) != aa.end();
}

SeedConvention resolve_seed_convention(const std::vector<long long>& tail, int depth) {
    bool paper_ok = true, standard_ok = true;
    for (int n = 1; n <= depth && static_cast<size_t>(n) <= tail.size(); ++n) {
        std::vector<long long> trunc(tail.begin(), tail.begin() + n);
        auto period = word_period(ContFrac::from_tail(trunc));
        if (!is_rotation(period, substitution_word(tail, n, SeedConvention::paper)))
            paper_ok = false;
        if (!is_rotation(period, substitution_word(tail, n, SeedConvention::standard)))
            standard_ok = false;
    }
    if (standard_ok) return SeedConvention::standard;
    if (paper_ok) return SeedConvention::paper;
    throw std::logic_error("no seed convention rotation-matches the mechanical words");
}

ConcatOrder word_concat_order(const std::vector<long long>& tail, int n) {
    if (n < 2 || static_cast<size_t>(n) > tail.size())
        throw MalformedDigits("concatenation level out of range");
    auto level_word = [&](int j) {
        std::vector<long long> trunc(tail.begin(), tail.begin() + j);
        return word_period(ContFrac::from_tail(trunc));
    };
    auto wn = level_word(n), w1 = level_word(n - 1), w2 = level_word(n - 2);
    std::vector<int> copies;
    for (long long i = 0; i < tail[n - 1]; ++i) copies.insert(copies.end(), w1.begin(), w1.end());
    std::vector<int> cf = copies;
    cf.insert(cf.end(), w2.begin(), w2.end());
    std::vector<int> tf = w2;
    tf.insert(tf.end(), copies.begin(), copies.end());
    const bool c_ok = (cf == wn), t_ok = (tf == wn);
    if (c_ok && t_ok) return ConcatOrder::either;
    if (c_ok) return ConcatOrder::copies_first;
    if (t_ok) return ConcatOrder::tail_first;
    return ConcatOrder::none;
}

std::vector<long long> parse_alpha(const std::string& text, int depth) {
    if (text == "golden") return std::vector<long long>(depth, 1);
    if (text == "silver") return std::vector<long long>(depth, 2);
    const bool rational_form =
        text.rfind("rat:", 0) == 0 ||
        (text.rfind("cf:", 0) != 0 && text.find('/') != std::string::npos);
    if (!rational_form) {
        std::string body = text.rfind("cf:", 0) == 0 ? text.substr(3) : text;
        std::vector<long long> tail;
        std::istringstream is(body);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            if (tok.empty()) continue;
            tail.push_back(std::stoll(tok));
        }
        if (tail.empty()) throw MalformedDigits("empty digit list: " + text);
        return tail;
    }
    std::string body = text.rfind("rat:", 0) == 0 ? text.substr(4) : text;
    auto slash = body.find('/');
    if (slash == std::string::npos) throw MalformedDigits("cannot parse alpha: " + text);
    long long p = std::stoll(body.substr(0, slash));
    long long q = std::stoll(body.substr(slash + 1));
    if (q <= 0 || p < 0 || p > q) throw MalformedDigits("alpha must be in [0,1]: " + text);
    // continued fraction digits of p/q; empty list encodes alpha = 0
    std::vector<long long> tail;
    long long a = p, b = q;
    while (a != 0) {
        long long c = b / a;
        tail.push_back(c);
        long long r = b % a;
        b = a;
        a = r;
    }
    return tail;
}

} // namespace sturmspec
