#pragma once

#include "sturmspec/errors.hpp"
#include "sturmspec/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sturmspec {

/// Result of the evaluation map: either a rational in [0,1] or the
/// degenerate sentinel (kept as a tagged state so it cannot leak into
/// band arithmetic as a plain value).
struct Phi {
    bool degenerate = false;
    Rational value;

    bool operator==(const Phi& o) const {
        if (degenerate || o.degenerate) return degenerate == o.degenerate;
        return value == o.value;
    }
};

/// A finite continued fraction expansion [0,0,c_1,...,c_k] with the
/// extended last-digit convention: interior digits are >= 1, the last
/// digit may also be -1 or 0.  The two leading zeros are stored
/// explicitly; [0] is the one-element expansion.
class ContFrac {
public:
    /// Validates the full digit list (leading zeros included).
    static ContFrac from_digits(std::vector<long long> digits);
    /// Convenience: builds [0,0,tail...].
    static ContFrac from_tail(const std::vector<long long>& tail);

    const std::vector<long long>& digits() const { return digits_; }
    /// Level index k: [0] has k = -1, [0,0] has k = 0.
    int k() const { return static_cast<int>(digits_.size()) - 2; }
    std::vector<long long> tail() const; // c_1..c_k
    long long last() const { return digits_.back(); }

    /// Whether [c,m] may be formed (base [0,0] or last digit not in {-1,0}).
    bool extendable() const;
    ContFrac extended(long long m) const;
    /// Drop the last digit (defined for k >= 1).
    ContFrac truncated() const;

    bool operator==(const ContFrac& o) const { return digits_ == o.digits_; }
    bool operator<(const ContFrac& o) const { return digits_ < o.digits_; }
    std::string str() const;

private:
    explicit ContFrac(std::vector<long long> d) : digits_(std::move(d)) {}
    std::vector<long long> digits_;
};

/// The evaluation map phi.
Phi evaluate(const ContFrac& c);

/// Convergents p_k/q_k of [0,0,c_1,...]: conventions p_{-1}=1, q_{-1}=0,
/// p_0=0, q_0=1, x_k = c_k x_{k-1} + x_{k-2}.  `tail` holds c_1.. (all >= 1).
std::pair<BigInt, BigInt> convergent(const std::vector<long long>& tail, int k);
std::vector<std::pair<BigInt, BigInt>> convergents(const std::vector<long long>& tail, int kmax);

/// Mechanical word bit: 1 iff (n*alpha mod 1) lies in [1-alpha, 1).
/// Exact rational arithmetic; alpha in [0,1].
int mechanical_word(const Rational& alpha, const BigInt& n);

/// One period of the mechanical word, window omega(0..q-1), for phi(c) = p/q.
/// Throws DegenerateExpansion when phi(c) is the sentinel.
std::vector<int> word_period(const ContFrac& c);
std::vector<int> word_period_of(const Rational& alpha);

enum class SeedConvention {
    paper,   // s_{-1} = "0", s_0 = "1"
    standard // s_{-1} = "1", s_0 = "0"
};

/// Substitution words s_n with s_1 = 0^{c_1 - 1} 1 and
/// s_{n+1} = s_n^{c_{n+1}} s_{n-1}; n >= -1.
std::vector<int> substitution_word(const std::vector<long long>& tail, int n, SeedConvention sc);

/// Empirical seed selection: the convention whose s_n^infinity
/// rotation-matches the mechanical period at every level <= depth.
SeedConvention resolve_seed_convention(const std::vector<long long>& tail, int depth);

/// True iff b is a cyclic rotation of a.
bool is_rotation(const std::vector<int>& a, const std::vector<int>& b);

enum class ConcatOrder { copies_first, tail_first, either, none };

/// Which concatenation of c_n copies of the level-(n-1) period and one
/// level-(n-2) period reproduces the level-n period exactly.
ConcatOrder word_concat_order(const std::vector<long long>& tail, int n);

/// Shared CLI grammar for alpha: "cf:1,2,3", "rat:p/q", "golden", "silver".
/// Returns the tail digit list; `depth` bounds the preset expansions.
std::vector<long long> parse_alpha(const std::string& text, int depth = 24);

} // namespace sturmspec
