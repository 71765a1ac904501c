#include "sturmspec/interlace.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace sturmspec;

TEST_CASE("rank-one interlacing") {
    SymMatrix zero = SymMatrix::zero(2);
    CHECK(rank1_interlace_check(zero, {1.0, 0.0}));
    CHECK(rank1_interlace_check(zero, {0.0, 0.0}));
    std::mt19937 rng(43);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        SymMatrix x = SymMatrix::zero(8);
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = 0; j <= i; ++j) x.at(i, j) = x.at(j, i) = g(rng);
        std::vector<double> v(8);
        for (auto& e : v) e = g(rng);
        CHECK(rank1_interlace_check(x, v));
    }
}

TEST_CASE("rank-two decomposition, degenerate block") {
    // 3x3 against 1 (+) 2 at c = [0,0,1]: the decomposition is exact even
    // though the 1x1 corner folds onto the diagonal
    const auto d = rank2_decomposition(ContFrac::from_digits({0, 0, 1}), 1, 1, 1.0, 0, 0, 0);
    CHECK(d.residual < 1e-12);
    CHECK(d.cm_block_first); // the word order puts the n-copy block first here
    CHECK_THROWS_AS(rank2_decomposition(ContFrac::from_digits({0, 0, 1}), 1, 1, 1.0, 0, 0, kPi),
                    NotAdmissible);
}

TEST_CASE("rank-two decomposition, generic blocks") {
    // distinct support indices: trace zero and rank exactly two
    const auto d = rank2_decomposition(ContFrac::from_digits({0, 0, 2}), 1, 1, 1.0, 0, 0, 0);
    CHECK(d.residual < 1e-12);
    CHECK(std::fabs(d.trace) < 1e-12);
    CHECK(d.third_singular < 1e-10);
    CHECK(d.orthogonality_forces_zero);

    for (double tc : {0.0, kPi}) {
        for (double tcm : {0.0, kPi}) {
            const double tcmn = std::fabs(std::remainder(tc + tcm, 2 * kPi));
            const auto dd =
                rank2_decomposition(ContFrac::from_digits({0, 0, 1, 2}), 2, 2, 0.8, tc, tcm, tcmn);
            CHECK(dd.residual < 1e-12);
            CHECK(std::fabs(dd.trace) < 1e-12);
            CHECK(dd.third_singular < 1e-10);
        }
    }
}

TEST_CASE("interlacing of the perturbed pair") {
    const auto r = interlacing_check(ContFrac::from_digits({0, 0, 1}), 1, 1, 1.0, 0, 0, 0);
    CHECK(r.holds);
    CHECK(r.x_eigen.size() == 3);

    // golden level 4, m = n = 1, V = 5: strict at simple eigenvalues
    const auto g = interlacing_check(ContFrac::from_tail({1, 1, 1, 1}), 1, 1, 5.0, 0, kPi, kPi);
    CHECK(g.holds);
    CHECK(g.strict_ok);

    // the inequality pattern is V-independent
    for (double V : {0.5, 1.0, 5.0}) {
        const auto rep = interlacing_check(ContFrac::from_digits({0, 0, 2, 1}), 2, 1, V, kPi, 0, kPi);
        CHECK(rep.holds);
    }
}

TEST_CASE("size cap") {
    std::vector<long long> tail(7, 2);
    CHECK_THROWS_AS(
        interlacing_check(ContFrac::from_tail(tail), 2, 2, 1.0, 0, 0, 0), SizeCap);
}
