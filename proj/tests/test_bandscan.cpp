#include "sturmspec/bandscan.hpp"
#include "sturmspec/bandtype.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace sturmspec;

TEST_CASE("basic spectra") {
    for (double V : {0.5, 1.0, 4.0}) {
        const BandSet bs = spectrum_bands(ContFrac::from_digits({0, 0}), V);
        REQUIRE(bs.bands.size() == 1);
        CHECK(bs.bands[0].left == doctest::Approx(-2.0));
        CHECK(bs.bands[0].right == doctest::Approx(2.0));
    }
    CHECK_THROWS_AS(spectrum_bands(ContFrac::from_digits({0, 0, 1}), 0.0), ZeroCoupling);
    CHECK_THROWS_AS(spectrum_bands(ContFrac::from_digits({0, 0, 0}), 1.0),
                    DegenerateExpansion);
    // [0,0,-1] carries the single band [-2-V, 2-V]
    const BandSet ref = spectrum_bands(ContFrac::from_digits({0, 0, -1}), 1.0);
    REQUIRE(ref.bands.size() == 1);
    CHECK(ref.bands[0].left == doctest::Approx(-3.0));
    CHECK(ref.bands[0].right == doctest::Approx(1.0));
}

TEST_CASE("quadratic and cubic closed forms") {
    const double V = 1.0;
    const BandSet b2 = spectrum_bands(ContFrac::from_digits({0, 0, 2}), V);
    REQUIRE(b2.bands.size() == 2);
    CHECK(b2.bands[0].left == doctest::Approx(0.5 - std::sqrt(4.25)).epsilon(1e-12));
    CHECK(b2.bands[0].right == doctest::Approx(0.0));
    CHECK(b2.bands[1].left == doctest::Approx(1.0));
    CHECK(b2.bands[1].right == doctest::Approx(0.5 + std::sqrt(4.25)).epsilon(1e-12));

    const BandSet b3 = spectrum_bands(ContFrac::from_digits({0, 0, 3}), V);
    REQUIRE(b3.bands.size() == 3);
    const double want[6] = {-std::sqrt(3.0), -1.0, 1.0 - std::sqrt(2.0),
                            1.0,             std::sqrt(3.0), 1.0 + std::sqrt(2.0)};
    const double got[6] = {b3.bands[0].left,  b3.bands[0].right, b3.bands[1].left,
                           b3.bands[1].right, b3.bands[2].left,  b3.bands[2].right};
    for (int i = 0; i < 6; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
}

TEST_CASE("exact Sturm path cross-checks the eigen path") {
    for (int k = 1; k <= 7; ++k) {
        const ContFrac c = ContFrac::from_tail(std::vector<long long>(k, 1));
        for (double V : {0.5, 1.0}) {
            const BandSet fl = spectrum_bands(c, V);
            const BandSet ex = spectrum_bands(c, V, {true, 1e-13});
            REQUIRE(fl.bands.size() == ex.bands.size());
            for (std::size_t j = 0; j < fl.bands.size(); ++j) {
                CHECK(std::fabs(fl.bands[j].left - ex.bands[j].left) < 1e-9);
                CHECK(std::fabs(fl.bands[j].right - ex.bands[j].right) < 1e-9);
            }
        }
    }
    const ContFrac silver4 = ContFrac::from_tail({2, 2, 2, 2});
    const BandSet fl = spectrum_bands(silver4, 1.0);
    const BandSet ex = spectrum_bands(silver4, 1.0, {true, 1e-13});
    for (std::size_t j = 0; j < fl.bands.size(); ++j) {
        CHECK(std::fabs(fl.bands[j].left - ex.bands[j].left) < 1e-9);
        CHECK(std::fabs(fl.bands[j].right - ex.bands[j].right) < 1e-9);
    }
}

TEST_CASE("band relations") {
    CHECK(band_relation(1.0 - std::sqrt(3.0), std::sqrt(2.0), -1.0, 3.0) ==
          BandRelation::strict_subset);
    CHECK(band_relation(-2, 2, -1, 3) == BandRelation::left_of);
    CHECK(band_relation(0, 1, 2, 3) == BandRelation::strictly_left_of);
    CHECK(band_relation(0, 1, 0, 1) == BandRelation::equal);
    CHECK(band_relation(-1, 3, 0, 1) == BandRelation::contains);
}

TEST_CASE("zentrum") {
    const ContFrac c00 = ContFrac::from_digits({0, 0});
    CHECK(zentrum(c00, spectrum_bands(c00, 1.0).band(0), 1.0) == doctest::Approx(0.0));
    const ContFrac c2 = ContFrac::from_digits({0, 0, 2});
    const BandSet bs = spectrum_bands(c2, 1.0);
    // roots of E^2 - E - 2: -1 and 2
    CHECK(zentrum(c2, bs.band(0), 1.0) == doctest::Approx(-1.0));
    CHECK(zentrum(c2, bs.band(1), 1.0) == doctest::Approx(2.0));
}

TEST_CASE("floquet matrices") {
    const FloquetMatrix h = build_floquet(ContFrac::from_digits({0, 0}), 1.0, 0.0);
    CHECK(h.size() == 1);
    CHECK(floquet_eigenvalues(h) == std::vector<double>{2.0});
    const FloquetMatrix hpi = build_floquet(ContFrac::from_digits({0, 0}), 1.0, kPi);
    CHECK(floquet_eigenvalues(hpi)[0] == doctest::Approx(-2.0));

    // q = 2 with theta = 0: [[0,2],[2,1]] -> (1 +- sqrt(17))/2
    const FloquetMatrix h2 = build_floquet(ContFrac::from_digits({0, 0, 2}), 1.0, 0.0);
    const auto e2 = floquet_eigenvalues(h2);
    CHECK(e2[0] == doctest::Approx((1.0 - std::sqrt(17.0)) / 2).epsilon(1e-12));
    CHECK(e2[1] == doctest::Approx((1.0 + std::sqrt(17.0)) / 2).epsilon(1e-12));
    // theta = pi kills the off-diagonal entirely at q = 2
    const auto epi = floquet_eigenvalues(build_floquet(ContFrac::from_digits({0, 0, 2}), 1.0, kPi));
    CHECK(epi[0] == doctest::Approx(0.0));
    CHECK(epi[1] == doctest::Approx(1.0));
}

TEST_CASE("eigen residuals") {
    const FloquetMatrix f = build_floquet(ContFrac::from_tail({1, 1, 1, 1, 1}), 1.3, kPi, 2);
    const SymMatrix m = f.dense();
    const auto res = jacobi_eigen(m);
    for (std::size_t i = 0; i < m.n; ++i) {
        double norm = 0;
        for (std::size_t r = 0; r < m.n; ++r) {
            double mv = 0;
            for (std::size_t c = 0; c < m.n; ++c) mv += m.at(r, c) * res.vectors[i][c];
            const double d = mv - res.values[i] * res.vectors[i][r];
            norm += d * d;
        }
        CHECK(std::sqrt(norm) <= 1e-9 * std::max(1.0, m.frobenius()));
    }
}

TEST_CASE("counting function") {
    const ContFrac c00 = ContFrac::from_digits({0, 0});
    CHECK(floquet_counting(2.0, build_floquet(c00, 1.0, 0.0)) == 0);
    CHECK(floquet_counting(-100.0, build_floquet(c00, 1.0, 0.0)) == 0);
    CHECK(floquet_counting(100.0, build_floquet(c00, 1.0, 0.0)) == 1);

    // counting matches the dense solver on random Floquet matrices
    std::mt19937 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<long long> tail(1 + rng() % 4);
        for (auto& d : tail) d = 1 + rng() % 3;
        const ContFrac c = ContFrac::from_tail(tail);
        const double V = 0.25 + (rng() % 100) / 25.0;
        const FloquetMatrix f = build_floquet(c, V, (rng() % 2) ? kPi : 0.0, 1 + rng() % 2);
        const auto ev = floquet_eigenvalues(f);
        for (int probe = 0; probe < 10; ++probe) {
            const double lam = -4.0 + 8.0 * (rng() % 1000) / 1000.0 + V / 3.0;
            long long want = 0;
            for (double e : ev)
                if (e < lam) ++want;
            CHECK(floquet_counting(lam, f) == want);
        }
        // bisection path reproduces the dense eigenvalues
        const auto bv = floquet_eigenvalues_bisect(f, 1e-13);
        for (std::size_t i = 0; i < ev.size(); ++i) CHECK(std::fabs(bv[i] - ev[i]) < 1e-9);
    }
}

TEST_CASE("n-fold counting identities") {
    const ContFrac c = ContFrac::from_digits({0, 0, 2});
    const double V = 1.0;
    const int n = 3;
    const BandSet bs = spectrum_bands(c, V);
    for (const Band& band : bs.bands) {
        // left edge: theta parity for odd n equals the single-copy parity
        const double thl = band.theta_left ? kPi : 0.0;
        const double thr = band.theta_right ? kPi : 0.0;
        const FloquetMatrix fl = build_floquet(c, V, thl, n);
        const FloquetMatrix fr = build_floquet(c, V, thr, n);
        // evaluated a hair below the edge: N counts strictly-below and the
        // float edge may land on either side of its own eigenvalue copy
        CHECK(floquet_counting(band.left - 1e-9, fl) == n * band.index);
        CHECK(floquet_counting(band.right - 1e-9, fr) == n * (band.index + 1) - 1);
        // each band holds exactly n eigenvalues of either theta
        for (double th : {0.0, kPi}) {
            const FloquetMatrix f = build_floquet(c, V, th, n);
            const long long inside = floquet_counting(band.right + 1e-9, f) -
                                     floquet_counting(band.left - 1e-9, f);
            CHECK(inside == n);
        }
    }
}

TEST_CASE("edge theta parities") {
    CHECK(edge_theta(0, Side::left, 1) == 1);  // pi
    CHECK(edge_theta(0, Side::right, 1) == 0); // 0
    // rightmost band right edge always theta = 0; trace signs match parity
    for (const auto& tail : {std::vector<long long>{3}, {1, 2}, {2, 1, 1}}) {
        const ContFrac c = ContFrac::from_tail(tail);
        const BandSet bs = spectrum_bands(c, 1.0);
        CHECK(bs.bands.back().theta_right == 0);
        for (const Band& b : bs.bands) {
            const double tl = trace_eval(c, b.left, 1.0);
            const double tr = trace_eval(c, b.right, 1.0);
            CHECK(tl == doctest::Approx(b.theta_left ? -2.0 : 2.0).epsilon(1e-6));
            CHECK(tr == doctest::Approx(b.theta_right ? -2.0 : 2.0).epsilon(1e-6));
        }
        // adjacent edges across one gap share theta
        for (std::size_t j = 0; j + 1 < bs.bands.size(); ++j)
            CHECK(bs.bands[j].theta_right == bs.bands[j + 1].theta_left);
    }
}

TEST_CASE("admissibility parity") {
    CHECK(admissible(0, 0, 1, 0, 1, 0, 1));
    CHECK_FALSE(admissible(0, 0, 0, 0, 0, 1, 2));
    // parity criterion agrees with the theta-sum definition via edge parities
    std::mt19937 rng(37);
    for (int trial = 0; trial < 200; ++trial) {
        const long long q1 = 1 + rng() % 5, q2 = 1 + rng() % 7;
        const long long n = 1 + rng() % 3;
        const long long q3 = n * q2 + q1;
        const long long i1 = rng() % q1, i2 = rng() % q2, i3 = rng() % q3;
        const int s1 = rng() % 2, s2 = rng() % 2, s3 = rng() % 2;
        // theta parities from the Floquet-Bloch congruence
        const int t1 = ((i1 + s1 - q1) % 2 + 2) % 2;
        const int t2 = ((n * (i2 + s2 - q2)) % 2 + 2) % 2;
        const int t3 = ((i3 + s3 - q3) % 2 + 2) % 2;
        const bool theta_adm = (t1 + t2 + t3) % 2 == 0;
        CHECK(admissible(i1, i2, i3, s1, s2, s3, n) == theta_adm);
    }
}

TEST_CASE("hausdorff distance") {
    const ContFrac c1 = ContFrac::from_digits({0, 0, 1});
    CHECK(hausdorff_distance(spectrum_bands(c1, 1.0), spectrum_bands(c1, 2.0)) ==
          doctest::Approx(1.0));
    const ContFrac c2 = ContFrac::from_digits({0, 0, 2});
    CHECK(hausdorff_distance(spectrum_bands(c2, 1.0), spectrum_bands(c2, 1.0)) ==
          doctest::Approx(0.0));
    CHECK(hausdorff_distance(spectrum_bands(c2, 1.0), spectrum_bands(c2, 1.5)) <= 0.5 + 1e-12);
    // d_H <= |V - V'| across random samples
    std::mt19937 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<long long> tail(1 + rng() % 3);
        for (auto& d : tail) d = 1 + rng() % 3;
        const ContFrac c = ContFrac::from_tail(tail);
        const double v1 = 0.3 + (rng() % 100) / 40.0;
        const double v2 = v1 + (rng() % 100) / 100.0;
        CHECK(hausdorff_distance(spectrum_bands(c, v1), spectrum_bands(c, v2)) <=
              std::fabs(v1 - v2) + 1e-10);
    }
}

TEST_CASE("negative coupling mirror") {
    const ContFrac c = ContFrac::from_tail({1, 1, 1, 1, 1});
    const BandSet plus = spectrum_bands(c, 1.0);
    const BandSet minus = spectrum_bands(c, -1.0);
    const std::size_t q = plus.bands.size();
    for (std::size_t j = 0; j < q; ++j) {
        CHECK(minus.bands[j].left == doctest::Approx(-plus.bands[q - 1 - j].right).epsilon(1e-10));
        CHECK(minus.bands[j].right == doctest::Approx(-plus.bands[q - 1 - j].left).epsilon(1e-10));
    }
}

TEST_CASE("nesting of consecutive approximants") {
    const std::vector<long long> tail(9, 1);
    for (double V : {0.7, 2.0}) {
        for (int k = 1; k <= 7; ++k) {
            const auto cut = [&](int j) {
                return spectrum_bands(
                    ContFrac::from_tail(std::vector<long long>(tail.begin(), tail.begin() + j)),
                    V);
            };
            const BandSet up = cut(k + 1);
            std::vector<std::pair<double, double>> iv;
            for (const Band& b : cut(k).bands) iv.emplace_back(b.left, b.right);
            for (const Band& b : cut(k - 1).bands) iv.emplace_back(b.left, b.right);
            std::sort(iv.begin(), iv.end());
            std::vector<std::pair<double, double>> merged;
            for (const auto& [l, r] : iv) {
                if (!merged.empty() && l <= merged.back().second + 1e-8)
                    merged.back().second = std::max(merged.back().second, r);
                else
                    merged.emplace_back(l, r);
            }
            for (const Band& b : up.bands) {
                bool covered = false;
                for (const auto& [l, r] : merged)
                    if (l - 1e-8 <= b.left && b.right <= r + 1e-8) covered = true;
                CHECK(covered);
            }
        }
    }
}

TEST_CASE("band record json") {
    const ContFrac c = ContFrac::from_digits({0, 0, 2});
    BandSet bs = spectrum_bands(c, 1.0);
    classify_bands(c, bs);
    const std::string js = band_record_json(c, 1.0, bs.bands[0]);
    CHECK(js.find("\"cf\":[2]") != std::string::npos);
    CHECK(js.find("\"index\":0") != std::string::npos);
    CHECK(js.find("\"type\":\"A\"") != std::string::npos);
}
