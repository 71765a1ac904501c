#include "sturmspec/bandtype.hpp"

#include <doctest.h>

#include <cmath>

using namespace sturmspec;

TEST_CASE("backward types of the base expansions") {
    for (double V : {0.5, 1.0, 3.0}) {
        const auto f00 = backward_type(ContFrac::from_digits({0, 0}), 0, V);
        CHECK(f00.A);
        CHECK_FALSE(f00.weakB);
        const auto f001 = backward_type(ContFrac::from_digits({0, 0, 1}), 0, V);
        CHECK(f001.B);
        CHECK_FALSE(f001.weakA);
    }
}

TEST_CASE("classification of sigma_[0,0,3]") {
    // the left-most two bands are type A, the rightmost is type B
    const auto reports =
        classify(ContFrac::from_digits({0, 0, 3}), {0.5, 1.0, 2.0, 4.5, 8.0});
    REQUIRE(reports.size() == 3);
    CHECK(reports[0].final == 'A');
    CHECK(reports[1].final == 'A');
    CHECK(reports[2].final == 'B');
}

TEST_CASE("duality swaps the types") {
    for (double V : {0.7, 1.0}) {
        const auto a = classify(ContFrac::from_digits({0, 0, 2}), {V});
        const auto b = classify(ContFrac::from_digits({0, 0, 1, 1}), {V});
        REQUIRE(a.size() == b.size());
        for (std::size_t j = 0; j < a.size(); ++j) CHECK(a[j].final != b[j].final);
    }
}

TEST_CASE("golden classification counts and stability") {
    const std::vector<double> grid = {0.5, 1.0, 2.0, 4.5, 8.0};
    for (int k = 1; k <= 5; ++k) {
        const std::vector<long long> tail(k, 1);
        const auto reports = classify(ContFrac::from_tail(tail), grid);
        const long long qk = convergent(tail, k).second.convert_to<long long>();
        const long long qk1 = convergent(tail, k - 1).second.convert_to<long long>();
        long long na = 0, nb = 0;
        for (const auto& r : reports) (r.final == 'A' ? na : nb)++;
        CHECK(na == qk - qk1);
        CHECK(nb == qk1);
    }
}

TEST_CASE("associated bands") {
    // I_[0,0] with m = 1: backward type A, M = 0, one tower band per n
    const auto a = associated_bands(ContFrac::from_digits({0, 0}), 0, 1, 1);
    CHECK(a.M == 0);
    CHECK(a.icm.empty());
    CHECK(a.icmn.size() == 1);
    CHECK_FALSE(a.J.has_value()); // nothing to the left of [-2,2] in sigma_[0,0,1]
    CHECK(a.K.has_value());

    // I_[0,0,1] with m = 1: backward type B, M = 1: one A-child, two tower bands
    const auto b = associated_bands(ContFrac::from_digits({0, 0, 1}), 0, 1, 1);
    CHECK(b.M == 1);
    CHECK(b.icm.size() == 1);
    CHECK(b.icmn.size() == 2);
}

TEST_CASE("forward checks at the induction base") {
    // [-2,2] is of 1-forward type A at V = 1
    const auto fa = forward_check(ContFrac::from_digits({0, 0}), 0, 1, 1.0, 3);
    CHECK(fa.all());
    // [-2+V,2+V] is of 1-forward type B; the three bands interlace
    const auto fb = forward_check(ContFrac::from_digits({0, 0, 1}), 0, 1, 1.0, 3);
    CHECK(fb.all());
}

TEST_CASE("forward checks across golden levels") {
    for (int k = 2; k <= 4; ++k) {
        const ContFrac c = ContFrac::from_tail(std::vector<long long>(k, 1));
        const auto types = classify(c, {5.0});
        for (const auto& t : types) {
            for (long long m = 1; m <= 2; ++m) {
                const auto fc = forward_check(c, t.index, m, 5.0, 2);
                CHECK(fc.all());
            }
        }
    }
}

TEST_CASE("index identities") {
    // the worked identity: ind(I_[0,0,1]) = 0, ind(J) = 0, ind(I^1_[0,0,1,m,1]) = 1
    const auto a = associated_bands(ContFrac::from_digits({0, 0, 1}), 0, 2, 1);
    REQUIRE(a.J.has_value());
    CHECK(*a.J == 0);
    CHECK(a.icmn.at(0) == 1);

    for (int k = 1; k <= 5; ++k) {
        const ContFrac c = ContFrac::from_tail(std::vector<long long>(k, 1));
        const long long q = convergent(std::vector<long long>(k, 1), k).second
                                .convert_to<long long>();
        for (int idx = 0; idx < q; ++idx)
            for (long long m = 1; m <= 3; ++m)
                for (long long n = 1; n <= 3; ++n)
                    CHECK(index_relation_check(c, idx, m, n));
    }
}

TEST_CASE("trace ladder") {
    // base case at c = [0,0,1], m = 1: E = R(J) = 0 and the ladder grows by V
    const auto rep = trace_ladder_check(ContFrac::from_digits({0, 0, 1}), 0, 1, 3, 0.5);
    REQUIRE(rep.applicable);
    CHECK(rep.E == doctest::Approx(0.0));
    CHECK(rep.equality);
    CHECK(rep.monotone);
    CHECK(rep.sign_products);
    CHECK(rep.ladder.at(0) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("zentrum side of type-B bands and the type-A counterexample") {
    // type-B bands: E = R(J) lies left of the Zentrum, trace signs agree
    const ContFrac c = ContFrac::from_tail({1, 1, 1});
    const auto types = classify(c, {0.5});
    const double V = 0.5;
    const BandSet bs = spectrum_bands(c, V);
    for (const auto& t : types) {
        if (t.final != 'B') continue;
        for (long long m = 1; m <= 2; ++m) {
            const auto a = associated_bands(c, t.index, m, 1);
            if (!a.J) continue;
            const double E = spectrum_bands(c.extended(m), V).band(*a.J).right;
            const Band I = bs.band(t.index);
            if (E < I.left || E > I.right) continue;
            CHECK(E < zentrum(c, I, V));
            const double tl = trace_eval(c, I.left, V);
            CHECK(trace_eval(c, E, V) * tl > 0);
        }
    }

    // type-A counterexample: for c = [0,0], L(K_[0,0,1]) = -2+V crosses the
    // Zentrum once V > 2
    const ContFrac c00 = ContFrac::from_digits({0, 0});
    const Band I = spectrum_bands(c00, 3.0).band(0);
    const double Et = -2.0 + 3.0; // L(K_[0,0,1](3))
    CHECK(Et > zentrum(c00, I, 3.0));
    const double Et1 = -2.0 + 1.0;
    CHECK(Et1 < zentrum(c00, I, 1.0));
}

TEST_CASE("type report serialization") {
    const auto reports = classify(ContFrac::from_digits({0, 0, 2}), {1.0, 2.0});
    const auto js = type_report_json(ContFrac::from_digits({0, 0, 2}), reports[0]);
    CHECK(js.find("\"type\":\"A\"") != std::string::npos);
    CHECK(js.find("\"stable\":true") != std::string::npos);
}
