#include "sturmspec/tracepoly.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace sturmspec;

TEST_CASE("closed-form traces") {
    const Rational V(1);
    CHECK(poly_equal(trace_poly(ContFrac::from_digits({0, 0, 2}), V).coeffs,
                     Poly{Rational(-2), Rational(-1), Rational(1)}));
    CHECK(poly_equal(trace_poly(ContFrac::from_digits({0, 0, 1, 2}), V).coeffs,
                     Poly{Rational(2), Rational(-2), Rational(-2), Rational(1)}));
    CHECK(poly_equal(trace_poly(ContFrac::from_digits({0, 0, 1, -1}), Rational(7, 2)).coeffs,
                     Poly{Rational(2)}));
    CHECK(poly_equal(trace_poly(ContFrac::from_digits({0, 0}), V).coeffs,
                     Poly{Rational(0), Rational(1)}));
}

TEST_CASE("float trace evaluation") {
    CHECK(trace_eval(ContFrac::from_digits({0, 0, 2}), 1.0, 1.0) == doctest::Approx(-2.0));
    CHECK(trace_eval(ContFrac::from_digits({0, 0, 3}), 2.0, 1.0) == doctest::Approx(-1.0));
    CHECK(trace_eval(ContFrac::from_digits({0}), 0.37, 5.0) == doctest::Approx(2.0));
    // overflow guard: long product at large energy
    const ContFrac deep = ContFrac::from_tail(std::vector<long long>(400, 1));
    CHECK_THROWS_AS(trace_eval(deep, 10.0, 1.0), TraceOverflow);
}

TEST_CASE("float path agrees with exact Horner on the band-search box") {
    std::mt19937 rng(23);
    for (int k = 1; k <= 6; ++k) {
        const ContFrac c = ContFrac::from_tail(std::vector<long long>(k, 1));
        const TracePoly tp = trace_poly(c, Rational(1));
        for (int i = 0; i < 40; ++i) {
            const double E = -3.0 + 6.0 * (rng() % 10000) / 10000.0;
            const double a = trace_eval(c, E, 1.0);
            const double b = tp.eval(E);
            CHECK(std::fabs(a - b) <= 1e-10 * std::max(1.0, std::fabs(b)));
        }
    }
}

TEST_CASE("Chebyshev identities") {
    for (int n = 1; n <= 30; ++n) {
        const Poly lhs = poly_sub(poly_mul(ChebyshevS::poly(n), ChebyshevS::poly(n - 2)),
                                  poly_mul(ChebyshevS::poly(n - 1), ChebyshevS::poly(n - 1)));
        CHECK(poly_equal(lhs, Poly{Rational(-1)}));
        const long long s2 = (n % 2 ? -1 : 1) * (n + 1);
        CHECK(ChebyshevS::eval(n, Rational(-2)) == Rational(s2));
        CHECK(ChebyshevS::eval(n, Rational(2)) == Rational(n + 1));
    }
}

TEST_CASE("basic trace identities through Chebyshev polynomials") {
    for (const Rational& V : {Rational(1), Rational(1, 2)}) {
        for (int m = 1; m <= 12; ++m) {
            // t_[0,0,m] = S_m(E) - V S_{m-1}(E) - S_{m-2}(E)
            Poly want = poly_sub(ChebyshevS::poly(m), poly_scale(ChebyshevS::poly(m - 1), V));
            want = poly_sub(want, ChebyshevS::poly(m - 2));
            CHECK(poly_equal(trace_poly(ContFrac::from_digits({0, 0, m}), V).coeffs, want));

            // t_[0,0,1,m] = E S_m(E-V) - 2 S_{m-1}(E-V)
            const Poly arg = {-V, Rational(1)};
            Poly want2 = poly_mul({Rational(0), Rational(1)}, ChebyshevS::compose(m, arg));
            want2 = poly_sub(want2, poly_scale(ChebyshevS::compose(m - 1, arg), Rational(2)));
            CHECK(poly_equal(trace_poly(ContFrac::from_digits({0, 0, 1, m}), V).coeffs, want2));

            // t_[0,0,1,m,1] = E S_{m+1}(E-V) - 2 S_m(E-V)
            Poly want3 = poly_mul({Rational(0), Rational(1)}, ChebyshevS::compose(m + 1, arg));
            want3 = poly_sub(want3, poly_scale(ChebyshevS::compose(m, arg), Rational(2)));
            CHECK(poly_equal(trace_poly(ContFrac::from_digits({0, 0, 1, m, 1}), V).coeffs,
                             want3));
        }
    }
}

TEST_CASE("phi-invariance of traces") {
    const Rational V(3, 2);
    CHECK(poly_equal(trace_poly(ContFrac::from_digits({0, 0, 2}), V).coeffs,
                     trace_poly(ContFrac::from_digits({0, 0, 1, 1}), V).coeffs));
    CHECK(poly_equal(trace_poly(ContFrac::from_digits({0, 0, 1, 2}), V).coeffs,
                     trace_poly(ContFrac::from_digits({0, 0, 1, 1, 1}), V).coeffs));
    std::mt19937 rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<long long> tail(1 + rng() % 4);
        for (auto& d : tail) d = 1 + rng() % 3;
        const ContFrac c = ContFrac::from_tail(tail);
        const long long m = 2 + rng() % 3;
        CHECK(poly_equal(trace_poly(c.extended(m), V).coeffs,
                         trace_poly(c.extended(m - 1).extended(1), V).coeffs));
    }
}

TEST_CASE("trace map recursion") {
    CHECK(trace_recursion_check(ContFrac::from_digits({0, 0}), 2, 3, Rational(1)));
    CHECK(trace_recursion_check(ContFrac::from_digits({0, 0, 1}), 1, 3, Rational(1)));
    CHECK(trace_recursion_check(ContFrac::from_digits({0, 0, 2, 1}), 2, 2, Rational(2, 3)));
}

TEST_CASE("Fricke-Vogt invariant") {
    // symbolic base case vanishes identically: checked at rational points
    CHECK(fricke_vogt_residual_exact(ContFrac::from_digits({0, 0}), 0, Rational(7, 3),
                                     Rational(5, 4)) == 0);
    CHECK(fricke_vogt_residual_exact(ContFrac::from_digits({0, 0, 1}), 2, Rational(3, 10),
                                     Rational(17, 10)) == 0);
    CHECK(std::fabs(fricke_vogt_residual(ContFrac::from_digits({0, 0, 1}), 2, 0.3, 1.7)) <
          1e-9);
    // [0] cannot be extended, so the residual's precondition fails there
    CHECK_THROWS_AS(fricke_vogt_residual(ContFrac::from_digits({0}), 1, -1.2, 0.7),
                    MalformedDigits);
}

TEST_CASE("trace estimates at band edges") {
    // E = -2 is an edge of [-2,2] in sigma_[0,0]; |t_[0,0,2,1]}(-2,1)| = 5
    const auto rep = trace_edge_estimates(ContFrac::from_digits({0, 0}), 2, 1, -2.0, 1.0);
    CHECK(rep.t_cmn == doctest::Approx(5.0));
    CHECK(rep.weak_implication);
    CHECK(rep.strict_implication);
    CHECK_THROWS_AS(trace_edge_estimates(ContFrac::from_digits({0, 0}), 2, 1, 0.5, 1.0),
                    NotAnEdge);
    // degenerate family: |t_[0,0,1,m,1](2+V,V)| = V(m+2)+2
    const double V = 0.8;
    const auto rep2 =
        trace_edge_estimates(ContFrac::from_digits({0, 0, 1}), 1, 1, 2.0 + V, V);
    CHECK(rep2.t_cmn == doctest::Approx(V * 3 + 2));
    CHECK(rep2.weak_implication);
}

TEST_CASE("memoized polynomials are consistent") {
    const Rational V(1);
    const auto a = trace_poly(ContFrac::from_digits({0, 0, 1, 2}), V);
    const auto b = trace_poly(ContFrac::from_digits({0, 0, 1, 2}), V);
    CHECK(poly_equal(a.coeffs, b.coeffs));
}
