#pragma once

#include "sturmspec/poly.hpp"

#include <vector>

namespace sturmspec {

/// Dilated Chebyshev polynomials of the second kind:
/// S_{-1} = 0, S_0 = 1, S_n = x S_{n-1} - S_{n-2}.
/// They satisfy S_n S_{n-2} - S_{n-1}^2 = -1 and S_n(+-2) = (+-1)^n (n+1).
class ChebyshevS {
public:
    /// Coefficient vector of S_n (ascending degree), n >= -1.
    static Poly poly(int n) {
        if (n < 0) return {};
        Poly a = {Rational(1)}; // S_0
        if (n == 0) return a;
        Poly b = {Rational(0), Rational(1)}; // S_1 = x
        for (int i = 2; i <= n; ++i) {
            Poly c = poly_sub(poly_mul({Rational(0), Rational(1)}, b), a);
            a = std::move(b);
            b = std::move(c);
        }
        return b;
    }

    static double eval(int n, double x) {
        if (n < 0) return 0.0;
        double a = 1.0, b = x;
        if (n == 0) return a;
        for (int i = 2; i <= n; ++i) {
            double c = x * b - a;
            a = b;
            b = c;
        }
        return b;
    }

    static Rational eval(int n, const Rational& x) {
        if (n < 0) return Rational(0);
        Rational a(1), b = x;
        if (n == 0) return a;
        for (int i = 2; i <= n; ++i) {
            Rational c = x * b - a;
            a = b;
            b = c;
        }
        return b;
    }

    /// S_n composed with a polynomial argument t(x).
    static Poly compose(int n, const Poly& t) {
        if (n < 0) return {};
        Poly a = {Rational(1)};
        if (n == 0) return a;
        Poly b = t;
        for (int i = 2; i <= n; ++i) {
            Poly c = poly_sub(poly_mul(t, b), a);
            a = std::move(b);
            b = std::move(c);
        }
        return b;
    }
};

} // namespace sturmspec
