#pragma once

// Truncated Taylor arithmetic up to fourth order. A Jet carries a value and its
// first four derivatives with respect to one parameter; arithmetic on jets
// propagates derivatives exactly (up to rounding), which is how every curve in
// the library obtains analytic derivatives. Curves expose orders 0..3; the
// extra order lets derivative() produce a jet that is still exact to order 3.

#include <array>
#include <cmath>
#include <functional>

namespace imcf {

class Jet {
public:
    static constexpr int kOrder = 4;

    constexpr Jet() = default;
    constexpr Jet(double value) : t_{value, 0.0, 0.0, 0.0, 0.0} {} // NOLINT: implicit constant

    /// The identity jet s -> s evaluated at s.
    static constexpr Jet variable(double s) { return from_taylor({s, 1.0, 0.0, 0.0, 0.0}); }

    /// Build from derivatives f, f', f'', f''', f''''.
    static constexpr Jet from_derivatives(double f0, double f1, double f2, double f3, double f4 = 0.0)
    {
        return from_taylor({f0, f1, f2 / 2.0, f3 / 6.0, f4 / 24.0});
    }

    static constexpr Jet from_taylor(std::array<double, 5> t)
    {
        Jet j;
        j.t_ = t;
        return j;
    }

    constexpr double value() const { return t_[0]; }

    /// k-th derivative, 0 <= k <= 4.
    constexpr double d(int k) const
    {
        constexpr std::array<double, 5> fact{1.0, 1.0, 2.0, 6.0, 24.0};
        return t_[k] * fact[k];
    }

    constexpr double taylor(int k) const { return t_[k]; }

    Jet& operator+=(const Jet& o)
    {
        for (int k = 0; k <= kOrder; ++k) t_[k] += o.t_[k];
        return *this;
    }
    Jet& operator-=(const Jet& o)
    {
        for (int k = 0; k <= kOrder; ++k) t_[k] -= o.t_[k];
        return *this;
    }
    Jet& operator*=(const Jet& o);
    Jet& operator/=(const Jet& o);

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
    friend Jet operator/(Jet a, const Jet& b) { return a /= b; }
    friend Jet operator-(const Jet& a)
    {
        return from_taylor({-a.t_[0], -a.t_[1], -a.t_[2], -a.t_[3], -a.t_[4]});
    }

private:
    std::array<double, 5> t_{0.0, 0.0, 0.0, 0.0, 0.0};
};

Jet sqrt(const Jet& a);
Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet sinh(const Jet& a);
Jet cosh(const Jet& a);
/// a^p for a > 0 (real exponent).
Jet pow(const Jet& a, double p);
/// a^n for integer n, valid for any sign of a when n >= 0.
Jet powi(const Jet& a, int n);
/// |a|, smooth away from a = 0.
Jet abs(const Jet& a);
/// d/ds of a jet. The top coefficient of the result is unknown and set to zero,
/// so the result is exact through order kOrder - 1.
Jet derivative(const Jet& a);

/// A smooth scalar function of the curve parameter, evaluated on jets.
using ScalarFn = std::function<Jet(const Jet&)>;

} // namespace imcf
