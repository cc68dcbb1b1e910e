#include "imcf/jet.hpp"

namespace imcf {

namespace {

using Taylor = std::array<double, 5>;

Taylor coeffs(const Jet& a)
{
    return {a.taylor(0), a.taylor(1), a.taylor(2), a.taylor(3), a.taylor(4)};
}

// Paired recurrences for (sin, cos) and (sinh, cosh):
//   s_k = (1/k) sum_{i=1..k} i a_i c_{k-i},  c_k = sign (1/k) sum_{i=1..k} i a_i s_{k-i}
std::pair<Jet, Jet> trig_pair(const Jet& a, double s0, double c0, double sign)
{
    const Taylor x = coeffs(a);
    Taylor s{s0, 0, 0, 0, 0};
    Taylor c{c0, 0, 0, 0, 0};
    for (int k = 1; k <= Jet::kOrder; ++k) {
        double ss = 0.0;
        double cc = 0.0;
        for (int i = 1; i <= k; ++i) {
            ss += i * x[i] * c[k - i];
            cc += i * x[i] * s[k - i];
        }
        s[k] = ss / k;
        c[k] = sign * cc / k;
    }
    return {Jet::from_taylor(s), Jet::from_taylor(c)};
}

} // namespace

Jet& Jet::operator*=(const Jet& o)
{
    Taylor r{};
    for (int k = 0; k <= kOrder; ++k) {
        for (int i = 0; i <= k; ++i) r[k] += t_[i] * o.t_[k - i];
    }
    t_ = r;
    return *this;
}

Jet& Jet::operator/=(const Jet& o)
{
    Taylor q{};
    for (int k = 0; k <= kOrder; ++k) {
        double acc = t_[k];
        for (int i = 1; i <= k; ++i) acc -= o.t_[i] * q[k - i];
        q[k] = acc / o.t_[0];
    }
    t_ = q;
    return *this;
}

Jet sqrt(const Jet& a)
{
    const Taylor x = coeffs(a);
    Taylor r{std::sqrt(x[0]), 0, 0, 0, 0};
    for (int k = 1; k <= Jet::kOrder; ++k) {
        double acc = x[k];
        for (int i = 1; i < k; ++i) acc -= r[i] * r[k - i];
        r[k] = acc / (2.0 * r[0]);
    }
    return Jet::from_taylor(r);
}

Jet exp(const Jet& a)
{
    const Taylor x = coeffs(a);
    Taylor e{std::exp(x[0]), 0, 0, 0, 0};
    for (int k = 1; k <= Jet::kOrder; ++k) {
        double acc = 0.0;
        for (int i = 1; i <= k; ++i) acc += i * x[i] * e[k - i];
        e[k] = acc / k;
    }
    return Jet::from_taylor(e);
}

Jet log(const Jet& a)
{
    const Taylor x = coeffs(a);
    Taylor l{std::log(x[0]), 0, 0, 0, 0};
    for (int k = 1; k <= Jet::kOrder; ++k) {
        double acc = 0.0;
        for (int i = 1; i < k; ++i) acc += i * l[i] * x[k - i];
        l[k] = (x[k] - acc / k) / x[0];
    }
    return Jet::from_taylor(l);
}

Jet sin(const Jet& a) { return trig_pair(a, std::sin(a.value()), std::cos(a.value()), -1.0).first; }
Jet cos(const Jet& a) { return trig_pair(a, std::sin(a.value()), std::cos(a.value()), -1.0).second; }
Jet sinh(const Jet& a) { return trig_pair(a, std::sinh(a.value()), std::cosh(a.value()), 1.0).first; }
Jet cosh(const Jet& a) { return trig_pair(a, std::sinh(a.value()), std::cosh(a.value()), 1.0).second; }

Jet pow(const Jet& a, double p)
{
    // Keep the value exact for the base; derivatives follow from exp(p log a).
    Jet r = exp(p * log(a));
    return Jet::from_taylor({std::pow(a.value(), p), r.taylor(1), r.taylor(2), r.taylor(3), r.taylor(4)});
}

Jet powi(const Jet& a, int n)
{
    Jet r(1.0);
    for (int i = 0; i < n; ++i) r *= a;
    return r;
}

Jet abs(const Jet& a) { return a.value() < 0.0 ? -a : a; }

Jet derivative(const Jet& a)
{
    return Jet::from_taylor({a.taylor(1), 2.0 * a.taylor(2), 3.0 * a.taylor(3), 4.0 * a.taylor(4), 0.0});
}

} // namespace imcf
