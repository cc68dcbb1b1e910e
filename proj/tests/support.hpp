#pragma once

// Shared generators and oracles for the test programs. Everything random goes
// through a seeded engine so failures reproduce.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "imcf/curve.hpp"
#include "imcf/lvec3.hpp"
#include "imcf/ruled_surface.hpp"

namespace imcf::testing {

inline constexpr std::uint64_t kSeed = 0x1f2e3d4c5b6a7988ULL;

class Gen {
public:
    explicit Gen(std::uint64_t seed = kSeed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int sign() { return uniform(0.0, 1.0) < 0.5 ? -1 : 1; }
    LVec3 vec(double scale = 3.0) { return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)}; }
    std::vector<double> coeffs(int degree, double scale)
    {
        std::vector<double> c(static_cast<std::size_t>(degree) + 1);
        for (double& x : c) x = uniform(-scale, scale);
        return c;
    }
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

inline Jet horner(const std::vector<double>& c, const Jet& s)
{
    Jet acc(0.0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + Jet(*it);
    return acc;
}

inline std::array<Jet, 3> jet_cross(const std::array<Jet, 3>& u, const std::array<Jet, 3>& v)
{
    return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], -(u[0] * v[1] - u[1] * v[0])};
}

/// Cubic polynomial curve with random coefficients.
inline Curve random_poly_curve(Gen& g, Interval dom, int degree = 3, double scale = 1.0)
{
    const auto cx = g.coeffs(degree, scale);
    const auto cy = g.coeffs(degree, scale);
    const auto cz = g.coeffs(degree, scale);
    return Curve::analytic(
        [cx, cy, cz](const Jet& s) -> JetVec3 { return {horner(cx, s), horner(cy, s), horner(cz, s)}; }, dom);
}

/// lambda(s) (cos phi, sin phi, 1) with lambda > 0: a general lightlike director.
inline Curve random_lightlike_director(Gen& g, Interval dom)
{
    const double l0 = g.uniform(0.5, 2.0);
    const double l1 = g.uniform(-0.2, 0.2);
    const auto ph = g.coeffs(2, 1.0);
    return Curve::analytic(
        [l0, l1, ph](const Jet& s) -> JetVec3 {
            const Jet lam = exp(Jet(l1) * s) * l0;
            const Jet phi = horner(ph, s);
            return {lam * cos(phi), lam * sin(phi), lam};
        },
        dom);
}

/// Unit director with <beta,beta> = delta, built from hyperbolic/polar angles.
inline Curve random_unit_director(Gen& g, int delta, Interval dom)
{
    const auto ps = g.coeffs(2, 0.6);
    const auto ph = g.coeffs(2, 1.0);
    return Curve::analytic(
        [ps, ph, delta](const Jet& s) -> JetVec3 {
            const Jet psi = horner(ps, s);
            const Jet phi = horner(ph, s);
            if (delta > 0) return {cosh(psi) * cos(phi), cosh(psi) * sin(phi), sinh(psi)};
            return {sinh(psi) * cos(phi), sinh(psi) * sin(phi), cosh(psi)};
        },
        dom);
}

/// gamma = c + a0 beta + m(s) beta x beta': <gamma', beta> vanishes identically
/// when <beta,beta> is constant, so (gamma, beta) is an orthogonal parametrization.
inline Curve orthogonal_base(Gen& g, const Curve& beta, Interval dom)
{
    const LVec3 c = g.vec(1.0);
    const double a0 = g.uniform(-1.0, 1.0);
    const auto m = g.coeffs(2, 1.0);
    return Curve::analytic(
        [c, a0, m, beta](const Jet& s) -> JetVec3 {
            const JetVec3 b = beta.components(s);
            const JetVec3 db{derivative(b[0]), derivative(b[1]), derivative(b[2])};
            const JetVec3 w = jet_cross(b, db);
            const Jet ms = horner(m, s);
            return {Jet(c.x()) + a0 * b[0] + ms * w[0], Jet(c.y()) + a0 * b[1] + ms * w[1],
                    Jet(c.z()) + a0 * b[2] + ms * w[2]};
        },
        dom);
}

inline Curve circle_curve(Interval dom)
{
    return Curve::analytic([](const Jet& s) -> JetVec3 { return {cos(s), sin(s), Jet(0.0)}; }, dom);
}

inline RuledSurface circle_cylinder(Interval s = {-3.0, 3.0}, Interval t = {-1.0, 1.0})
{
    return {circle_curve(s), line_curve({0, 0, 1}, {0, 0, 0}, s), s, t};
}

/// X = (t, sinh s, cosh s).
inline RuledSurface hyperbola_cylinder(Interval s = {-2.0, 2.0}, Interval t = {-1.0, 1.0})
{
    Curve g = Curve::analytic([](const Jet& u) -> JetVec3 { return {Jet(0.0), sinh(u), cosh(u)}; }, s);
    return {std::move(g), line_curve({1, 0, 0}, {0, 0, 0}, s), s, t};
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

inline double max_abs_diff(const LVec3& a, const LVec3& b) { return (a - b).max_abs(); }

/// Romberg integration on [a,b]: an oracle independent of the library's Gauss-Kronrod.
template <class F>
double romberg(F f, double a, double b, int levels = 20)
{
    std::vector<std::vector<double>> R(static_cast<std::size_t>(levels), std::vector<double>(levels, 0.0));
    double h = b - a;
    R[0][0] = 0.5 * h * (f(a) + f(b));
    for (int i = 1; i < levels; ++i) {
        h *= 0.5;
        double sum = 0.0;
        const long n = 1L << (i - 1);
        for (long k = 1; k <= n; ++k) sum += f(a + static_cast<double>(2 * k - 1) * h);
        R[i][0] = 0.5 * R[i - 1][0] + h * sum;
        double p = 4.0;
        for (int j = 1; j <= i; ++j, p *= 4.0) R[i][j] = R[i][j - 1] + (R[i][j - 1] - R[i - 1][j - 1]) / (p - 1.0);
        if (i > 5 && std::abs(R[i][i] - R[i - 1][i - 1]) < 1e-15 * std::max(1.0, std::abs(R[i][i]))) return R[i][i];
    }
    return R[levels - 1][levels - 1];
}

} // namespace imcf::testing
