#pragma once

#include <functional>
#include <vector>

#include "imcf/curve.hpp"
#include "imcf/jet.hpp"

namespace imcf {

inline constexpr double kDefaultQuadTol = 1e-10;

using RealFn = std::function<double(double)>;

/// Adaptive Gauss-Kronrod integral of a smooth integrand over [a, b] (either
/// order) with absolute error estimate <= tol. Throws SingularityError when the
/// subdivision cap is reached first.
double integrate_adaptive(const RealFn& integrand, double a, double b, double tol);

/// Sign-definite check of f and nonnegativity of radicand on the closed interval
/// between a and b, on a uniform scan of `samples` points plus the endpoints.
/// Throws SingularityError or NegativeRadicandError naming the first offending s.
void check_profile_interval(const RealFn& f, const RealFn& radicand, double a, double b,
                            int samples = 512);

/// t(s) = integral from s0 to s of sqrt(4 delta f + f'^2) / (2 |f|).
double quad_profile_t(const RealFn& f, const RealFn& fprime, int delta, double s0, double s,
                      double tol = kDefaultQuadTol);

/// Antiderivative T(s) = integral from anchor to s of a smooth positive integrand g,
/// tabulated on an interval and interpolated by cubic Hermite splines whose
/// slopes are g at the nodes. The table is refined until the interpolant agrees
/// with direct quadrature at every cell midpoint to within tol.
class ProfileQuadrature {
public:
    ProfileQuadrature(ScalarFn integrand, Interval domain, double anchor, double tol = kDefaultQuadTol);

    /// T as a jet of the identity jet s: value from the table, derivatives from the integrand.
    Jet operator()(const Jet& s) const;
    double value(double s) const;

    const Interval& domain() const noexcept { return domain_; }
    double anchor() const noexcept { return anchor_; }
    std::size_t cells() const noexcept { return nodes_.size() - 1; }

private:
    double integrand_value(double s) const;
    double interpolate(double s) const;

    ScalarFn integrand_;
    Interval domain_;
    double anchor_;
    std::vector<double> nodes_;
    std::vector<double> values_;
    std::vector<double> slopes_;
};

} // namespace imcf
