#pragma once

#include <array>
#include <functional>

#include "imcf/jet.hpp"
#include "imcf/lvec3.hpp"

namespace imcf {

/// Closed parameter interval [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double s) const noexcept { return s >= lo && s <= hi; }
    double length() const noexcept { return hi - lo; }
    double mid() const noexcept { return 0.5 * (lo + hi); }
};

/// Position and derivatives up to order three at one parameter value.
struct CurveJet {
    std::array<LVec3, 4> d;
};

/// Component jets (x, y, z) of a curve, each carrying three derivatives.
using JetVec3 = std::array<Jet, 3>;

enum class DerivativeKind { Analytic, FiniteDifference };

inline constexpr double kDefaultFdStep = 1e-5;

/// A smooth parametrized curve s -> L^3 on a closed interval.
///
/// Analytic curves compute derivatives by Taylor-jet propagation; finite
/// difference curves only know positions and use centered stencils whose
/// support must stay inside the domain.
class Curve {
public:
    using JetFn = std::function<JetVec3(const Jet&)>;
    using PointFn = std::function<LVec3(double)>;

    /// Curve whose components are computed on jets of the parameter.
    static Curve analytic(JetFn components, Interval domain);

    /// Curve known only through its positions; derivatives by centered differences.
    static Curve finite_difference(PointFn position, Interval domain, double h = 1e-4);

    /// eval(s, k) = k-th derivative at s, 0 <= k <= 3.
    LVec3 eval(double s, int order = 0) const;
    CurveJet jet(double s) const;

    /// Component jets at the parameter jet s (analytic curves only).
    JetVec3 components(const Jet& s) const;

    /// The curve k * c(s), same domain and derivative kind.
    Curve scaled(double k) const;

    const Interval& domain() const noexcept { return domain_; }
    DerivativeKind kind() const noexcept { return kind_; }
    double fd_step() const noexcept { return h_; }

private:
    Curve() = default;

    void check_domain(double s) const;

    JetFn components_;
    PointFn position_;
    Interval domain_;
    DerivativeKind kind_ = DerivativeKind::Analytic;
    double h_ = 0.0;
};

/// Constant-speed straight line p + s v (with exact derivatives).
Curve line_curve(const LVec3& p, const LVec3& v, Interval domain);

/// Constant curve s -> p.
Curve constant_curve(const LVec3& p, Interval domain);

/// Centered-difference estimate of the order-th derivative at s, built by
/// differencing the (order-1)-th derivative over [s-h, s+h]. Requires the
/// window [s - order h, s + order h] inside the domain.
LVec3 fd_derivative(const Curve& c, double s, int order, double h = kDefaultFdStep);

struct ArcLengthReport {
    double s = 0.0;
    double defect = 0.0;
};

/// defect = <c'(s), c'(s)> - target.
ArcLengthReport arclength_defect(const Curve& c, double s, double target);

} // namespace imcf
