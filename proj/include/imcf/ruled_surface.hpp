#pragma once

#include "imcf/curve.hpp"
#include "imcf/lvec3.hpp"

namespace imcf {

/// Default nondegeneracy tolerance, relative to max(|E|,|F|,|G|)^2.
inline constexpr double kDefaultNondegTol = 1e-9;

/// Position and first/second partial derivatives of a parametrized surface.
struct SurfaceFrame {
    LVec3 X, Xs, Xt, Xss, Xst, Xtt;
};

/// First fundamental form coefficients. disc = EG - F^2.
struct FirstForm {
    double E = 0.0;
    double F = 0.0;
    double G = 0.0;
    double disc = 0.0;
};

struct NormalData {
    LVec3 N;
    int eps = 0; // <N,N>
};

FirstForm first_form(const SurfaceFrame& f);

/// |disc| > tol * max(|E|,|F|,|G|)^2, and false when the tangent vectors vanish.
bool is_nondegenerate(const FirstForm& ff, double tol = kDefaultNondegTol) noexcept;

/// orientation * (Xs x Xt)/|Xs x Xt|. Throws DegenerateError on a lightlike tangent plane.
NormalData unit_normal(const SurfaceFrame& f, int orientation = 1, double tol = kDefaultNondegTol);

/// Mean curvature from the mixed-product form
///   H = -1/2 [G (Xs,Xt,Xss) - 2F (Xs,Xt,Xst) + E (Xs,Xt,Xtt)] / |EG-F^2|^{3/2},
/// multiplied by the orientation sign. Valid for any parametrized surface.
double mean_curvature(const SurfaceFrame& f, int orientation = 1, double tol = kDefaultNondegTol);

/// X(s,t) = gamma(s) + t beta(s).
class RuledSurface {
public:
    RuledSurface(Curve gamma, Curve beta, Interval s_domain, Interval t_domain, int orientation = 1);

    const Curve& gamma() const noexcept { return gamma_; }
    const Curve& beta() const noexcept { return beta_; }
    const Interval& s_domain() const noexcept { return s_domain_; }
    const Interval& t_domain() const noexcept { return t_domain_; }
    int orientation() const noexcept { return orientation_; }

    /// Same surface with the opposite normal.
    RuledSurface flipped() const;
    /// Same curves on new parameter boxes (must lie inside the curve domains).
    RuledSurface restricted(Interval s_domain, Interval t_domain) const;

    LVec3 position(double s, double t) const;

    /// X, Xs = gamma' + t beta', Xt = beta, Xss = gamma'' + t beta'', Xst = beta', Xtt = 0.
    SurfaceFrame partials(double s, double t) const;

    FirstForm first_form(double s, double t) const;
    NormalData unit_normal(double s, double t, double tol = kDefaultNondegTol) const;
    double mean_curvature(double s, double t, double tol = kDefaultNondegTol) const;
    bool is_nondegenerate(double s, double t, double tol = kDefaultNondegTol) const;

private:
    void check_domain(double s, double t) const;

    Curve gamma_;
    Curve beta_;
    Interval s_domain_;
    Interval t_domain_;
    int orientation_ = 1;
};

} // namespace imcf
