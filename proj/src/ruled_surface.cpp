#include "imcf/ruled_surface.hpp"

#include <algorithm>
#include <sstream>

namespace imcf {

namespace {

double nondeg_scale(const FirstForm& ff) noexcept
{
    const double m = std::max({std::abs(ff.E), std::abs(ff.F), std::abs(ff.G)});
    return m * m;
}

void require_nondegenerate(const FirstForm& ff, double tol)
{
    if (!is_nondegenerate(ff, tol)) {
        std::ostringstream os;
        os.precision(17);
        os << "lightlike tangent plane (EG-F^2=" << ff.disc << ", E=" << ff.E << ", F=" << ff.F
           << ", G=" << ff.G << ")";
        throw DegenerateError(os.str());
    }
}

} // namespace

FirstForm first_form(const SurfaceFrame& f)
{
    FirstForm ff;
    ff.E = dot(f.Xs, f.Xs);
    ff.F = dot(f.Xs, f.Xt);
    ff.G = dot(f.Xt, f.Xt);
    ff.disc = std::fma(ff.E, ff.G, -ff.F * ff.F);
    return ff;
}

bool is_nondegenerate(const FirstForm& ff, double tol) noexcept
{
    const double scale = nondeg_scale(ff);
    return scale > 0.0 && std::abs(ff.disc) > tol * scale;
}

NormalData unit_normal(const SurfaceFrame& f, int orientation, double tol)
{
    const FirstForm ff = first_form(f);
    require_nondegenerate(ff, tol);
    const LVec3 w = cross(f.Xs, f.Xt);
    const double len = lorentz_norm(w);
    if (len == 0.0) throw DegenerateError("normal vector vanishes");
    NormalData nd;
    nd.N = (orientation >= 0 ? 1.0 : -1.0) / len * w;
    nd.eps = dot(w, w) < 0.0 ? -1 : 1;
    return nd;
}

double mean_curvature(const SurfaceFrame& f, int orientation, double tol)
{
    const FirstForm ff = first_form(f);
    require_nondegenerate(ff, tol);
    const LVec3 w = cross(f.Xs, f.Xt);
    const double num = ff.G * dot(w, f.Xss) - 2.0 * ff.F * dot(w, f.Xst) + ff.E * dot(w, f.Xtt);
    const double a = std::abs(ff.disc);
    const double H = -0.5 * num / (a * std::sqrt(a));
    return orientation >= 0 ? H : -H;
}

RuledSurface::RuledSurface(Curve gamma, Curve beta, Interval s_domain, Interval t_domain, int orientation)
    : gamma_(std::move(gamma)), beta_(std::move(beta)), s_domain_(s_domain), t_domain_(t_domain),
      orientation_(orientation >= 0 ? 1 : -1)
{
    if (!(s_domain.lo <= s_domain.hi) || !(t_domain.lo <= t_domain.hi)) {
        throw ParamError("surface parameter box must satisfy lo <= hi");
    }
}

RuledSurface RuledSurface::flipped() const
{
    return RuledSurface(gamma_, beta_, s_domain_, t_domain_, -orientation_);
}

RuledSurface RuledSurface::restricted(Interval s_domain, Interval t_domain) const
{
    auto inside = [](Interval in, Interval out) { return in.lo >= out.lo && in.hi <= out.hi && in.lo <= in.hi; };
    if (!inside(s_domain, s_domain_) || !inside(t_domain, t_domain_)) {
        throw DomainError("restricted domain is not contained in the surface domain");
    }
    return RuledSurface(gamma_, beta_, s_domain, t_domain, orientation_);
}

void RuledSurface::check_domain(double s, double t) const
{
    if (!s_domain_.contains(s) || !t_domain_.contains(t)) {
        std::ostringstream os;
        os.precision(17);
        os << "(s,t)=(" << s << ", " << t << ") outside [" << s_domain_.lo << ", " << s_domain_.hi
           << "]x[" << t_domain_.lo << ", " << t_domain_.hi << "]";
        throw DomainError(os.str());
    }
}

LVec3 RuledSurface::position(double s, double t) const
{
    check_domain(s, t);
    return gamma_.eval(s, 0) + t * beta_.eval(s, 0);
}

SurfaceFrame RuledSurface::partials(double s, double t) const
{
    check_domain(s, t);
    const CurveJet g = gamma_.jet(s);
    const CurveJet b = beta_.jet(s);
    return SurfaceFrame{g.d[0] + t * b.d[0], g.d[1] + t * b.d[1], b.d[0],
                        g.d[2] + t * b.d[2], b.d[1], LVec3()};
}

FirstForm RuledSurface::first_form(double s, double t) const { return imcf::first_form(partials(s, t)); }

NormalData RuledSurface::unit_normal(double s, double t, double tol) const
{
    return imcf::unit_normal(partials(s, t), orientation_, tol);
}

double RuledSurface::mean_curvature(double s, double t, double tol) const
{
    return imcf::mean_curvature(partials(s, t), orientation_, tol);
}

bool RuledSurface::is_nondegenerate(double s, double t, double tol) const
{
    return imcf::is_nondegenerate(first_form(s, t), tol);
}

} // namespace imcf
