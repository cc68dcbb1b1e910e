#include "imcf/curve.hpp"

#include <sstream>

namespace imcf {

namespace {

LVec3 value_of(const JetVec3& c, int k) { return LVec3(c[0].d(k), c[1].d(k), c[2].d(k)); }

std::string where(double s, const Interval& dom)
{
    std::ostringstream os;
    os.precision(17);
    os << "s=" << s << " outside [" << dom.lo << ", " << dom.hi << "]";
    return os.str();
}

} // namespace

Curve Curve::analytic(JetFn components, Interval domain)
{
    if (!(domain.lo <= domain.hi)) throw ParamError("curve domain must satisfy lo <= hi");
    Curve c;
    c.components_ = std::move(components);
    c.domain_ = domain;
    c.kind_ = DerivativeKind::Analytic;
    return c;
}

Curve Curve::finite_difference(PointFn position, Interval domain, double h)
{
    if (!(domain.lo <= domain.hi)) throw ParamError("curve domain must satisfy lo <= hi");
    if (!(h > 0.0)) throw ParamError("finite difference step must be positive");
    Curve c;
    c.position_ = std::move(position);
    c.domain_ = domain;
    c.kind_ = DerivativeKind::FiniteDifference;
    c.h_ = h;
    return c;
}

void Curve::check_domain(double s) const
{
    if (!domain_.contains(s)) throw DomainError(where(s, domain_));
}

LVec3 Curve::eval(double s, int order) const
{
    if (order < 0 || order > 3) throw ParamError("derivative order must be in 0..3");
    if (kind_ == DerivativeKind::Analytic) {
        check_domain(s);
        return value_of(components_(Jet::variable(s)), order);
    }
    const double h = h_;
    const int span = order == 3 ? 2 : (order == 0 ? 0 : 1);
    if (!domain_.contains(s - span * h) || !domain_.contains(s + span * h)) {
        throw DomainError("finite difference stencil leaves the domain at " + where(s, domain_));
    }
    switch (order) {
    case 0: return position_(s);
    case 1: return (position_(s + h) - position_(s - h)) / (2.0 * h);
    case 2: return (position_(s + h) - 2.0 * position_(s) + position_(s - h)) / (h * h);
    default:
        return (position_(s + 2 * h) - 2.0 * position_(s + h) + 2.0 * position_(s - h)
                - position_(s - 2 * h))
             / (2.0 * h * h * h);
    }
}

CurveJet Curve::jet(double s) const
{
    if (kind_ == DerivativeKind::Analytic) {
        check_domain(s);
        const JetVec3 c = components_(Jet::variable(s));
        return {{value_of(c, 0), value_of(c, 1), value_of(c, 2), value_of(c, 3)}};
    }
    return {{eval(s, 0), eval(s, 1), eval(s, 2), eval(s, 3)}};
}

JetVec3 Curve::components(const Jet& s) const
{
    if (kind_ != DerivativeKind::Analytic) throw ParamError("component jets need an analytic curve");
    check_domain(s.value());
    return components_(s);
}

Curve Curve::scaled(double k) const
{
    if (kind_ == DerivativeKind::Analytic) {
        return analytic(
            [f = components_, k](const Jet& s) -> JetVec3 {
                const JetVec3 c = f(s);
                return {k * c[0], k * c[1], k * c[2]};
            },
            domain_);
    }
    return finite_difference([p = position_, k](double s) { return k * p(s); }, domain_, h_);
}

Curve line_curve(const LVec3& p, const LVec3& v, Interval domain)
{
    return Curve::analytic(
        [p, v](const Jet& s) -> JetVec3 {
            return {p.x() + v.x() * s, p.y() + v.y() * s, p.z() + v.z() * s};
        },
        domain);
}

Curve constant_curve(const LVec3& p, Interval domain)
{
    return Curve::analytic([p](const Jet&) -> JetVec3 { return {p.x(), p.y(), p.z()}; }, domain);
}

LVec3 fd_derivative(const Curve& c, double s, int order, double h)
{
    if (order < 1 || order > 3) throw ParamError("fd_derivative order must be in 1..3");
    if (!(h > 0.0)) throw ParamError("fd_derivative step must be positive");
    const Interval& dom = c.domain();
    if (!dom.contains(s - order * h) || !dom.contains(s + order * h)) {
        throw DomainError("fd_derivative stencil leaves the domain at " + where(s, dom));
    }
    return (c.eval(s + h, order - 1) - c.eval(s - h, order - 1)) / (2.0 * h);
}

ArcLengthReport arclength_defect(const Curve& c, double s, double target)
{
    const LVec3 d1 = c.eval(s, 1);
    return {s, dot(d1, d1) - target};
}

} // namespace imcf
