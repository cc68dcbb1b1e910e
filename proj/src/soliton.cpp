#include "imcf/soliton.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

namespace imcf {

std::string_view to_string(SolitonKind k) noexcept
{
    return k == SolitonKind::SelfShrinker ? "SelfShrinker" : "SelfExpander";
}

SolitonSpec classify(int eps, double C)
{
    if (C == 0.0 || !std::isfinite(C)) throw ZeroCError("soliton constant C must be nonzero");
    if (eps != 1 && eps != -1) throw ParamError("causal sign eps must be +1 or -1");
    SolitonSpec spec;
    spec.C = C;
    spec.eps = eps;
    spec.kind = eps * C < 0.0 ? SolitonKind::SelfShrinker : SolitonKind::SelfExpander;
    return spec;
}

namespace {

struct PolyParts {
    double P;  // (Xs,Xt,X)
    double Q;  // G (Xs,Xt,Xss) - 2F (Xs,Xt,Xst)
    double disc;
};

PolyParts poly_parts(const SurfaceFrame& f)
{
    const FirstForm ff = first_form(f);
    const LVec3 w = cross(f.Xs, f.Xt);
    return {dot(w, f.X), ff.G * dot(w, f.Xss) - 2.0 * ff.F * dot(w, f.Xst), ff.disc};
}

} // namespace

double residual_direct(const RuledSurface& S, double C, double s, double t, double tol_nd, double tol_H)
{
    const SurfaceFrame f = S.partials(s, t);
    const NormalData nd = unit_normal(f, S.orientation(), tol_nd);
    const double H = mean_curvature(f, S.orientation(), tol_nd);
    if (std::abs(H) <= tol_H) {
        std::ostringstream os;
        os.precision(17);
        os << "|H|=" << std::abs(H) << " at (s,t)=(" << s << ", " << t << ")";
        throw ZeroMeanCurvatureError(os.str());
    }
    return C * dot(nd.N, f.X) * H + 1.0;
}

double residual_poly(const RuledSurface& S, double C, double s, double t)
{
    const PolyParts p = poly_parts(S.partials(s, t));
    return C * p.P * p.Q - 2.0 * p.disc * p.disc;
}

double residual_poly_scale(const RuledSurface& S, double s, double t)
{
    const FirstForm ff = S.first_form(s, t);
    return 1.0 + 2.0 * ff.disc * ff.disc;
}

ResidualReport evaluate_residuals(const RuledSurface& S, double C, double s, double t, double tol_nd,
                                  double tol_H)
{
    ResidualReport r;
    r.s = s;
    r.t = t;
    const SurfaceFrame f = S.partials(s, t);
    r.form = first_form(f);
    const PolyParts p = poly_parts(f);
    r.poly = C * p.P * p.Q - 2.0 * p.disc * p.disc;
    r.degenerate = !is_nondegenerate(r.form, tol_nd);
    if (!r.degenerate) {
        const NormalData nd = unit_normal(f, S.orientation(), tol_nd);
        r.eps = nd.eps;
        r.H = mean_curvature(f, S.orientation(), tol_nd);
        if (std::abs(r.H) > tol_H) {
            r.direct = C * dot(nd.N, f.X) * r.H + 1.0;
            r.has_direct = true;
        }
    }
    return r;
}

LightlikeCoeffs lightlike_poly_coeffs(const Curve& gamma, const Curve& beta, double C, double s, double tol_c)
{
    const CurveJet g = gamma.jet(s);
    const CurveJet b = beta.jet(s);
    if (causal_type(b.d[0], tol_c) != CausalType::Lightlike) {
        std::ostringstream os;
        os.precision(17);
        os << "director is " << to_string(causal_type(b.d[0], tol_c)) << " at s=" << s
           << ", expected Lightlike";
        throw CausalError(os.str());
    }
    const double m = mixed(g.d[1], b.d[0], b.d[1]);
    LightlikeCoeffs c;
    c.F = dot(g.d[1], b.d[0]);
    c.c0 = C * mixed(g.d[1], b.d[0], g.d[0]) * m + c.F * c.F * c.F;
    c.c1 = C * mixed(b.d[1], b.d[0], g.d[0]) * m;
    return c;
}

OrthogonalCoeffs orthogonal_poly_coeffs(const RuledSurface& S, double C, int delta, double s, double tol)
{
    if (delta != 1 && delta != -1) throw ParamError("delta must be +1 or -1");
    const CurveJet gj = S.gamma().jet(s);
    const CurveJet bj = S.beta().jet(s);
    const LVec3& g1 = gj.d[1];
    const LVec3& g0 = gj.d[0];
    const LVec3& g2 = gj.d[2];
    const LVec3& b0 = bj.d[0];
    const LVec3& b1 = bj.d[1];
    const LVec3& b2 = bj.d[2];

    const double orth = dot(b0, g1);
    const double norm_defect = dot(b0, b0) - delta;
    const double scale_g = std::max(1.0, g1.max_abs() * b0.max_abs());
    if (std::abs(orth) > tol * scale_g || std::abs(norm_defect) > tol * std::max(1.0, b0.max_abs())) {
        std::ostringstream os;
        os.precision(17);
        os << "parametrization not orthogonal/normalized at s=" << s << ": <beta,gamma'>=" << orth
           << ", <beta,beta>-delta=" << norm_defect;
        throw ParamError(os.str());
    }

    const double gg = dot(g1, g1);
    const double gb = dot(g1, b1);
    const double bb = dot(b1, b1);
    const double P0 = mixed(g1, b0, g0);
    const double P1 = mixed(b1, b0, g0);
    const double Q0 = mixed(g1, b0, g2);
    const double Qa = mixed(g1, b0, b2);
    const double Qb = mixed(b1, b0, g2);
    const double Q2 = mixed(b1, b0, b2);
    const double Cd = C * delta;

    OrthogonalCoeffs r;
    r.A[0] = 2.0 * gg * gg - Cd * P0 * Q0;
    r.A[1] = 8.0 * gg * gb - Cd * (P0 * Qb + P0 * Qa + P1 * Q0);
    r.A[2] = 4.0 * bb * gg + 8.0 * gb * gb - Cd * (P0 * Q2 + P1 * Qb + P1 * Qa);
    r.A[3] = 8.0 * gb * bb - Cd * P1 * Q2;
    r.A[4] = 2.0 * bb * bb;

    const double aC = std::abs(C);
    r.magnitude[0] = 2.0 * gg * gg + aC * std::abs(P0 * Q0);
    r.magnitude[1] = 8.0 * std::abs(gg * gb) + aC * (std::abs(P0 * Qb) + std::abs(P0 * Qa) + std::abs(P1 * Q0));
    r.magnitude[2] = 4.0 * std::abs(bb * gg) + 8.0 * gb * gb
                   + aC * (std::abs(P0 * Q2) + std::abs(P1 * Qb) + std::abs(P1 * Qa));
    r.magnitude[3] = 8.0 * std::abs(gb * bb) + aC * std::abs(P1 * Q2);
    r.magnitude[4] = 2.0 * bb * bb;
    return r;
}

std::array<double, 5> fit_residual_poly_in_t(const RuledSurface& S, double C, double s,
                                             std::span<const double> nodes)
{
    if (nodes.size() < 5) throw ParamError("quartic fit needs at least five nodes");
    const auto n = static_cast<Eigen::Index>(nodes.size());
    Eigen::MatrixXd V(n, 5);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double t = nodes[static_cast<std::size_t>(i)];
        double p = 1.0;
        for (int k = 0; k < 5; ++k) {
            V(i, k) = p;
            p *= t;
        }
        y(i) = residual_poly(S, C, s, t);
    }
    const Eigen::VectorXd c = V.colPivHouseholderQr().solve(y);
    return {c(0), c(1), c(2), c(3), c(4)};
}

std::vector<double> default_fit_nodes(const RuledSurface& S)
{
    const Interval& td = S.t_domain();
    std::vector<double> nodes(6);
    for (int i = 0; i < 6; ++i) nodes[static_cast<std::size_t>(i)] = td.lo + td.length() * i / 5.0;
    return nodes;
}

} // namespace imcf
