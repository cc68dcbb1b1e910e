#include "imcf/families.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace imcf {

namespace {

constexpr int kHypothesisSamples = 101;

std::string num(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void check_sign(int v, const char* name)
{
    if (v != 1 && v != -1) throw ParamError(std::string(name) + " must be +1 or -1");
}

void check_box(const Interval& s, const Interval& t)
{
    if (!(s.lo <= s.hi) || !(t.lo <= t.hi)) throw ParamError("parameter intervals must satisfy lo <= hi");
    if (!std::isfinite(s.lo) || !std::isfinite(s.hi) || !std::isfinite(t.lo) || !std::isfinite(t.hi)) {
        throw ParamError("parameter intervals must be finite");
    }
}

double sample(const Interval& d, int i, int n) { return i == n ? d.hi : d.lo + d.length() * i / n; }

// eps of a surface whose causal character is constant: read it off the first
// nondegenerate point, scanning outward from (s_mid, clamp(0)).
int surface_eps(const RuledSurface& S)
{
    const Interval& sd = S.s_domain();
    const Interval& td = S.t_domain();
    const double t0 = std::clamp(0.0, td.lo, td.hi);
    constexpr int n = 64;
    for (int k = 0; k <= n; ++k) {
        for (int sign : {1, -1}) {
            const double s = std::clamp(sd.mid() + sign * 0.5 * sd.length() * k / n, sd.lo, sd.hi);
            for (double t : {t0, td.lo, td.hi, td.mid()}) {
                if (S.is_nondegenerate(s, t)) return S.unit_normal(s, t).eps;
            }
        }
    }
    throw DegenerateError("no nondegenerate point found on the parameter box");
}

} // namespace

std::string_view to_string(FamilyTag tag) noexcept
{
    switch (tag) {
    case FamilyTag::LightlikeExpander: return "LightlikeExpander";
    case FamilyTag::NonCylindrical: return "NonCylindrical";
    case FamilyTag::CylSpacelikeRuling: return "CylSpacelikeRuling";
    case FamilyTag::CylTimelikeRuling: return "CylTimelikeRuling";
    }
    return "?";
}

FamilyTag parse_family_tag(std::string_view name)
{
    for (FamilyTag t : {FamilyTag::LightlikeExpander, FamilyTag::NonCylindrical, FamilyTag::CylSpacelikeRuling,
                        FamilyTag::CylTimelikeRuling}) {
        if (name == to_string(t)) return t;
    }
    if (name == "lightlike") return FamilyTag::LightlikeExpander;
    if (name == "noncyl") return FamilyTag::NonCylindrical;
    if (name == "cyl-spacelike") return FamilyTag::CylSpacelikeRuling;
    if (name == "cyl-timelike") return FamilyTag::CylTimelikeRuling;
    throw ConfigError("unknown family tag '" + std::string(name) + "'");
}

double profile_anchor(Interval d) noexcept { return std::clamp(0.0, d.lo, d.hi); }

// ---------------------------------------------------------------------------
// Lightlike rulings

Curve make_lightlike_director_quadratic(double a0, Interval domain)
{
    if (!(a0 > 0.0) || !std::isfinite(a0)) throw ParamError("a0 must be positive, got " + num(a0));
    const double c0 = 1.0 / (2.0 * a0);
    return Curve::analytic(
        [a0, c0](const Jet& s) -> JetVec3 {
            const Jet s2 = s * s;
            return {s + c0, a0 * s2 + s, a0 * s2 + s + c0};
        },
        domain);
}

Curve make_lightlike_director_circular(Interval domain)
{
    return Curve::analytic([](const Jet& s) -> JetVec3 { return {cos(s), sin(s), Jet(1.0)}; }, domain);
}

GeneratedFamily make_lightlike_expander(const Curve& director, const ScalarFn& a, const ScalarFn& b,
                                        Interval s_domain, Interval t_domain, double tol)
{
    check_box(s_domain, t_domain);
    if (!a || !b) throw ParamError("lightlike expander needs both a(s) and b(s)");

    // Director hypotheses, checked on a uniform sample.
    int kappa = 0;
    double b_sign = 0.0;
    for (int i = 0; i <= kHypothesisSamples - 1; ++i) {
        const double s = sample(s_domain, i, kHypothesisSamples - 1);
        const CurveJet j = director.jet(s);
        const LVec3& be = j.d[0];
        const LVec3& b1 = j.d[1];
        const LVec3& b2 = j.d[2];
        const double scale = 1.0 + be.max_abs() * be.max_abs();
        if (std::abs(dot(be, be)) > tol * scale) {
            throw HypothesisError("<beta,beta> = 0 fails at s=" + num(s) + " (value " + num(dot(be, be)) + ")");
        }
        if (std::abs(dot(b1, b1) - 1.0) > tol * (1.0 + b1.max_abs() * b1.max_abs())) {
            throw HypothesisError("<beta',beta'> = 1 fails at s=" + num(s) + " (value " + num(dot(b1, b1)) + ")");
        }
        const double m = mixed(b2, be, b1);
        const int k = m > 0.0 ? 1 : -1;
        if (std::abs(std::abs(m) - 1.0) > tol * (1.0 + b2.max_abs() * be.max_abs() * b1.max_abs())
            || (kappa != 0 && k != kappa)) {
            throw HypothesisError("(beta'',beta,beta') = 1 fails at s=" + num(s) + " (value " + num(m) + ")");
        }
        kappa = k;

        const double bs = b(Jet::variable(s)).value();
        const double sg = bs > 0.0 ? 1.0 : (bs < 0.0 ? -1.0 : 0.0);
        if (sg == 0.0 || !std::isfinite(bs)) throw ZeroBError("b vanishes at s=" + num(s));
        if (b_sign != 0.0 && sg != b_sign) throw ZeroBError("b changes sign near s=" + num(s));
        b_sign = sg;
    }

    Curve gamma = director.kind() == DerivativeKind::Analytic
        ? Curve::analytic(
              [director, a, b](const Jet& s) -> JetVec3 {
                  const JetVec3 be = director.components(s);
                  const Jet as = a(s);
                  const Jet bs = b(s);
                  return {as * be[0] + bs * derivative(be[0]), as * be[1] + bs * derivative(be[1]),
                          as * be[2] + bs * derivative(be[2])};
              },
              director.domain())
        : Curve::finite_difference(
              [director, a, b](double s) {
                  const double as = a(Jet::variable(s)).value();
                  const double bs = b(Jet::variable(s)).value();
                  return as * director.eval(s, 0) + bs * director.eval(s, 1);
              },
              director.domain(), director.fd_step());

    // With (beta'',beta,beta') = -1 the ruling -beta satisfies the hypothesis and
    // gamma is still of the form a~ beta~ + b~ beta~' (a~ = -a, b~ = -b).
    Curve ruling = kappa < 0 ? director.scaled(-1.0) : director;
    RuledSurface S(std::move(gamma), std::move(ruling), s_domain, t_domain);
    const int eps = surface_eps(S);
    return {FamilyTag::LightlikeExpander, std::move(S), classify(eps, 1.0), std::nullopt};
}

// ---------------------------------------------------------------------------
// beta = (1, s, s)

GeneratedFamily make_noncyl_surface(double C, double k1, double k2, Interval s_domain, Interval t_domain)
{
    check_box(s_domain, t_domain);
    if (C == 0.0) throw ZeroCError("C must be nonzero");
    if (k1 == 0.0) throw ParamError("k1 must be nonzero");

    Curve::JetFn components;
    if (C == 8.0) {
        components = [k1, k2](const Jet& s) -> JetVec3 {
            const Jet u = exp(k1 * s);
            const Jet x = k2 - u * (s - 1.0 / k1);
            const Jet y = 0.5 * (s * s + 1.0) * u + s * x;
            return {x, y, y - u};
        };
    } else {
        const double K = (C - 8.0) * k1 / C;
        if (!(K > 0.0)) {
            throw ParamError("(C-8) k1 / C must be positive for C != 8, got " + num(K));
        }
        if (!(s_domain.lo > 0.0)) {
            throw ParamError("the fractional-power branch needs s > 0; domain starts at " + num(s_domain.lo));
        }
        const double p = C / (C - 8.0);
        if (C == 4.0) {
            components = [K, k2](const Jet& s) -> JetVec3 {
                const Jet Ks = K * s;
                const Jet u = 1.0 / Ks;
                const Jet x = k2 + log(Ks) / K;
                const Jet y = 0.5 * (s * s + 1.0) * u + s * x;
                return {x, y, y - u};
            };
        } else {
            const double cx = C / (2.0 * C - 8.0);
            components = [K, k2, p, cx](const Jet& s) -> JetVec3 {
                const Jet Ks = K * s;
                const Jet u = pow(Ks, p);
                const Jet x = k2 - cx * pow(Ks, p + 1.0) / K;
                const Jet y = 0.5 * (s * s + 1.0) * u + s * x;
                return {x, y, y - u};
            };
        }
    }
    Curve gamma = Curve::analytic(std::move(components), s_domain);
    Curve beta = Curve::analytic([](const Jet& s) -> JetVec3 { return {Jet(1.0), s, s}; }, s_domain);
    RuledSurface S(std::move(gamma), std::move(beta), s_domain, t_domain);
    const int eps = surface_eps(S);
    return {FamilyTag::NonCylindrical, std::move(S), classify(eps, C), std::nullopt};
}

// ---------------------------------------------------------------------------
// Cylinders

double cyl_spacelike_f(double C, int delta, double k, double s) { return delta * (2.0 / C - 1.0) * s * s + k; }

double cyl_timelike_f(double C, double k, double s) { return (1.0 - 2.0 / C) * s * s + k; }

GeneratedFamily make_cyl_spacelike(double C, int delta, double k, int sign_t, int sign_r, Interval s_domain,
                                   Interval t_domain, double quad_tol)
{
    check_box(s_domain, t_domain);
    if (C == 0.0) throw ZeroCError("C must be nonzero");
    check_sign(delta, "delta");
    check_sign(sign_t, "sign_t");
    check_sign(sign_r, "sign_r");

    const double q = delta * (2.0 / C - 1.0); // f = q s^2 + k
    auto f_real = [q, k](double s) { return q * s * s + k; };
    auto rad_real = [q, k, delta](double s) {
        const double f = q * s * s + k;
        const double fp = 2.0 * q * s;
        return 4.0 * delta * f + fp * fp;
    };
    check_profile_interval(f_real, rad_real, s_domain.lo, s_domain.hi);
    const bool positive = f_real(s_domain.mid()) > 0.0;

    ScalarFn f = [q, k](const Jet& s) { return q * s * s + k; };
    ScalarFn integrand = [q, k, delta](const Jet& s) {
        const Jet fs = q * s * s + k;
        const Jet fp = 2.0 * q * s;
        return sqrt(4.0 * delta * fs + fp * fp) / (2.0 * abs(fs));
    };
    auto T = std::make_shared<const ProfileQuadrature>(integrand, s_domain, profile_anchor(s_domain), quad_tol);
    ScalarFn r = [f, sign_r](const Jet& s) { return sign_r * sqrt(abs(f(s))); };

    Curve gamma = Curve::analytic(
        [T, r, sign_t, positive](const Jet& s) -> JetVec3 {
            const Jet th = sign_t * (*T)(s);
            const Jet rs = r(s);
            if (positive) return {Jet(0.0), rs * sinh(th), rs * cosh(th)};
            return {Jet(0.0), rs * cosh(th), rs * sinh(th)};
        },
        s_domain);
    Curve beta = constant_curve(LVec3(1.0, 0.0, 0.0), s_domain);
    RuledSurface S(std::move(gamma), std::move(beta), s_domain, t_domain);
    const int eps = surface_eps(S);
    ProfileFunctions prof{f, r, T, sign_t, positive ? ProfileBranch::FPositive : ProfileBranch::FNegative};
    return {FamilyTag::CylSpacelikeRuling, std::move(S), classify(eps, C), std::move(prof)};
}

GeneratedFamily make_cyl_timelike(double C, double k, int sign_t, Interval s_domain, Interval t_domain,
                                  double quad_tol, int sign_r)
{
    check_box(s_domain, t_domain);
    if (C == 0.0) throw ZeroCError("C must be nonzero");
    check_sign(sign_t, "sign_t");
    check_sign(sign_r, "sign_r");

    const double q = 1.0 - 2.0 / C;
    auto f_real = [q, k](double s) { return q * s * s + k; };
    auto rad_real = [q, k](double s) {
        const double f = q * s * s + k;
        const double fp = 2.0 * q * s;
        return 4.0 * f - fp * fp;
    };
    check_profile_interval(f_real, rad_real, s_domain.lo, s_domain.hi);
    if (f_real(s_domain.mid()) < 0.0) {
        throw ParamError("x^2 + y^2 = f(s) needs f > 0; f(" + num(s_domain.mid()) + ") = "
                         + num(f_real(s_domain.mid())));
    }

    ScalarFn f = [q, k](const Jet& s) { return q * s * s + k; };
    ScalarFn integrand = [q, k](const Jet& s) {
        const Jet fs = q * s * s + k;
        const Jet fp = 2.0 * q * s;
        return sqrt(4.0 * fs - fp * fp) / (2.0 * fs);
    };
    auto T = std::make_shared<const ProfileQuadrature>(integrand, s_domain, profile_anchor(s_domain), quad_tol);
    ScalarFn r = [f, sign_r](const Jet& s) { return sign_r * sqrt(f(s)); };

    Curve gamma = Curve::analytic(
        [T, r, sign_t](const Jet& s) -> JetVec3 {
            const Jet th = sign_t * (*T)(s);
            const Jet rs = r(s);
            return {rs * cos(th), rs * sin(th), Jet(0.0)};
        },
        s_domain);
    Curve beta = constant_curve(LVec3(0.0, 0.0, 1.0), s_domain);
    RuledSurface S(std::move(gamma), std::move(beta), s_domain, t_domain);
    const int eps = surface_eps(S);
    ProfileFunctions prof{f, r, T, sign_t, ProfileBranch::FPositive};
    return {FamilyTag::CylTimelikeRuling, std::move(S), classify(eps, C), std::move(prof)};
}

RuledSurface normal_bump(const RuledSurface& S, double rel_amplitude, double h)
{
    const Interval& sd = S.s_domain();
    const Interval& gd = S.gamma().domain();
    if (gd.lo > sd.lo - 3.0 * h || gd.hi < sd.hi + 3.0 * h) {
        throw ParamError("normal bump needs gamma defined 3h beyond the s-box; build the family on a padded domain");
    }
    const double t0 = std::clamp(0.0, S.t_domain().lo, S.t_domain().hi);
    const double mid = sd.mid();
    const double width = std::max(0.25 * sd.length(), 1e-3);
    const double A = rel_amplitude * std::max(1.0, euclid_norm(S.gamma().eval(mid)));
    const int orient = S.orientation();
    const Curve gamma = S.gamma();
    const Curve beta = S.beta();
    auto bumped = [gamma, beta, t0, mid, width, A, orient](double s) {
        const LVec3 w = cross(gamma.eval(s, 1) + t0 * beta.eval(s, 1), beta.eval(s, 0));
        const double len = lorentz_norm(w);
        if (len == 0.0) throw DegenerateError("normal bump crosses a degenerate point at s=" + num(s));
        const double x = (s - mid) / width;
        return gamma.eval(s, 0) + (orient * A * std::exp(-x * x) / len) * w;
    };
    Interval fd_dom{std::max(gd.lo, sd.lo - 3.0 * h), std::min(gd.hi, sd.hi + 3.0 * h)};
    return RuledSurface(Curve::finite_difference(bumped, fd_dom, h), beta, sd, S.t_domain(), orient);
}

template <class P>
const P& params_of(const FamilySpec& spec)
{
    if (const P* p = std::get_if<P>(&spec.params)) return *p;
    throw ParamError("parameters do not match family " + std::string(to_string(spec.tag)));
}

GeneratedFamily build_family(const FamilySpec& spec, Interval s_domain, Interval t_domain, double quad_tol)
{
    switch (spec.tag) {
    case FamilyTag::LightlikeExpander: {
        const auto& p = params_of<LightlikeParams>(spec);
        if (spec.C != 1.0) throw ParamError("lightlike-ruling solitons exist only for C = 1, got C=" + num(spec.C));
        return make_lightlike_expander(p.director, p.a, p.b, s_domain, t_domain);
    }
    case FamilyTag::NonCylindrical: {
        const auto& p = params_of<NonCylParams>(spec);
        return make_noncyl_surface(spec.C, p.k1, p.k2, s_domain, t_domain);
    }
    case FamilyTag::CylSpacelikeRuling: {
        const auto& p = params_of<CylSpacelikeParams>(spec);
        return make_cyl_spacelike(spec.C, p.delta, p.k, p.sign_t, p.sign_r, s_domain, t_domain, quad_tol);
    }
    case FamilyTag::CylTimelikeRuling: {
        const auto& p = params_of<CylTimelikeParams>(spec);
        return make_cyl_timelike(spec.C, p.k, p.sign_t, s_domain, t_domain, quad_tol, p.sign_r);
    }
    }
    throw ParamError("unknown family tag");
}

} // namespace imcf
