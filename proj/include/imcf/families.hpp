#pragma once

// Constructors for the classified homothetic soliton families among ruled
// surfaces of L^3:
//
//   LightlikeExpander   X = a beta + b beta' + t beta with a lightlike director
//                       satisfying <beta',beta'> = 1 and (beta'',beta,beta') = 1 (C = 1).
//   NonCylindrical      beta = (1, s, s), gamma built from u = y - z solving
//                       C u u'' = 8 u'^2.
//   CylSpacelikeRuling  gamma in the (y,z) plane with y^2 - x^2 = f(s), ruling (1,0,0).
//   CylTimelikeRuling   gamma in the (x,y) plane with x^2 + y^2 = f(s), ruling (0,0,1).

#include <memory>
#include <optional>
#include <string_view>
#include <variant>

#include "imcf/curve.hpp"
#include "imcf/quadrature.hpp"
#include "imcf/ruled_surface.hpp"
#include "imcf/soliton.hpp"

namespace imcf {

enum class FamilyTag { LightlikeExpander, NonCylindrical, CylSpacelikeRuling, CylTimelikeRuling };

std::string_view to_string(FamilyTag tag) noexcept;
/// Inverse of to_string; throws ConfigError for unknown names.
FamilyTag parse_family_tag(std::string_view name);

struct LightlikeParams {
    Curve director;
    ScalarFn a;
    ScalarFn b;
};

struct NonCylParams {
    double k1 = 0.0;
    double k2 = 0.0;
};

struct CylSpacelikeParams {
    int delta = 1;
    double k = 0.0;
    int sign_t = 1;
    int sign_r = 1;
};

struct CylTimelikeParams {
    double k = 0.0;
    int sign_t = 1;
    int sign_r = 1;
};

struct FamilySpec {
    FamilyTag tag = FamilyTag::CylTimelikeRuling;
    double C = 0.0;
    std::variant<LightlikeParams, NonCylParams, CylSpacelikeParams, CylTimelikeParams> params = CylTimelikeParams{};
};

enum class ProfileBranch { FPositive, FNegative };

/// Polar/hyperbolic description of a cylindrical base curve:
/// gamma = r (cosh, sinh or cos, sin)(angle), r^2 = |f|.
struct ProfileFunctions {
    ScalarFn f;
    ScalarFn r;
    std::shared_ptr<const ProfileQuadrature> angle; // unsigned integral from the anchor
    int sign_t = 1;
    ProfileBranch branch = ProfileBranch::FPositive;
};

struct GeneratedFamily {
    FamilyTag tag;
    RuledSurface surface;
    SolitonSpec soliton;
    std::optional<ProfileFunctions> profile; // cylindrical families only
};

/// Director A s^2 + B s + C0 with A = (0,a0,a0), B = (1,1,1), C0 = (1/(2a0), 0, 1/(2a0)).
Curve make_lightlike_director_quadratic(double a0, Interval domain = {-100.0, 100.0});

/// (cos s, sin s, 1): the circular lightlike director with (beta'',beta,beta') = +1.
Curve make_lightlike_director_circular(Interval domain = {-100.0, 100.0});

/// Lightlike-ruling expander X = a beta + b beta' + t beta. The director is
/// checked on a sample grid (tolerance tol); if (beta'',beta,beta') = -1
/// throughout, the ruling direction is reversed, which leaves the surface unchanged.
GeneratedFamily make_lightlike_expander(const Curve& director, const ScalarFn& a, const ScalarFn& b,
                                        Interval s_domain, Interval t_domain, double tol = 1e-9);

/// beta = (1, s, s) with the closed-form base curve. For C != 8 the domain must
/// satisfy s > 0 and (C-8) k1 / C > 0.
GeneratedFamily make_noncyl_surface(double C, double k1, double k2, Interval s_domain, Interval t_domain);

/// Spacelike ruling (1,0,0); f(s) = delta (2/C - 1) s^2 + k.
GeneratedFamily make_cyl_spacelike(double C, int delta, double k, int sign_t, int sign_r,
                                   Interval s_domain, Interval t_domain, double quad_tol = kDefaultQuadTol);

/// Timelike ruling (0,0,1); f(s) = (1 - 2/C) s^2 + k > 0.
GeneratedFamily make_cyl_timelike(double C, double k, int sign_t, Interval s_domain, Interval t_domain,
                                  double quad_tol = kDefaultQuadTol, int sign_r = 1);

/// Dispatch on the tag.
GeneratedFamily build_family(const FamilySpec& spec, Interval s_domain, Interval t_domain,
                             double quad_tol = kDefaultQuadTol);

/// f for the cylindrical families as a function of s (for diagnostics).
double cyl_spacelike_f(double C, int delta, double k, double s);
double cyl_timelike_f(double C, double k, double s);

/// The surface with gamma replaced by gamma + A phi(s) N(s, t0), where phi is a
/// Gaussian bump centred on the s-box (width a quarter of its length), N the unit
/// normal along the ruling parameter t0 = clamp(0), and A = rel_amplitude times
/// max(1, |gamma(s_mid)|). The bumped base curve is a finite-difference curve,
/// so gamma's own domain must extend at least 3h beyond the s-box.
RuledSurface normal_bump(const RuledSurface& S, double rel_amplitude, double h = 1e-4);

/// Anchor of the profile quadrature: 0 when inside the interval, otherwise the nearest endpoint.
double profile_anchor(Interval s_domain) noexcept;

} // namespace imcf
