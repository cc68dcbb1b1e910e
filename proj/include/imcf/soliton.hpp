#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "imcf/curve.hpp"
#include "imcf/ruled_surface.hpp"

namespace imcf {

inline constexpr double kDefaultMeanCurvatureTol = 1e-10;

enum class SolitonKind { SelfShrinker, SelfExpander };

std::string_view to_string(SolitonKind k) noexcept;

/// A homothetic soliton C <N,X> = -1/H evolving as X(t) = exp(eps C t) X0.
struct SolitonSpec {
    double C = 0.0;
    int eps = 1;
    SolitonKind kind = SolitonKind::SelfExpander;

    /// Exponent of the homothety factor phi(t) = exp(eps C t).
    double rate() const noexcept { return eps * C; }
};

/// SelfShrinker when eps C < 0, SelfExpander when eps C > 0. Throws ZeroCError for C = 0.
SolitonSpec classify(int eps, double C);

struct ResidualReport {
    double s = 0.0;
    double t = 0.0;
    double direct = 0.0;
    double poly = 0.0;
    double H = 0.0;
    int eps = 0;
    FirstForm form;
    bool degenerate = false;
    bool has_direct = false; // false when degenerate or |H| <= tau_H
};

/// C <N,X> H + 1. Unchanged when the orientation is flipped.
double residual_direct(const RuledSurface& S, double C, double s, double t,
                       double tol_nd = kDefaultNondegTol, double tol_H = kDefaultMeanCurvatureTol);

/// C (Xs,Xt,X) [G (Xs,Xt,Xss) - 2F (Xs,Xt,Xst)] - 2 (EG-F^2)^2. Needs no nondegeneracy.
double residual_poly(const RuledSurface& S, double C, double s, double t);

/// 1 + 2 (EG-F^2)^2: the natural size of residual_poly at (s,t).
double residual_poly_scale(const RuledSurface& S, double s, double t);

/// Both residuals at one point; never throws for degenerate points.
ResidualReport evaluate_residuals(const RuledSurface& S, double C, double s, double t,
                                  double tol_nd = kDefaultNondegTol,
                                  double tol_H = kDefaultMeanCurvatureTol);

/// Coefficients of p(t) = c0 + c1 t for a lightlike director:
///   c0 = C (g',b,g)(g',b,b') + <g',b>^3,   c1 = C (b',b,g)(g',b,b').
/// On that ruling residual_poly(t) = -2 <g',b> p(t).
struct LightlikeCoeffs {
    double c0 = 0.0;
    double c1 = 0.0;
    double F = 0.0; // <gamma', beta>
};

LightlikeCoeffs lightlike_poly_coeffs(const Curve& gamma, const Curve& beta, double C, double s,
                                      double tol_c = 1e-9);

/// A0..A4 of the quartic that must vanish identically for an orthogonal
/// parametrization with <beta,beta> = delta. On that ruling
/// residual_poly(t) = -(A0 + A1 t + ... + A4 t^4).
struct OrthogonalCoeffs {
    std::array<double, 5> A{};
    /// Sum of absolute values of the products entering each A_i.
    std::array<double, 5> magnitude{};
};

OrthogonalCoeffs orthogonal_poly_coeffs(const RuledSurface& S, double C, int delta, double s,
                                        double tol = 1e-9);

/// Least-squares fit of residual_poly(s, .) by a quartic in t over `nodes`
/// (at least five distinct values). Returns monomial coefficients of t^0..t^4.
std::array<double, 5> fit_residual_poly_in_t(const RuledSurface& S, double C, double s,
                                             std::span<const double> nodes);

/// Six equally spaced nodes spanning the surface's t-domain.
std::vector<double> default_fit_nodes(const RuledSurface& S);

} // namespace imcf
