#include "imcf/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace imcf {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
constexpr unsigned kMaxDepth = 20;
constexpr double kRoundingFloor = 1e-14;

std::string at(double s)
{
    std::ostringstream os;
    os.precision(17);
    os << "s=" << s;
    return os.str();
}

// Rounding can push a radicand that touches zero slightly negative.
double clamp_radicand(double r, double scale)
{
    if (r < 0.0 && r > -1e-13 * std::max(1.0, scale)) return 0.0;
    return r;
}

} // namespace

double integrate_adaptive(const RealFn& integrand, double a, double b, double tol)
{
    if (a == b) return 0.0;
    if (!(tol > 0.0)) throw ParamError("quadrature tolerance must be positive");
    double L1 = 0.0;
    double err = 0.0;
    const double coarse = GK::integrate(integrand, a, b, 0, 0.0, &err, &L1);
    // Targets below rounding are unreachable; Boost's estimate even grows when
    // refined past that point. Its estimate lives on the interval mapped to
    // [-1, 1], so rounding there scales with the mean |f|, not with L1.
    tol = std::max(tol, kRoundingFloor * L1 * std::max(1.0, 1.0 / std::abs(b - a)));
    if (err <= tol) return coarse;
    // Boost refines against a relative tolerance; convert the absolute target.
    const double rel = tol / std::max(L1, tol);
    const double value = GK::integrate(integrand, a, b, kMaxDepth, rel, &err, &L1);
    if (!(err <= tol)) {
        std::ostringstream os;
        os.precision(17);
        os << "adaptive quadrature over [" << a << ", " << b << "] stalled with error estimate " << err
           << " > " << tol;
        throw SingularityError(os.str());
    }
    return value;
}

void check_profile_interval(const RealFn& f, const RealFn& radicand, double a, double b, int samples)
{
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    const int n = std::max(samples, 2);
    double first_sign = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double s = (i == n) ? hi : lo + (hi - lo) * i / n;
        const double fs = f(s);
        if (fs == 0.0 || !std::isfinite(fs)) throw SingularityError("f vanishes at " + at(s));
        const double sg = fs > 0.0 ? 1.0 : -1.0;
        if (first_sign == 0.0) {
            first_sign = sg;
        } else if (sg != first_sign) {
            throw SingularityError("f changes sign near " + at(s));
        }
    }
    for (int i = 0; i <= n; ++i) {
        const double s = (i == n) ? hi : lo + (hi - lo) * i / n;
        if (radicand(s) < 0.0) throw NegativeRadicandError("radicand negative at " + at(s));
    }
}

double quad_profile_t(const RealFn& f, const RealFn& fprime, int delta, double s0, double s, double tol)
{
    if (delta != 1 && delta != -1) throw ParamError("delta must be +1 or -1");
    auto radicand = [&](double x) {
        const double fx = f(x);
        const double dx = fprime(x);
        return clamp_radicand(4.0 * delta * fx + dx * dx, 4.0 * std::abs(fx) + dx * dx);
    };
    check_profile_interval(f, radicand, s0, s);
    auto integrand = [&](double x) {
        const double fx = f(x);
        if (fx == 0.0) throw SingularityError("f vanishes at " + at(x));
        const double r = radicand(x);
        if (r < 0.0) throw NegativeRadicandError("radicand negative at " + at(x));
        return std::sqrt(r) / (2.0 * std::abs(fx));
    };
    return integrate_adaptive(integrand, s0, s, tol);
}

ProfileQuadrature::ProfileQuadrature(ScalarFn integrand, Interval domain, double anchor, double tol)
    : integrand_(std::move(integrand)), domain_(domain), anchor_(anchor)
{
    if (!domain.contains(anchor)) throw ParamError("quadrature anchor outside the domain");
    if (!(tol > 0.0)) throw ParamError("quadrature tolerance must be positive");
    if (domain.length() == 0.0) throw ParamError("profile quadrature needs a nonempty interval");

    const RealFn g = [this](double s) { return integrand_value(s); };
    const double left = anchor - domain.lo;
    const double right = domain.hi - anchor;
    std::size_t per_side = std::max<std::size_t>(4, static_cast<std::size_t>(std::ceil(std::max(left, right) / 0.05)));
    constexpr std::size_t kMaxCells = 1u << 16;
    for (;;) {
        // The anchor is a node, so T(anchor) = 0 exactly; each side is uniform.
        const std::size_t nl = left > 0.0 ? per_side : 0;
        const std::size_t nr = right > 0.0 ? per_side : 0;
        nodes_.clear();
        for (std::size_t i = 0; i < nl; ++i) nodes_.push_back(domain.lo + left * static_cast<double>(i) / nl);
        nodes_.push_back(anchor);
        for (std::size_t i = 1; i <= nr; ++i) {
            nodes_.push_back(i == nr ? domain.hi : anchor + right * static_cast<double>(i) / nr);
        }
        const std::size_t n = nodes_.size();
        const double cell_tol = 0.1 * tol / static_cast<double>(n);
        values_.assign(n, 0.0);
        slopes_.assign(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) slopes_[i] = g(nodes_[i]);
        for (std::size_t i = nl; i + 1 < n; ++i) {
            values_[i + 1] = values_[i] + integrate_adaptive(g, nodes_[i], nodes_[i + 1], cell_tol);
        }
        for (std::size_t i = nl; i > 0; --i) {
            values_[i - 1] = values_[i] - integrate_adaptive(g, nodes_[i - 1], nodes_[i], cell_tol);
        }

        double worst = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double m = 0.5 * (nodes_[i] + nodes_[i + 1]);
            const double direct = values_[i] + integrate_adaptive(g, nodes_[i], m, cell_tol);
            worst = std::max(worst, std::abs(interpolate(m) - direct));
        }
        if (worst <= 0.5 * tol) break;
        if (per_side >= kMaxCells) {
            throw SingularityError("profile quadrature table did not reach tolerance");
        }
        per_side *= 2;
    }
}

double ProfileQuadrature::integrand_value(double s) const
{
    const double v = integrand_(Jet::variable(s)).value();
    if (!std::isfinite(v)) throw SingularityError("non-finite integrand at " + at(s));
    return v;
}

double ProfileQuadrature::interpolate(double s) const
{
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), s);
    std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - nodes_.begin() - 1, 0));
    i = std::min(i, nodes_.size() - 2);
    const double a = nodes_[i];
    const double h = nodes_[i + 1] - a;
    const double u = (s - a) / h;
    const double u2 = u * u;
    const double u3 = u2 * u;
    const double h00 = 2 * u3 - 3 * u2 + 1;
    const double h10 = u3 - 2 * u2 + u;
    const double h01 = -2 * u3 + 3 * u2;
    const double h11 = u3 - u2;
    return h00 * values_[i] + h10 * h * slopes_[i] + h01 * values_[i + 1] + h11 * h * slopes_[i + 1];
}

double ProfileQuadrature::value(double s) const
{
    if (!domain_.contains(s)) throw DomainError("profile quadrature evaluated outside its table at " + at(s));
    return interpolate(s);
}

Jet ProfileQuadrature::operator()(const Jet& s) const
{
    if (s.taylor(1) != 1.0 || s.taylor(2) != 0.0 || s.taylor(3) != 0.0 || s.taylor(4) != 0.0) {
        throw ParamError("profile quadrature expects the identity jet of the parameter");
    }
    // T(s + h) = T(s) + g0 h + g1 h^2 / 2 + g2 h^3 / 3 + g3 h^4 / 4 in Taylor coefficients of g.
    const Jet g = integrand_(s);
    return Jet::from_taylor(
        {value(s.value()), g.taylor(0), g.taylor(1) / 2.0, g.taylor(2) / 3.0, g.taylor(3) / 4.0});
}

} // namespace imcf
