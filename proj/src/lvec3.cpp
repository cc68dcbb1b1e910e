#include "imcf/lvec3.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace imcf {

std::string_view error_kind_name(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::Degenerate: return "DegenerateError";
    case ErrorKind::ZeroMeanCurvature: return "ZeroMeanCurvature";
    case ErrorKind::Causal: return "CausalError";
    case ErrorKind::Param: return "ParamError";
    case ErrorKind::Hypothesis: return "HypothesisError";
    case ErrorKind::ZeroB: return "ZeroB";
    case ErrorKind::ZeroC: return "ZeroC";
    case ErrorKind::Singularity: return "SingularityError";
    case ErrorKind::NegativeRadicand: return "NegativeRadicand";
    case ErrorKind::Projection: return "ProjectionError";
    case ErrorKind::Config: return "ConfigError";
    case ErrorKind::Io: return "IoError";
    }
    return "Error";
}

LVec3::LVec3(double x, double y, double z) : c_{x, y, z}
{
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
        std::ostringstream os;
        os << "non-finite vector component (" << x << ", " << y << ", " << z << ")";
        throw DomainError(os.str());
    }
}

double LVec3::max_abs() const noexcept
{
    return std::max({std::abs(c_[0]), std::abs(c_[1]), std::abs(c_[2])});
}

LVec3& LVec3::operator+=(const LVec3& o)
{
    *this = LVec3(c_[0] + o.c_[0], c_[1] + o.c_[1], c_[2] + o.c_[2]);
    return *this;
}

LVec3& LVec3::operator-=(const LVec3& o)
{
    *this = LVec3(c_[0] - o.c_[0], c_[1] - o.c_[1], c_[2] - o.c_[2]);
    return *this;
}

LVec3& LVec3::operator*=(double a)
{
    *this = LVec3(c_[0] * a, c_[1] * a, c_[2] * a);
    return *this;
}

std::ostream& operator<<(std::ostream& os, const LVec3& v)
{
    return os << '(' << v.x() << ", " << v.y() << ", " << v.z() << ')';
}

const char* to_string(CausalType c) noexcept
{
    switch (c) {
    case CausalType::Spacelike: return "Spacelike";
    case CausalType::Timelike: return "Timelike";
    case CausalType::Lightlike: return "Lightlike";
    }
    return "?";
}

double dot(const LVec3& u, const LVec3& v) noexcept
{
    return u.x() * v.x() + u.y() * v.y() - u.z() * v.z();
}

double lorentz_norm(const LVec3& v) noexcept { return std::sqrt(std::abs(dot(v, v))); }

double euclid_norm(const LVec3& v) noexcept { return std::hypot(v.x(), v.y(), v.z()); }

CausalType causal_type(const LVec3& v, double tol)
{
    const double m = v.max_abs();
    if (m == 0.0) {
        return CausalType::Spacelike;
    }
    const LVec3 n = v / m;
    const double q = dot(n, n);
    if (q < -tol) {
        return CausalType::Timelike;
    }
    if (q > tol) {
        return CausalType::Spacelike;
    }
    // |n|_inf == 1 > tol for any tol < 1, so a nonzero v lands here only when lightlike.
    return tol < 1.0 ? CausalType::Lightlike : CausalType::Spacelike;
}

LVec3 cross(const LVec3& u, const LVec3& v)
{
    return LVec3(u.y() * v.z() - u.z() * v.y(),
                 u.z() * v.x() - u.x() * v.z(),
                 -(u.x() * v.y() - u.y() * v.x()));
}

double det3(const LVec3& a, const LVec3& b, const LVec3& c) noexcept
{
    return a.x() * (b.y() * c.z() - b.z() * c.y())
         - a.y() * (b.x() * c.z() - b.z() * c.x())
         + a.z() * (b.x() * c.y() - b.y() * c.x());
}

double mixed(const LVec3& u, const LVec3& v, const LVec3& w) noexcept { return det3(u, v, w); }

} // namespace imcf
