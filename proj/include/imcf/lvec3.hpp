#pragma once

// Lorentz-Minkowski 3-space with the metric dx^2 + dy^2 - dz^2.

#include <array>
#include <cmath>
#include <iosfwd>

#include "imcf/errors.hpp"

namespace imcf {

/// A vector of L^3. Components are always finite.
class LVec3 {
public:
    constexpr LVec3() = default;
    LVec3(double x, double y, double z);

    double x() const noexcept { return c_[0]; }
    double y() const noexcept { return c_[1]; }
    double z() const noexcept { return c_[2]; }
    double operator[](int i) const noexcept { return c_[i]; }

    /// Largest absolute component.
    double max_abs() const noexcept;

    LVec3& operator+=(const LVec3& o);
    LVec3& operator-=(const LVec3& o);
    LVec3& operator*=(double a);

    friend LVec3 operator+(LVec3 a, const LVec3& b) { return a += b; }
    friend LVec3 operator-(LVec3 a, const LVec3& b) { return a -= b; }
    friend LVec3 operator-(const LVec3& a) { return LVec3(-a.x(), -a.y(), -a.z()); }
    friend LVec3 operator*(LVec3 a, double k) { return a *= k; }
    friend LVec3 operator*(double k, LVec3 a) { return a *= k; }
    friend LVec3 operator/(const LVec3& a, double k) { return LVec3(a.x() / k, a.y() / k, a.z() / k); }
    friend bool operator==(const LVec3&, const LVec3&) = default;

private:
    std::array<double, 3> c_{0.0, 0.0, 0.0};
};

std::ostream& operator<<(std::ostream& os, const LVec3& v);

enum class CausalType { Spacelike, Timelike, Lightlike };

const char* to_string(CausalType c) noexcept;

/// Default tolerance on <v,v> (after normalizing v by its largest component).
inline constexpr double kDefaultCausalTol = 1e-10;

/// u1 v1 + u2 v2 - u3 v3
double dot(const LVec3& u, const LVec3& v) noexcept;

/// sqrt(|<v,v>|)
double lorentz_norm(const LVec3& v) noexcept;

/// Ordinary Euclidean length, used for distances between points.
double euclid_norm(const LVec3& v) noexcept;

/// Timelike if <v,v> < -tol, lightlike if |<v,v>| <= tol and v != 0, spacelike
/// otherwise (the zero vector included). v is rescaled to unit max-component first.
CausalType causal_type(const LVec3& v, double tol = kDefaultCausalTol);

/// The unique w with <w, x> = det(x, u, v) for every x.
LVec3 cross(const LVec3& u, const LVec3& v);

/// (u, v, w) = <u x v, w> = det(u, v, w).
double mixed(const LVec3& u, const LVec3& v, const LVec3& w) noexcept;

/// Determinant of the 3x3 matrix with rows a, b, c.
double det3(const LVec3& a, const LVec3& b, const LVec3& c) noexcept;

} // namespace imcf
