#pragma once

// Explicit inverse mean curvature flow dX/dtau = -N/H on a sampled (s,t) grid,
// and its comparison with the homothety X(tau) = exp(eps C tau) X0.

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "imcf/lvec3.hpp"
#include "imcf/ruled_surface.hpp"
#include "imcf/soliton.hpp"

namespace imcf {

/// Grid of surface points, row-major in s then t: points[i * t_count + j] = X(s_i, t_j).
struct SampleGrid {
    std::vector<double> s_nodes;
    std::vector<double> t_nodes;
    std::vector<LVec3> points;
    double time = 0.0;

    std::size_t s_count() const noexcept { return s_nodes.size(); }
    std::size_t t_count() const noexcept { return t_nodes.size(); }
    std::size_t index(std::size_t i, std::size_t j) const noexcept { return i * t_nodes.size() + j; }
    const LVec3& at(std::size_t i, std::size_t j) const { return points[index(i, j)]; }
    double ds() const { return s_nodes[1] - s_nodes[0]; }
    double dt() const { return t_nodes[1] - t_nodes[0]; }
};

/// Uniform nodes lo, ..., hi (count >= 2).
std::vector<double> uniform_nodes(double lo, double hi, std::size_t count);

/// Checks node monotonicity and uniform spacing (relative 1e-9) and the point count.
void validate_grid(const SampleGrid& g);

SampleGrid sample_grid(const RuledSurface& S, const std::vector<double>& s_nodes,
                       const std::vector<double>& t_nodes);

/// Centered difference stencils: second order (3 points) or fourth order (5 points).
enum class Stencil { Second, Fourth };

int stencil_halfwidth(Stencil st) noexcept;

struct PointGeometry {
    LVec3 N;
    double H = 0.0;
    int eps = 0;
    bool valid = false; // false on the stencil margin
};

/// Finite-difference partials at node (i, j); requires the stencil to fit.
SurfaceFrame grid_frame(const SampleGrid& g, std::size_t i, std::size_t j, Stencil st = Stencil::Second);

/// N, H, eps at every node whose stencil fits; throws DegenerateError naming the node.
std::vector<PointGeometry> grid_geometry(const SampleGrid& g, Stencil st = Stencil::Second, int orientation = 1,
                                         double tol_nd = kDefaultNondegTol);

struct FlowReference {
    RuledSurface surface;
    SolitonSpec soliton;
};

struct EvolveOptions {
    Stencil stencil = Stencil::Fourth;
    int orientation = 1;
    double tol_H = kDefaultMeanCurvatureTol;
    double tol_nd = kDefaultNondegTol;
    /// When set, the outer ring of nodes follows the exact motion of this soliton;
    /// otherwise it is frozen.
    std::optional<FlowReference> reference;
};

/// Explicit Euler X <- X - dt N / H. Returns steps + 1 grids (the input first).
/// Nodes within the stencil half-width of the edge form the pinned ring.
std::vector<SampleGrid> evolve(const SampleGrid& g0, double dt, int steps, const EvolveOptions& opt = {});

/// Exactly scaled grids exp(eps C tau) X0(s_i, t_j), tau = n dt.
std::vector<SampleGrid> replay_homothety(const SampleGrid& g0, const SolitonSpec& soliton, double dt, int steps);

/// Parameters (s, t) of the point of the soliton X0 that the normal flow
/// carries from q0 during time tau: q' = -eps C (a, b) with a X_s + b X_t the
/// tangential part of X0. Integrated by RK4 with `substeps` steps.
std::array<double, 2> material_parameters(const RuledSurface& X0, const SolitonSpec& soliton,
                                          std::array<double, 2> q0, double tau, int substeps = 4);

struct DeviationOptions {
    std::size_t margin = 2;       // nodes excluded at each edge
    int neighborhood = 3;         // projection box, in grid cells
    double param_tol = 1e-10;     // simplex size at convergence
    int max_iter = 4000;
    std::size_t time_stride = 1;  // evaluate every n-th grid (the last one always)
    Stencil stencil = Stencil::Fourth;
    int orientation = 1;
};

struct FlowReport {
    std::vector<double> times;
    std::vector<double> deviation;     // max point-to-surface distance per time
    std::vector<double> max_H_drift;   // max |H_fd phi - H0(q*)| per time
    std::size_t projection_failures = 0;
};

/// Point-to-surface distance from each interior node to exp(eps C tau) X0,
/// found by Nelder-Mead over a box of +-neighborhood cells around the node's
/// source parameters.
FlowReport homothety_deviation(const std::vector<SampleGrid>& traj, const RuledSurface& X0, int eps, double C,
                               const DeviationOptions& opt = {});

/// Euclidean distance from p to the surface phi X0 near (s0, t0) with the box
/// [s0 +- hs] x [t0 +- ht]; throws ProjectionError when the simplex does not converge.
struct Projection {
    double s = 0.0;
    double t = 0.0;
    double distance = 0.0;
};
Projection project_to_surface(const LVec3& p, const RuledSurface& X0, double phi, double s0, double t0, double hs,
                              double ht, double param_tol = 1e-10, int max_iter = 4000);

/// max over valid nodes of |<eps C X, N> H + eps|: zero for a soliton grid,
/// since the homothety velocity eps C X and the flow velocity -N/H share their normal part.
double homothety_velocity_defect(const SampleGrid& g, int eps, double C, Stencil st = Stencil::Second,
                                 int orientation = 1, std::size_t margin = 2);

} // namespace imcf
