#include "imcf/flow.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

namespace imcf {

namespace {

std::string node_name(std::size_t i, std::size_t j)
{
    return "node (" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

// Stencil offsets and weights for the first and second derivative.
struct Weights {
    int w;
    std::array<double, 5> d1; // offsets -2..2
    std::array<double, 5> d2;
};

Weights weights(Stencil st)
{
    if (st == Stencil::Second) return {1, {0.0, -0.5, 0.0, 0.5, 0.0}, {0.0, 1.0, -2.0, 1.0, 0.0}};
    return {2,
            {1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0},
            {-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0}};
}

bool inside(const SampleGrid& g, std::size_t i, std::size_t j, std::size_t w)
{
    return i >= w && j >= w && i + w < g.s_count() && j + w < g.t_count();
}

struct GslMinimizer {
    gsl_multimin_fminimizer* m;
    explicit GslMinimizer(std::size_t n) : m(gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n))
    {
        if (!m) throw ProjectionError("could not allocate the simplex minimizer");
    }
    ~GslMinimizer() { gsl_multimin_fminimizer_free(m); }
    GslMinimizer(const GslMinimizer&) = delete;
    GslMinimizer& operator=(const GslMinimizer&) = delete;
};

struct GslVector {
    gsl_vector* v;
    explicit GslVector(std::size_t n) : v(gsl_vector_alloc(n)) {}
    ~GslVector() { gsl_vector_free(v); }
    GslVector(const GslVector&) = delete;
    GslVector& operator=(const GslVector&) = delete;
};

struct ProjectionProblem {
    const LVec3* p;
    const RuledSurface* S;
    double phi;
    Interval sb;
    Interval tb;
};

double projection_objective(const gsl_vector* x, void* params)
{
    const auto* pr = static_cast<const ProjectionProblem*>(params);
    const double s = gsl_vector_get(x, 0);
    const double t = gsl_vector_get(x, 1);
    const double sc = std::clamp(s, pr->sb.lo, pr->sb.hi);
    const double tc = std::clamp(t, pr->tb.lo, pr->tb.hi);
    // Quadratic penalty keeps the simplex inside the box.
    const double pen = (s - sc) * (s - sc) + (t - tc) * (t - tc);
    const LVec3 d = pr->phi * pr->S->position(sc, tc) - *pr->p;
    const double e = euclid_norm(d);
    return e * e + pen;
}

} // namespace

std::vector<double> uniform_nodes(double lo, double hi, std::size_t count)
{
    if (count < 2 || !(lo < hi)) throw ParamError("uniform nodes need count >= 2 and lo < hi");
    std::vector<double> n(count);
    for (std::size_t k = 0; k < count; ++k) {
        n[k] = k + 1 == count ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
    }
    return n;
}

void validate_grid(const SampleGrid& g)
{
    for (const auto* nodes : {&g.s_nodes, &g.t_nodes}) {
        if (nodes->size() < 2) throw ParamError("grid needs at least two nodes per axis");
        const double h = (*nodes)[1] - (*nodes)[0];
        if (!(h > 0.0)) throw ParamError("grid nodes must be strictly increasing");
        for (std::size_t k = 1; k < nodes->size(); ++k) {
            const double hk = (*nodes)[k] - (*nodes)[k - 1];
            if (std::abs(hk - h) > 1e-9 * std::abs(h)) throw ParamError("grid spacing must be uniform");
        }
    }
    if (g.points.size() != g.s_count() * g.t_count()) throw ParamError("grid point count mismatch");
}

SampleGrid sample_grid(const RuledSurface& S, const std::vector<double>& s_nodes, const std::vector<double>& t_nodes)
{
    SampleGrid g{s_nodes, t_nodes, {}, 0.0};
    g.points.reserve(s_nodes.size() * t_nodes.size());
    for (double s : s_nodes) {
        for (double t : t_nodes) g.points.push_back(S.position(s, t));
    }
    validate_grid(g);
    return g;
}

int stencil_halfwidth(Stencil st) noexcept { return st == Stencil::Second ? 1 : 2; }

SurfaceFrame grid_frame(const SampleGrid& g, std::size_t i, std::size_t j, Stencil st)
{
    const Weights W = weights(st);
    if (!inside(g, i, j, static_cast<std::size_t>(W.w))) {
        throw DomainError("stencil does not fit at " + node_name(i, j));
    }
    const double hs = g.ds();
    const double ht = g.dt();
    LVec3 Xs, Xt, Xss, Xtt, Xst;
    for (int k = -W.w; k <= W.w; ++k) {
        const double a1 = W.d1[k + 2];
        const double a2 = W.d2[k + 2];
        const LVec3& ps = g.at(i + k, j);
        const LVec3& pt = g.at(i, j + k);
        Xs += (a1 / hs) * ps;
        Xss += (a2 / (hs * hs)) * ps;
        Xt += (a1 / ht) * pt;
        Xtt += (a2 / (ht * ht)) * pt;
        if (a1 == 0.0) continue;
        for (int l = -W.w; l <= W.w; ++l) {
            const double b1 = W.d1[l + 2];
            if (b1 != 0.0) Xst += (a1 * b1 / (hs * ht)) * g.at(i + k, j + l);
        }
    }
    return {g.at(i, j), Xs, Xt, Xss, Xst, Xtt};
}

std::vector<PointGeometry> grid_geometry(const SampleGrid& g, Stencil st, int orientation, double tol_nd)
{
    validate_grid(g);
    const auto w = static_cast<std::size_t>(stencil_halfwidth(st));
    std::vector<PointGeometry> out(g.points.size());
    for (std::size_t i = 0; i < g.s_count(); ++i) {
        for (std::size_t j = 0; j < g.t_count(); ++j) {
            if (!inside(g, i, j, w)) continue;
            const SurfaceFrame f = grid_frame(g, i, j, st);
            PointGeometry& pg = out[g.index(i, j)];
            try {
                const NormalData nd = unit_normal(f, orientation, tol_nd);
                pg.N = nd.N;
                pg.eps = nd.eps;
                pg.H = mean_curvature(f, orientation, tol_nd);
            } catch (const DegenerateError& e) {
                throw DegenerateError(node_name(i, j) + ": " + e.what());
            }
            pg.valid = true;
        }
    }
    return out;
}

std::array<double, 2> material_parameters(const RuledSurface& X0, const SolitonSpec& soliton,
                                          std::array<double, 2> q0, double tau, int substeps)
{
    const double rate = soliton.rate();
    auto rhs = [&](const std::array<double, 2>& q) -> std::array<double, 2> {
        const SurfaceFrame f = X0.partials(q[0], q[1]);
        const FirstForm ff = first_form(f);
        if (!is_nondegenerate(ff)) throw DegenerateError("material trajectory crosses a degenerate point");
        const double u = dot(f.X, f.Xs);
        const double v = dot(f.X, f.Xt);
        const double a = (ff.G * u - ff.F * v) / ff.disc;
        const double b = (ff.E * v - ff.F * u) / ff.disc;
        return {-rate * a, -rate * b};
    };
    const int n = std::max(substeps, 1);
    const double h = tau / n;
    std::array<double, 2> q = q0;
    for (int k = 0; k < n; ++k) {
        const auto k1 = rhs(q);
        const auto k2 = rhs({q[0] + 0.5 * h * k1[0], q[1] + 0.5 * h * k1[1]});
        const auto k3 = rhs({q[0] + 0.5 * h * k2[0], q[1] + 0.5 * h * k2[1]});
        const auto k4 = rhs({q[0] + h * k3[0], q[1] + h * k3[1]});
        for (int c = 0; c < 2; ++c) q[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    }
    return q;
}

std::vector<SampleGrid> evolve(const SampleGrid& g0, double dt, int steps, const EvolveOptions& opt)
{
    validate_grid(g0);
    if (!(dt > 0.0)) throw ParamError("time step must be positive");
    if (steps < 0) throw ParamError("step count must be nonnegative");
    const auto w = static_cast<std::size_t>(stencil_halfwidth(opt.stencil));
    if (g0.s_count() < 2 * w + 1 || g0.t_count() < 2 * w + 1) throw ParamError("grid too small for the stencil");

    // Pinned ring: material parameters of each node, advanced alongside the grid.
    std::vector<std::size_t> ring;
    std::vector<std::array<double, 2>> q;
    for (std::size_t i = 0; i < g0.s_count(); ++i) {
        for (std::size_t j = 0; j < g0.t_count(); ++j) {
            if (inside(g0, i, j, w)) continue;
            ring.push_back(g0.index(i, j));
            q.push_back({g0.s_nodes[i], g0.t_nodes[j]});
        }
    }

    std::vector<SampleGrid> traj;
    traj.reserve(static_cast<std::size_t>(steps) + 1);
    traj.push_back(g0);
    for (int n = 0; n < steps; ++n) {
        const SampleGrid& cur = traj.back();
        SampleGrid next = cur;
        next.time = g0.time + (n + 1) * dt;

        double min_diag = INFINITY;
        for (std::size_t i = 0; i + 1 < cur.s_count(); ++i) {
            for (std::size_t j = 0; j + 1 < cur.t_count(); ++j) {
                min_diag = std::min(min_diag, euclid_norm(cur.at(i + 1, j + 1) - cur.at(i, j)));
            }
        }

        double max_move = 0.0;
        for (std::size_t i = w; i + w < cur.s_count(); ++i) {
            for (std::size_t j = w; j + w < cur.t_count(); ++j) {
                const SurfaceFrame f = grid_frame(cur, i, j, opt.stencil);
                NormalData nd;
                double H = 0.0;
                try {
                    nd = unit_normal(f, opt.orientation, opt.tol_nd);
                    H = mean_curvature(f, opt.orientation, opt.tol_nd);
                } catch (const DegenerateError& e) {
                    throw DegenerateError("step " + std::to_string(n) + ", " + node_name(i, j) + ": " + e.what());
                }
                if (!(std::abs(H) > opt.tol_H)) {
                    std::ostringstream os;
                    os << "step " << n << ", " << node_name(i, j) << ": H = " << H;
                    throw ZeroMeanCurvatureError(os.str());
                }
                max_move = std::max(max_move, std::abs(dt / H));
                next.points[cur.index(i, j)] = cur.at(i, j) - (dt / H) * nd.N;
            }
        }
        if (max_move > 0.5 * min_diag) {
            std::ostringstream os;
            os << "step " << n << ": max |dt/H| = " << max_move << " exceeds half the smallest cell diagonal "
               << 0.5 * min_diag;
            throw ParamError(os.str());
        }

        if (opt.reference) {
            const RuledSurface& X0 = opt.reference->surface;
            const SolitonSpec& sol = opt.reference->soliton;
            const double phi = std::exp(sol.rate() * (next.time - g0.time));
            for (std::size_t k = 0; k < ring.size(); ++k) {
                q[k] = material_parameters(X0, sol, q[k], dt);
                next.points[ring[k]] = phi * X0.position(q[k][0], q[k][1]);
            }
        }
        traj.push_back(std::move(next));
    }
    return traj;
}

std::vector<SampleGrid> replay_homothety(const SampleGrid& g0, const SolitonSpec& soliton, double dt, int steps)
{
    validate_grid(g0);
    if (steps < 0) throw ParamError("step count must be nonnegative");
    std::vector<SampleGrid> traj;
    traj.reserve(static_cast<std::size_t>(steps) + 1);
    for (int n = 0; n <= steps; ++n) {
        SampleGrid g = g0;
        g.time = g0.time + n * dt;
        const double phi = std::exp(soliton.rate() * n * dt);
        for (LVec3& p : g.points) p = phi * p;
        traj.push_back(std::move(g));
    }
    return traj;
}

Projection project_to_surface(const LVec3& p, const RuledSurface& X0, double phi, double s0, double t0, double hs,
                              double ht, double param_tol, int max_iter)
{
    const Interval& sd = X0.s_domain();
    const Interval& td = X0.t_domain();
    ProjectionProblem pr{&p, &X0, phi, {std::max(sd.lo, s0 - hs), std::min(sd.hi, s0 + hs)},
                         {std::max(td.lo, t0 - ht), std::min(td.hi, t0 + ht)}};
    if (!(pr.sb.lo <= pr.sb.hi) || !(pr.tb.lo <= pr.tb.hi)) {
        throw ProjectionError("projection box lies outside the reference surface");
    }

    gsl_multimin_function fn{&projection_objective, 2, &pr};
    GslVector x(2), step(2);
    gsl_vector_set(x.v, 0, std::clamp(s0, pr.sb.lo, pr.sb.hi));
    gsl_vector_set(x.v, 1, std::clamp(t0, pr.tb.lo, pr.tb.hi));
    gsl_vector_set(step.v, 0, 0.25 * hs);
    gsl_vector_set(step.v, 1, 0.25 * ht);
    GslMinimizer mz(2);
    gsl_multimin_fminimizer_set(mz.m, &fn, x.v, step.v);

    // Stop at size <= param_tol, or when the objective has not improved for a
    // while: near the minimum the squared distance reaches its rounding floor
    // before the simplex does, and a stalled simplex within 1e4 param_tol is accepted.
    constexpr int kStall = 200;
    int status = GSL_CONTINUE;
    int it = 0;
    int last = GSL_SUCCESS;
    int stalled = 0;
    double best = gsl_multimin_fminimizer_minimum(mz.m);
    while (status == GSL_CONTINUE && it < max_iter) {
        ++it;
        last = gsl_multimin_fminimizer_iterate(mz.m);
        if (last != GSL_SUCCESS) break;
        const double size = gsl_multimin_fminimizer_size(mz.m);
        status = gsl_multimin_test_size(size, param_tol);
        const double fm = gsl_multimin_fminimizer_minimum(mz.m);
        stalled = fm < best ? 0 : stalled + 1;
        best = std::min(best, fm);
        if (status == GSL_CONTINUE && stalled >= kStall && size <= 1e4 * param_tol) status = GSL_SUCCESS;
    }
    if (status != GSL_SUCCESS) {
        std::ostringstream os;
        os.precision(17);
        os << "simplex did not converge near (s, t) = (" << s0 << ", " << t0 << ") after " << it
           << " iterations (size " << gsl_multimin_fminimizer_size(mz.m) << ", status " << last << ")";
        throw ProjectionError(os.str());
    }
    const gsl_vector* xm = gsl_multimin_fminimizer_x(mz.m);
    Projection r;
    r.s = std::clamp(gsl_vector_get(xm, 0), pr.sb.lo, pr.sb.hi);
    r.t = std::clamp(gsl_vector_get(xm, 1), pr.tb.lo, pr.tb.hi);
    r.distance = euclid_norm(phi * X0.position(r.s, r.t) - p);
    return r;
}

FlowReport homothety_deviation(const std::vector<SampleGrid>& traj, const RuledSurface& X0, int eps, double C,
                               const DeviationOptions& opt)
{
    FlowReport rep;
    if (traj.empty()) return rep;
    const SampleGrid& g0 = traj.front();
    validate_grid(g0);
    const std::size_t margin = std::max<std::size_t>(opt.margin, stencil_halfwidth(opt.stencil));
    const double hs = opt.neighborhood * g0.ds();
    const double ht = opt.neighborhood * g0.dt();
    const std::size_t stride = std::max<std::size_t>(opt.time_stride, 1);

    for (std::size_t n = 0; n < traj.size(); ++n) {
        if (n % stride != 0 && n + 1 != traj.size()) continue;
        const SampleGrid& g = traj[n];
        const double phi = std::exp(eps * C * (g.time - g0.time));
        const std::vector<PointGeometry> geo = grid_geometry(g, opt.stencil, opt.orientation);
        double dev = 0.0;
        double drift = 0.0;
        for (std::size_t i = margin; i + margin < g.s_count(); ++i) {
            for (std::size_t j = margin; j + margin < g.t_count(); ++j) {
                Projection pr;
                try {
                    pr = project_to_surface(g.at(i, j), X0, phi, g0.s_nodes[i], g0.t_nodes[j], hs, ht,
                                            opt.param_tol, opt.max_iter);
                } catch (const ProjectionError&) {
                    ++rep.projection_failures;
                    continue;
                }
                dev = std::max(dev, pr.distance);
                const PointGeometry& pg = geo[g.index(i, j)];
                if (pg.valid && X0.is_nondegenerate(pr.s, pr.t)) {
                    drift = std::max(drift, std::abs(pg.H * phi - X0.mean_curvature(pr.s, pr.t)));
                }
            }
        }
        rep.times.push_back(g.time);
        rep.deviation.push_back(dev);
        rep.max_H_drift.push_back(drift);
    }
    return rep;
}

double homothety_velocity_defect(const SampleGrid& g, int eps, double C, Stencil st, int orientation,
                                 std::size_t margin)
{
    const std::vector<PointGeometry> geo = grid_geometry(g, st, orientation);
    double worst = 0.0;
    for (std::size_t i = margin; i + margin < g.s_count(); ++i) {
        for (std::size_t j = margin; j + margin < g.t_count(); ++j) {
            const PointGeometry& pg = geo[g.index(i, j)];
            if (!pg.valid) continue;
            const double v = dot(eps * C * g.at(i, j), pg.N) * pg.H + eps;
            worst = std::max(worst, std::abs(v));
        }
    }
    return worst;
}

} // namespace imcf
