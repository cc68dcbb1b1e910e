#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include "cli/output.hpp"
#include "imcf/flow.hpp"

namespace imcf::cli {

using nlohmann::json;

namespace {

// Relative normal bump for negative controls; gamma is built this far beyond the grid.
constexpr double kBumpPad = 1e-3;

struct GridResiduals {
    CsvTable table{{"s", "t", "E", "F", "G", "H", "eps", "residual_direct", "residual_poly"}};
    double max_direct = 0.0;
    double max_poly = 0.0; // scaled by 1 + 2 disc^2
    std::size_t degenerate = 0;
    std::size_t no_direct = 0;
    std::vector<LVec3> vertices;
    std::vector<ResidualReport> reports;
};

GridResiduals evaluate_grid(const RuledSurface& S, double C, const ExperimentConfig& cfg)
{
    GridResiduals r;
    const GridConfig& g = cfg.grid;
    for (int i = 0; i < g.s_count; ++i) {
        for (int j = 0; j < g.t_count; ++j) {
            const double s = g.s_at(i);
            const double t = g.t_at(j);
            const ResidualReport rep =
                evaluate_residuals(S, C, s, t, cfg.tolerances.nondegenerate, cfg.tolerances.mean_curvature);
            const double scaled = std::abs(rep.poly) / residual_poly_scale(S, s, t);
            r.max_poly = std::max(r.max_poly, scaled);
            if (rep.degenerate) ++r.degenerate;
            if (rep.has_direct) {
                r.max_direct = std::max(r.max_direct, std::abs(rep.direct));
            } else {
                ++r.no_direct;
            }
            const double nan = std::nan("");
            r.table.add_row({s, t, rep.form.E, rep.form.F, rep.form.G, rep.degenerate ? nan : rep.H,
                             rep.degenerate ? nan : static_cast<double>(rep.eps), rep.has_direct ? rep.direct : nan,
                             rep.poly});
            r.vertices.push_back(S.position(s, t));
            r.reports.push_back(rep);
        }
    }
    return r;
}

std::string resolve_path(const std::string& flag, const ExperimentConfig& cfg, OutputKind kind)
{
    if (!flag.empty()) return flag;
    if (const OutputSpec* o = find_output(cfg, kind)) return o->path;
    return {};
}

std::string describe(const ExperimentConfig& cfg, const SolitonSpec& sol)
{
    std::string d = "family=" + std::string(to_string(cfg.family.tag)) + " C=" + fmt(sol.C)
                  + " eps=" + std::to_string(sol.eps) + " kind=" + std::string(to_string(sol.kind));
    return d;
}

std::vector<double> axis(double lo, double hi, int n) { return uniform_nodes(lo, hi, static_cast<std::size_t>(n)); }

struct SideBound {
    double s;
    std::optional<std::pair<std::string, std::string>> error; // kind, message
};

// Largest interval from the anchor towards `end` on which the profile is defined.
SideBound feasible_side(const RealFn& f, const RealFn& rad, double anchor, double end)
{
    try {
        check_profile_interval(f, rad, anchor, end);
        return {end, std::nullopt};
    } catch (const Error&) {
    }
    double good = anchor;
    double bad = end;
    for (int it = 0; it < 80 && good != bad; ++it) {
        const double mid = 0.5 * (good + bad);
        if (mid == good || mid == bad) break;
        try {
            check_profile_interval(f, rad, anchor, mid);
            good = mid;
        } catch (const Error&) {
            bad = mid;
        }
    }
    SideBound b{bad, std::nullopt};
    try {
        check_profile_interval(f, rad, good, bad, 4);
    } catch (const Error& e) {
        b.error = {{std::string(error_kind_name(e.kind())), e.what()}};
    }
    return b;
}

} // namespace

int exit_code_for(const Error& e) noexcept
{
    switch (e.kind()) {
    case ErrorKind::Singularity:
    case ErrorKind::NegativeRadicand:
    case ErrorKind::Degenerate:
    case ErrorKind::ZeroMeanCurvature:
    case ErrorKind::Projection: return kNumerical;
    default: return kInvalidInput;
    }
}

GeneratedFamily build_from_config(const ExperimentConfig& cfg, double s_pad, double t_pad)
{
    const Interval s{cfg.grid.s_min - s_pad, cfg.grid.s_max + s_pad};
    const Interval t{cfg.grid.t_min - t_pad, cfg.grid.t_max + t_pad};
    const FamilySpec spec = to_family_spec(cfg.family, {s.lo - 1.0, s.hi + 1.0});
    return build_family(spec, s, t, cfg.tolerances.quadrature);
}

int cmd_generate(const ExperimentConfig& cfg, const std::string& out_path, const std::string& format, std::ostream& out)
{
    const std::string path = resolve_path(out_path, cfg, OutputKind::Mesh);
    if (path.empty()) throw ConfigError("generate needs --out or a mesh output");
    std::string fmt_name = format;
    if (fmt_name.empty()) {
        const OutputSpec* o = find_output(cfg, OutputKind::Mesh);
        fmt_name = o ? o->format : "obj";
    }

    const GeneratedFamily F = build_from_config(cfg);
    const GridResiduals r = evaluate_grid(F.surface, cfg.family.C, cfg);

    if (fmt_name == "obj") {
        write_atomic(path, obj_mesh(r.vertices, cfg.grid.s_count, cfg.grid.t_count, describe(cfg, F.soliton)));
    } else if (fmt_name == "csv") {
        CsvTable v({"s", "t", "x", "y", "z"});
        for (std::size_t k = 0; k < r.vertices.size(); ++k) {
            const LVec3& p = r.vertices[k];
            v.add_row({r.reports[k].s, r.reports[k].t, p.x(), p.y(), p.z()});
        }
        write_atomic(path, v.str());
    } else {
        throw ConfigError("--format must be obj or csv");
    }

    CsvTable scalars({"vertex", "s", "t", "H", "residual_direct", "residual_poly"});
    for (std::size_t k = 0; k < r.reports.size(); ++k) {
        const ResidualReport& rep = r.reports[k];
        const double nan = std::nan("");
        scalars.add_row({static_cast<double>(k), rep.s, rep.t, rep.degenerate ? nan : rep.H,
                         rep.has_direct ? rep.direct : nan, rep.poly});
    }
    const std::string side = with_suffix(path, "_scalars.csv");
    write_atomic(side, scalars.str());

    out << "generate " << describe(cfg, F.soliton) << " vertices=" << r.vertices.size() << " mesh=" << path
        << " scalars=" << side << "\n";
    return kPass;
}

int cmd_verify(const ExperimentConfig& cfg, const std::string& out_path, std::ostream& out)
{
    const double C = cfg.verify.C.value_or(cfg.family.C);
    std::optional<GeneratedFamily> F;
    std::optional<RuledSurface> S;
    if (cfg.verify.bump != 0.0) {
        F.emplace(build_from_config(cfg, kBumpPad, 0.0));
        S.emplace(normal_bump(F->surface.restricted(cfg.grid.s_interval(), cfg.grid.t_interval()), cfg.verify.bump));
    } else {
        F.emplace(build_from_config(cfg));
        S.emplace(F->surface);
    }
    const SolitonSpec sol = classify(F->soliton.eps, C);
    const GridResiduals r = evaluate_grid(*S, C, cfg);

    const std::string path = resolve_path(out_path, cfg, OutputKind::Residuals);
    if (!path.empty()) write_atomic(path, r.table.str());

    const bool pass = r.max_direct <= cfg.verify.tol && r.max_poly <= cfg.verify.tol;
    out << "verify " << describe(cfg, sol) << " points=" << r.table.rows() << " degenerate=" << r.degenerate
        << " skipped_direct=" << r.no_direct << " max|residual_direct|=" << fmt(r.max_direct)
        << " max|residual_poly|/scale=" << fmt(r.max_poly) << " tol=" << fmt(cfg.verify.tol) << " "
        << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? kPass : kVerifyFail;
}

int cmd_flowcheck(const ExperimentConfig& cfg, const std::string& out_path, std::ostream& out)
{
    if (!cfg.flow) throw ConfigError("flowcheck needs a 'flow' block");
    const FlowConfig& fc = *cfg.flow;
    const double Ls = cfg.grid.s_max - cfg.grid.s_min;
    const double Lt = cfg.grid.t_max - cfg.grid.t_min;

    // The reference covers the grid with room for the material motion of the pinned ring.
    std::optional<GeneratedFamily> P;
    try {
        P.emplace(build_from_config(cfg, 0.25 * Ls, Lt));
    } catch (const Error&) {
        P.emplace(build_from_config(cfg, kBumpPad, Lt));
    }
    RuledSurface X0 = P->surface;
    if (fc.perturb != 0.0) {
        const Interval sd = X0.s_domain();
        X0 = normal_bump(X0.restricted({sd.lo + kBumpPad / 2, sd.hi - kBumpPad / 2}, X0.t_domain()), fc.perturb);
    }
    const SolitonSpec sol = P->soliton;
    const SampleGrid g0 = sample_grid(X0, axis(cfg.grid.s_min, cfg.grid.s_max, cfg.grid.s_count),
                                      axis(cfg.grid.t_min, cfg.grid.t_max, cfg.grid.t_count));

    CsvTable table({"dt", "time", "deviation", "max_H_drift"});
    std::vector<double> terminal;
    std::size_t failures = 0;
    // `steps` applies to the first dt; later dt values run to the same final time.
    const double T = fc.dt.front() * fc.steps;
    for (double dt : fc.dt) {
        const int steps = std::max(1, static_cast<int>(std::lround(T / dt)));
        std::vector<SampleGrid> traj;
        if (fc.mode == FlowMode::Replay) {
            traj = replay_homothety(g0, sol, dt, steps);
        } else {
            EvolveOptions opt;
            opt.tol_H = cfg.tolerances.mean_curvature;
            opt.tol_nd = cfg.tolerances.nondegenerate;
            opt.reference = FlowReference{X0, sol};
            traj = evolve(g0, dt, steps, opt);
        }
        DeviationOptions dopt;
        dopt.time_stride = std::max(1, steps / 10);
        const FlowReport rep = homothety_deviation(traj, X0, sol.eps, sol.C, dopt);
        for (std::size_t k = 0; k < rep.times.size(); ++k) {
            table.add_row({dt, rep.times[k], rep.deviation[k], rep.max_H_drift[k]});
        }
        terminal.push_back(rep.deviation.back());
        failures += rep.projection_failures;
        out << "flowcheck dt=" << fmt(dt) << " T=" << fmt(dt * steps)
            << " terminal_deviation=" << fmt(rep.deviation.back())
            << " max_H_drift=" << fmt(rep.max_H_drift.back()) << " projection_failures=" << rep.projection_failures
            << "\n";
    }

    const std::string path = resolve_path(out_path, cfg, OutputKind::FlowReport);
    if (!path.empty()) write_atomic(path, table.str());

    bool pass = true;
    if (fc.mode == FlowMode::Replay) {
        const double worst = *std::max_element(terminal.begin(), terminal.end());
        pass = worst <= 1e-12;
        out << "flowcheck replay " << describe(cfg, sol) << " max_deviation=" << fmt(worst) << " "
            << (pass ? "PASS" : "FAIL") << "\n";
        return pass ? kPass : kVerifyFail;
    }
    const double worst = *std::max_element(terminal.begin(), terminal.end());
    if (worst > fc.threshold) {
        out << "flowcheck " << describe(cfg, sol) << " NON-SOLITON (terminal deviation " << fmt(worst)
            << " > threshold " << fmt(fc.threshold) << ") FAIL\n";
        return kVerifyFail;
    }
    std::string ratio_text;
    if (terminal.size() >= 2) {
        const double ratio = terminal[0] / terminal[1];
        pass = ratio >= 1.7 && ratio <= 2.3;
        ratio_text = " richardson_ratio=" + fmt(ratio);
    }
    out << "flowcheck " << describe(cfg, sol) << ratio_text << " projection_failures=" << failures << " "
        << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? kPass : kVerifyFail;
}

int cmd_export(const ExperimentConfig& cfg, const std::string& out_path, std::ostream& out)
{
    const FamilyConfig& fc = cfg.family;
    if (fc.tag != FamilyTag::CylSpacelikeRuling && fc.tag != FamilyTag::CylTimelikeRuling) {
        throw ParamError("export needs a cylindrical family");
    }
    const std::string prefix = resolve_path(out_path, cfg, OutputKind::Profile);
    if (prefix.empty()) throw ConfigError("export needs --out or a profile output");
    if (fc.C == 0.0) throw ZeroCError("C must be nonzero");

    const bool spacelike = fc.tag == FamilyTag::CylSpacelikeRuling;
    const double q = spacelike ? fc.delta * (2.0 / fc.C - 1.0) : 1.0 - 2.0 / fc.C;
    const double k = fc.k;
    const int delta = fc.delta;
    RealFn f = [q, k](double s) { return q * s * s + k; };
    RealFn rad = spacelike ? RealFn([q, k, delta](double s) {
        const double fp = 2.0 * q * s;
        return 4.0 * delta * (q * s * s + k) + fp * fp;
    })
                           : RealFn([q, k](double s) {
                                 const double fp = 2.0 * q * s;
                                 return 4.0 * (q * s * s + k) - fp * fp;
                             });

    const Interval req = cfg.grid.s_interval();
    const double anchor = profile_anchor(req);
    check_profile_interval(f, rad, anchor, anchor, 1);
    const SideBound lo = feasible_side(f, rad, anchor, req.lo);
    const SideBound hi = feasible_side(f, rad, anchor, req.hi);
    // Stop short of a truncation point: the integrand is not smooth there.
    const double shrink = 1e-3;
    const Interval exp_dom{lo.error ? anchor + (1.0 - shrink) * (lo.s - anchor) : req.lo,
                           hi.error ? anchor + (1.0 - shrink) * (hi.s - anchor) : req.hi};

    json side = {{"family", std::string(to_string(fc.tag))},
                 {"C", fc.C},
                 {"k", fc.k},
                 {"requested", {req.lo, req.hi}},
                 {"exported", {exp_dom.lo, exp_dom.hi}},
                 {"anchor", anchor},
                 {"branches", json::array()}};
    if (spacelike) side["delta"] = fc.delta;
    for (const auto& [name, b] : {std::pair<const char*, const SideBound*>{"lo", &lo}, {"hi", &hi}}) {
        if (b->error) {
            side["truncated"][name] = {{"s", b->s}, {"error", b->error->first}, {"message", b->error->second}};
        } else {
            side["truncated"][name] = nullptr;
        }
    }

    const int n = cfg.grid.s_count;
    for (int st : {1, -1}) {
        for (int sr : {1, -1}) {
            const GeneratedFamily F =
                spacelike ? make_cyl_spacelike(fc.C, fc.delta, fc.k, st, sr, exp_dom, cfg.grid.t_interval(),
                                               cfg.tolerances.quadrature)
                          : make_cyl_timelike(fc.C, fc.k, st, exp_dom, cfg.grid.t_interval(),
                                              cfg.tolerances.quadrature, sr);
            CsvTable t(spacelike ? std::vector<std::string>{"s", "y", "z"} : std::vector<std::string>{"s", "x", "y"});
            for (double s : axis(exp_dom.lo, exp_dom.hi, n)) {
                const LVec3 p = F.surface.gamma().eval(s);
                t.add_row(spacelike ? std::vector<double>{s, p.y(), p.z()} : std::vector<double>{s, p.x(), p.y()});
            }
            const std::string path = with_suffix(prefix, std::string("_t") + (st > 0 ? '+' : '-') + "_r"
                                                             + (sr > 0 ? '+' : '-') + ".csv");
            write_atomic(path, t.str());
            side["branches"].push_back({{"sign_t", st}, {"sign_r", sr}, {"path", path}});
        }
    }
    const std::string meta = with_suffix(prefix, ".json");
    write_atomic(meta, side.dump(2) + "\n");

    out << "export family=" << to_string(fc.tag) << " exported=[" << fmt(exp_dom.lo) << ", " << fmt(exp_dom.hi)
        << "]";
    for (const auto& [name, b] : {std::pair<const char*, const SideBound*>{"lo", &lo}, {"hi", &hi}}) {
        if (b->error) out << " truncated_" << name << "=" << fmt(b->s) << "(" << b->error->first << ")";
    }
    out << " branches=4 meta=" << meta << "\n";
    return kPass;
}

int cmd_selftest(std::uint64_t seed, std::ostream& out)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    bool all = true;
    auto report = [&](const char* name, double value, double tol) {
        const bool ok = value <= tol;
        all = all && ok;
        out << "selftest " << name << " " << (ok ? "PASS" : "FAIL") << " (" << fmt(value) << " <= " << fmt(tol)
            << ")\n";
    };

    double lag = 0.0;
    double dual = 0.0;
    for (int n = 0; n < 1000; ++n) {
        const LVec3 u(U(rng), U(rng), U(rng));
        const LVec3 v(U(rng), U(rng), U(rng));
        const LVec3 x(U(rng), U(rng), U(rng));
        const LVec3 w = cross(u, v);
        const double scale = std::pow(euclid_norm(u) * euclid_norm(v), 2);
        lag = std::max(lag, std::abs(dot(w, w) - (-dot(u, u) * dot(v, v) + dot(u, v) * dot(u, v))) / scale);
        dual = std::max(dual, std::abs(dot(w, x) - det3(x, u, v)) / (scale * euclid_norm(x)));
    }
    report("lagrange_identity", lag, 1e-12);
    report("cross_duality", dual, 1e-12);

    const GeneratedFamily circle = make_cyl_timelike(2.0, 1.0, 1, {-3.0, 3.0}, {-1.0, 1.0});
    const GeneratedFamily hyper = make_cyl_spacelike(2.0, 1, 1.0, 1, 1, {-2.0, 2.0}, {-1.0, 1.0});
    double cyl = 0.0;
    for (const GeneratedFamily* F : {&circle, &hyper}) {
        for (int i = 0; i <= 20; ++i) {
            for (int j = 0; j <= 20; ++j) {
                const double s = F->surface.s_domain().lo + F->surface.s_domain().length() * i / 20;
                const double t = -1.0 + 0.1 * j;
                cyl = std::max({cyl, std::abs(residual_direct(F->surface, 2.0, s, t)),
                                std::abs(residual_poly(F->surface, 2.0, s, t))});
            }
        }
    }
    report("exact_cylinders", cyl, 1e-12);

    const GeneratedFamily light = make_lightlike_expander(
        make_lightlike_director_quadratic(1.0), [](const Jet& s) { return s; },
        [](const Jet& s) { return s * s + 1.0; }, {-2.0, 2.0}, {-1.0, 1.0});
    double lp = 0.0;
    for (int i = 0; i <= 20; ++i) {
        for (int j = 0; j <= 20; ++j) {
            const double s = -2.0 + 0.2 * i;
            const double t = -1.0 + 0.1 * j;
            lp = std::max(lp, std::abs(residual_poly(light.surface, 1.0, s, t))
                                  / residual_poly_scale(light.surface, s, t));
        }
    }
    report("lightlike_expander", lp, 1e-8);

    const double q = quad_profile_t([](double) { return 1.0; }, [](double) { return 0.0; }, 1, 0.0, 1.7);
    report("profile_quadrature", std::abs(q - 1.7), 1e-12);

    out << "selftest seed=" << seed << " " << (all ? "PASS" : "FAIL") << "\n";
    return all ? kPass : kVerifyFail;
}

} // namespace imcf::cli
