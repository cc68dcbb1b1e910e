// imcf: build, verify, evolve and export homothetic IMCF solitons among ruled surfaces of L^3.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"

using namespace imcf;
using namespace imcf::cli;
using nlohmann::json;

namespace {

struct Flags {
    std::string config;
    std::string family;
    std::optional<double> C, k, k1, k2, a0, perturb;
    std::optional<int> delta, sign_t, sign_r, steps;
    std::string grid, out, format, director, a, b;
    std::vector<double> dt;
    std::optional<std::uint64_t> seed;
};

void add_flags(CLI::App* app, Flags& f)
{
    app->add_option("--config", f.config, "JSON experiment config");
    app->add_option("--family", f.family, "LightlikeExpander | NonCylindrical | CylSpacelikeRuling | CylTimelikeRuling");
    app->add_option("--C", f.C, "soliton constant");
    app->add_option("--k", f.k);
    app->add_option("--k1", f.k1);
    app->add_option("--k2", f.k2);
    app->add_option("--delta", f.delta, "+1 or -1");
    app->add_option("--sign-t", f.sign_t, "branch sign of the profile angle");
    app->add_option("--sign-r", f.sign_r, "branch sign of the profile radius");
    app->add_option("--director", f.director, "quadratic | circular | circular-reversed");
    app->add_option("--a0", f.a0, "quadratic director parameter");
    app->add_option("--a", f.a, "a(s), e.g. 's' or 'cos(s)'");
    app->add_option("--b", f.b, "b(s), e.g. 's^2+1'");
    app->add_option("--grid", f.grid, "SMIN:SMAX:N,TMIN:TMAX:N");
    app->add_option("--out", f.out, "output path (prefix for export)");
    app->add_option("--format", f.format, "obj | csv");
    app->add_option("--dt", f.dt, "time step(s)");
    app->add_option("--steps", f.steps);
    app->add_option("--perturb", f.perturb, "relative normal bump for flowcheck");
    app->add_option("--seed", f.seed);
}

json merged_config(const Flags& f)
{
    json doc = f.config.empty() ? json::object() : load_config_file(f.config);
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    json& fam = doc["family"];
    if (fam.is_null()) fam = json::object();
    if (!f.family.empty()) fam["tag"] = f.family;
    if (f.C) fam["C"] = *f.C;
    if (f.k) fam["k"] = *f.k;
    if (f.k1) fam["k1"] = *f.k1;
    if (f.k2) fam["k2"] = *f.k2;
    if (f.delta) fam["delta"] = *f.delta;
    if (f.sign_t) fam["sign_t"] = *f.sign_t;
    if (f.sign_r) fam["sign_r"] = *f.sign_r;
    if (!f.director.empty()) fam["director"] = f.director;
    if (f.a0) fam["a0"] = *f.a0;
    if (!f.a.empty()) fam["a"] = f.a;
    if (!f.b.empty()) fam["b"] = f.b;
    if (!f.grid.empty()) doc["grid"] = parse_grid_flag(f.grid);
    if (!f.dt.empty() || f.steps || f.perturb) {
        json& flow = doc["flow"];
        if (flow.is_null()) flow = json::object();
        if (!f.dt.empty()) flow["dt"] = f.dt;
        if (f.steps) flow["steps"] = *f.steps;
        if (f.perturb) flow["perturb"] = *f.perturb;
    }
    if (f.seed) doc["seed"] = *f.seed;
    return doc;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Homothetic IMCF solitons among ruled surfaces of Lorentz-Minkowski space"};
    app.require_subcommand(1);
    Flags flags;
    std::optional<double> verify_C;
    double verify_bump = 0.0;
    std::optional<double> verify_tol;

    CLI::App* gen = app.add_subcommand("generate", "write the surface mesh (OBJ) and a scalar sidecar CSV");
    CLI::App* ver = app.add_subcommand("verify", "residual table and PASS/FAIL summary");
    CLI::App* flow = app.add_subcommand("flowcheck", "explicit IMCF run compared with the exact homothety");
    CLI::App* exp = app.add_subcommand("export", "profile curves of a cylindrical family, all four branches");
    CLI::App* self = app.add_subcommand("selftest", "built-in consistency checks");
    for (CLI::App* sub : {gen, ver, flow, exp}) add_flags(sub, flags);
    ver->add_option("--verify-C", verify_C, "evaluate the residuals with this C");
    ver->add_option("--bump", verify_bump, "relative normal bump on the base curve");
    ver->add_option("--tol", verify_tol, "PASS tolerance");
    self->add_option("--seed", flags.seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kInvalidInput;
    }

    try {
        if (self->parsed()) return cmd_selftest(flags.seed.value_or(20240601), std::cout);
        json doc = merged_config(flags);
        if (ver->parsed() && (verify_C || verify_bump != 0.0 || verify_tol)) {
            json& v = doc["verify"];
            if (v.is_null()) v = json::object();
            if (verify_C) v["C"] = *verify_C;
            if (verify_bump != 0.0) v["bump"] = verify_bump;
            if (verify_tol) v["tol"] = *verify_tol;
        }
        const ExperimentConfig cfg = parse_config(doc);
        if (gen->parsed()) return cmd_generate(cfg, flags.out, flags.format, std::cout);
        if (ver->parsed()) return cmd_verify(cfg, flags.out, std::cout);
        if (flow->parsed()) return cmd_flowcheck(cfg, flags.out, std::cout);
        return cmd_export(cfg, flags.out, std::cout);
    } catch (const Error& e) {
        std::cerr << "imcf: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "imcf: " << e.what() << "\n";
        return kNumerical;
    }
}
