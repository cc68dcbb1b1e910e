#include "cli/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "cli/expr.hpp"

namespace imcf::cli {

using nlohmann::json;

namespace {

void only_keys(const json& obj, const std::string& block, const std::set<std::string>& allowed)
{
    if (!obj.is_object()) throw ConfigError("'" + block + "' must be an object");
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in '" + block + "'");
    }
}

const json& need(const json& obj, const std::string& block, const std::string& key)
{
    if (!obj.contains(key)) throw ConfigError("missing '" + key + "' in '" + block + "'");
    return obj.at(key);
}

double number(const json& v, const std::string& where)
{
    if (!v.is_number()) throw ConfigError("'" + where + "' must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError("'" + where + "' must be finite");
    return x;
}

int integer(const json& v, const std::string& where)
{
    if (!v.is_number_integer()) throw ConfigError("'" + where + "' must be an integer");
    return v.get<int>();
}

int sign(const json& v, const std::string& where)
{
    const int s = integer(v, where);
    if (s != 1 && s != -1) throw ConfigError("'" + where + "' must be +1 or -1");
    return s;
}

std::string text(const json& v, const std::string& where)
{
    if (!v.is_string()) throw ConfigError("'" + where + "' must be a string");
    return v.get<std::string>();
}

double positive(const json& v, const std::string& where)
{
    const double x = number(v, where);
    if (!(x > 0.0)) throw ConfigError("'" + where + "' must be positive");
    return x;
}

FamilyConfig parse_family(const json& f)
{
    if (!f.is_object()) throw ConfigError("'family' must be an object");
    FamilyConfig fc;
    fc.tag = parse_family_tag(text(need(f, "family", "tag"), "family.tag"));
    auto num = [&](const char* key) { return number(need(f, "family", key), std::string("family.") + key); };
    auto sgn = [&](const char* key) { return sign(need(f, "family", key), std::string("family.") + key); };
    fc.C = num("C");
    switch (fc.tag) {
    case FamilyTag::LightlikeExpander:
        only_keys(f, "family", {"tag", "C", "director", "a0", "a", "b"});
        fc.director = text(need(f, "family", "director"), "family.director");
        if (fc.director == "quadratic") {
            fc.a0 = num("a0");
        } else if (fc.director == "circular" || fc.director == "circular-reversed") {
            if (f.contains("a0")) throw ConfigError("'a0' only applies to the quadratic director");
        } else {
            throw ConfigError("unknown director '" + fc.director + "' (quadratic, circular, circular-reversed)");
        }
        fc.a = text(need(f, "family", "a"), "family.a");
        fc.b = text(need(f, "family", "b"), "family.b");
        break;
    case FamilyTag::NonCylindrical:
        only_keys(f, "family", {"tag", "C", "k1", "k2"});
        fc.k1 = num("k1");
        fc.k2 = num("k2");
        break;
    case FamilyTag::CylSpacelikeRuling:
        only_keys(f, "family", {"tag", "C", "delta", "k", "sign_t", "sign_r"});
        fc.delta = sgn("delta");
        fc.k = num("k");
        fc.sign_t = sgn("sign_t");
        fc.sign_r = sgn("sign_r");
        break;
    case FamilyTag::CylTimelikeRuling:
        only_keys(f, "family", {"tag", "C", "k", "sign_t", "sign_r"});
        fc.k = num("k");
        fc.sign_t = sgn("sign_t");
        fc.sign_r = sgn("sign_r");
        break;
    }
    return fc;
}

GridConfig parse_grid(const json& g)
{
    only_keys(g, "grid", {"s_min", "s_max", "s_count", "t_min", "t_max", "t_count"});
    GridConfig gc;
    gc.s_min = number(need(g, "grid", "s_min"), "grid.s_min");
    gc.s_max = number(need(g, "grid", "s_max"), "grid.s_max");
    gc.s_count = integer(need(g, "grid", "s_count"), "grid.s_count");
    gc.t_min = number(need(g, "grid", "t_min"), "grid.t_min");
    gc.t_max = number(need(g, "grid", "t_max"), "grid.t_max");
    gc.t_count = integer(need(g, "grid", "t_count"), "grid.t_count");
    if (gc.s_count < 2 || gc.t_count < 2) throw ConfigError("grid counts must be at least 2");
    if (!(gc.s_min < gc.s_max) || !(gc.t_min < gc.t_max)) throw ConfigError("grid ranges must satisfy min < max");
    return gc;
}

Tolerances parse_tolerances(const json& t)
{
    only_keys(t, "tolerances", {"causal", "nondegenerate", "mean_curvature", "quadrature"});
    Tolerances tol;
    if (t.contains("causal")) tol.causal = positive(t["causal"], "tolerances.causal");
    if (t.contains("nondegenerate")) tol.nondegenerate = positive(t["nondegenerate"], "tolerances.nondegenerate");
    if (t.contains("mean_curvature")) tol.mean_curvature = positive(t["mean_curvature"], "tolerances.mean_curvature");
    if (t.contains("quadrature")) tol.quadrature = positive(t["quadrature"], "tolerances.quadrature");
    return tol;
}

VerifyConfig parse_verify(const json& v)
{
    only_keys(v, "verify", {"tol", "C", "bump"});
    VerifyConfig vc;
    if (v.contains("tol")) vc.tol = positive(v["tol"], "verify.tol");
    if (v.contains("C")) vc.C = number(v["C"], "verify.C");
    if (v.contains("bump")) vc.bump = number(v["bump"], "verify.bump");
    return vc;
}

FlowConfig parse_flow(const json& f)
{
    only_keys(f, "flow", {"dt", "steps", "mode", "perturb", "threshold"});
    FlowConfig fc;
    const json& dt = need(f, "flow", "dt");
    if (dt.is_array()) {
        for (const json& d : dt) fc.dt.push_back(positive(d, "flow.dt"));
    } else {
        fc.dt.push_back(positive(dt, "flow.dt"));
    }
    if (fc.dt.empty()) throw ConfigError("'flow.dt' must not be empty");
    fc.steps = integer(need(f, "flow", "steps"), "flow.steps");
    if (fc.steps < 1) throw ConfigError("'flow.steps' must be at least 1");
    if (f.contains("mode")) {
        const std::string m = text(f["mode"], "flow.mode");
        if (m == "euler") fc.mode = FlowMode::Euler;
        else if (m == "replay") fc.mode = FlowMode::Replay;
        else throw ConfigError("'flow.mode' must be euler or replay");
    }
    if (f.contains("perturb")) fc.perturb = number(f["perturb"], "flow.perturb");
    if (f.contains("threshold")) fc.threshold = positive(f["threshold"], "flow.threshold");
    return fc;
}

std::vector<OutputSpec> parse_outputs(const json& o)
{
    if (!o.is_array()) throw ConfigError("'outputs' must be a list");
    std::vector<OutputSpec> out;
    for (const json& e : o) {
        only_keys(e, "outputs[]", {"kind", "path", "format"});
        OutputSpec spec;
        const std::string kind = text(need(e, "outputs[]", "kind"), "outputs[].kind");
        if (kind == "mesh") spec.kind = OutputKind::Mesh;
        else if (kind == "residuals") spec.kind = OutputKind::Residuals;
        else if (kind == "flow_report") spec.kind = OutputKind::FlowReport;
        else if (kind == "profile") spec.kind = OutputKind::Profile;
        else throw ConfigError("unknown output kind '" + kind + "'");
        spec.path = text(need(e, "outputs[]", "path"), "outputs[].path");
        spec.format = e.contains("format") ? text(e["format"], "outputs[].format")
                                           : (spec.kind == OutputKind::Mesh ? "obj" : "csv");
        if (spec.format != "obj" && spec.format != "csv") throw ConfigError("format must be obj or csv");
        out.push_back(std::move(spec));
    }
    return out;
}

} // namespace

double GridConfig::s_at(int i) const { return i == s_count - 1 ? s_max : s_min + (s_max - s_min) * i / (s_count - 1); }
double GridConfig::t_at(int j) const { return j == t_count - 1 ? t_max : t_min + (t_max - t_min) * j / (t_count - 1); }

ExperimentConfig parse_config(const json& doc)
{
    only_keys(doc, "config", {"family", "grid", "tolerances", "verify", "flow", "outputs", "seed"});
    ExperimentConfig cfg;
    cfg.family = parse_family(need(doc, "config", "family"));
    cfg.grid = parse_grid(need(doc, "config", "grid"));
    if (doc.contains("tolerances")) cfg.tolerances = parse_tolerances(doc["tolerances"]);
    if (doc.contains("verify")) cfg.verify = parse_verify(doc["verify"]);
    if (doc.contains("flow")) cfg.flow = parse_flow(doc["flow"]);
    if (doc.contains("outputs")) cfg.outputs = parse_outputs(doc["outputs"]);
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) throw ConfigError("'seed' must be a nonnegative integer");
        cfg.seed = doc["seed"].get<std::uint64_t>();
    }
    return cfg;
}

json load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path + "'");
    try {
        return json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError("config '" + path + "': " + e.what());
    }
}

json parse_grid_flag(const std::string& text)
{
    double v[6];
    char tail = 0;
    const int n = std::sscanf(text.c_str(), "%lf:%lf:%lf,%lf:%lf:%lf%c", &v[0], &v[1], &v[2], &v[3], &v[4], &v[5], &tail);
    if (n != 6) throw ConfigError("--grid expects SMIN:SMAX:N,TMIN:TMAX:N, got '" + text + "'");
    if (v[2] != std::floor(v[2]) || v[5] != std::floor(v[5])) throw ConfigError("--grid counts must be integers");
    return {{"s_min", v[0]}, {"s_max", v[1]}, {"s_count", static_cast<int>(v[2])},
            {"t_min", v[3]}, {"t_max", v[4]}, {"t_count", static_cast<int>(v[5])}};
}

FamilySpec to_family_spec(const FamilyConfig& fc, Interval director_domain)
{
    FamilySpec spec;
    spec.tag = fc.tag;
    spec.C = fc.C;
    switch (fc.tag) {
    case FamilyTag::LightlikeExpander: {
        Curve director = fc.director == "quadratic" ? make_lightlike_director_quadratic(fc.a0, director_domain)
                                                    : make_lightlike_director_circular(director_domain);
        if (fc.director == "circular-reversed") director = director.scaled(-1.0);
        spec.params = LightlikeParams{director, compile_expression(fc.a), compile_expression(fc.b)};
        break;
    }
    case FamilyTag::NonCylindrical: spec.params = NonCylParams{fc.k1, fc.k2}; break;
    case FamilyTag::CylSpacelikeRuling:
        spec.params = CylSpacelikeParams{fc.delta, fc.k, fc.sign_t, fc.sign_r};
        break;
    case FamilyTag::CylTimelikeRuling: spec.params = CylTimelikeParams{fc.k, fc.sign_t, fc.sign_r}; break;
    }
    return spec;
}

const OutputSpec* find_output(const ExperimentConfig& cfg, OutputKind kind)
{
    for (const OutputSpec& o : cfg.outputs) {
        if (o.kind == kind) return &o;
    }
    return nullptr;
}

} // namespace imcf::cli
