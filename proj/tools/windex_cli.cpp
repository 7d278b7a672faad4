// windex: command-line front end.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "windex/cutter.hpp"
#include "windex/error.hpp"
#include "windex/field_expr.hpp"
#include "windex/generators.hpp"
#include "windex/intersections.hpp"
#include "windex/io.hpp"
#include "windex/plane_field.hpp"
#include "windex/prescribed_ode.hpp"
#include "windex/stokes.hpp"
#include "windex/winding.hpp"

#ifndef WINDEX_VERSION
#define WINDEX_VERSION "dev"
#endif

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace windex;

namespace {

constexpr int kExitCheckFailed = 3;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 1;

json vec(Vec2 v) { return json::array({v.x, v.y}); }

json singularity_json(const Singularity& s) {
    return {{"param", s.param}, {"point", vec(s.point)}, {"t_minus", vec(s.t_minus)}, {"t_plus", vec(s.t_plus)},
            {"delta_t", vec(s.delta_t)}};
}

std::string exit_code_table() {
    std::string out = "Exit codes:\n  0  success\n  1  internal error\n  2  usage error\n  3  a check reported FAIL\n";
    for (int c = static_cast<int>(ErrorCode::InvalidInput); c <= static_cast<int>(ErrorCode::ConstructionFailed); ++c) {
        const auto code = static_cast<ErrorCode>(c);
        out += "  " + std::to_string(exit_code(code)) + " " + std::string(error_name(code)) + "\n";
    }
    return out;
}

struct Globals {
    std::uint64_t seed = 1;
    std::size_t resolution = kCutterResolution;
    std::size_t samples = kDefaultSamples;
    CLI::Option* samples_opt = nullptr;
    std::string manifest;
};

// Collects what the manifest needs while a command runs.
struct Run {
    std::string command;
    json config = json::object();
    std::vector<std::string> outputs;

    void output(const fs::path& p, std::string_view text) {
        write_text(p, text);
        outputs.push_back(p.string());
    }
};

Curve load_input(const std::string& path, const Globals& g) {
    Curve c = load_curve(path);
    if (g.samples_opt->count() > 0) c = resample_arclength(c, g.samples);
    return c;
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    const auto t0 = std::chrono::steady_clock::now();
    CLI::App app{"windex: winding numbers, index-weighted Stokes identity and loop cutting for closed plane curves"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", WINDEX_VERSION);
    app.footer(exit_code_table() + "\nField expressions (--H, --field):\n" + std::string(expr::kGrammar) +
               "\"^\" is right-associative and binds tighter than unary minus: -x^2 = -(x^2).\n");

    Globals g;
    app.add_option("--seed", g.seed, "Seed for randomised checks")->capture_default_str();
    app.add_option("--resolution", g.resolution, "Index-map cells along the larger side")
        ->capture_default_str()
        ->check(CLI::Range(16, 1 << 14));
    g.samples_opt = app.add_option("--samples", g.samples, "Curve samples (resamples input curves when given)")
                        ->capture_default_str()
                        ->check(CLI::Range(8, 1 << 22));
    app.add_option("--manifest", g.manifest, "Manifest path (default: beside the first output)");

    Run run;

    // intersections
    std::string curve_path, out_path, svg_path;
    auto* cmd_int = app.add_subcommand("intersections", "Self-intersections of a curve");
    cmd_int->add_option("curve", curve_path, "Curve JSON or CSV")->required()->check(CLI::ExistingFile);
    cmd_int->add_option("--out", out_path, "Write the records as JSON");

    // index-map
    std::size_t jump_trials = 0;
    auto* cmd_map = app.add_subcommand("index-map", "Raster of winding numbers and its components");
    cmd_map->add_option("curve", curve_path, "Curve JSON or CSV")->required()->check(CLI::ExistingFile);
    cmd_map->add_option("--out", out_path, "CSV of x,y,index (Unknown left empty)");
    cmd_map->add_option("--svg", svg_path, "SVG of the curve over the tinted components");
    cmd_map->add_option("--jump-trials", jump_trials, "Also probe the index jump at this many regular points");

    // verify-stokes
    std::string field_text = "x,0";
    auto* cmd_stokes = app.add_subcommand("verify-stokes", "Both sides of the index-weighted divergence identity");
    cmd_stokes->add_option("curve", curve_path, "Curve JSON or CSV")->required()->check(CLI::ExistingFile);
    cmd_stokes->add_option("--field", field_text, "Vector field \"Vx, Vy\"")->capture_default_str();
    cmd_stokes->add_option("--out", out_path, "Write the report as JSON");

    // obstruction
    std::string H_text = "1 + x/10", dir_text = "1,0";
    auto* cmd_obs = app.add_subcommand("obstruction", "Obstruction functional for V = H e");
    cmd_obs->add_option("curve", curve_path, "Curve JSON or CSV")->required()->check(CLI::ExistingFile);
    cmd_obs->add_option("--H", H_text, "Scalar field H")->capture_default_str();
    cmd_obs->add_option("--dir", dir_text, "Direction e as \"a,b\"")->capture_default_str();
    cmd_obs->add_option("--out", out_path, "Write the report as JSON");

    // cut
    std::string prefix;
    std::optional<std::size_t> max_iter;
    bool orient = false;
    auto* cmd_cut = app.add_subcommand("cut", "Cut loops at the left extremity of the negative region");
    cmd_cut->add_option("curve", curve_path, "Curve JSON or CSV")->required()->check(CLI::ExistingFile);
    cmd_cut->add_option("--dir", dir_text, "Monotonicity direction e")->capture_default_str();
    cmd_cut->add_option("--out-prefix", prefix, "Writes PREFIX_step{n}.json, PREFIX_trace.json and PREFIX.svg");
    cmd_cut->add_option("--max-iter", max_iter, "Iteration cap (default: initial component count)");
    cmd_cut->add_flag("--orient", orient, "Reverse the curve first if its mean curvature is negative");

    // shoot
    std::string box_text = "-2,-2,2,2";
    SurveyConfig survey;
    auto* cmd_shoot = app.add_subcommand("shoot", "Shooting survey for closed solutions of t' = H(gamma) n");
    cmd_shoot->add_option("--H", H_text, "Scalar field H")->capture_default_str();
    cmd_shoot->add_option("--dir", dir_text, "Direction e for the monotonicity check")->capture_default_str();
    cmd_shoot->add_option("--box", box_text, "Start box \"x0,y0,x1,y1\"")->capture_default_str();
    cmd_shoot->add_option("--starts", survey.starts, "Starts per box side")->capture_default_str();
    cmd_shoot->add_option("--angles", survey.angles, "Launch angles per start")->capture_default_str();
    cmd_shoot->add_option("--max-length", survey.max_length, "Arc length per shot")->capture_default_str();
    cmd_shoot->add_option("--step", survey.step, "Integrator step")->capture_default_str();
    cmd_shoot->add_option("--tolerance", survey.tolerance, "Closure tolerance")->capture_default_str();
    cmd_shoot->add_option("--out", out_path, "Survey CSV");

    // lemniscate
    double a = 1.0;
    bool audit = false;
    auto* cmd_lem = app.add_subcommand("lemniscate", "Lemniscate of Bernoulli and its counterexample audit");
    cmd_lem->add_option("--a", a, "Half-width a")->capture_default_str()->check(CLI::PositiveNumber);
    cmd_lem->add_option("--out", out_path, "Curve JSON");
    cmd_lem->add_option("--svg", svg_path, "SVG with the tinted lobes");
    cmd_lem->add_flag("--audit", audit, "Run the audit and report it");

    // flower
    FlowerParams flower;
    bool nested = false;
    auto* cmd_flower = app.add_subcommand("flower", "Flower curve with negative centre");
    cmd_flower->add_option("--petals", flower.petals, "Petal count (>= 3)")->capture_default_str();
    cmd_flower->add_option("--apex", flower.apex_radius, "Petal apex radius")->capture_default_str();
    cmd_flower->add_option("--inner", flower.inner_radius, "Radius of the petal crossings")->capture_default_str();
    cmd_flower->add_flag("--nested", nested, "Emit the two-iteration test curve instead");
    cmd_flower->add_option("--out", out_path, "Curve JSON");
    cmd_flower->add_option("--svg", svg_path, "SVG with the tinted components");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    int status = 0;
    try {
        run.config["seed"] = g.seed;
        run.config["resolution"] = g.resolution;
        run.config["samples"] = g.samples;

        if (*cmd_int) {
            run.command = "intersections";
            run.config["curve"] = curve_path;
            const Curve c = load_input(curve_path, g);
            const auto records = self_intersections(c);
            json j;
            j["count"] = records.size();
            j["components"] = topological_components(records);
            j["records"] = json::array();
            for (const auto& r : records) {
                j["records"].push_back(
                    {{"point", vec(r.point)}, {"params", r.params}, {"order", r.order}, {"tangential", r.tangential}});
            }
            if (!out_path.empty()) run.output(out_path, j.dump(2) + "\n");
            print(j);
        } else if (*cmd_map) {
            run.command = "index-map";
            run.config["curve"] = curve_path;
            const Curve c = load_input(curve_path, g);
            const IndexMap m = index_map(c, g.resolution);
            json j;
            j["nx"] = m.nx;
            j["ny"] = m.ny;
            j["cell"] = m.cell;
            j["origin"] = vec(m.origin);
            j["index_constant"] = m.index_constant;
            j["components"] = json::array();
            for (std::size_t k = 0; k < m.component_count(); ++k) {
                j["components"].push_back({{"id", k},
                                           {"index", m.component_index[k]},
                                           {"cells", m.component_cells[k]},
                                           {"unbounded", static_cast<int>(k) == m.unbounded}});
            }
            if (jump_trials > 0) {
                run.config["jump_trials"] = jump_trials;
                const auto rep = verify_index_jump(c, jump_trials, g.seed);
                json fails = json::array();
                for (const auto& f : rep.failures) fails.push_back({{"param", f.param}, {"point", vec(f.point)}});
                j["index_jump"] = {{"trials", rep.trials},
                                   {"passed", rep.passed},
                                   {"band", rep.band},
                                   {"skipped_nonregular", rep.skipped_nonregular},
                                   {"failures", fails}};
                if (!rep.failures.empty()) status = kExitCheckFailed;
            }
            if (!out_path.empty()) run.output(out_path, index_map_csv(m));
            if (!svg_path.empty()) run.output(svg_path, render_svg({{&c, 1.0}}, {.map = &m}));
            print(j);
        } else if (*cmd_stokes) {
            run.command = "verify-stokes";
            run.config["curve"] = curve_path;
            run.config["field"] = field_text;
            const Curve c = load_input(curve_path, g);
            const VectorField V = vector_field(field_text);
            const IndexMap m = index_map(c, g.resolution);
            const Quadrature grid = lhs_grid(c, V, m);
            const Quadrature comp = lhs_components(c, V, m);
            const double rhs = rhs_boundary(c, V);
            const double slack = 1e-2 * (1.0 + std::fabs(rhs));
            const bool identity = std::fabs(grid.value - rhs) <= grid.bound + slack;
            const bool oracle = std::fabs(grid.value - comp.value) <= grid.bound + comp.bound + slack;
            json j = {{"field", V.provenance},
                      {"lhs_grid", grid.value},
                      {"lhs_grid_bound", grid.bound},
                      {"lhs_components", comp.value},
                      {"lhs_components_bound", comp.bound},
                      {"rhs_boundary", rhs},
                      {"slack", slack},
                      {"identity", identity ? "PASS" : "FAIL"},
                      {"components_agree", oracle ? "PASS" : "FAIL"}};
            if (!out_path.empty()) run.output(out_path, j.dump(2) + "\n");
            print(j);
            if (!identity || !oracle) status = kExitCheckFailed;
        } else if (*cmd_obs) {
            run.command = "obstruction";
            run.config["curve"] = curve_path;
            run.config["H"] = H_text;
            run.config["dir"] = dir_text;
            const Curve c = load_input(curve_path, g);
            const ScalarField H = scalar_field(H_text);
            const Vec2 e = normalized(parse_direction(dir_text));
            const Obstruction o = obstruction_functional(c, H, e, g.resolution);
            const auto hyp = sample_hypothesis(H, e, c.bbox().lo, c.bbox().hi, 10000, g.seed);
            json j = {{"H", H.provenance},
                      {"direction", vec(e)},
                      {"area_side", o.area_side},
                      {"area_bound", o.area_bound},
                      {"boundary_side", o.boundary_side},
                      {"tangent_sum", o.tangent_sum},
                      {"hypothesis", {{"positive_fraction", hyp.positive_fraction},
                                      {"monotone_fraction", hyp.monotone_fraction},
                                      {"pass", hyp.pass}}}};
            if (!out_path.empty()) run.output(out_path, j.dump(2) + "\n");
            print(j);
        } else if (*cmd_cut) {
            run.command = "cut";
            run.config["curve"] = curve_path;
            run.config["dir"] = dir_text;
            run.config["orient"] = orient;
            Curve c = load_input(curve_path, g);
            if (orient) c = orient_positive(c);
            RunOptions opt;
            opt.direction = parse_direction(dir_text);
            opt.resolution = g.resolution;
            opt.max_iter = max_iter;
            const RunResult r = windex::run(c, opt);

            json traces = json::array();
            for (const CutTrace& t : r.traces) {
                traces.push_back({{"iteration", t.iteration},
                                  {"omega_components", t.omega_components},
                                  {"omega_indices", t.omega_indices},
                                  {"chosen_point", vec(t.chosen_point)},
                                  {"tie", t.tie},
                                  {"s1", t.s1},
                                  {"s2", t.s2},
                                  {"sector_in", vec(t.sector_in)},
                                  {"sector_out", vec(t.sector_out)},
                                  {"sector_index", t.sector_index},
                                  {"new_singularity", singularity_json(t.new_singularity)},
                                  {"components_before", t.components_before},
                                  {"components_after", t.components_after},
                                  {"scale", t.scale},
                                  {"vertices_before", t.vertices_before},
                                  {"vertices_after", t.vertices_after}});
            }
            json sings = json::array();
            for (const auto& s : singularities_of(r.final_curve)) sings.push_back(singularity_json(s));
            json j = {{"iterations", r.traces.size()},
                      {"initial_components", r.initial_components},
                      {"positively_curved", r.positively_curved},
                      {"singularities", sings},
                      {"tangent_sum", r.tangent_sum},
                      {"own_boundary", r.own_boundary},
                      {"certificate", r.certificate},
                      {"traces", traces}};
            if (!prefix.empty()) {
                for (std::size_t k = 0; k < r.steps.size(); ++k) {
                    run.output(prefix + "_step" + std::to_string(k + 1) + ".json", curve_to_json(r.steps[k]));
                }
                run.output(prefix + "_trace.json", j.dump(2) + "\n");
                const IndexMap m = index_map(c, g.resolution);
                std::vector<SvgLayer> layers{{&c, 1.0, "#222222"}};
                for (std::size_t k = 0; k + 1 < r.steps.size(); ++k) layers.push_back({&r.steps[k], 1.5, "#555555", 0.6});
                if (!r.steps.empty()) layers.push_back({&r.steps.back(), 3.0, "#000000"});
                run.output(prefix + ".svg", render_svg(layers, {.map = &m}));
            }
            print(j);
        } else if (*cmd_shoot) {
            run.command = "shoot";
            run.config["H"] = H_text;
            run.config["dir"] = dir_text;
            run.config["box"] = box_text;
            run.config["starts"] = survey.starts;
            run.config["angles"] = survey.angles;
            run.config["max_length"] = survey.max_length;
            run.config["step"] = survey.step;
            run.config["tolerance"] = survey.tolerance;
            std::vector<double> b;
            for (const auto& part : CLI::detail::split(box_text, ',')) {
                double v = 0.0;
                if (!CLI::detail::lexical_conversion<double, double>({part}, v)) b.clear();
                b.push_back(v);
            }
            if (b.size() != 4 || !(b[2] > b[0]) || !(b[3] > b[1])) {
                throw Error(ErrorCode::InvalidInput, "--box expects x0,y0,x1,y1 with x0 < x1 and y0 < y1");
            }
            survey.lo = {b[0], b[1]};
            survey.hi = {b[2], b[3]};
            survey.direction = normalized(parse_direction(dir_text));
            survey.seed = g.seed;
            const SurveyReport rep = shooting_survey(scalar_field(H_text), survey);
            std::size_t blowups = 0;
            for (const auto& row : rep.rows) blowups += row.blowup ? 1 : 0;
            json j = {{"shots", rep.rows.size()},
                      {"closures", rep.closures},
                      {"min_defect", std::isfinite(rep.min_defect) ? json(rep.min_defect) : json(nullptr)},
                      {"blowups", blowups},
                      {"hypothesis", {{"positive_fraction", rep.hypothesis.positive_fraction},
                                      {"monotone_fraction", rep.hypothesis.monotone_fraction}}},
                      {"result", rep.closures == 0 ? "PASS" : "FAIL"}};
            if (!out_path.empty()) run.output(out_path, survey_csv(rep));
            print(j);
            if (rep.closures != 0) status = kExitCheckFailed;
        } else if (*cmd_lem) {
            run.command = "lemniscate";
            run.config["a"] = a;
            run.config["audit"] = audit;
            const std::size_t n = g.samples_opt->count() > 0 ? g.samples : 4096;
            run.config["samples"] = n;
            const Curve c = lemniscate_generate(a, n);
            json j = {{"a", a}, {"samples", n}, {"length", c.length()}};
            if (audit) {
                const AuditReport rep = counterexample_audit(a, n, g.resolution);
                j["audit"] = {{"cartesian_residual", rep.cartesian_residual},
                              {"curvature_error", rep.curvature_error},
                              {"c_at_apex", rep.c_at_apex},
                              {"min_derivative", rep.min_derivative},
                              {"derivative_near_zero", rep.derivative_near_zero},
                              {"min_curvature", rep.min_curvature},
                              {"area_side", rep.obstruction.area_side},
                              {"area_bound", rep.obstruction.area_bound},
                              {"boundary_side", rep.obstruction.boundary_side},
                              {"cartesian_ok", rep.cartesian_ok},
                              {"curvature_ok", rep.curvature_ok},
                              {"monotone_ok", rep.monotone_ok},
                              {"sign_change", rep.sign_change},
                              {"area_ok", rep.area_ok},
                              {"result", rep.pass() ? "PASS" : "FAIL"}};
                if (!rep.pass()) status = kExitCheckFailed;
            }
            if (!out_path.empty()) run.output(out_path, curve_to_json(c));
            if (!svg_path.empty()) {
                const IndexMap m = index_map(c, g.resolution);
                run.output(svg_path, render_svg({{&c, 1.0}}, {.map = &m}));
            }
            print(j);
        } else if (*cmd_flower) {
            run.command = "flower";
            run.config["nested"] = nested;
            flower.samples = g.samples;
            if (!nested) {
                run.config["petals"] = flower.petals;
                run.config["apex"] = flower.apex_radius;
                run.config["inner"] = flower.inner_radius;
            }
            const Curve c = nested ? nested_loop_curve(g.samples) : flower_generate(flower);
            const auto records = self_intersections(c);
            const IndexMap m = index_map(c, g.resolution);
            json idx = json::array();
            for (int v : m.component_index) idx.push_back(v);
            json j = {{"vertices", c.size()},
                      {"crossings", records.size()},
                      {"components", m.component_count()},
                      {"component_indices", idx},
                      {"positively_curved", positively_curved(c)}};
            if (!out_path.empty()) run.output(out_path, curve_to_json(c));
            if (!svg_path.empty()) run.output(svg_path, render_svg({{&c, 1.0}}, {.map = &m}));
            print(j);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        status = exit_code(e.code());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        status = kExitInternal;
    }

    std::string manifest_path = g.manifest;
    if (manifest_path.empty() && !run.outputs.empty()) manifest_path = run.outputs.front() + ".manifest.json";
    if (!manifest_path.empty()) {
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        json args = json::array();
        for (int i = 0; i < argc; ++i) args.push_back(argv[i]);
        json manifest = {{"command", run.command},
                         {"argv", args},
                         {"config", run.config},
                         {"outputs", run.outputs},
                         {"exit_status", status},
                         {"versions", {{"windex", WINDEX_VERSION}, {"compiler", __VERSION__}, {"cplusplus", __cplusplus}}},
                         {"timings_ms", {{"total", ms}}}};
        try {
            write_text(manifest_path, manifest.dump(2) + "\n");
        } catch (const Error& e) {
            std::cerr << "error: " << e.what() << "\n";
            if (status == 0) status = exit_code(e.code());
        }
    }
    return status;
}
