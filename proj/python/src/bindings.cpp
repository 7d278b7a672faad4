#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

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

namespace py = pybind11;
using namespace windex;

namespace {

using P = std::array<double, 2>;

P tup(Vec2 v) { return {v.x, v.y}; }
Vec2 vec(const P& p) { return {p[0], p[1]}; }

std::vector<P> points(const Curve& c) {
    std::vector<P> out;
    out.reserve(c.size());
    for (const Vec2& v : c.vertices()) out.push_back(tup(v));
    return out;
}

Curve make_curve(const std::vector<P>& pts, const std::vector<std::size_t>& corners) {
    std::vector<Vec2> v;
    v.reserve(pts.size());
    for (const P& p : pts) v.push_back(vec(p));
    return Curve(std::move(v), corners);
}

py::dict singularity(const Singularity& s) {
    py::dict d;
    d["param"] = s.param;
    d["point"] = tup(s.point);
    d["t_minus"] = tup(s.t_minus);
    d["t_plus"] = tup(s.t_plus);
    d["delta_t"] = tup(s.delta_t);
    return d;
}

}  // namespace

PYBIND11_MODULE(_windex, m) {
    m.doc() = "Winding numbers, index-weighted Stokes identity and loop cutting for closed plane curves";

    static py::exception<Error> error(m, "WindexError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(error, e.what());
        }
    });

    py::class_<Curve>(m, "Curve")
        .def(py::init(&make_curve), py::arg("vertices"), py::arg("corners") = std::vector<std::size_t>{})
        .def_property_readonly("vertices", &points)
        .def_property_readonly("corners", &Curve::corners)
        .def_property_readonly("length", &Curve::length)
        .def("__len__", &Curve::size)
        .def("reversed", &Curve::reversed)
        .def("resampled", [](const Curve& c, std::size_t n) { return resample_arclength(c, n); })
        .def("to_json", [](const Curve& c) { return curve_to_json(c); })
        .def_static("from_json", [](const std::string& s) { return curve_from_json(s); })
        .def("__repr__", [](const Curve& c) {
            return "<windex.Curve " + std::to_string(c.size()) + " vertices, " + std::to_string(c.corners().size()) +
                   " corners>";
        });

    m.def("circle", [](std::size_t n, double r, bool ccw) { return circle_curve(n, r, {}, ccw); }, py::arg("n") = 2048,
          py::arg("radius") = 1.0, py::arg("ccw") = true);
    m.def("flower", [](int petals, std::size_t n) { return flower_generate({.petals = petals, .samples = n}); },
          py::arg("petals") = 5, py::arg("samples") = 2048);
    m.def("nested_loop_curve", &nested_loop_curve, py::arg("samples") = 2048);
    m.def("lemniscate", &lemniscate_generate, py::arg("a") = 1.0, py::arg("samples") = 4096);
    m.def("fourier_loop", &fourier_loop, py::arg("seed"), py::arg("samples") = 2048, py::arg("harmonics") = 4);
    m.def("orient_positive", &orient_positive);
    m.def("positively_curved", &positively_curved);
    m.def("singularities", [](const Curve& c) {
        py::list out;
        for (const auto& s : singularities_of(c)) out.append(singularity(s));
        return out;
    });

    m.def("self_intersections", [](const Curve& c) {
        py::list out;
        for (const auto& r : self_intersections(c)) {
            py::dict d;
            d["point"] = tup(r.point);
            d["params"] = r.params;
            d["order"] = r.order;
            d["tangential"] = r.tangential;
            out.append(d);
        }
        return out;
    });

    m.def("winding_number", [](const Curve& c, const P& p) { return winding_number(c, vec(p)); });

    m.def(
        "index_map",
        [](const Curve& c, std::size_t resolution) {
            const IndexMap map = index_map(c, resolution);
            py::dict d;
            d["nx"] = map.nx;
            d["ny"] = map.ny;
            d["cell"] = map.cell;
            d["origin"] = tup(map.origin);
            std::vector<std::optional<int>> idx;
            idx.reserve(map.index.size());
            for (int v : map.index) idx.push_back(v == IndexMap::kUnknown ? std::nullopt : std::optional<int>(v));
            d["index"] = idx;
            d["component_index"] = map.component_index;
            d["unbounded"] = map.unbounded;
            return d;
        },
        py::arg("curve"), py::arg("resolution") = 512);

    m.def(
        "verify_stokes",
        [](const Curve& c, const std::string& field, std::size_t resolution) {
            const VectorField V = vector_field(field);
            const IndexMap map = index_map(c, resolution);
            const Quadrature g = lhs_grid(c, V, map);
            const Quadrature k = lhs_components(c, V, map);
            py::dict d;
            d["lhs_grid"] = g.value;
            d["lhs_grid_bound"] = g.bound;
            d["lhs_components"] = k.value;
            d["lhs_components_bound"] = k.bound;
            d["rhs_boundary"] = rhs_boundary(c, V);
            return d;
        },
        py::arg("curve"), py::arg("field") = "x,0", py::arg("resolution") = 512);

    m.def(
        "obstruction",
        [](const Curve& c, const std::string& H, const P& dir, std::size_t resolution) {
            const Obstruction o = obstruction_functional(c, scalar_field(H), normalized(vec(dir)), resolution);
            py::dict d;
            d["area_side"] = o.area_side;
            d["area_bound"] = o.area_bound;
            d["boundary_side"] = o.boundary_side;
            d["tangent_sum"] = o.tangent_sum;
            return d;
        },
        py::arg("curve"), py::arg("H"), py::arg("direction") = P{1.0, 0.0}, py::arg("resolution") = 512);

    m.def(
        "cut",
        [](const Curve& c, const P& dir, std::size_t resolution) {
            RunOptions opt;
            opt.direction = vec(dir);
            opt.resolution = resolution;
            const RunResult r = run(c, opt);
            py::list traces;
            for (const CutTrace& t : r.traces) {
                py::dict d;
                d["iteration"] = t.iteration;
                d["chosen_point"] = tup(t.chosen_point);
                d["s1"] = t.s1;
                d["s2"] = t.s2;
                d["sector_index"] = t.sector_index;
                d["components_before"] = t.components_before;
                d["components_after"] = t.components_after;
                d["scale"] = t.scale;
                d["new_singularity"] = singularity(t.new_singularity);
                traces.append(d);
            }
            py::dict d;
            d["final_curve"] = r.final_curve;
            d["traces"] = traces;
            d["initial_components"] = r.initial_components;
            d["tangent_sum"] = r.tangent_sum;
            d["own_boundary"] = r.own_boundary;
            d["certificate"] = r.certificate;
            d["singularities"] = r.singularities;
            return d;
        },
        py::arg("curve"), py::arg("direction") = P{1.0, 0.0}, py::arg("resolution") = kCutterResolution);

    m.def(
        "integrate",
        [](const std::string& H, const P& start, const P& tangent, double max_length, double step) {
            const ShotResult s = integrate(scalar_field(H), vec(start), vec(tangent), max_length, step, false);
            py::dict d;
            d["closure_defect"] = s.closure_defect;
            d["return_length"] = s.return_length;
            d["steps"] = s.steps;
            return d;
        },
        py::arg("H"), py::arg("start"), py::arg("tangent"), py::arg("max_length"), py::arg("step") = kDefaultStep);

    m.def("lemniscate_curvature", &lemniscate_curvature, py::arg("a"), py::arg("x1"));

    m.def(
        "counterexample_audit",
        [](double a, std::size_t samples) {
            const AuditReport r = counterexample_audit(a, samples);
            py::dict d;
            d["cartesian_residual"] = r.cartesian_residual;
            d["curvature_error"] = r.curvature_error;
            d["c_at_apex"] = r.c_at_apex;
            d["min_derivative"] = r.min_derivative;
            d["min_curvature"] = r.min_curvature;
            d["area_side"] = r.obstruction.area_side;
            d["area_bound"] = r.obstruction.area_bound;
            d["pass"] = r.pass();
            return d;
        },
        py::arg("a") = 1.0, py::arg("samples") = 4096);

    m.def(
        "eval_expr",
        [](const std::string& text, const P& p) -> py::object {
            const auto e = expr::FieldExpr::parse(text);
            if (e.arity() == 1) return py::float_(e.eval_scalar(vec(p)));
            return py::cast(tup(e.eval_vector(vec(p))));
        },
        py::arg("text"), py::arg("point"));
    m.def("format_expr", [](const std::string& text) { return expr::FieldExpr::parse(text).to_string(); });
    m.attr("GRAMMAR") = std::string(expr::kGrammar);
}
