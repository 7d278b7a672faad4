#include "windex/plane_field.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "windex/error.hpp"

namespace windex {

namespace {

std::string strip(std::string_view text) {
    std::string s;
    for (char c : text) {
        if (c != ' ' && c != '\t') s.push_back(c);
    }
    return s;
}

}  // namespace

Vec2 ScalarField::gradient(Vec2 p, double h) const {
    if (grad) return grad(p);
    const double gx = (eval(p + Vec2{h, 0}) - eval(p - Vec2{h, 0})) / (2.0 * h);
    const double gy = (eval(p + Vec2{0, h}) - eval(p - Vec2{0, h})) / (2.0 * h);
    return {gx, gy};
}

double VectorField::divergence(Vec2 p, double h) const {
    if (div) return div(p);
    const double dx = (eval(p + Vec2{h, 0}).x - eval(p - Vec2{h, 0}).x) / (2.0 * h);
    const double dy = (eval(p + Vec2{0, h}).y - eval(p - Vec2{0, h}).y) / (2.0 * h);
    return dx + dy;
}

ScalarField scalar_field(std::string_view text) {
    const std::string key = strip(text);
    auto parsed = std::make_shared<expr::FieldExpr>(expr::FieldExpr::parse(text));
    if (parsed->arity() != 1) throw Error(ErrorCode::InvalidInput, "expected a scalar field, got: " + std::string(text));
    ScalarField f;
    f.provenance = std::string(text);
    f.eval = [parsed](Vec2 p) { return parsed->eval_component(0, p); };
    if (key == "1+x/10") f.grad = [](Vec2) { return Vec2{0.1, 0.0}; };
    else if (key == "exp(x)") f.grad = [](Vec2 p) { return Vec2{std::exp(p.x), 0.0}; };
    else if (key == "2+x") f.grad = [](Vec2) { return Vec2{1.0, 0.0}; };
    else if (parsed->nodes().size() == 1 && parsed->nodes()[0].kind == expr::Kind::Number) {
        f.grad = [](Vec2) { return Vec2{}; };
    }
    return f;
}

VectorField vector_field(std::string_view text) {
    const std::string key = strip(text);
    auto parsed = std::make_shared<expr::FieldExpr>(expr::FieldExpr::parse(text));
    if (parsed->arity() != 2) {
        throw Error(ErrorCode::InvalidInput, "expected a vector field 'f, g', got: " + std::string(text));
    }
    VectorField f;
    f.provenance = std::string(text);
    f.eval = [parsed](Vec2 p) { return Vec2{parsed->eval_component(0, p), parsed->eval_component(1, p)}; };
    if (key == "x,0" || key == "0,y") f.div = [](Vec2) { return 1.0; };
    else if (key == "x^2,x*y") f.div = [](Vec2 p) { return 3.0 * p.x; };
    else if (key == "sin(x),cos(y)") f.div = [](Vec2 p) { return std::cos(p.x) - std::sin(p.y); };
    else {
        const auto& nodes = parsed->nodes();
        const auto& roots = parsed->roots();
        const bool constant = std::all_of(roots.begin(), roots.end(), [&](int r) {
            return nodes[static_cast<std::size_t>(r)].kind == expr::Kind::Number;
        });
        if (constant) f.div = [](Vec2) { return 0.0; };
    }
    return f;
}

ScalarField constant_scalar(double c) {
    return {std::to_string(c), [c](Vec2) { return c; }, [](Vec2) { return Vec2{}; }};
}

VectorField constant_vector(Vec2 c) {
    return {std::to_string(c.x) + "," + std::to_string(c.y), [c](Vec2) { return c; }, [](Vec2) { return 0.0; }};
}

VectorField scaled_direction(const ScalarField& H, Vec2 e, double h) {
    VectorField v;
    v.provenance = "(" + H.provenance + ") * e";
    v.eval = [H, e](Vec2 p) { return e * H(p); };
    v.div = [H, e, h](Vec2 p) { return dot(H.gradient(p, h), e); };
    return v;
}

Vec2 parse_direction(std::string_view text) {
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) throw Error(ErrorCode::InvalidInput, "direction must be 'a,b'");
    auto number = [&](std::string_view part) {
        const std::string s = strip(part);
        double v = 0.0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
            throw Error(ErrorCode::InvalidInput, "bad direction component '" + s + "'");
        }
        return v;
    };
    const Vec2 d{number(text.substr(0, comma)), number(text.substr(comma + 1))};
    if (!(norm(d) > 0.0)) throw Error(ErrorCode::InvalidInput, "direction must be non-zero");
    return normalized(d);
}

}  // namespace windex
