#include "windex/field_expr.hpp"

#include <charconv>
#include <cmath>
#include <functional>

#include "windex/error.hpp"

namespace windex::expr {

namespace {

struct FunctionName {
    std::string_view name;
    Kind kind;
    int args;
};

constexpr FunctionName kFunctions[] = {
    {"sqrt", Kind::Sqrt, 1}, {"abs", Kind::Abs, 1}, {"sign", Kind::Sign, 1}, {"sin", Kind::Sin, 1},
    {"cos", Kind::Cos, 1},   {"exp", Kind::Exp, 1}, {"min", Kind::Min, 2},   {"max", Kind::Max, 2},
};

const std::vector<std::string> kOperandStart = {"number", "x", "y", "function", "(", "-"};

class Parser {
public:
    Parser(std::string_view text, std::vector<Node>& nodes) : text_(text), nodes_(nodes) {}

    std::vector<int> field() {
        std::vector<int> roots{sum()};
        skip();
        if (peek() == ',') {
            ++pos_;
            roots.push_back(sum());
        }
        skip();
        if (pos_ != text_.size()) {
            std::vector<std::string> expected = {"+", "-", "*", "/", "^", "end of input"};
            if (roots.size() == 1) expected.insert(expected.end() - 1, ",");
            fail(expected, "unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return roots;
    }

private:
    std::string_view text_;
    std::vector<Node>& nodes_;
    std::size_t pos_ = 0;

    void skip() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r')) ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    [[noreturn]] void fail(const std::vector<std::string>& expected, const std::string& what) const {
        std::string msg = "syntax error at offset " + std::to_string(pos_) + ": " + what + "; expected one of";
        for (const auto& e : expected) msg += " '" + e + "'";
        throw SyntaxError(pos_, expected, msg);
    }

    int add(Kind kind, int lhs, int rhs, std::size_t begin, double value = 0.0) {
        nodes_.push_back({kind, value, lhs, rhs, begin, pos_});
        return static_cast<int>(nodes_.size()) - 1;
    }

    int sum() {
        skip();
        const std::size_t begin = pos_;
        int lhs = product();
        for (;;) {
            skip();
            const char c = peek();
            if (c != '+' && c != '-') return lhs;
            ++pos_;
            const int rhs = product();
            lhs = add(c == '+' ? Kind::Add : Kind::Sub, lhs, rhs, begin);
        }
    }

    int product() {
        skip();
        const std::size_t begin = pos_;
        int lhs = unary();
        for (;;) {
            skip();
            const char c = peek();
            if (c != '*' && c != '/') return lhs;
            ++pos_;
            const int rhs = unary();
            lhs = add(c == '*' ? Kind::Mul : Kind::Div, lhs, rhs, begin);
        }
    }

    int unary() {
        skip();
        const std::size_t begin = pos_;
        if (peek() == '-') {
            ++pos_;
            const int operand = unary();
            return add(Kind::Neg, operand, -1, begin);
        }
        return power();
    }

    int power() {
        skip();
        const std::size_t begin = pos_;
        const int base = primary();
        skip();
        if (peek() != '^') return base;
        ++pos_;
        const int exponent = unary();
        return add(Kind::Pow, base, exponent, begin);
    }

    int primary() {
        skip();
        const char c = peek();
        if (c == '(') {
            ++pos_;
            const int inner = sum();
            skip();
            if (peek() != ')') fail({")", "+", "-", "*", "/", "^"}, "unclosed parenthesis");
            ++pos_;
            return inner;
        }
        if ((c >= '0' && c <= '9') || c == '.') return number();
        if (c >= 'a' && c <= 'z') return identifier();
        if (c == '\0') fail(kOperandStart, "unexpected end of input");
        fail(kOperandStart, "unexpected '" + std::string(1, c) + "'");
    }

    int number() {
        const std::size_t begin = pos_;
        auto digits = [&] {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
            return pos_ - start;
        };
        std::size_t mantissa = digits();
        if (peek() == '.') {
            ++pos_;
            mantissa += digits();
        }
        if (mantissa == 0) fail({"digit"}, "malformed number");
        if (peek() == 'e' || peek() == 'E') {
            ++pos_;
            if (peek() == '+' || peek() == '-') ++pos_;
            if (digits() == 0) fail({"digit"}, "malformed exponent");
        }
        double value = 0.0;
        const auto res = std::from_chars(text_.data() + begin, text_.data() + pos_, value);
        if (res.ec != std::errc() || !std::isfinite(value)) {
            pos_ = begin;
            fail({"finite number"}, "number out of range");
        }
        return add(Kind::Number, -1, -1, begin, value);
    }

    int identifier() {
        const std::size_t begin = pos_;
        while (pos_ < text_.size() && text_[pos_] >= 'a' && text_[pos_] <= 'z') ++pos_;
        const std::string_view name = text_.substr(begin, pos_ - begin);
        if (name == "x") return add(Kind::X, -1, -1, begin);
        if (name == "y") return add(Kind::Y, -1, -1, begin);
        for (const FunctionName& f : kFunctions) {
            if (f.name != name) continue;
            skip();
            if (peek() != '(') fail({"("}, "function name must be followed by '('");
            ++pos_;
            const int first = sum();
            int second = -1;
            skip();
            if (f.args == 2) {
                if (peek() != ',') fail({","}, std::string(name) + " takes two arguments");
                ++pos_;
                second = sum();
                skip();
            }
            if (peek() != ')') fail({")", "+", "-", "*", "/", "^"}, "unclosed argument list");
            ++pos_;
            return add(f.kind, first, second, begin);
        }
        pos_ = begin;
        fail({"x", "y", "sqrt", "abs", "sign", "sin", "cos", "exp", "min", "max"},
             "unknown name '" + std::string(name) + "'");
    }
};

int level(Kind k) {
    switch (k) {
        case Kind::Add:
        case Kind::Sub: return 1;
        case Kind::Mul:
        case Kind::Div: return 2;
        case Kind::Neg: return 3;
        case Kind::Pow: return 4;
        default: return 5;
    }
}

std::string_view function_name(Kind k) {
    for (const FunctionName& f : kFunctions) {
        if (f.kind == k) return f.name;
    }
    return {};
}

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string render(const std::vector<Node>& nodes, int id, int min_level) {
    const Node& n = nodes[static_cast<std::size_t>(id)];
    std::string s;
    switch (n.kind) {
        case Kind::Number: s = format_number(n.value); break;
        case Kind::X: s = "x"; break;
        case Kind::Y: s = "y"; break;
        case Kind::Neg: s = "-" + render(nodes, n.lhs, 3); break;
        case Kind::Add: s = render(nodes, n.lhs, 1) + " + " + render(nodes, n.rhs, 2); break;
        case Kind::Sub: s = render(nodes, n.lhs, 1) + " - " + render(nodes, n.rhs, 2); break;
        case Kind::Mul: s = render(nodes, n.lhs, 2) + " * " + render(nodes, n.rhs, 3); break;
        case Kind::Div: s = render(nodes, n.lhs, 2) + " / " + render(nodes, n.rhs, 3); break;
        case Kind::Pow: s = render(nodes, n.lhs, 5) + "^" + render(nodes, n.rhs, 3); break;
        default:
            s = std::string(function_name(n.kind)) + "(" + render(nodes, n.lhs, 1);
            if (n.rhs >= 0) s += ", " + render(nodes, n.rhs, 1);
            s += ")";
    }
    return level(n.kind) < min_level ? "(" + s + ")" : s;
}

bool same_tree(const std::vector<Node>& a, int ia, const std::vector<Node>& b, int ib) {
    if ((ia < 0) != (ib < 0)) return false;
    if (ia < 0) return true;
    const Node& x = a[static_cast<std::size_t>(ia)];
    const Node& y = b[static_cast<std::size_t>(ib)];
    if (x.kind != y.kind) return false;
    if (x.kind == Kind::Number && x.value != y.value) return false;
    return same_tree(a, x.lhs, b, y.lhs) && same_tree(a, x.rhs, b, y.rhs);
}

}  // namespace

FieldExpr FieldExpr::parse(std::string_view text) {
    FieldExpr e;
    e.source_ = std::string(text);
    Parser parser(e.source_, e.nodes_);
    e.roots_ = parser.field();
    e.compile();
    return e;
}

void FieldExpr::compile() {
    programs_.clear();
    depth_.clear();
    for (int root : roots_) {
        std::vector<Instr> prog;
        int depth = 0, max_depth = 0;
        std::function<void(int)> emit = [&](int id) {
            const Node& n = nodes_[static_cast<std::size_t>(id)];
            if (n.lhs >= 0) emit(n.lhs);
            if (n.rhs >= 0) emit(n.rhs);
            prog.push_back({n.kind, n.value, id});
            const int pops = (n.lhs >= 0) + (n.rhs >= 0);
            depth += 1 - pops;
            max_depth = std::max(max_depth, depth);
        };
        emit(root);
        programs_.push_back(std::move(prog));
        depth_.push_back(max_depth);
    }
}

double FieldExpr::eval_component(int component, Vec2 p) const {
    const auto& prog = programs_.at(static_cast<std::size_t>(component));
    std::array<double, 64> fixed{};
    std::vector<double> heap;
    double* st = fixed.data();
    if (depth_[static_cast<std::size_t>(component)] > 64) {
        heap.resize(static_cast<std::size_t>(depth_[static_cast<std::size_t>(component)]));
        st = heap.data();
    }
    int top = -1;
    auto domain = [&](const Instr& in, const char* what) {
        const Node& n = nodes_[static_cast<std::size_t>(in.node)];
        throw DomainError(n.begin, n.end,
                          std::string(what) + " in '" + source_.substr(n.begin, n.end - n.begin) + "'");
    };
    for (const Instr& in : prog) {
        double r = 0.0;
        switch (in.kind) {
            case Kind::Number: st[++top] = in.value; continue;
            case Kind::X: st[++top] = p.x; continue;
            case Kind::Y: st[++top] = p.y; continue;
            case Kind::Neg: st[top] = -st[top]; continue;
            case Kind::Add: r = st[top - 1] + st[top]; --top; break;
            case Kind::Sub: r = st[top - 1] - st[top]; --top; break;
            case Kind::Mul: r = st[top - 1] * st[top]; --top; break;
            case Kind::Div:
                if (std::fabs(st[top]) < 1e-300) domain(in, "division by zero");
                r = st[top - 1] / st[top];
                --top;
                break;
            case Kind::Pow: r = std::pow(st[top - 1], st[top]); --top; break;
            case Kind::Min: r = std::fmin(st[top - 1], st[top]); --top; break;
            case Kind::Max: r = std::fmax(st[top - 1], st[top]); --top; break;
            case Kind::Sqrt:
                if (st[top] < 0.0) domain(in, "square root of a negative number");
                r = std::sqrt(st[top]);
                break;
            case Kind::Abs: r = std::fabs(st[top]); break;
            case Kind::Sign: r = st[top] > 0.0 ? 1.0 : (st[top] < 0.0 ? -1.0 : 0.0); break;
            case Kind::Sin: r = std::sin(st[top]); break;
            case Kind::Cos: r = std::cos(st[top]); break;
            case Kind::Exp: r = std::exp(st[top]); break;
        }
        if (!std::isfinite(r)) domain(in, "non-finite value");
        st[top] = r;
    }
    return st[0];
}

double FieldExpr::eval_scalar(Vec2 p) const {
    if (arity() != 1) throw Error(ErrorCode::InvalidInput, "expected a scalar expression: " + source_);
    return eval_component(0, p);
}

Vec2 FieldExpr::eval_vector(Vec2 p) const {
    if (arity() != 2) throw Error(ErrorCode::InvalidInput, "expected a vector expression 'f, g': " + source_);
    return {eval_component(0, p), eval_component(1, p)};
}

std::string FieldExpr::to_string() const {
    std::string s = render(nodes_, roots_[0], 1);
    if (roots_.size() > 1) s += ", " + render(nodes_, roots_[1], 1);
    return s;
}

bool structurally_equal(const FieldExpr& a, const FieldExpr& b) {
    if (a.arity() != b.arity()) return false;
    for (int k = 0; k < a.arity(); ++k) {
        if (!same_tree(a.nodes(), a.roots()[static_cast<std::size_t>(k)], b.nodes(), b.roots()[static_cast<std::size_t>(k)])) {
            return false;
        }
    }
    return true;
}

}  // namespace windex::expr
