#pragma once

// Random expression text from the field grammar, and a reference evaluator
// built on the shunting-yard algorithm. Shared by the unit and acceptance
// tests.

#include <cctype>
#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "windex/error.hpp"
#include "windex/field_expr.hpp"

namespace oracle {

class ExprGen {
public:
    explicit ExprGen(std::uint64_t seed) : rng_(seed) {}

    std::string operator()(int depth = 4) { return sum(depth); }

private:
    std::mt19937_64 rng_;

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
    std::string sp() { return pick(3) == 0 ? " " : ""; }

    std::string number() {
        static const char* kNumbers[] = {"0.5", "1", "2", "3", "0.25", "1.5", "7", "1e-1", "2.5E+0", "10", "0.125"};
        return kNumbers[pick(static_cast<int>(std::size(kNumbers)))];
    }

    std::string atom() {
        switch (pick(4)) {
            case 0: return "x";
            case 1: return "y";
            default: return number();
        }
    }

    std::string sum(int d) {
        if (d <= 0) return atom();
        std::string s = product(d - 1);
        for (int k = pick(3); k > 0; --k) s += sp() + (pick(2) ? "+" : "-") + sp() + product(d - 1);
        return s;
    }
    std::string product(int d) {
        std::string s = unary(d);
        for (int k = pick(3); k > 0; --k) s += sp() + (pick(2) ? "*" : "/") + sp() + unary(d);
        return s;
    }
    std::string unary(int d) { return pick(5) == 0 ? "-" + sp() + unary(d) : power(d); }
    std::string power(int d) {
        std::string s = primary(d);
        if (pick(4) == 0) s += sp() + "^" + sp() + (pick(3) == 0 ? "-" + primary(0) : primary(d > 0 ? d - 1 : 0));
        return s;
    }
    std::string primary(int d) {
        if (d <= 0) return atom();
        switch (pick(6)) {
            case 0: return "(" + sp() + sum(d - 1) + sp() + ")";
            case 1: {
                static const char* kUnary[] = {"sqrt", "abs", "sign", "sin", "cos", "exp"};
                return std::string(kUnary[pick(6)]) + "(" + sum(d - 1) + ")";
            }
            case 2: return std::string(pick(2) ? "min" : "max") + "(" + sum(d - 1) + "," + sp() + sum(d - 1) + ")";
            default: return atom();
        }
    }
};

// Evaluates `text` at (x, y). Returns nullopt where the expression leaves its
// domain: sqrt of a negative, division by |d| < 1e-300, or a non-finite value.
inline std::optional<double> shunting_yard_eval(const std::string& text, double x, double y) {
    struct Tok {
        enum Type { Num, Op, Func, LParen, RParen, Comma } type;
        std::string s;
        double v = 0.0;
    };
    std::vector<Tok> toks;
    for (std::size_t i = 0; i < text.size();) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t used = 0;
            const double v = std::stod(text.substr(i), &used);
            toks.push_back({Tok::Num, "", v});
            i += used;
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isalpha(static_cast<unsigned char>(text[j]))) ++j;
            const std::string name = text.substr(i, j - i);
            if (name == "x") toks.push_back({Tok::Num, "", x});
            else if (name == "y") toks.push_back({Tok::Num, "", y});
            else toks.push_back({Tok::Func, name});
            i = j;
        } else if (c == '(') {
            toks.push_back({Tok::LParen, "("}), ++i;
        } else if (c == ')') {
            toks.push_back({Tok::RParen, ")"}), ++i;
        } else if (c == ',') {
            toks.push_back({Tok::Comma, ","}), ++i;
        } else {
            toks.push_back({Tok::Op, std::string(1, c)}), ++i;
        }
    }

    // "~" is unary minus. Precedence: ^ 4 (right), ~ 3 (prefix), * / 2, + - 1.
    auto prec = [](const std::string& op) {
        if (op == "^") return 4;
        if (op == "~") return 3;
        if (op == "*" || op == "/") return 2;
        return 1;
    };
    std::vector<Tok> out, ops;
    bool expect_operand = true;
    for (const Tok& t : toks) {
        switch (t.type) {
            case Tok::Num:
                out.push_back(t);
                expect_operand = false;
                break;
            case Tok::Func:
                ops.push_back(t);
                break;
            case Tok::LParen:
                ops.push_back(t);
                expect_operand = true;
                break;
            case Tok::Comma:
                while (ops.back().type != Tok::LParen) out.push_back(ops.back()), ops.pop_back();
                expect_operand = true;
                break;
            case Tok::RParen:
                while (ops.back().type != Tok::LParen) out.push_back(ops.back()), ops.pop_back();
                ops.pop_back();
                if (!ops.empty() && ops.back().type == Tok::Func) out.push_back(ops.back()), ops.pop_back();
                expect_operand = false;
                break;
            case Tok::Op: {
                if (expect_operand && t.s == "-") {
                    ops.push_back({Tok::Op, "~"});
                    break;
                }
                const int p = prec(t.s);
                const bool right = t.s == "^";
                while (!ops.empty() && ops.back().type == Tok::Op) {
                    const int q = prec(ops.back().s);
                    if (q > p || (q == p && !right)) out.push_back(ops.back()), ops.pop_back();
                    else break;
                }
                ops.push_back(t);
                expect_operand = true;
                break;
            }
        }
    }
    while (!ops.empty()) out.push_back(ops.back()), ops.pop_back();

    std::vector<double> st;
    auto pop = [&] {
        const double v = st.back();
        st.pop_back();
        return v;
    };
    for (const Tok& t : out) {
        double r = 0.0;
        if (t.type == Tok::Num) {
            r = t.v;
        } else if (t.type == Tok::Op && t.s == "~") {
            r = -pop();
        } else if (t.type == Tok::Op) {
            const double b = pop(), a = pop();
            if (t.s == "+") r = a + b;
            else if (t.s == "-") r = a - b;
            else if (t.s == "*") r = a * b;
            else if (t.s == "/") {
                if (std::fabs(b) < 1e-300) return std::nullopt;
                r = a / b;
            } else r = std::pow(a, b);
        } else {
            if (t.s == "min" || t.s == "max") {
                const double b = pop(), a = pop();
                r = t.s == "min" ? std::fmin(a, b) : std::fmax(a, b);
            } else {
                const double a = pop();
                if (t.s == "sqrt") {
                    if (a < 0) return std::nullopt;
                    r = std::sqrt(a);
                } else if (t.s == "abs") r = std::fabs(a);
                else if (t.s == "sign") r = a > 0 ? 1.0 : (a < 0 ? -1.0 : 0.0);
                else if (t.s == "sin") r = std::sin(a);
                else if (t.s == "cos") r = std::cos(a);
                else if (t.s == "exp") r = std::exp(a);
                else throw std::logic_error("unknown function " + t.s);
            }
        }
        if (!std::isfinite(r)) return std::nullopt;
        st.push_back(r);
    }
    return st.back();
}

struct PropertyResult {
    int cases = 0;
    int failures = 0;
    std::string first_failure;
};

// parse(print(parse(t))) must equal parse(t) structurally, and printing must
// be a fixed point.
inline PropertyResult round_trip_property(std::uint64_t seed, int count) {
    ExprGen gen(seed);
    PropertyResult r;
    for (; r.cases < count; ++r.cases) {
        const std::string text = gen();
        const auto a = windex::expr::FieldExpr::parse(text);
        const std::string printed = a.to_string();
        const auto b = windex::expr::FieldExpr::parse(printed);
        if (!windex::expr::structurally_equal(a, b) || b.to_string() != printed) {
            if (r.failures++ == 0) r.first_failure = text + "  ->  " + printed;
        }
    }
    return r;
}

// The parser and the shunting-yard reference agree to 1e-12 relative on
// expressions that both can evaluate; domain failures must coincide.
// Expressions outside the domain are redrawn so `count` comparisons are made.
inline PropertyResult precedence_property(std::uint64_t seed, int count) {
    ExprGen gen(seed);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    PropertyResult r;
    for (int attempts = 0; r.cases < count && attempts < 100 * count; ++attempts) {
        const std::string text = gen();
        const double x = u(rng), y = u(rng);
        const auto expected = shunting_yard_eval(text, x, y);
        std::optional<double> got;
        try {
            got = windex::expr::FieldExpr::parse(text).eval_scalar({x, y});
        } catch (const windex::DomainError&) {
        }
        if (!expected && !got) continue;
        ++r.cases;
        const bool ok = expected && got && std::fabs(*got - *expected) <= 1e-12 * std::max(1.0, std::fabs(*expected));
        if (!ok && r.failures++ == 0) {
            r.first_failure = text + " at (" + std::to_string(x) + ", " + std::to_string(y) + "): got " +
                              (got ? std::to_string(*got) : "domain error") + ", expected " +
                              (expected ? std::to_string(*expected) : "domain error");
        }
    }
    return r;
}

}  // namespace oracle
