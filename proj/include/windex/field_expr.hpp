#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "windex/vec2.hpp"

namespace windex::expr {

// Grammar (EBNF):
//   field   = sum [ "," sum ] ;
//   sum     = product { ("+" | "-") product } ;
//   product = unary { ("*" | "/") unary } ;
//   unary   = "-" unary | power ;
//   power   = primary [ "^" unary ] ;
//   primary = number | "x" | "y" | func "(" sum [ "," sum ] ")" | "(" sum ")" ;
//   func    = "sqrt" | "abs" | "sign" | "sin" | "cos" | "exp" | "min" | "max" ;
//   number  = digits [ "." digits ] [ ("e" | "E") [ "+" | "-" ] digits ] ;
// "^" is right-associative and binds tighter than unary minus: -x^2 = -(x^2).
inline constexpr std::string_view kGrammar =
    "field   = sum [ \",\" sum ] ;\n"
    "sum     = product { (\"+\" | \"-\") product } ;\n"
    "product = unary { (\"*\" | \"/\") unary } ;\n"
    "unary   = \"-\" unary | power ;\n"
    "power   = primary [ \"^\" unary ] ;\n"
    "primary = number | \"x\" | \"y\" | func \"(\" sum [ \",\" sum ] \")\" | \"(\" sum \")\" ;\n"
    "func    = \"sqrt\" | \"abs\" | \"sign\" | \"sin\" | \"cos\" | \"exp\" | \"min\" | \"max\" ;\n"
    "number  = digits [ \".\" digits ] [ (\"e\" | \"E\") [ \"+\" | \"-\" ] digits ] ;\n";

enum class Kind : std::uint8_t { Number, X, Y, Neg, Add, Sub, Mul, Div, Pow, Sqrt, Abs, Sign, Sin, Cos, Exp, Min, Max };

struct Node {
    Kind kind = Kind::Number;
    double value = 0.0;  // Number only
    int lhs = -1;        // operand / first argument
    int rhs = -1;        // second operand / argument
    std::size_t begin = 0, end = 0;  // source span
};

class FieldExpr {
public:
    // Throws SyntaxError with the byte offset and the expected tokens.
    static FieldExpr parse(std::string_view text);

    const std::string& source() const noexcept { return source_; }
    int arity() const noexcept { return static_cast<int>(roots_.size()); }
    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    const std::vector<int>& roots() const noexcept { return roots_; }

    // Throw DomainError on sqrt of a negative, division by |d| < 1e-300, or a
    // non-finite intermediate result.
    double eval_scalar(Vec2 p) const;
    Vec2 eval_vector(Vec2 p) const;
    double eval_component(int component, Vec2 p) const;

    // Minimal-parenthesis rendering that parses back to the same tree.
    std::string to_string() const;

private:
    struct Instr {
        Kind kind;
        double value;
        int node;
    };

    std::string source_;
    std::vector<Node> nodes_;
    std::vector<int> roots_;
    std::vector<std::vector<Instr>> programs_;
    std::vector<int> depth_;

    void compile();
};

bool structurally_equal(const FieldExpr& a, const FieldExpr& b);

}  // namespace windex::expr
