#ifndef MSUM_AST_HPP
#define MSUM_AST_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include "msum/harmonic.hpp"
#include "msum/laurent.hpp"

namespace msum {

/// eps-graded element of the solution algebra: Laurent series (or Laurent
/// polynomial, when exact) in eps with HExpr coefficients.
using EExpr = Laurent<HExpr>;

EExpr eexpr_shift(const EExpr& e, long j);
std::string eexpr_str(const EExpr& e, const std::string& var = "N");

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int col)
        : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                             std::to_string(col) + ": " + msg),
          line(line), col(col) {}
    int line, col;
};

class LowerError : public std::runtime_error {
public:
    explicit LowerError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Surface-syntax expression tree, before canonicalization.
struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    enum class Kind {
        Num,   // value
        Var,   // name (the recurrence variable)
        Eps,
        AltPow, // (-1)^(var+offset); name = argument variable
        Zeta,  // z(zeta_arg)
        Sum,   // S[index](var+offset); name = argument variable
        Ext,   // name(var+offset): external sequence symbol
        Add, Sub, Mul, Div, Neg, // a (, b)
        Pow,   // a ^ expo
    };
    Kind kind;
    Rat value;
    std::string name;    // Var; Ext symbol
    std::string argvar;  // argument variable of AltPow/Sum/Ext
    int zeta_arg = 0;
    HIndex index;
    long offset = 0;
    long expo = 1;
    NodePtr a, b;
    int line = 1, col = 1;
};

bool ast_equal(const NodePtr& a, const NodePtr& b);

/// Parse surface syntax; any identifier may appear, binding is done at
/// lowering time. Throws ParseError with line/column.
NodePtr parse_expr_text(const std::string& text);

/// Print in the surface grammar; parse(print(n)) is structurally identical.
std::string ast_str(const NodePtr& n);

struct LowerCtx {
    std::string var = "N";
    std::optional<long> eps_order; // required for non-terminating eps division
    std::map<std::string, EExpr> externals; // resolved external sequences at argument var
};

/// External sequence names referenced by the tree.
std::set<std::string> external_refs(const NodePtr& n);

/// Lower to the canonical algebra. Throws LowerError on unresolved externals,
/// foreign variables, division by zero or by a non-invertible element.
EExpr lower(const NodePtr& n, const LowerCtx& ctx);

/// Convenience: parse + lower in one step (eps-free, single variable).
HExpr parse_hexpr(const std::string& text, const std::string& var = "N");

} // namespace msum

#endif
