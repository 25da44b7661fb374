#include "msum/ast.hpp"

#include <sstream>

#include "msum/printing.hpp"

namespace msum {

EExpr eexpr_shift(const EExpr& e, long j) {
    if (e.is_zero() || j == 0) return e;
    std::vector<HExpr> c;
    for (long x = e.lead(); x <= e.high(); ++x) c.push_back(e.coeff(x).shifted(j));
    return EExpr(e.lead(), std::move(c), e.trunc());
}

std::string eexpr_str(const EExpr& e, const std::string& var) {
    if (e.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long x = e.lead(); x <= e.high(); ++x) {
        const HExpr& c = e.coeff(x);
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        std::string body = c.str(var);
        if (x == 0) {
            os << body;
        } else {
            std::string ep = x == 1 ? "eps" : "eps^" + std::to_string(x);
            if (body == "1") os << ep;
            else if (c.terms().size() == 1) os << ep << "*" << body;
            else os << ep << "*(" << body << ")";
        }
    }
    if (first) return "0";
    return os.str();
}

static EExpr pow_eexpr(EExpr b, long e, const LowerCtx& ctx) {
    if (e == 0) return EExpr(HExpr(1));
    bool invert = e < 0;
    if (invert) e = -e;
    EExpr r(HExpr(1));
    for (long i = 0; i < e; ++i) r = r * b;
    if (!invert) return r;
    if (r.is_zero()) throw std::domain_error("inverse of zero");
    // exact multi-term eps divisors have no terminating exact inverse
    if (ctx.eps_order && r.is_exact() && r.high() > r.lead())
        r = r.truncated(*ctx.eps_order + r.lead());
    return EExpr(HExpr(1)) / r;
}

static EExpr lower_node(const NodePtr& n, const LowerCtx& ctx) {
    switch (n->kind) {
    case Node::Kind::Num:
        return EExpr(HExpr(n->value));
    case Node::Kind::Var:
        if (n->name != ctx.var)
            throw LowerError("unknown variable '" + n->name + "' (expected '" + ctx.var + "')");
        return EExpr(HExpr::rational(RatFuncQ::x()));
    case Node::Kind::Eps:
        return EExpr::eps(1);
    case Node::Kind::AltPow: {
        if (n->argvar != ctx.var)
            throw LowerError("unknown variable '" + n->argvar + "' in (-1)^ argument");
        HExpr a = HExpr::alt_sign();
        if (n->offset % 2 != 0) a = -a;
        return EExpr(std::move(a));
    }
    case Node::Kind::Zeta:
        return EExpr(HExpr::zeta(zeta_mon({n->zeta_arg})));
    case Node::Kind::Sum:
        if (n->argvar != ctx.var)
            throw LowerError("unknown variable '" + n->argvar + "' in sum argument");
        return EExpr(HExpr::harmonic(n->index).shifted(n->offset));
    case Node::Kind::Ext: {
        auto it = ctx.externals.find(n->name);
        if (it == ctx.externals.end())
            throw LowerError("unresolved external symbol '" + n->name + "'");
        if (n->argvar != ctx.var)
            throw LowerError("unknown variable '" + n->argvar + "' in argument of '" +
                             n->name + "'");
        return eexpr_shift(it->second, n->offset);
    }
    case Node::Kind::Add:
        return lower_node(n->a, ctx) + lower_node(n->b, ctx);
    case Node::Kind::Sub:
        return lower_node(n->a, ctx) - lower_node(n->b, ctx);
    case Node::Kind::Neg:
        return -lower_node(n->a, ctx);
    case Node::Kind::Mul:
        return lower_node(n->a, ctx) * lower_node(n->b, ctx);
    case Node::Kind::Div: {
        EExpr a = lower_node(n->a, ctx);
        EExpr b = lower_node(n->b, ctx);
        if (b.is_zero())
            throw ParseError("division by zero", n->line, n->col);
        try {
            if (!b.is_exact() || b.high() == b.lead()) return a / b;
            // eps-polynomial divisor: exact division may not terminate
            if (ctx.eps_order) return a / b.truncated(*ctx.eps_order + b.lead());
            return a / b;
        } catch (const std::domain_error& e) {
            throw LowerError(std::string(e.what()) + " (division at " +
                             std::to_string(n->line) + ":" + std::to_string(n->col) + ")");
        }
    }
    case Node::Kind::Pow: {
        EExpr b = lower_node(n->a, ctx);
        try {
            return pow_eexpr(std::move(b), n->expo, ctx);
        } catch (const std::domain_error& e) {
            throw LowerError(std::string(e.what()) + " (power at " +
                             std::to_string(n->line) + ":" + std::to_string(n->col) + ")");
        }
    }
    }
    throw LowerError("unhandled node kind");
}

EExpr lower(const NodePtr& n, const LowerCtx& ctx) { return lower_node(n, ctx); }

HExpr parse_hexpr(const std::string& text, const std::string& var) {
    LowerCtx ctx;
    ctx.var = var;
    EExpr e = lower(parse_expr_text(text), ctx);
    if (e.is_zero()) return HExpr();
    if (!e.is_exact() || e.lead() != 0 || e.high() != 0)
        throw LowerError("expression has eps-dependence where none is allowed");
    return e.coeff(0);
}

} // namespace msum
