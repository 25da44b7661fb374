#include "msum/recurrence.hpp"

#include <fstream>
#include <sstream>

namespace msum {

namespace {

bool line_continues(const std::string& s, int paren_depth) {
    if (paren_depth > 0) return true;
    for (auto it = s.rbegin(); it != s.rend(); ++it) {
        if (std::isspace((unsigned char)*it)) continue;
        return std::string("+-*/^=(,").find(*it) != std::string::npos;
    }
    return false;
}

// Logical lines: comments stripped, physical lines joined while parentheses
// are unbalanced or the line ends in an operator.
std::vector<std::string> logical_lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string phys, acc;
    int depth = 0;
    while (std::getline(in, phys)) {
        auto hash = phys.find('#');
        if (hash != std::string::npos) phys.erase(hash);
        for (char c : phys) {
            if (c == '(' || c == '[') ++depth;
            if (c == ')' || c == ']') --depth;
        }
        acc += phys;
        if (line_continues(acc, depth)) {
            acc += " ";
            continue;
        }
        std::string trimmed = acc;
        trimmed.erase(0, trimmed.find_first_not_of(" \t"));
        trimmed.erase(trimmed.find_last_not_of(" \t") + 1);
        if (!trimmed.empty()) out.push_back(trimmed);
        acc.clear();
    }
    if (!acc.empty()) {
        acc.erase(0, acc.find_first_not_of(" \t"));
        acc.erase(acc.find_last_not_of(" \t") + 1);
        if (!acc.empty()) out.push_back(acc);
    }
    return out;
}

[[noreturn]] void bad(const std::string& msg) { throw ParseError(msg, 0, 0); }

} // namespace

RecurrenceFile parse_recurrence_text(const std::string& text,
                                     const std::map<std::string, EExpr>& externals) {
    RecurrenceFile f;
    Recurrence& rec = f.rec;
    std::map<int, NodePtr> coeffs;
    bool have_order = false, have_rhs = false;

    auto lines = logical_lines(text);
    for (std::size_t li = 0; li < lines.size(); ++li) {
        const std::string& ln = lines[li];
        std::istringstream ls(ln);
        std::string key;
        ls >> key;
        if (key == "var") {
            ls >> rec.var;
            if (rec.var.empty()) bad("var: missing variable name");
        } else if (key == "order") {
            if (!(ls >> rec.order) || rec.order < 1) bad("order: positive integer required");
            have_order = true;
        } else if (key == "field") {
            std::string k;
            ls >> k;
            if (k == "Q") rec.field = FieldKind::Q;
            else if (k == "eps") rec.field = FieldKind::Eps;
            else if (k == "n") rec.field = FieldKind::RatN;
            else bad("field: expected Q, eps, or n");
        } else if (key == "eps-order") {
            long v;
            if (!(ls >> v)) bad("eps-order: integer required");
            rec.eps_order = v;
        } else if (key.rfind("coeff[", 0) == 0) {
            auto close = key.find(']');
            if (close == std::string::npos) bad("coeff: expected coeff[i] = <expr>");
            int idx = std::stoi(key.substr(6, close - 6));
            auto eq = ln.find('=');
            if (eq == std::string::npos) bad("coeff: missing '='");
            coeffs[idx] = parse_expr_text(ln.substr(eq + 1));
        } else if (key == "rhs") {
            auto eq = ln.find('=');
            if (eq == std::string::npos) bad("rhs: missing '='");
            rec.rhs_ast = parse_expr_text(ln.substr(eq + 1));
            have_rhs = true;
        } else if (key == "ics") {
            if (ln.find('{') == std::string::npos) bad("ics: expected '{'");
            for (;;) {
                if (++li >= lines.size()) bad("ics: missing '}'");
                const std::string& entry = lines[li];
                if (entry == "}") break;
                auto colon = entry.find(':');
                if (colon == std::string::npos) bad("ics: expected 'N: <expr>'");
                long at = std::stol(entry.substr(0, colon));
                f.ic_asts[at] = parse_expr_text(entry.substr(colon + 1));
            }
        } else {
            bad("unrecognized directive '" + key + "'");
        }
    }

    if (!have_order) bad("missing 'order'");
    if (coeffs.size() != (std::size_t)rec.order + 1)
        bad("expected coefficients coeff[0]..coeff[" + std::to_string(rec.order) + "]");
    if (!have_rhs) bad("missing 'rhs'");

    LowerCtx ctx;
    ctx.var = rec.var;
    ctx.eps_order = rec.eps_order;
    for (int i = 0; i <= rec.order; ++i) {
        auto it = coeffs.find(i);
        if (it == coeffs.end()) bad("missing coeff[" + std::to_string(i) + "]");
        if (!external_refs(it->second).empty())
            bad("coeff[" + std::to_string(i) + "]: external symbols not allowed");
        EExpr c = lower(it->second, ctx);
        for (long x = c.is_zero() ? 1 : c.lead(); x <= (c.is_zero() ? 0 : c.high()); ++x)
            if (!c.coeff(x).as_rational())
                bad("coeff[" + std::to_string(i) + "]: must be a rational function");
        rec.coeffs.push_back(c);
        f.coeff_asts.push_back(it->second);
    }
    if (rec.coeffs.front().is_zero() || rec.coeffs.back().is_zero())
        bad("coeff[0] and coeff[" + std::to_string(rec.order) + "] must be nonzero");

    rec.rhs_externals = external_refs(rec.rhs_ast);
    bool resolvable = true;
    for (const auto& name : rec.rhs_externals) resolvable = resolvable && externals.count(name);
    if (resolvable) {
        LowerCtx rctx = ctx;
        rctx.externals = externals;
        rec.rhs = lower(rec.rhs_ast, rctx);
        rec.rhs_resolved = true;
    }

    for (const auto& [at, ast] : f.ic_asts) {
        if (!external_refs(ast).empty()) bad("ics: external symbols not allowed");
        EExpr v = lower(ast, ctx);
        if (v.is_zero()) {
            f.ics[at] = ZetaValue();
        } else {
            if (v.lead() != 0 || v.high() != 0) bad("ics: eps-dependence not supported");
            f.ics[at] = v.coeff(0).eval(at);
        }
    }
    return f;
}

RecurrenceFile read_recurrence_file(const std::string& path,
                                    const std::map<std::string, EExpr>& externals) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open recurrence file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_recurrence_text(buf.str(), externals);
}

std::string write_recurrence_file(const RecurrenceFile& f) {
    std::ostringstream os;
    os << "var " << f.rec.var << "\n";
    os << "order " << f.rec.order << "\n";
    os << "field "
       << (f.rec.field == FieldKind::Q ? "Q" : f.rec.field == FieldKind::Eps ? "eps" : "n")
       << "\n";
    if (f.rec.eps_order) os << "eps-order " << *f.rec.eps_order << "\n";
    for (std::size_t i = 0; i < f.coeff_asts.size(); ++i)
        os << "coeff[" << i << "] = " << ast_str(f.coeff_asts[i]) << "\n";
    os << "rhs = " << ast_str(f.rec.rhs_ast) << "\n";
    if (!f.ic_asts.empty()) {
        os << "ics {\n";
        for (const auto& [at, ast] : f.ic_asts)
            os << "  " << at << ": " << ast_str(ast) << "\n";
        os << "}\n";
    }
    return os.str();
}

} // namespace msum
