#include "msum/ast.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace msum {

namespace {

struct Token {
    enum class Kind { Int, Ident, LParen, RParen, LBrack, RBrack, Comma,
                      Plus, Minus, Star, Slash, Caret, End };
    Kind kind;
    std::string text;
    long value = 0;
    int line = 1, col = 1;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](Token::Kind k, std::string s, long v = 0) {
        out.push_back({k, std::move(s), v, line, col});
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') { ++line; col = 1; ++i; continue; }
        if (std::isspace((unsigned char)c)) { ++col; ++i; continue; }
        if (std::isdigit((unsigned char)c)) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit((unsigned char)text[j])) ++j;
            std::string s = text.substr(i, j - i);
            long v;
            try {
                v = std::stol(s);
            } catch (const std::out_of_range&) {
                throw ParseError("integer literal too large: " + s, line, col);
            }
            push(Token::Kind::Int, s, v);
            col += (int)(j - i);
            i = j;
            continue;
        }
        if (std::isalpha((unsigned char)c)) {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum((unsigned char)text[j]) || text[j] == '_'))
                ++j;
            push(Token::Kind::Ident, text.substr(i, j - i));
            col += (int)(j - i);
            i = j;
            continue;
        }
        Token::Kind k;
        switch (c) {
        case '(': k = Token::Kind::LParen; break;
        case ')': k = Token::Kind::RParen; break;
        case '[': k = Token::Kind::LBrack; break;
        case ']': k = Token::Kind::RBrack; break;
        case ',': k = Token::Kind::Comma; break;
        case '+': k = Token::Kind::Plus; break;
        case '-': k = Token::Kind::Minus; break;
        case '*': k = Token::Kind::Star; break;
        case '/': k = Token::Kind::Slash; break;
        case '^': k = Token::Kind::Caret; break;
        default:
            throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
        push(k, std::string(1, c));
        ++col;
        ++i;
    }
    push(Token::Kind::End, "<end>");
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

    NodePtr run() {
        NodePtr e = expr();
        expect(Token::Kind::End, "end of input");
        return e;
    }

private:
    std::vector<Token> t_;
    std::size_t p_ = 0;

    const Token& cur() const { return t_[p_]; }
    const Token& peek(std::size_t k) const {
        return t_[std::min(p_ + k, t_.size() - 1)];
    }
    Token take() { return t_[p_ < t_.size() - 1 ? p_++ : p_]; }
    bool at(Token::Kind k) const { return cur().kind == k; }
    bool accept(Token::Kind k) {
        if (!at(k)) return false;
        take();
        return true;
    }
    Token expect(Token::Kind k, const std::string& what) {
        if (!at(k))
            throw ParseError("expected " + what + ", got '" + cur().text + "'",
                             cur().line, cur().col);
        return take();
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, cur().line, cur().col);
    }

    static NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }
    Node stub(Node::Kind k) const {
        Node n;
        n.kind = k;
        n.line = cur().line;
        n.col = cur().col;
        return n;
    }

    NodePtr expr() {
        NodePtr e;
        if (accept(Token::Kind::Plus)) {
            e = term();
        } else if (at(Token::Kind::Minus)) {
            Node n = stub(Node::Kind::Neg);
            take();
            n.a = term();
            e = make(std::move(n));
        } else {
            e = term();
        }
        while (at(Token::Kind::Plus) || at(Token::Kind::Minus)) {
            Node n = stub(at(Token::Kind::Plus) ? Node::Kind::Add : Node::Kind::Sub);
            take();
            n.a = e;
            n.b = term();
            e = make(std::move(n));
        }
        return e;
    }

    NodePtr term() {
        NodePtr e = factor();
        while (at(Token::Kind::Star) || at(Token::Kind::Slash)) {
            Node n = stub(at(Token::Kind::Star) ? Node::Kind::Mul : Node::Kind::Div);
            take();
            n.a = e;
            n.b = factor();
            e = make(std::move(n));
        }
        return e;
    }

    NodePtr factor() {
        NodePtr b = base();
        if (accept(Token::Kind::Caret)) {
            Node n = stub(Node::Kind::Pow);
            n.a = b;
            bool neg = accept(Token::Kind::Minus);
            Token e = expect(Token::Kind::Int, "integer exponent");
            n.expo = neg ? -e.value : e.value;
            n.line = b->line;
            n.col = b->col;
            return make(std::move(n));
        }
        return b;
    }

    long signed_int() {
        bool neg = accept(Token::Kind::Minus);
        Token t = expect(Token::Kind::Int, "integer");
        return neg ? -t.value : t.value;
    }

    // var, var+int, var-int; `parens` additionally allows (var+int)
    std::pair<std::string, long> argument(bool parens) {
        if (parens && accept(Token::Kind::LParen)) {
            auto a = argument(false);
            expect(Token::Kind::RParen, "')'");
            return a;
        }
        Token v = expect(Token::Kind::Ident, "argument variable");
        long off = 0;
        if (at(Token::Kind::Plus) || at(Token::Kind::Minus)) {
            bool neg = at(Token::Kind::Minus);
            take();
            Token o = expect(Token::Kind::Int, "integer offset");
            off = neg ? -o.value : o.value;
        }
        return {v.text, off};
    }

    bool at_alt_pow() const {
        return at(Token::Kind::LParen) && peek(1).kind == Token::Kind::Minus &&
               peek(2).kind == Token::Kind::Int && peek(2).value == 1 &&
               peek(3).kind == Token::Kind::RParen && peek(4).kind == Token::Kind::Caret;
    }

    NodePtr base() {
        if (at_alt_pow()) {
            Node n = stub(Node::Kind::AltPow);
            p_ += 5; // ( - 1 ) ^
            auto [name, off] = argument(true);
            n.argvar = name;
            n.offset = off;
            return make(std::move(n));
        }
        if (accept(Token::Kind::LParen)) {
            NodePtr e = expr();
            expect(Token::Kind::RParen, "')'");
            return e;
        }
        if (at(Token::Kind::Int)) {
            Node n = stub(Node::Kind::Num);
            n.value = Rat(take().value);
            return make(std::move(n));
        }
        if (at(Token::Kind::Ident)) {
            std::string name = cur().text;
            if (name == "S" && peek(1).kind == Token::Kind::LBrack) {
                Node n = stub(Node::Kind::Sum);
                take(); // S
                take(); // [
                do {
                    long v = signed_int();
                    if (v == 0) fail("harmonic index entries must be nonzero");
                    n.index.push_back((int)v);
                } while (accept(Token::Kind::Comma));
                expect(Token::Kind::RBrack, "']'");
                expect(Token::Kind::LParen, "'('");
                auto [an, off] = argument(false);
                n.argvar = an;
                n.offset = off;
                expect(Token::Kind::RParen, "')'");
                return make(std::move(n));
            }
            if (name == "z" && peek(1).kind == Token::Kind::LParen) {
                Node n = stub(Node::Kind::Zeta);
                take();
                take();
                long v = expect(Token::Kind::Int, "zeta argument").value;
                if (v < 2) fail("zeta argument must be >= 2");
                n.zeta_arg = (int)v;
                expect(Token::Kind::RParen, "')'");
                return make(std::move(n));
            }
            if (name == "eps") {
                Node n = stub(Node::Kind::Eps);
                take();
                return make(std::move(n));
            }
            if (peek(1).kind == Token::Kind::LParen) {
                Node n = stub(Node::Kind::Ext);
                n.name = name;
                take(); // symbol
                take(); // (
                auto [an, off] = argument(false);
                n.argvar = an;
                n.offset = off;
                expect(Token::Kind::RParen, "')'");
                return make(std::move(n));
            }
            Node n = stub(Node::Kind::Var);
            n.name = take().text;
            return make(std::move(n));
        }
        fail("expected a value, variable, sum, or parenthesized expression");
    }
};

int prec_of(Node::Kind k) {
    switch (k) {
    case Node::Kind::Add:
    case Node::Kind::Sub: return 1;
    case Node::Kind::Neg: return 1;
    case Node::Kind::Mul:
    case Node::Kind::Div: return 2;
    case Node::Kind::Pow: return 3;
    default: return 4;
    }
}

std::string arg_str(const std::string& var, long off) {
    if (off == 0) return var;
    if (off > 0) return var + "+" + std::to_string(off);
    return var + "-" + std::to_string(-off);
}

void print_node(std::ostringstream& os, const NodePtr& n, int parent_prec) {
    int p = prec_of(n->kind);
    bool need = p < parent_prec;
    if (need) os << "(";
    switch (n->kind) {
    case Node::Kind::Num: os << n->value.str(); break;
    case Node::Kind::Var: os << n->name; break;
    case Node::Kind::Eps: os << "eps"; break;
    case Node::Kind::AltPow:
        os << "(-1)^";
        if (n->offset == 0) os << n->argvar;
        else os << "(" << arg_str(n->argvar, n->offset) << ")";
        break;
    case Node::Kind::Zeta: os << "z(" << n->zeta_arg << ")"; break;
    case Node::Kind::Sum:
        os << hindex_str(n->index) << "(" << arg_str(n->argvar, n->offset) << ")";
        break;
    case Node::Kind::Ext:
        os << n->name << "(" << arg_str(n->argvar, n->offset) << ")";
        break;
    case Node::Kind::Add:
        print_node(os, n->a, 1);
        os << " + ";
        print_node(os, n->b, 2);
        break;
    case Node::Kind::Sub:
        print_node(os, n->a, 1);
        os << " - ";
        print_node(os, n->b, 2);
        break;
    case Node::Kind::Neg:
        os << "-";
        print_node(os, n->a, 2);
        break;
    case Node::Kind::Mul:
        print_node(os, n->a, 2);
        os << "*";
        print_node(os, n->b, 3);
        break;
    case Node::Kind::Div:
        print_node(os, n->a, 2);
        os << "/";
        print_node(os, n->b, 3);
        break;
    case Node::Kind::Pow:
        print_node(os, n->a, 4);
        os << "^" << n->expo;
        break;
    }
    if (need) os << ")";
}

} // namespace

NodePtr parse_expr_text(const std::string& text) {
    return Parser(tokenize(text)).run();
}

std::string ast_str(const NodePtr& n) {
    std::ostringstream os;
    print_node(os, n, 0);
    return os.str();
}

bool ast_equal(const NodePtr& a, const NodePtr& b) {
    if (!a || !b) return a == b;
    if (a->kind != b->kind) return false;
    if (a->value != b->value || a->name != b->name || a->argvar != b->argvar ||
        a->zeta_arg != b->zeta_arg || a->index != b->index || a->offset != b->offset ||
        a->expo != b->expo)
        return false;
    return ast_equal(a->a, b->a) && ast_equal(a->b, b->b);
}

std::set<std::string> external_refs(const NodePtr& n) {
    std::set<std::string> out;
    if (!n) return out;
    if (n->kind == Node::Kind::Ext) out.insert(n->name);
    for (const NodePtr& c : {n->a, n->b})
        for (const auto& s : external_refs(c)) out.insert(s);
    return out;
}

} // namespace msum
