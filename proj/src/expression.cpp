#include "amcomp/expression.hpp"

#include "amcomp/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace amcomp {

struct Expression::Node {
    enum class Kind { literal, parameter, add, sub, mul, div, neg };
    Kind kind;
    double value = 0.0;     // literal
    std::string name;       // parameter
    std::size_t column = 0; // 1-based position of the operator/token
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

struct Token {
    enum class Kind { number, ident, plus, minus, star, slash, lparen, rparen, end };
    Kind kind;
    double number = 0.0;
    std::string ident;
    std::size_t column = 0;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        std::size_t col = i + 1;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
            const char* start = text.c_str() + i;
            char* end = nullptr;
            double v = std::strtod(start, &end);
            if (end == start) throw ExprSyntaxError("malformed number", col);
            i += static_cast<std::size_t>(end - start);
            tokens.push_back({Token::Kind::number, v, {}, col});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i;
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
                ++i;
            tokens.push_back({Token::Kind::ident, 0.0, text.substr(start, i - start), col});
            continue;
        }
        Token::Kind kind;
        switch (c) {
        case '+': kind = Token::Kind::plus; break;
        case '-': kind = Token::Kind::minus; break;
        case '*': kind = Token::Kind::star; break;
        case '/': kind = Token::Kind::slash; break;
        case '(': kind = Token::Kind::lparen; break;
        case ')': kind = Token::Kind::rparen; break;
        default:
            throw ExprSyntaxError(std::string("unknown token '") + c + "'", col);
        }
        tokens.push_back({kind, 0.0, {}, col});
        ++i;
    }
    tokens.push_back({Token::Kind::end, 0.0, {}, text.size() + 1});
    return tokens;
}

class Parser {
public:
    explicit Parser(const std::string& text) : tokens_(tokenize(text)) {}

    NodePtr parse() {
        NodePtr e = expr();
        if (peek().kind != Token::Kind::end)
            throw ExprSyntaxError("unexpected trailing input", peek().column);
        return e;
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;

    const Token& peek() const { return tokens_[pos_]; }
    Token take() { return tokens_[pos_++]; }

    static NodePtr make(Node::Kind kind, std::size_t column, NodePtr lhs = nullptr,
                        NodePtr rhs = nullptr) {
        auto n = std::make_shared<Node>();
        n->kind = kind;
        n->column = column;
        n->lhs = std::move(lhs);
        n->rhs = std::move(rhs);
        return n;
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (peek().kind == Token::Kind::plus) {
                std::size_t col = take().column;
                lhs = make(Node::Kind::add, col, lhs, term());
            } else if (peek().kind == Token::Kind::minus) {
                std::size_t col = take().column;
                lhs = make(Node::Kind::sub, col, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            if (peek().kind == Token::Kind::star) {
                std::size_t col = take().column;
                lhs = make(Node::Kind::mul, col, lhs, unary());
            } else if (peek().kind == Token::Kind::slash) {
                std::size_t col = take().column;
                lhs = make(Node::Kind::div, col, lhs, unary());
            } else {
                return lhs;
            }
        }
    }

    NodePtr unary() {
        if (peek().kind == Token::Kind::minus) {
            std::size_t col = take().column;
            return make(Node::Kind::neg, col, unary());
        }
        return primary();
    }

    NodePtr primary() {
        Token t = take();
        switch (t.kind) {
        case Token::Kind::number: {
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::literal;
            n->value = t.number;
            n->column = t.column;
            return n;
        }
        case Token::Kind::ident: {
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::parameter;
            n->name = t.ident;
            n->column = t.column;
            return n;
        }
        case Token::Kind::lparen: {
            NodePtr e = expr();
            if (peek().kind != Token::Kind::rparen)
                throw ExprSyntaxError("expected ')'", peek().column);
            take();
            return e;
        }
        default:
            throw ExprSyntaxError("expected a number, parameter or '('", t.column);
        }
    }
};

double eval_node(const Node& node, const std::map<std::string, double>& params) {
    switch (node.kind) {
    case Node::Kind::literal: return node.value;
    case Node::Kind::parameter: {
        auto it = params.find(node.name);
        if (it == params.end()) throw UnknownParameter(node.name, node.column);
        return it->second;
    }
    case Node::Kind::add: return eval_node(*node.lhs, params) + eval_node(*node.rhs, params);
    case Node::Kind::sub: return eval_node(*node.lhs, params) - eval_node(*node.rhs, params);
    case Node::Kind::mul: return eval_node(*node.lhs, params) * eval_node(*node.rhs, params);
    case Node::Kind::div: {
        double num = eval_node(*node.lhs, params);
        double den = eval_node(*node.rhs, params);
        if (den == 0.0) throw DivisionByZero("division by zero", node.column);
        return num / den;
    }
    case Node::Kind::neg: return -eval_node(*node.lhs, params);
    }
    throw Error("unreachable expression node");
}

} // namespace

Expression Expression::parse(const std::string& text) {
    Expression e;
    e.node_ = Parser(text).parse();
    e.text_ = text;
    return e;
}

Expression Expression::literal(double value) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::literal;
    n->value = value;
    n->column = 1;
    Expression e;
    e.node_ = std::move(n);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    e.text_ = buf;
    return e;
}

double Expression::evaluate(const std::map<std::string, double>& parameters) const {
    if (!node_) throw Error("evaluating an empty expression");
    double v = eval_node(*node_, parameters);
    if (!std::isfinite(v)) throw NumericalError("expression '" + text_ + "' is not finite");
    return v;
}

} // namespace amcomp
