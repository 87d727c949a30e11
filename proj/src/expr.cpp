#include "slwave/expr.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <vector>

namespace slwave {

struct Expr::Node {
    enum class Kind { num, var_x, var_t, add, sub, mul, div, pow, neg, sin, cos, exp, heav };
    Kind kind;
    double value = 0.0;  // for num
    NodePtr a, b;
};

namespace {

using Node = Expr::Node;
using NodePtr = Expr::NodePtr;
using Kind = Node::Kind;

NodePtr num(double v) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::num;
    n->value = v;
    return n;
}

NodePtr mk(Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

bool is_const(const NodePtr& n, double v) { return n->kind == Kind::num && n->value == v; }

NodePtr add(NodePtr a, NodePtr b) {
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
    return mk(Kind::add, std::move(a), std::move(b));
}
NodePtr sub(NodePtr a, NodePtr b) {
    if (is_const(b, 0.0)) return a;
    return mk(Kind::sub, std::move(a), std::move(b));
}
NodePtr mul(NodePtr a, NodePtr b) {
    if (is_const(a, 0.0) || is_const(b, 0.0)) return num(0.0);
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
    return mk(Kind::mul, std::move(a), std::move(b));
}

double eval_node(const Node& n, double x, double t) {
    switch (n.kind) {
        case Kind::num: return n.value;
        case Kind::var_x: return x;
        case Kind::var_t: return t;
        case Kind::add: return eval_node(*n.a, x, t) + eval_node(*n.b, x, t);
        case Kind::sub: return eval_node(*n.a, x, t) - eval_node(*n.b, x, t);
        case Kind::mul: return eval_node(*n.a, x, t) * eval_node(*n.b, x, t);
        case Kind::div: return eval_node(*n.a, x, t) / eval_node(*n.b, x, t);
        case Kind::pow: return std::pow(eval_node(*n.a, x, t), eval_node(*n.b, x, t));
        case Kind::neg: return -eval_node(*n.a, x, t);
        case Kind::sin: return std::sin(eval_node(*n.a, x, t));
        case Kind::cos: return std::cos(eval_node(*n.a, x, t));
        case Kind::exp: return std::exp(eval_node(*n.a, x, t));
        case Kind::heav: {
            const double v = eval_node(*n.a, x, t);
            return v > 0.0 ? 1.0 : (v < 0.0 ? 0.0 : 0.5);
        }
    }
    return 0.0;
}

bool depends_on_x(const Node& n) {
    switch (n.kind) {
        case Kind::num:
        case Kind::var_t: return false;
        case Kind::var_x: return true;
        default:
            return (n.a && depends_on_x(*n.a)) || (n.b && depends_on_x(*n.b));
    }
}

bool depends_on_t(const Node& n) {
    switch (n.kind) {
        case Kind::num:
        case Kind::var_x: return false;
        case Kind::var_t: return true;
        default:
            return (n.a && depends_on_t(*n.a)) || (n.b && depends_on_t(*n.b));
    }
}

NodePtr diff_x(const NodePtr& n) {
    switch (n->kind) {
        case Kind::num:
        case Kind::var_t: return num(0.0);
        case Kind::var_x: return num(1.0);
        case Kind::add: return add(diff_x(n->a), diff_x(n->b));
        case Kind::sub: return sub(diff_x(n->a), diff_x(n->b));
        case Kind::mul: return add(mul(diff_x(n->a), n->b), mul(n->a, diff_x(n->b)));
        case Kind::div:
            return mk(Kind::div,
                      sub(mul(diff_x(n->a), n->b), mul(n->a, diff_x(n->b))),
                      mk(Kind::mul, n->b, n->b));
        case Kind::pow: {
            if (depends_on_x(*n->b))
                throw UsageError("cannot differentiate an x-dependent exponent");
            // b * a^(b-1) * a'
            return mul(mul(n->b, mk(Kind::pow, n->a, sub(n->b, num(1.0)))), diff_x(n->a));
        }
        case Kind::neg: return mk(Kind::neg, diff_x(n->a));
        case Kind::sin: return mul(mk(Kind::cos, n->a), diff_x(n->a));
        case Kind::cos: return mk(Kind::neg, mul(mk(Kind::sin, n->a), diff_x(n->a)));
        case Kind::exp: return mul(mk(Kind::exp, n->a), diff_x(n->a));
        case Kind::heav: return num(0.0);  // a.e. derivative
    }
    return num(0.0);
}

class Parser {
  public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return e;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw UsageError("expression parse error at position " + std::to_string(pos_) + ": " +
                         msg + " in '" + s_ + "'");
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr() {  // additive
        NodePtr e = term();
        for (;;) {
            if (eat('+'))
                e = mk(Kind::add, e, term());
            else if (eat('-'))
                e = mk(Kind::sub, e, term());
            else
                return e;
        }
    }
    NodePtr term() {  // multiplicative
        NodePtr e = factor();
        for (;;) {
            if (eat('*'))
                e = mk(Kind::mul, e, factor());
            else if (eat('/'))
                e = mk(Kind::div, e, factor());
            else
                return e;
        }
    }
    NodePtr factor() {  // unary / power (right-assoc)
        if (eat('-')) return mk(Kind::neg, factor());
        if (eat('+')) return factor();
        NodePtr base = atom();
        if (eat('^')) return mk(Kind::pow, base, factor());
        return base;
    }
    NodePtr atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = expr();
            if (!eat(')')) fail("missing ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(s_.substr(pos_), &used);
            } catch (...) {
                fail("bad number");
            }
            pos_ += used;
            return num(v);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t end = pos_;
            while (end < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_'))
                ++end;
            const std::string name = s_.substr(pos_, end - pos_);
            pos_ = end;
            if (name == "x") return mk(Kind::var_x);
            if (name == "t") return mk(Kind::var_t);
            if (name == "pi") return num(std::numbers::pi);
            if (name == "pow") {
                if (!eat('(')) fail("pow needs '('");
                NodePtr a = expr();
                if (!eat(',')) fail("pow needs two arguments");
                NodePtr b = expr();
                if (!eat(')')) fail("missing ')'");
                return mk(Kind::pow, a, b);
            }
            Kind k;
            if (name == "sin")
                k = Kind::sin;
            else if (name == "cos")
                k = Kind::cos;
            else if (name == "exp")
                k = Kind::exp;
            else if (name == "H")
                k = Kind::heav;
            else
                fail("unknown identifier '" + name + "'");
            if (!eat('(')) fail(name + " needs '('");
            NodePtr a = expr();
            if (!eat(')')) fail("missing ')'");
            return mk(k, a);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

std::vector<std::string> split_colon(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t p = s.find(':', start);
        if (p == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, p - start));
        start = p + 1;
    }
}

double parse_number(const std::string& s, const std::string& context) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (...) {
        throw UsageError("bad numeric field '" + s + "' in " + context);
    }
}

}  // namespace

Expr Expr::parse(const std::string& text) { return Expr(Parser(text).parse()); }

double Expr::eval(double x, double t) const {
    if (!root_) throw UsageError("evaluating an empty expression");
    return eval_node(*root_, x, t);
}

Expr Expr::derivative_x() const {
    if (!root_) throw UsageError("differentiating an empty expression");
    return Expr(diff_x(root_));
}

bool Expr::uses_t() const { return root_ && depends_on_t(*root_); }

PiecewiseSmoothFn make_profile(const std::string& spec) {
    const std::vector<std::string> parts = split_colon(spec);
    const std::string& head = parts[0];
    if (head == "zero" && parts.size() == 1) return PiecewiseSmoothFn::zero();
    if (head == "const") {
        if (parts.size() != 2) throw UsageError("const preset needs one parameter: const:a");
        return PiecewiseSmoothFn::constant(parse_number(parts[1], "const preset"));
    }
    if (head == "sin" && parts.size() == 2) {
        const double k = parse_number(parts[1], "sin preset");
        const double w = k * std::numbers::pi;
        return PiecewiseSmoothFn([w](double x) { return std::sin(w * x); },
                                 [w](double x) { return w * std::cos(w * x); });
    }
    if (head == "bump" && parts.size() == 1) {
        // exp(1 - 1/(1-u^2)) with u = 2x-1; peak 1 at x = 1/2, zero at the ends.
        auto val = [](double x) {
            const double u = 2.0 * x - 1.0;
            const double w = 1.0 - u * u;
            return w > 1e-12 ? std::exp(1.0 - 1.0 / w) : 0.0;
        };
        auto der = [val](double x) {
            const double u = 2.0 * x - 1.0;
            const double w = 1.0 - u * u;
            if (w <= 1e-12) return 0.0;
            return val(x) * (-4.0 * u / (w * w));
        };
        return PiecewiseSmoothFn(val, der);
    }
    if (head == "heaviside") {
        if (parts.size() != 3)
            throw UsageError("heaviside preset needs two parameters: heaviside:x0:h");
        return PiecewiseSmoothFn::heaviside(parse_number(parts[1], "heaviside preset"),
                                            parse_number(parts[2], "heaviside preset"));
    }
    if (head == "kink" && parts.size() == 1) {
        return PiecewiseSmoothFn(
            {0.5},
            {PiecewiseSmoothFn::Piece{[](double x) { return x; }, [](double) { return 1.0; }},
             PiecewiseSmoothFn::Piece{[](double x) { return 1.0 - x; },
                                      [](double) { return -1.0; }}});
    }
    // Fall through: arithmetic expression in x.
    Expr e = Expr::parse(spec);
    if (e.uses_t()) throw UsageError("coefficient/data profile must not depend on t: " + spec);
    Expr d = e.derivative_x();
    return PiecewiseSmoothFn([e](double x) { return e.eval(x); },
                             [d](double x) { return d.eval(x); });
}

std::function<double(double, double)> make_forcing_expr(const std::string& spec) {
    if (spec.empty() || spec == "zero") return nullptr;
    Expr e = Expr::parse(spec);
    return [e](double t, double x) { return e.eval(x, t); };
}

}  // namespace slwave
