#include "moorek/spaces.hpp"

#include <cctype>
#include <sstream>

namespace moorek {

SpaceExpr SpaceExpr::point() { return SpaceExpr{}; }

SpaceExpr SpaceExpr::sphere(Int k) {
    if (k < 0) throw input_error("sphere dimension must be >= 0");
    SpaceExpr e;
    e.kind = Kind::Sphere;
    e.param = k;
    return e;
}

SpaceExpr SpaceExpr::moore(Int m) {
    if (m < 2) throw input_error("Moore parameter must be >= 2");
    SpaceExpr e;
    e.kind = Kind::Moore;
    e.param = m;
    return e;
}

SpaceExpr SpaceExpr::susp(SpaceExpr c) {
    SpaceExpr e;
    e.kind = Kind::Susp;
    e.children.push_back(std::move(c));
    return e;
}

SpaceExpr SpaceExpr::smash(SpaceExpr a, SpaceExpr b) {
    SpaceExpr e;
    e.kind = Kind::Smash;
    e.children.push_back(std::move(a));
    e.children.push_back(std::move(b));
    return e;
}

SpaceExpr SpaceExpr::prod(SpaceExpr a, SpaceExpr b) {
    SpaceExpr e;
    e.kind = Kind::Prod;
    e.children.push_back(std::move(a));
    e.children.push_back(std::move(b));
    return e;
}

SpaceExpr SpaceExpr::mxsm(Int m) {
    if (m < 2) throw input_error("MxSM parameter must be >= 2");
    SpaceExpr e;
    e.kind = Kind::MnXSigmaMn;
    e.param = m;
    return e;
}

std::string SpaceExpr::to_string() const {
    std::ostringstream os;
    switch (kind) {
    case Kind::Point: os << "point"; break;
    case Kind::Sphere: os << "S(" << param << ")"; break;
    case Kind::Moore: os << "M(" << param << ")"; break;
    case Kind::Susp: os << "susp(" << children[0].to_string() << ")"; break;
    case Kind::Smash:
        os << "smash(" << children[0].to_string() << "," << children[1].to_string() << ")";
        break;
    case Kind::Prod:
        os << "prod(" << children[0].to_string() << "," << children[1].to_string() << ")";
        break;
    case Kind::MnXSigmaMn: os << "MxSM(" << param << ")"; break;
    }
    return os.str();
}

namespace {

struct Parser {
    const std::string& text;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw input_error("space expression: " + what + " at position " + std::to_string(pos) +
                          " in \"" + text + "\"");
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    std::string ident() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        if (pos == start) fail("expected an identifier");
        return text.substr(start, pos - start);
    }

    Int number() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected a number");
        return std::stoll(text.substr(start, pos - start));
    }

    SpaceExpr expr() {
        std::string head = ident();
        if (head == "point") return SpaceExpr::point();
        if (head == "S") {
            expect('(');
            Int k = number();
            expect(')');
            return SpaceExpr::sphere(k);
        }
        if (head == "M") {
            expect('(');
            Int m = number();
            expect(')');
            return SpaceExpr::moore(m);
        }
        if (head == "MxSM") {
            expect('(');
            Int m = number();
            expect(')');
            return SpaceExpr::mxsm(m);
        }
        if (head == "susp") {
            expect('(');
            SpaceExpr inner = expr();
            expect(')');
            return SpaceExpr::susp(std::move(inner));
        }
        if (head == "smash" || head == "prod") {
            expect('(');
            SpaceExpr a = expr();
            expect(',');
            SpaceExpr b = expr();
            expect(')');
            return head == "smash" ? SpaceExpr::smash(std::move(a), std::move(b))
                                   : SpaceExpr::prod(std::move(a), std::move(b));
        }
        fail("unknown constructor '" + head + "'");
    }
};

} // namespace

SpaceExpr parse_space(const std::string& text) {
    Parser p{text};
    SpaceExpr e = p.expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return e;
}

} // namespace moorek
