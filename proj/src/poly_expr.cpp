#include <shortint/poly_expr.hpp>

#include <cctype>
#include <map>

namespace shortint {

namespace {

class Parser {
public:
    Parser(std::string_view text, const FieldPtr& ctx) : s_(text), F_(ctx) {}

    Poly run() {
        skip();
        if (at_end()) throw SyntaxError(pos_, "empty expression");
        std::map<int, FieldElement> acc;
        bool negate = false;
        if (peek() == '-') {
            negate = true;
            advance();
        }
        for (;;) {
            auto [deg, c] = term();
            if (negate) c = F_->neg(c);
            auto it = acc.find(deg);
            if (it == acc.end()) {
                acc.emplace(deg, c);
            } else {
                it->second = F_->add(it->second, c);
            }
            skip();
            if (at_end()) break;
            const char op = peek();
            if (op != '+' && op != '-') throw SyntaxError(pos_, std::string("unexpected '") + op + "'");
            negate = op == '-';
            advance();
        }
        const int top = acc.rbegin()->first;
        std::vector<FieldElement> coeffs(static_cast<std::size_t>(top) + 1, F_->zero());
        for (const auto& [deg, c] : acc) coeffs[static_cast<std::size_t>(deg)] = c;
        return Poly(F_, std::move(coeffs));
    }

    FieldElement element() {
        skip();
        bool negate = false;
        if (!at_end() && peek() == '-') {
            negate = true;
            advance();
        }
        FieldElement c = coordinates(false);
        skip();
        if (!at_end()) throw SyntaxError(pos_, std::string("unexpected '") + peek() + "'");
        return negate ? F_->neg(c) : c;
    }

private:
    std::pair<int, FieldElement> term() {
        skip();
        if (at_end()) throw SyntaxError(pos_, "expected a term");
        if (peek() == 'x') return {mono(), F_->one()};
        FieldElement c = coeff();
        skip();
        if (!at_end() && peek() == '*') {
            advance();
            skip();
            if (at_end() || peek() != 'x') throw SyntaxError(pos_, "expected 'x'");
            return {mono(), c};
        }
        return {0, c};
    }

    int mono() {
        advance();  // 'x'
        skip();
        if (at_end() || peek() != '^') return 1;
        advance();
        skip();
        const std::uint64_t e = uint_literal();
        if (e > 1u << 20) throw SyntaxError(pos_, "exponent too large");
        return static_cast<int>(e);
    }

    FieldElement coeff() {
        if (peek() == '(') {
            advance();
            FieldElement c = coordinates(true);
            skip();
            if (at_end() || peek() != ')') throw SyntaxError(pos_, "expected ')'");
            advance();
            return c;
        }
        return from_uint(uint_literal());
    }

    // u or u0:u1:...; bare u is always a prime-subfield value.
    FieldElement coordinates(bool tuple_context) {
        skip();
        std::vector<std::uint64_t> parts{uint_literal()};
        skip();
        while (!at_end() && peek() == ':') {
            advance();
            skip();
            parts.push_back(uint_literal());
            skip();
        }
        if (parts.size() == 1 && !tuple_context) return from_uint(parts[0]);
        if (parts.size() > F_->degree()) throw SyntaxError(pos_, "too many coordinates for " + F_->describe());
        std::vector<Residue> res(F_->degree(), 0);
        for (std::size_t i = 0; i < parts.size(); ++i) res[i] = static_cast<Residue>(parts[i] % F_->p());
        return F_->from_coeffs(res);
    }

    FieldElement from_uint(std::uint64_t v) const { return F_->from_int(static_cast<std::int64_t>(v % F_->p())); }

    std::uint64_t uint_literal() {
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) {
            throw SyntaxError(pos_, at_end() ? "unexpected end of input" : std::string("unexpected '") + peek() + "'");
        }
        const std::size_t start = pos_;
        std::uint64_t v = 0;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            if (v > (UINT64_MAX - 9) / 10) throw SyntaxError(start, "integer literal too large");
            v = v * 10 + static_cast<std::uint64_t>(peek() - '0');
            advance();
        }
        return v;
    }

    void skip() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }
    void advance() { ++pos_; }

    std::string_view s_;
    FieldPtr F_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, const FieldPtr& ctx) {
    return Parser(text, ctx).run();
}

Poly parse_poly(std::string_view text, const FieldPtr& ctx, int min_degree) {
    Poly f = parse_poly(text, ctx);
    if (f.degree() < min_degree) {
        throw Error(ErrorKind::DegreeZero,
                    "'" + std::string(text) + "' has degree " + std::to_string(f.degree()) + ", need >= " +
                        std::to_string(min_degree));
    }
    return f;
}

FieldElement parse_element(std::string_view text, const FieldPtr& ctx) {
    return Parser(text, ctx).element();
}

std::vector<FieldElement> parse_element_list(std::string_view text, const FieldPtr& ctx) {
    std::vector<FieldElement> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = text.find(',', start);
        const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        try {
            out.push_back(parse_element(piece, ctx));
        } catch (const SyntaxError& e) {
            throw SyntaxError(start + e.offset(), "bad list entry '" + std::string(piece) + "'");
        }
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace shortint
