#include "semialg/formula.hpp"

#include <algorithm>
#include <cctype>

namespace semialg {

ParseError::ParseError(std::size_t position, const std::string& message)
    : std::runtime_error("parse error at offset " + std::to_string(position) + ": " + message),
      position_(position),
      detail_(message) {}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

std::string strip_comments(std::string_view text) {
    std::string out(text);
    bool in_comment = false;
    for (char& c : out) {
        if (c == '\n') in_comment = false;
        else if (c == '#') in_comment = true;
        if (in_comment) c = ' ';
    }
    return out;
}

namespace {

constexpr std::size_t kMaxDepth = 200;
constexpr std::size_t kMaxVariable = 1000;
constexpr unsigned kMaxExponent = 256;
constexpr unsigned kMaxDegree = 4096;
constexpr std::size_t kMaxProductWork = 4'000'000;

enum class Tok {
    Number, Var, Plus, Minus, Star, Slash, Caret, LParen, RParen, LBrace, RBrace, Comma,
    Ge, Gt, Eq, Le, Lt, Amp, Bar, Bang, Sign, In, True, False, End
};

struct Token {
    Tok kind;
    std::size_t pos;
    std::string text;     // digits for Number
    std::size_t var = 0;  // 1-based index for Var
};

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto digits_from = [&](std::size_t j) {
        std::size_t k = j;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
        return k;
    };
    while (i < s.size()) {
        unsigned char ch = static_cast<unsigned char>(s[i]);
        if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isdigit(ch)) {
            std::size_t k = digits_from(i);
            if (k - i > 10000) throw ParseError(start, "numeric literal too long");
            out.push_back({Tok::Number, start, std::string(s.substr(i, k - i))});
            i = k;
            continue;
        }
        if (ch == 'x') {
            if (i + 1 < s.size() && s[i + 1] == '{') {
                std::size_t k = digits_from(i + 2);
                if (k == i + 2 || k >= s.size() || s[k] != '}') throw ParseError(start, "malformed variable, expected x{k}");
                std::string num(s.substr(i + 2, k - i - 2));
                if (num.size() > 6 || std::stoul(num) > kMaxVariable)
                    throw ParseError(start, "variable index too large");
                std::size_t v = std::stoul(num);
                if (v < 10 || num.front() == '0') throw ParseError(start, "x{k} form is only for k >= 10 without leading zeros");
                out.push_back({Tok::Var, start, {}, v});
                i = k + 1;
                continue;
            }
            if (i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1]))) {
                if (s[i + 1] == '0') throw ParseError(start, "variables are numbered from x1");
                if (i + 2 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 2])))
                    throw ParseError(start, "write variables past x9 as x{k}");
                out.push_back({Tok::Var, start, {}, static_cast<std::size_t>(s[i + 1] - '0')});
                i += 2;
                continue;
            }
            throw ParseError(start, "expected variable index after 'x'");
        }
        if (std::isalpha(ch)) {
            std::size_t k = i;
            while (k < s.size() && std::isalnum(static_cast<unsigned char>(s[k]))) ++k;
            std::string_view word = s.substr(i, k - i);
            Tok kind;
            if (word == "sign") kind = Tok::Sign;
            else if (word == "in") kind = Tok::In;
            else if (word == "true") kind = Tok::True;
            else if (word == "false") kind = Tok::False;
            else throw ParseError(start, "unknown identifier '" + std::string(word) + "'");
            out.push_back({kind, start, {}});
            i = k;
            continue;
        }
        auto next_is = [&](char c) { return i + 1 < s.size() && s[i + 1] == c; };
        Tok kind;
        std::size_t len = 1;
        switch (ch) {
        case '+': kind = Tok::Plus; break;
        case '-': kind = Tok::Minus; break;
        case '*': kind = Tok::Star; break;
        case '/': kind = Tok::Slash; break;
        case '^': kind = Tok::Caret; break;
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case '{': kind = Tok::LBrace; break;
        case '}': kind = Tok::RBrace; break;
        case ',': kind = Tok::Comma; break;
        case '&': kind = Tok::Amp; break;
        case '|': kind = Tok::Bar; break;
        case '!': kind = Tok::Bang; break;
        case '=': kind = Tok::Eq; break;
        case '>':
            kind = next_is('=') ? Tok::Ge : Tok::Gt;
            len = next_is('=') ? 2 : 1;
            break;
        case '<':
            kind = next_is('=') ? Tok::Le : Tok::Lt;
            len = next_is('=') ? 2 : 1;
            break;
        default: throw ParseError(start, "unexpected character");
        }
        out.push_back({kind, start, {}});
        i += len;
    }
    out.push_back({Tok::End, s.size(), {}});
    return out;
}

struct Expr {
    Polynomial value;
    FactoredForm form;
};

Rational rational_pow(const Rational& q, unsigned k) {
    Rational out = 1;
    for (unsigned i = 0; i < k; ++i) out *= q;
    return out;
}

class Parser {
public:
    Parser(std::vector<Token> tokens, std::size_t dimension)
        : toks_(std::move(tokens)), dim_(dimension), builder_(dimension) {}

    Representation formula_document() {
        Formula f = disjunction();
        expect(Tok::End, "unexpected trailing input");
        return std::move(builder_).finish(std::move(f));
    }

    Polynomial polynomial_document() {
        Expr e = poly();
        expect(Tok::End, "unexpected trailing input");
        return e.value;
    }

private:
    struct DepthGuard {
        Parser& p;
        DepthGuard(Parser& parser, std::size_t pos) : p(parser) {
            if (++p.depth_ > kMaxDepth) {
                --p.depth_;
                throw ParseError(pos, "nesting too deep");
            }
        }
        ~DepthGuard() { --p.depth_; }
    };

    const Token& peek() const { return toks_[pos_]; }
    bool at(Tok k) const { return peek().kind == k; }
    const Token& advance() { return toks_[pos_++]; }
    void expect(Tok k, const char* message) {
        if (!at(k)) throw ParseError(peek().pos, message);
        ++pos_;
    }

    Formula disjunction() {
        std::vector<Formula> parts{conjunction()};
        while (at(Tok::Bar)) {
            advance();
            parts.push_back(conjunction());
        }
        return Formula::disjunction(std::move(parts));
    }

    Formula conjunction() {
        std::vector<Formula> parts{unary()};
        while (at(Tok::Amp)) {
            advance();
            parts.push_back(unary());
        }
        return Formula::conjunction(std::move(parts));
    }

    Formula unary() {
        if (at(Tok::Bang)) {
            DepthGuard g(*this, peek().pos);
            advance();
            return Formula::negation(unary());
        }
        return primary();
    }

    Formula primary() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::True: advance(); return Formula::truth();
        case Tok::False: advance(); return Formula::falsity();
        case Tok::Sign: return sign_atom();
        case Tok::LParen: {
            std::size_t save = pos_;
            try {
                return comparison();
            } catch (const ParseError& as_comparison) {
                pos_ = save;
                try {
                    DepthGuard g(*this, peek().pos);
                    advance();
                    Formula f = disjunction();
                    expect(Tok::RParen, "expected ')'");
                    return f;
                } catch (const ParseError& as_group) {
                    if (as_comparison.position() > as_group.position()) throw as_comparison;
                    throw;
                }
            }
        }
        default: return comparison();
        }
    }

    Formula sign_atom() {
        std::size_t start = peek().pos;
        advance();
        expect(Tok::LParen, "expected '(' after sign");
        Expr e;
        {
            DepthGuard g(*this, start);
            e = poly();
        }
        expect(Tok::RParen, "expected ')'");
        expect(Tok::In, "expected 'in'");
        expect(Tok::LBrace, "expected '{'");
        std::uint8_t bits = 0;
        for (;;) {
            std::size_t p = peek().pos;
            bool negative = false;
            if (at(Tok::Minus) || at(Tok::Plus)) negative = advance().kind == Tok::Minus;
            if (!at(Tok::Number)) throw ParseError(peek().pos, "expected -1, 0 or 1");
            const std::string& digits = advance().text;
            int v;
            if (digits.find_first_not_of('0') == std::string::npos) v = 0;
            else if (digits.find_first_not_of('0') == digits.size() - 1 && digits.back() == '1') v = 1;
            else throw ParseError(p, "sign must be -1, 0 or 1");
            if (negative) v = -v;
            bits |= static_cast<std::uint8_t>(1u << (v + 1));
            if (at(Tok::Comma)) {
                advance();
                continue;
            }
            expect(Tok::RBrace, "expected ',' or '}'");
            break;
        }
        return make_atom(std::move(e), SignSet::from_bits(bits), start);
    }

    Formula comparison() {
        std::size_t start = peek().pos;
        Expr lhs = poly();
        const Token& op = peek();
        SignSet signs = SignSet::nonnegative();
        bool negate = false;
        switch (op.kind) {
        case Tok::Ge: break;
        case Tok::Gt: signs = SignSet::positive(); break;
        case Tok::Eq: signs = SignSet::zero(); break;
        case Tok::Le: negate = true; break;
        case Tok::Lt: signs = SignSet::positive(); negate = true; break;
        default: throw ParseError(op.pos, "expected a comparison operator");
        }
        advance();
        Expr rhs = poly();
        Expr e;
        if (rhs.value.is_zero()) {
            e = std::move(lhs);
        } else {
            Polynomial diff = lhs.value - rhs.value;
            e = Expr{diff, FactoredForm::of(diff)};
        }
        if (negate) {
            e.value = -e.value;
            e.form = e.form.negated();
        }
        return make_atom(std::move(e), signs, start);
    }

    Formula make_atom(Expr e, SignSet signs, std::size_t pos) {
        if (e.value.is_zero()) throw ParseError(pos, "atom polynomial is identically zero");
        return builder_.atom(e.value, signs, e.form);
    }

    Expr poly() {
        bool negative = false;
        if (at(Tok::Plus) || at(Tok::Minus)) negative = advance().kind == Tok::Minus;
        Expr first = term();
        if (negative) {
            first.value = -first.value;
            first.form = first.form.negated();
        }
        if (!at(Tok::Plus) && !at(Tok::Minus)) return first;
        Polynomial sum = std::move(first.value);
        while (at(Tok::Plus) || at(Tok::Minus)) {
            bool minus = advance().kind == Tok::Minus;
            Expr t = term();
            sum = minus ? sum - t.value : sum + t.value;
        }
        FactoredForm f = FactoredForm::of(sum);
        return {std::move(sum), std::move(f)};
    }

    Expr term() {
        Expr acc = factor();
        while (at(Tok::Star)) {
            std::size_t p = advance().pos;
            Expr rhs = factor();
            acc.value = product(acc.value, rhs.value, p);
            acc.form.unit *= rhs.form.unit;
            for (auto& [base, k] : rhs.form.factors) {
                auto it = std::find_if(acc.form.factors.begin(), acc.form.factors.end(),
                                       [&](const auto& bk) { return bk.first == base; });
                if (it != acc.form.factors.end()) it->second += k;
                else acc.form.factors.emplace_back(std::move(base), k);
            }
        }
        return acc;
    }

    Expr factor() {
        Expr b = base();
        if (!at(Tok::Caret)) return b;
        advance();
        const Token& t = peek();
        if (!at(Tok::Number)) throw ParseError(t.pos, "expected a non-negative integer exponent");
        advance();
        if (t.text.size() > 4 || std::stoul(t.text) > kMaxExponent)
            throw ParseError(t.pos, "exponent exceeds " + std::to_string(kMaxExponent));
        unsigned k = static_cast<unsigned>(std::stoul(t.text));
        if (static_cast<unsigned long>(b.value.total_degree()) * k > kMaxDegree)
            throw ParseError(t.pos, "degree exceeds " + std::to_string(kMaxDegree));
        Polynomial result = Polynomial::constant(dim_, 1);
        Polynomial sq = b.value;
        for (unsigned e = k; e > 0; e >>= 1) {
            if (e & 1u) result = product(result, sq, t.pos);
            if (e > 1) sq = product(sq, sq, t.pos);
        }
        FactoredForm form;
        form.unit = rational_pow(b.form.unit, k);
        if (k > 0)
            for (auto& [base, e] : b.form.factors) form.factors.emplace_back(std::move(base), e * k);
        return {std::move(result), std::move(form)};
    }

    Expr base() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Number: {
            advance();
            Rational q{decimal_integer(t.text)};
            if (at(Tok::Slash)) {
                advance();
                const Token& d = peek();
                if (!at(Tok::Number)) throw ParseError(d.pos, "expected a denominator");
                advance();
                Integer den = decimal_integer(d.text);
                if (den == 0) throw ParseError(d.pos, "zero denominator");
                q = make_rational(q.get_num(), den);
            }
            Polynomial c = Polynomial::constant(dim_, q);
            return {c, FactoredForm::of(c)};
        }
        case Tok::Var: {
            advance();
            if (t.var > dim_)
                throw ParseError(t.pos, variable_name(t.var - 1) + " exceeds dimension " + std::to_string(dim_));
            Polynomial v = Polynomial::variable(dim_, t.var - 1);
            return {v, FactoredForm::of(v)};
        }
        case Tok::LParen: {
            DepthGuard g(*this, t.pos);
            advance();
            Expr e = poly();
            expect(Tok::RParen, "expected ')'");
            return e;
        }
        default: throw ParseError(t.pos, "expected a number, variable or '('");
        }
    }

    Polynomial product(const Polynomial& a, const Polynomial& b, std::size_t pos) {
        if (a.size() * b.size() > kMaxProductWork) throw ParseError(pos, "expression too large to expand");
        if (a.total_degree() + b.total_degree() > kMaxDegree)
            throw ParseError(pos, "degree exceeds " + std::to_string(kMaxDegree));
        return a * b;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::size_t depth_ = 0;
    std::size_t dim_;
    RepresentationBuilder builder_;
};

std::size_t resolve_dimension(const std::vector<Token>& toks, std::optional<std::size_t> dimension) {
    if (dimension && *dimension == 0) throw ParseError(0, "dimension must be positive");
    if (dimension) return *dimension;
    std::size_t d = 1;
    for (const auto& t : toks)
        if (t.kind == Tok::Var) d = std::max(d, t.var);
    return d;
}

}  // namespace

Representation parse_formula(std::string_view text, std::optional<std::size_t> dimension) {
    auto toks = lex(text);
    std::size_t d = resolve_dimension(toks, dimension);
    return Parser(std::move(toks), d).formula_document();
}

Polynomial parse_polynomial(std::string_view text, std::optional<std::size_t> dimension) {
    auto toks = lex(text);
    std::size_t d = resolve_dimension(toks, dimension);
    return Parser(std::move(toks), d).polynomial_document();
}

}  // namespace semialg
