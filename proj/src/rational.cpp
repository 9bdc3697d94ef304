#include "semialg/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace semialg {

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Integer decimal_integer(std::string_view digits) {
    Integer out;
    if (digits.empty() || out.set_str(std::string(digits), 10) != 0)
        throw std::invalid_argument("not a decimal integer: " + std::string(digits));
    return out;
}

std::optional<Rational> parse_rational(std::string_view text) {
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    Rational value;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = text.substr(0, slash), den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return std::nullopt;
        Integer d = decimal_integer(den);
        if (d == 0) return std::nullopt;
        value = make_rational(decimal_integer(num), d);
    } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
        auto whole = text.substr(0, dot), frac = text.substr(dot + 1);
        if (whole.empty() && frac.empty()) return std::nullopt;
        if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)))
            return std::nullopt;
        std::string digits = std::string(whole) + std::string(frac);
        Integer den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        value = make_rational(decimal_integer(digits), den);
    } else {
        if (!all_digits(text)) return std::nullopt;
        value = Rational(decimal_integer(text));
    }
    if (negative) value = -value;
    return value;
}

std::optional<Point> parse_point(std::string_view text) {
    Point out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
            ++i;
        if (i >= text.size()) break;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != ',')
            ++j;
        auto q = parse_rational(text.substr(i, j - i));
        if (!q) return std::nullopt;
        out.push_back(*q);
        i = j;
    }
    return out;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Point& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ", ";
        s += to_string(p[i]);
    }
    return s + ")";
}

int sign(const Rational& q) { return sgn(q); }

double to_double(const Rational& q) { return q.get_d(); }

std::vector<double> to_double(const Point& p) {
    std::vector<double> out;
    out.reserve(p.size());
    for (const auto& q : p) out.push_back(q.get_d());
    return out;
}

Rational from_double(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite double");
    Rational q(v);  // mpq_set_d is exact
    return q;
}

}  // namespace semialg
