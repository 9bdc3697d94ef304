#include "semialg/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace semialg {

unsigned total_degree(const Exponents& e) {
    return std::accumulate(e.begin(), e.end(), 0u);
}

int compare_grlex(const Exponents& a, const Exponents& b) {
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

namespace {

struct GrlexGreater {
    bool operator()(const Exponents& a, const Exponents& b) const { return compare_grlex(a, b) > 0; }
};

void require_same_dimension(const Polynomial& p, const Polynomial& q) {
    if (p.dimension() != q.dimension())
        throw DimensionMismatch("polynomial dimensions differ: " + std::to_string(p.dimension()) +
                                " vs " + std::to_string(q.dimension()));
}

// Powers x_i^k for k <= max degree of x_i in p, evaluated lazily per variable.
template <typename T>
std::vector<std::vector<T>> power_table(const Polynomial& p, std::span<const T> x) {
    std::vector<std::vector<T>> table(p.dimension());
    for (std::size_t i = 0; i < p.dimension(); ++i) {
        unsigned deg = p.degree_in(i);
        table[i].reserve(deg + 1);
        table[i].push_back(T(1));
        for (unsigned k = 1; k <= deg; ++k) table[i].push_back(table[i].back() * x[i]);
    }
    return table;
}

Integer lcm_of_denominators(const Polynomial& p) {
    Integer l = 1;
    for (const auto& t : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coefficient.get_den_mpz_t());
    return l;
}

Integer gcd_of_numerators(const Polynomial& p) {
    Integer g = 0;
    for (const auto& t : p.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coefficient.get_num_mpz_t());
    return g;
}

}  // namespace

Polynomial::Polynomial(std::size_t dimension) : dimension_(dimension) {
    if (dimension == 0) throw std::invalid_argument("polynomial dimension must be positive");
}

Polynomial Polynomial::constant(std::size_t dimension, const Rational& c) {
    Polynomial p(dimension);
    if (c != 0) p.terms_.push_back({Exponents(dimension, 0), c});
    return p;
}

Polynomial Polynomial::variable(std::size_t dimension, std::size_t axis) {
    if (axis >= dimension) throw std::out_of_range("variable index out of range");
    Polynomial p(dimension);
    Exponents e(dimension, 0);
    e[axis] = 1;
    p.terms_.push_back({std::move(e), Rational(1)});
    return p;
}

Polynomial Polynomial::monomial(Exponents exponents, const Rational& c) {
    Polynomial p(exponents.size());
    if (c != 0) p.terms_.push_back({std::move(exponents), c});
    return p;
}

Polynomial Polynomial::from_terms(std::size_t dimension, std::vector<Term> terms) {
    std::map<Exponents, Rational, GrlexGreater> acc;
    for (auto& t : terms) {
        if (t.exponents.size() != dimension)
            throw DimensionMismatch("term exponent vector has wrong length");
        acc[std::move(t.exponents)] += t.coefficient;
    }
    Polynomial p(dimension);
    for (auto& [e, c] : acc)
        if (c != 0) p.terms_.push_back({e, c});
    return p;
}

Polynomial Polynomial::from_sorted_terms(std::size_t dimension, std::vector<Term> terms) {
    Polynomial p(dimension);
    p.terms_ = std::move(terms);
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && semialg::total_degree(terms_[0].exponents) == 0);
}

Rational Polynomial::constant_term() const {
    if (!terms_.empty() && semialg::total_degree(terms_.back().exponents) == 0) return terms_.back().coefficient;
    return 0;
}

unsigned Polynomial::total_degree() const {
    return terms_.empty() ? 0 : semialg::total_degree(terms_.front().exponents);
}

unsigned Polynomial::degree_in(std::size_t axis) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.exponents[axis]);
    return d;
}

const Term& Polynomial::leading_term() const {
    if (terms_.empty()) throw std::invalid_argument("zero polynomial has no leading term");
    return terms_.front();
}

double Polynomial::coefficient_scale() const {
    double s = 0;
    for (const auto& t : terms_) s = std::max(s, std::abs(t.coefficient.get_d()));
    return s;
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coefficient = -t.coefficient;
    return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
    if (c == 0) return Polynomial(dimension_);
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coefficient *= c;
    return r;
}

Polynomial Polynomial::pow(unsigned k) const {
    Polynomial result = constant(dimension_, 1);
    Polynomial base = *this;
    while (k) {
        if (k & 1u) result = result * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return result;
}

Polynomial Polynomial::lifted(std::size_t new_dimension) const {
    if (new_dimension < dimension_) {
        for (const auto& t : terms_)
            for (std::size_t i = new_dimension; i < dimension_; ++i)
                if (t.exponents[i] != 0)
                    throw DimensionMismatch("cannot drop variable " + variable_name(i) + " in use");
    }
    Polynomial r(new_dimension);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        Exponents e(new_dimension, 0);
        std::copy_n(t.exponents.begin(), std::min(new_dimension, dimension_), e.begin());
        r.terms_.push_back({std::move(e), t.coefficient});
    }
    // appending zero exponents (or dropping unused ones) preserves the order
    return r;
}

Rational Polynomial::eval(std::span<const Rational> point) const {
    if (point.size() != dimension_)
        throw DimensionMismatch("point has " + std::to_string(point.size()) + " coordinates, expected " +
                                std::to_string(dimension_));
    auto table = power_table<Rational>(*this, point);
    Rational sum = 0, prod;
    for (const auto& t : terms_) {
        prod = t.coefficient;
        for (std::size_t i = 0; i < dimension_; ++i)
            if (t.exponents[i]) prod *= table[i][t.exponents[i]];
        sum += prod;
    }
    return sum;
}

double Polynomial::eval(std::span<const double> point) const {
    if (point.size() != dimension_) throw DimensionMismatch("point dimension mismatch");
    auto table = power_table<double>(*this, point);
    double sum = 0;
    for (const auto& t : terms_) {
        double prod = t.coefficient.get_d();
        for (std::size_t i = 0; i < dimension_; ++i)
            if (t.exponents[i]) prod *= table[i][t.exponents[i]];
        sum += prod;
    }
    return sum;
}

std::string variable_name(std::size_t axis) {
    std::size_t k = axis + 1;
    return k < 10 ? "x" + std::to_string(k) : "x{" + std::to_string(k) + "}";
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<const Term*> order;
    for (const auto& t : terms_) order.push_back(&t);
    std::stable_sort(order.begin(), order.end(), [](const Term* a, const Term* b) {
        return semialg::total_degree(a->exponents) < semialg::total_degree(b->exponents);
    });
    std::string out;
    bool first = true;
    for (const Term* t : order) {
        Rational mag = abs(t->coefficient);
        bool neg = t->coefficient < 0;
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < dimension_; ++i) {
            if (!t->exponents[i]) continue;
            if (!mono.empty()) mono += "*";
            mono += variable_name(i);
            if (t->exponents[i] > 1) mono += "^" + std::to_string(t->exponents[i]);
        }
        if (mono.empty())
            out += mag.get_str();
        else if (mag == 1)
            out += mono;
        else
            out += mag.get_str() + "*" + mono;
    }
    return out;
}

Polynomial operator+(const Polynomial& p, const Polynomial& q) {
    require_same_dimension(p, q);
    std::vector<Term> out;
    out.reserve(p.size() + q.size());
    auto a = p.terms().begin(), ae = p.terms().end();
    auto b = q.terms().begin(), be = q.terms().end();
    while (a != ae || b != be) {
        int c = a == ae ? -1 : b == be ? 1 : compare_grlex(a->exponents, b->exponents);
        if (c > 0) {
            out.push_back(*a++);
        } else if (c < 0) {
            out.push_back(*b++);
        } else {
            Rational s = a->coefficient + b->coefficient;
            if (s != 0) out.push_back({a->exponents, s});
            ++a;
            ++b;
        }
    }
    Polynomial r(p.dimension());
    r.terms_ = std::move(out);
    return r;
}

Polynomial operator-(const Polynomial& p, const Polynomial& q) { return p + (-q); }

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    require_same_dimension(p, q);
    std::map<Exponents, Rational, GrlexGreater> acc;
    Exponents e(p.dimension());
    for (const auto& s : p.terms()) {
        for (const auto& t : q.terms()) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = s.exponents[i] + t.exponents[i];
            auto [it, inserted] = acc.try_emplace(e, s.coefficient * t.coefficient);
            if (!inserted) it->second += s.coefficient * t.coefficient;
        }
    }
    Polynomial r(p.dimension());
    r.terms_.reserve(acc.size());
    for (auto& [ex, c] : acc)
        if (c != 0) r.terms_.push_back({ex, c});
    return r;
}

Polynomial partial(const Polynomial& p, std::size_t axis) {
    if (axis >= p.dimension()) throw std::out_of_range("partial: axis out of range");
    std::vector<Term> out;
    for (const auto& t : p.terms()) {
        if (t.exponents[axis] == 0) continue;
        Term d = t;
        d.coefficient *= t.exponents[axis];
        d.exponents[axis] -= 1;
        out.push_back(std::move(d));
    }
    return Polynomial::from_terms(p.dimension(), std::move(out));
}

std::vector<Polynomial> gradient(const Polynomial& p) {
    std::vector<Polynomial> g;
    g.reserve(p.dimension());
    for (std::size_t i = 0; i < p.dimension(); ++i) g.push_back(partial(p, i));
    return g;
}

Polynomial make_primitive(const Polynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("cannot normalize the zero polynomial");
    Rational factor = make_rational(lcm_of_denominators(p), 1);
    Polynomial r = p.scaled(factor);
    Integer g = gcd_of_numerators(r);
    return r.scaled(make_rational(1, g));
}

Polynomial normalize(const Polynomial& p) {
    Polynomial r = make_primitive(p);
    return r.leading_term().coefficient < 0 ? -r : r;
}

std::optional<Rational> proportionality(const Polynomial& p, const Polynomial& q) {
    if (p.dimension() != q.dimension() || p.size() != q.size() || p.is_zero()) return std::nullopt;
    Rational c = q.terms()[0].coefficient / p.terms()[0].coefficient;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.terms()[i].exponents != q.terms()[i].exponents) return std::nullopt;
        if (p.terms()[i].coefficient * c != q.terms()[i].coefficient) return std::nullopt;
    }
    return c;
}

}  // namespace semialg
