#pragma once

#include "semialg/rational.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace semialg {

/// Thrown when operands live in different ambient dimensions.
class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using Exponents = std::vector<std::uint32_t>;

unsigned total_degree(const Exponents& e);

/// Graded lexicographic comparison with x1 > x2 > ... > xd.
/// Returns <0, 0, >0.
int compare_grlex(const Exponents& a, const Exponents& b);

struct Term {
    Exponents exponents;
    Rational coefficient;

    friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse multivariate polynomial over Q in a fixed number of variables.
///
/// Terms are stored fully expanded, without zero coefficients, sorted by
/// descending graded-lex order, so the leading term comes first and two
/// polynomials are equal iff their term vectors are.
class Polynomial {
public:
    explicit Polynomial(std::size_t dimension = 1);

    static Polynomial constant(std::size_t dimension, const Rational& c);
    /// The coordinate x_{axis+1}; axis is zero-based.
    static Polynomial variable(std::size_t dimension, std::size_t axis);
    static Polynomial monomial(Exponents exponents, const Rational& c);
    /// Combines like terms and drops zeros; all exponent vectors must have
    /// length `dimension`.
    static Polynomial from_terms(std::size_t dimension, std::vector<Term> terms);
    /// Trusts that `terms` is already strictly descending in graded-lex order
    /// with nonzero coefficients.
    static Polynomial from_sorted_terms(std::size_t dimension, std::vector<Term> terms);

    std::size_t dimension() const { return dimension_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant term (zero when absent).
    Rational constant_term() const;
    unsigned total_degree() const;
    unsigned degree_in(std::size_t axis) const;
    /// Requires a nonzero polynomial.
    const Term& leading_term() const;
    /// Largest absolute coefficient, as a double; 0 for the zero polynomial.
    double coefficient_scale() const;

    Polynomial operator-() const;
    Polynomial scaled(const Rational& c) const;
    Polynomial pow(unsigned k) const;
    /// Re-embeds into a higher dimension by appending unused variables.
    Polynomial lifted(std::size_t new_dimension) const;

    Rational eval(std::span<const Rational> point) const;
    double eval(std::span<const double> point) const;

    /// Human-readable form in the formula grammar: ascending total degree,
    /// lower variable indices first within a degree ("1 - x1^2 - x2^2").
    std::string to_string() const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;
    friend Polynomial operator+(const Polynomial& p, const Polynomial& q);
    friend Polynomial operator*(const Polynomial& p, const Polynomial& q);

private:
    std::size_t dimension_;
    std::vector<Term> terms_;
};

Polynomial operator+(const Polynomial& p, const Polynomial& q);
Polynomial operator-(const Polynomial& p, const Polynomial& q);
Polynomial operator*(const Polynomial& p, const Polynomial& q);

inline Polynomial add(const Polynomial& p, const Polynomial& q) { return p + q; }
inline Polynomial mul(const Polynomial& p, const Polynomial& q) { return p * q; }
inline Rational eval(const Polynomial& p, std::span<const Rational> x) { return p.eval(x); }

Polynomial partial(const Polynomial& p, std::size_t axis);
std::vector<Polynomial> gradient(const Polynomial& p);

/// Coprime integer coefficients with positive graded-lex leading
/// coefficient. Two nonzero polynomials are constant multiples of each other
/// iff their normalizations agree. Throws on the zero polynomial.
Polynomial normalize(const Polynomial& p);

/// Coprime integer coefficients obtained by a *positive* scaling, so the
/// sign pattern of p is kept. Throws on the zero polynomial.
Polynomial make_primitive(const Polynomial& p);

/// If q = c * p for a rational c != 0, returns c.
std::optional<Rational> proportionality(const Polynomial& p, const Polynomial& q);

std::string variable_name(std::size_t axis);

}  // namespace semialg
