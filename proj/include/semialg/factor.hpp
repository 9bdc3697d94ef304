#pragma once

#include "semialg/polynomial.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace semialg {

/// Exact quotient p / f when f divides p in Q[x], nullopt otherwise.
/// Throws on f = 0 or a dimension mismatch.
std::optional<Polynomial> try_divide(const Polynomial& p, const Polynomial& f);

/// Largest k with f^k | p. f must be non-constant and p nonzero.
unsigned multiplicity(const Polynomial& f, const Polynomial& p);

/// Normalized greatest common divisor; gcd(p, 0) = normalize(p).
/// Primitive polynomial remainder sequences on a recursive representation,
/// main variable = highest degree (ties: lowest index).
Polynomial gcd(const Polynomial& p, const Polynomial& q);

/// Product of the distinct irreducible factors of p, normalized.
Polynomial squarefree_part(const Polynomial& p);

/// Coefficients of p viewed as a polynomial in x_{axis+1}: entry k is the
/// coefficient of x_{axis+1}^k, a polynomial free of that variable.
std::vector<Polynomial> coefficients_in(const Polynomial& p, std::size_t axis);

enum class Irreducibility { Irreducible, Reducible, Unchecked };

std::string_view to_string(Irreducibility status);

/// Bounded irreducibility check over Q. Degree-one polynomials are always
/// irreducible; polynomials in at most two variables with total degree <= 4
/// are decided by specialization plus an exhaustive rational factor search.
/// Anything else is Unchecked.
Irreducibility check_irreducible(const Polynomial& f);

struct FactorMultiplicity {
    Polynomial factor;       // normalized, non-constant
    unsigned multiplicity;   // >= 1
    bool odd() const { return multiplicity % 2 == 1; }
};

/// Bookkeeping for p_1 * ... * p_m = unit * prod f_i^{s_i} * residue.
struct ProductFactorization {
    std::vector<FactorMultiplicity> factors;
    /// per_entry[i][j]: multiplicity of factors[i] in the j-th input polynomial.
    std::vector<std::vector<unsigned>> per_entry;
    Rational unit{1};
    /// What is left after peeling the known factors; normalized, or the
    /// constant 1.
    Polynomial residue;
    /// Squarefree part of the residue (constant 1 if the residue is constant).
    Polynomial residue_squarefree;
    /// Irreducibility of a non-constant residue is not assumed; reported here.
    Irreducibility residue_status = Irreducibility::Unchecked;

    bool residue_is_unit() const { return residue.is_constant(); }

    /// unit * prod factor^multiplicity * residue.
    Polynomial reconstruct() const;
};

ProductFactorization product_factorization(std::span<const Polynomial> ps,
                                           std::span<const Polynomial> known_factors);

}  // namespace semialg
