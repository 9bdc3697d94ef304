#pragma once

#include "semialg/polynomial.hpp"

#include <random>

namespace semialg::testing {

inline Polynomial x(std::size_t dim, std::size_t index1) { return Polynomial::variable(dim, index1 - 1); }
inline Polynomial c(std::size_t dim, const Rational& v) { return Polynomial::constant(dim, v); }

inline Rational random_rational(std::mt19937_64& rng, int range = 9, int max_den = 5) {
    std::uniform_int_distribution<int> num(-range, range), den(1, max_den);
    return make_rational(num(rng), den(rng));
}

inline Point random_point(std::mt19937_64& rng, std::size_t dim) {
    Point p;
    for (std::size_t i = 0; i < dim; ++i) p.push_back(random_rational(rng, 7, 4));
    return p;
}

/// Sparse polynomial with `max_terms` random terms of total degree <= max_deg.
inline Polynomial random_poly(std::mt19937_64& rng, std::size_t dim, unsigned max_deg, int max_terms,
                              bool integer_coeffs = false) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<unsigned> deg(0, max_deg);
    std::uniform_int_distribution<std::size_t> axis(0, dim - 1);
    std::vector<Term> terms;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        Exponents e(dim, 0);
        unsigned d = deg(rng);
        for (unsigned k = 0; k < d; ++k) e[axis(rng)] += 1;
        Rational coef = integer_coeffs ? Rational(std::uniform_int_distribution<int>(-5, 5)(rng))
                                       : random_rational(rng, 5, 3);
        terms.push_back({e, coef});
    }
    return Polynomial::from_terms(dim, std::move(terms));
}

inline Polynomial random_nonconstant(std::mt19937_64& rng, std::size_t dim, unsigned max_deg, int max_terms) {
    for (;;) {
        auto p = random_poly(rng, dim, max_deg, max_terms);
        if (!p.is_constant()) return p;
    }
}

}  // namespace semialg::testing
