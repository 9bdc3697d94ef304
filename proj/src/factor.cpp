#include "semialg/factor.hpp"

#include <algorithm>
#include <stdexcept>

namespace semialg {

namespace {

bool divides_monomial(const Exponents& divisor, const Exponents& e) {
    for (std::size_t i = 0; i < e.size(); ++i)
        if (divisor[i] > e[i]) return false;
    return true;
}

// r - c * x^shift * f, with every operand sorted; multiplication by a
// monomial preserves graded-lex order, so this is a linear merge.
Polynomial subtract_shifted(const Polynomial& r, const Polynomial& f, const Exponents& shift,
                            const Rational& c) {
    std::vector<Term> out;
    out.reserve(r.size() + f.size());
    auto a = r.terms().begin(), ae = r.terms().end();
    auto b = f.terms().begin(), be = f.terms().end();
    Exponents e(shift.size());
    while (a != ae || b != be) {
        if (b != be)
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = b->exponents[i] + shift[i];
        int cmp = a == ae ? -1 : b == be ? 1 : compare_grlex(a->exponents, e);
        if (cmp > 0) {
            out.push_back(*a++);
        } else if (cmp < 0) {
            out.push_back({e, -c * b->coefficient});
            ++b;
        } else {
            Rational s = a->coefficient - c * b->coefficient;
            if (s != 0) out.push_back({e, s});
            ++a;
            ++b;
        }
    }
    return Polynomial::from_sorted_terms(r.dimension(), std::move(out));
}

Polynomial one(std::size_t dimension) { return Polynomial::constant(dimension, 1); }

Polynomial exact_quotient(const Polynomial& p, const Polynomial& f) {
    auto q = try_divide(p, f);
    if (!q) throw std::logic_error("expected exact division failed");
    return *q;
}

Polynomial content_in(const Polynomial& p, std::size_t axis) {
    Polynomial g(p.dimension());
    for (const auto& c : coefficients_in(p, axis)) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

Polynomial primitive_part_in(const Polynomial& p, std::size_t axis) {
    return normalize(exact_quotient(p, content_in(p, axis)));
}

// Pseudo-remainder of a by b with respect to x_{axis+1}.
Polynomial pseudo_remainder(Polynomial a, const Polynomial& b, std::size_t axis) {
    unsigned db = b.degree_in(axis);
    auto bc = coefficients_in(b, axis);
    const Polynomial& lc_b = bc[db];
    while (!a.is_zero() && a.degree_in(axis) >= db) {
        unsigned da = a.degree_in(axis);
        Polynomial lc_a = coefficients_in(a, axis)[da];
        Exponents e(a.dimension(), 0);
        e[axis] = da - db;
        a = a * lc_b - lc_a * Polynomial::monomial(e, 1) * b;
    }
    return a;
}

}  // namespace

std::vector<Polynomial> coefficients_in(const Polynomial& p, std::size_t axis) {
    if (axis >= p.dimension()) throw std::out_of_range("coefficients_in: axis out of range");
    unsigned deg = p.degree_in(axis);
    std::vector<std::vector<Term>> buckets(deg + 1);
    for (const auto& t : p.terms()) {
        Term s = t;
        unsigned k = s.exponents[axis];
        s.exponents[axis] = 0;
        buckets[k].push_back(std::move(s));
    }
    std::vector<Polynomial> out;
    out.reserve(deg + 1);
    for (auto& b : buckets) out.push_back(Polynomial::from_terms(p.dimension(), std::move(b)));
    return out;
}

std::optional<Polynomial> try_divide(const Polynomial& p, const Polynomial& f) {
    if (f.is_zero()) throw std::invalid_argument("division by the zero polynomial");
    if (p.dimension() != f.dimension()) throw DimensionMismatch("try_divide: dimensions differ");
    if (p.is_zero()) return Polynomial(p.dimension());
    if (p.total_degree() < f.total_degree()) return std::nullopt;
    const Term& lead = f.leading_term();
    std::vector<Term> quotient;
    Polynomial r = p;
    Exponents shift(p.dimension());
    while (!r.is_zero()) {
        const Term& lt = r.leading_term();
        if (!divides_monomial(lead.exponents, lt.exponents)) return std::nullopt;
        for (std::size_t i = 0; i < shift.size(); ++i) shift[i] = lt.exponents[i] - lead.exponents[i];
        Rational c = lt.coefficient / lead.coefficient;
        quotient.push_back({shift, c});
        r = subtract_shifted(r, f, shift, c);
    }
    return Polynomial::from_sorted_terms(p.dimension(), std::move(quotient));
}

unsigned multiplicity(const Polynomial& f, const Polynomial& p) {
    if (f.is_constant()) throw std::invalid_argument("multiplicity of a constant factor is undefined");
    if (p.is_zero()) throw std::invalid_argument("multiplicity in the zero polynomial is undefined");
    if (f.dimension() != p.dimension()) throw DimensionMismatch("multiplicity: dimensions differ");
    // Divide by f, f^2, f^4, ... while possible, then fill in the remaining
    // count from the largest power down.
    std::vector<Polynomial> powers{f};
    Polynomial rest = p;
    unsigned k = 0;
    for (;;) {
        const Polynomial& fp = powers.back();
        if (fp.total_degree() > rest.total_degree()) break;
        auto q = try_divide(rest, fp);
        if (!q) break;
        rest = std::move(*q);
        k += 1u << (powers.size() - 1);
        powers.push_back(fp * fp);
    }
    powers.pop_back();
    for (std::size_t j = powers.size(); j-- > 0;) {
        if (powers[j].total_degree() > rest.total_degree()) continue;
        if (auto q = try_divide(rest, powers[j])) {
            rest = std::move(*q);
            k += 1u << j;
        }
    }
    return k;
}

Polynomial gcd(const Polynomial& p, const Polynomial& q) {
    if (p.dimension() != q.dimension()) throw DimensionMismatch("gcd: dimensions differ");
    if (p.is_zero() && q.is_zero()) throw std::invalid_argument("gcd(0, 0) is undefined");
    if (p.is_zero()) return normalize(q);
    if (q.is_zero()) return normalize(p);
    const std::size_t dim = p.dimension();
    if (p.is_constant() || q.is_constant()) return one(dim);

    std::size_t axis = dim;
    unsigned best = 0;
    for (std::size_t i = 0; i < dim; ++i) {
        unsigned d = std::max(p.degree_in(i), q.degree_in(i));
        if (d > best) {
            best = d;
            axis = i;
        }
    }
    if (p.degree_in(axis) == 0) return gcd(p, content_in(q, axis));
    if (q.degree_in(axis) == 0) return gcd(content_in(p, axis), q);

    Polynomial cp = content_in(p, axis), cq = content_in(q, axis);
    Polynomial c = gcd(cp, cq);
    Polynomial a = normalize(exact_quotient(p, cp));
    Polynomial b = normalize(exact_quotient(q, cq));
    if (a.degree_in(axis) < b.degree_in(axis)) std::swap(a, b);

    Polynomial g = one(dim);
    for (;;) {
        Polynomial r = pseudo_remainder(a, b, axis);
        if (r.is_zero()) {
            g = b;
            break;
        }
        if (r.degree_in(axis) == 0) break;  // coprime primitive parts
        a = std::move(b);
        b = primitive_part_in(r, axis);
    }
    return normalize(c * primitive_part_in(g, axis));
}

Polynomial squarefree_part(const Polynomial& p) {
    if (p.is_constant()) throw std::invalid_argument("squarefree_part of a constant");
    Polynomial g = p;
    for (std::size_t i = 0; i < p.dimension(); ++i) {
        g = gcd(g, partial(p, i));
        if (g.is_constant()) break;
    }
    return normalize(exact_quotient(p, g));
}

Polynomial ProductFactorization::reconstruct() const {
    Polynomial r = residue.scaled(unit);
    for (const auto& f : factors) r = r * f.factor.pow(f.multiplicity);
    return r;
}

ProductFactorization product_factorization(std::span<const Polynomial> ps,
                                           std::span<const Polynomial> known_factors) {
    if (ps.empty()) throw std::invalid_argument("product_factorization: empty polynomial list");
    const std::size_t dim = ps.front().dimension();
    Polynomial product = one(dim);
    for (const auto& p : ps) {
        if (p.is_zero()) throw std::invalid_argument("product_factorization: zero polynomial in list");
        product = product * p;
    }
    ProductFactorization out;
    std::vector<Polynomial> seen;
    for (const auto& raw : known_factors) {
        if (raw.is_constant()) throw std::invalid_argument("known factor must be non-constant");
        Polynomial f = normalize(raw);
        if (std::find(seen.begin(), seen.end(), f) != seen.end()) continue;
        seen.push_back(f);
        unsigned k = multiplicity(f, product);
        if (k == 0) continue;
        product = exact_quotient(product, f.pow(k));
        std::vector<unsigned> entry;
        for (const auto& p : ps) entry.push_back(multiplicity(f, p));
        out.factors.push_back({f, k});
        out.per_entry.push_back(std::move(entry));
    }
    if (product.is_constant()) {
        out.unit = product.constant_term();
        out.residue = one(dim);
        out.residue_squarefree = one(dim);
    } else {
        Polynomial n = normalize(product);
        out.unit = product.leading_term().coefficient / n.leading_term().coefficient;
        out.residue = n;
        out.residue_squarefree = squarefree_part(n);
        out.residue_status = check_irreducible(n);
    }
    return out;
}

}  // namespace semialg
