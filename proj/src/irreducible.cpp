#include "semialg/factor.hpp"

#include <algorithm>

namespace semialg {

namespace {

using Coeffs = std::vector<Integer>;  // low to high degree

const Integer kDivisorLimit("1000000000000");

std::optional<std::vector<Integer>> positive_divisors(Integer n) {
    n = abs(n);
    if (n == 0 || n > kDivisorLimit) return std::nullopt;
    std::vector<Integer> small, large;
    for (Integer d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

Rational eval(const Coeffs& c, const Rational& x) {
    Rational v = 0;
    for (std::size_t k = c.size(); k-- > 0;) v = v * x + Rational(c[k]);
    return v;
}

Polynomial to_poly(const Coeffs& c) {
    std::vector<Term> terms;
    for (std::size_t k = 0; k < c.size(); ++k)
        if (c[k] != 0) terms.push_back({Exponents{static_cast<std::uint32_t>(k)}, Rational(c[k])});
    return Polynomial::from_terms(1, std::move(terms));
}

// Integer coefficient vector of a univariate rational polynomial given as
// (degree, coefficient) pairs.
Coeffs integral(const std::vector<Rational>& rc) {
    Integer l = 1;
    for (const auto& q : rc) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    Coeffs out;
    for (const auto& q : rc) {
        Rational s = q * l;
        out.push_back(s.get_num());
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

// nullopt: no decision (coefficients too large for the divisor searches)
std::optional<bool> has_rational_root(const Coeffs& c) {
    if (c.front() == 0) return true;
    auto ps = positive_divisors(c.front());
    auto qs = positive_divisors(c.back());
    if (!ps || !qs) return std::nullopt;
    for (const auto& p : *ps)
        for (const auto& q : *qs)
            for (int s : {1, -1}) {
                Rational x = make_rational(p * s, q);
                if (eval(c, x) == 0) return true;
            }
    return false;
}

// Kronecker search for an integer quadratic factor of a quartic with no
// rational roots, using interpolation through x = 0, 1, -1.
std::optional<bool> has_quadratic_factor(const Coeffs& c) {
    Integer v0 = c[0];
    Integer v1 = eval(c, 1).get_num();
    Integer vm = eval(c, -1).get_num();
    auto d0 = positive_divisors(v0), d1 = positive_divisors(v1), dm = positive_divisors(vm);
    if (!d0 || !d1 || !dm) return std::nullopt;
    const Polynomial f = to_poly(c);
    for (const auto& a0 : *d0)
        for (const auto& a1 : *d1)
            for (int s1 : {1, -1})
                for (const auto& am : *dm)
                    for (int sm : {1, -1}) {
                        Integer g1 = a1 * s1, gm = am * sm;
                        Integer sum = g1 + gm, diff = g1 - gm;
                        if (!mpz_even_p(sum.get_mpz_t()) || !mpz_even_p(diff.get_mpz_t())) continue;
                        Integer lead = sum / 2 - a0, mid = diff / 2;
                        if (lead == 0) continue;
                        Polynomial g = to_poly({a0, mid, lead});
                        if (try_divide(f, g)) return true;
                    }
    return false;
}

std::vector<Rational> rational_roots(const Coeffs& c) {
    std::vector<Rational> roots;
    if (c.size() < 2) return roots;
    Coeffs reduced = c;
    if (reduced.front() == 0) {
        roots.push_back(0);
        while (reduced.size() > 1 && reduced.front() == 0) reduced.erase(reduced.begin());
        if (reduced.size() < 2) return roots;
    }
    auto ps = positive_divisors(reduced.front());
    auto qs = positive_divisors(reduced.back());
    if (!ps || !qs) return roots;
    for (const auto& p : *ps)
        for (const auto& q : *qs)
            for (int s : {1, -1}) {
                Rational x = make_rational(p * s, q);
                if (eval(reduced, x) == 0 && std::find(roots.begin(), roots.end(), x) == roots.end())
                    roots.push_back(x);
            }
    return roots;
}

std::optional<bool> univariate_irreducible(const Coeffs& c) {
    std::size_t deg = c.size() - 1;
    if (deg == 0) return false;
    if (deg == 1) return true;
    if (deg > 4) return std::nullopt;
    auto root = has_rational_root(c);
    if (!root) return std::nullopt;
    if (*root) return false;
    if (deg <= 3) return true;
    auto quad = has_quadratic_factor(c);
    if (!quad) return std::nullopt;
    return !*quad;
}

// f restricted to the line where every variable except `x` is fixed; only
// `y` may appear besides x.
Coeffs specialize(const Polynomial& f, std::size_t x, std::size_t y, const Rational& y0) {
    std::vector<Rational> rc(f.degree_in(x) + 1);
    for (const auto& t : f.terms()) {
        Rational v = t.coefficient;
        for (unsigned k = 0; k < t.exponents[y]; ++k) v *= y0;
        rc[t.exponents[x]] += v;
    }
    return integral(rc);
}

// Exact search for a rational factor of degree one. Its top-degree part is a
// linear factor of the top homogeneous component; its constant is pinned by
// restricting to a coordinate axis.
bool has_linear_factor(const Polynomial& f, std::size_t u, std::size_t v) {
    const std::size_t dim = f.dimension();
    const unsigned n = f.total_degree();
    std::vector<Rational> top(n + 1);  // coefficient of u^k v^(n-k)
    for (const auto& t : f.terms())
        if (t.exponents[u] + t.exponents[v] == n) top[t.exponents[u]] += t.coefficient;
    Polynomial xu = Polynomial::variable(dim, u), xv = Polynomial::variable(dim, v);

    auto restricted_roots = [&](std::size_t keep, std::size_t zero) {
        std::vector<Rational> rc(f.degree_in(keep) + 1);
        for (const auto& t : f.terms())
            if (t.exponents[zero] == 0) rc[t.exponents[keep]] += t.coefficient;
        return rational_roots(integral(rc));
    };

    // directions u - r v
    for (const auto& r : rational_roots(integral(top))) {
        for (const auto& root : restricted_roots(u, v)) {
            Polynomial l = xu - xv.scaled(r) - Polynomial::constant(dim, root);
            if (try_divide(f, l)) return true;
        }
    }
    // direction v: possible when u^n has a zero coefficient
    if (top[n] == 0) {
        for (const auto& root : restricted_roots(v, u)) {
            if (try_divide(f, xv - Polynomial::constant(dim, root))) return true;
        }
    }
    return false;
}

}  // namespace

std::string_view to_string(Irreducibility status) {
    switch (status) {
    case Irreducibility::Irreducible: return "irreducible";
    case Irreducibility::Reducible: return "reducible";
    case Irreducibility::Unchecked: return "unchecked";
    }
    return "unchecked";
}

Irreducibility check_irreducible(const Polynomial& f) {
    if (f.is_constant()) return Irreducibility::Reducible;
    if (f.total_degree() == 1) return Irreducibility::Irreducible;

    std::vector<std::size_t> used;
    for (std::size_t i = 0; i < f.dimension(); ++i)
        if (f.degree_in(i) > 0) used.push_back(i);
    if (used.size() > 2 || f.total_degree() > 4) return Irreducibility::Unchecked;

    if (used.size() == 1) {
        std::vector<Rational> rc(f.degree_in(used[0]) + 1);
        for (const auto& t : f.terms()) rc[t.exponents[used[0]]] += t.coefficient;
        auto r = univariate_irreducible(integral(rc));
        if (!r) return Irreducibility::Unchecked;
        return *r ? Irreducibility::Irreducible : Irreducibility::Reducible;
    }

    // Bivariate: if f is primitive in x and f(x, y0) is irreducible of full
    // degree in x for some y0, any factorization of f would survive the
    // specialization, so f is irreducible.
    for (int swap = 0; swap < 2; ++swap) {
        std::size_t x = used[swap], y = used[1 - swap];
        auto coeffs = coefficients_in(f, x);
        Polynomial content(f.dimension());
        for (const auto& c : coeffs)
            if (!c.is_zero()) content = gcd(content, c);
        if (!content.is_constant()) return Irreducibility::Reducible;
        const Polynomial& lead = coeffs.back();
        for (int step = 0; step <= 12; ++step) {
            int y0 = (step % 2 == 0) ? step / 2 : -(step + 1) / 2;
            Point at(f.dimension(), Rational(0));
            at[y] = y0;
            if (lead.eval(at) == 0) continue;
            auto r = univariate_irreducible(specialize(f, x, y, Rational(y0)));
            if (r && *r) return Irreducibility::Irreducible;
        }
    }
    if (squarefree_part(f) != normalize(f)) return Irreducibility::Reducible;
    if (has_linear_factor(f, used[0], used[1])) return Irreducibility::Reducible;
    return Irreducibility::Unchecked;
}

}  // namespace semialg
