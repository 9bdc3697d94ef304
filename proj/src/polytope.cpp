#include "semialg/polytope.hpp"

#include "semialg/factor.hpp"

#include <algorithm>
#include <functional>

namespace semialg {

namespace {

struct Linear {
    std::vector<Rational> a;
    Rational c;
};

Linear linear_parts(const Polynomial& p) {
    Linear out{std::vector<Rational>(p.dimension(), Rational(0)), Rational(0)};
    for (const auto& t : p.terms()) {
        unsigned deg = total_degree(t.exponents);
        if (deg == 0) {
            out.c = t.coefficient;
            continue;
        }
        if (deg != 1) throw std::invalid_argument("not of degree one: " + p.to_string());
        for (std::size_t i = 0; i < t.exponents.size(); ++i)
            if (t.exponents[i]) out.a[i] = t.coefficient;
    }
    return out;
}

Rational cross(const Point& o, const Point& a, const Point& b) {
    return (a[0] - o[0]) * (b[1] - a[1]) - (a[1] - o[1]) * (b[0] - a[0]);
}

// Form vanishing on the line through a and b, positive to the left of a -> b.
Polynomial edge_form(const Point& a, const Point& b) {
    auto x1 = Polynomial::variable(2, 0), x2 = Polynomial::variable(2, 1);
    auto dx = b[0] - a[0], dy = b[1] - a[1];
    auto p = (x2 - Polynomial::constant(2, a[1])).scaled(dx) - (x1 - Polynomial::constant(2, a[0])).scaled(dy);
    return make_primitive(p);
}

std::string vertex_label(std::size_t i) { return "v" + std::to_string(i + 1); }

std::string facet_label(std::size_t i) { return "p" + std::to_string(i + 1); }

bool all_positive(std::span<const Polynomial> ps, const Point& x) {
    return std::all_of(ps.begin(), ps.end(), [&](const Polynomial& p) { return sgn(p.eval(x)) > 0; });
}

}  // namespace

PolytopeError::PolytopeError(const std::string& message, std::optional<std::array<std::size_t, 3>> triple)
    : std::invalid_argument(message), triple_(triple) {}

Representation PolytopeH::representation() const { return elementary_closed(facets); }

GridSpec PolytopeH::default_grid(std::size_t resolution) const {
    std::vector<Interval> box;
    for (std::size_t axis = 0; axis < dimension; ++axis) {
        Rational lo = vertices.front()[axis], hi = lo;
        for (const auto& v : vertices) {
            lo = std::min(lo, v[axis]);
            hi = std::max(hi, v[axis]);
        }
        Rational pad = hi > lo ? Rational((hi - lo) / 2) : Rational(1);
        box.push_back({lo - pad, hi + pad});
    }
    return GridSpec(std::move(box), resolution);
}

PolytopeH polygon_from_vertices(std::vector<Point> vertices) {
    const std::size_t n = vertices.size();
    if (n < 3) throw PolytopeError("a polygon needs at least 3 vertices, got " + std::to_string(n));
    for (std::size_t i = 0; i < n; ++i)
        if (vertices[i].size() != 2)
            throw PolytopeError(vertex_label(i) + " has " + std::to_string(vertices[i].size()) + " coordinates");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (vertices[i] == vertices[j])
                throw PolytopeError("duplicate vertices " + vertex_label(i) + " and " + vertex_label(j));

    auto triple_of = [n](std::size_t i) {
        return std::array<std::size_t, 3>{(i + n - 1) % n + 1, i + 1, (i + 1) % n + 1};
    };
    auto triple_text = [&](std::size_t i) {
        return vertex_label((i + n - 1) % n) + ", " + vertex_label(i) + ", " + vertex_label((i + 1) % n);
    };
    std::vector<int> turns(n);
    int left = 0, right = 0;
    for (std::size_t i = 0; i < n; ++i) {
        turns[i] = sgn(cross(vertices[(i + n - 1) % n], vertices[i], vertices[(i + 1) % n]));
        if (turns[i] == 0) throw PolytopeError("collinear triple " + triple_text(i), triple_of(i));
        (turns[i] > 0 ? left : right) += 1;
    }
    if (right == static_cast<int>(n)) throw PolytopeError("vertices are in clockwise order", triple_of(0));
    if (right > 0) {
        int minority = left >= right ? -1 : 1;
        for (std::size_t i = 0; i < n; ++i)
            if (turns[i] == minority) throw PolytopeError("not convex at " + triple_text(i), triple_of(i));
    }

    PolytopeH out;
    out.dimension = 2;
    for (std::size_t i = 0; i < n; ++i) out.facets.push_back(edge_form(vertices[i], vertices[(i + 1) % n]));
    // All left turns can still wind more than once (a star); every vertex
    // off an edge must lie strictly on its inner side.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (k == i || k == (i + 1) % n) continue;
            if (sgn(out.facets[i].eval(vertices[k])) <= 0)
                throw PolytopeError("not convex: " + vertex_label(k) + " is not strictly inside the edge " +
                                        vertex_label(i) + vertex_label((i + 1) % n),
                                    std::array<std::size_t, 3>{i + 1, (i + 1) % n + 1, k + 1});
        }
    out.vertices = std::move(vertices);
    return out;
}

PolytopeH polytope_from_facets(std::size_t dimension, std::vector<Polynomial> facets, std::vector<Point> vertices) {
    if (facets.empty() || vertices.empty()) throw PolytopeError("facet and vertex lists must be non-empty");
    for (auto& p : facets) {
        if (p.dimension() != dimension || p.total_degree() != 1)
            throw PolytopeError("facet is not of degree one in dimension " + std::to_string(dimension) + ": " +
                                p.to_string());
        p = make_primitive(p);
    }
    Point centroid(dimension, Rational(0));
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        if (vertices[v].size() != dimension) throw PolytopeError(vertex_label(v) + " has the wrong dimension");
        std::size_t tight = 0;
        for (std::size_t i = 0; i < facets.size(); ++i) {
            int s = sgn(facets[i].eval(vertices[v]));
            if (s < 0) throw PolytopeError(vertex_label(v) + " violates " + facet_label(i));
            tight += s == 0;
        }
        if (tight < dimension)
            throw PolytopeError(vertex_label(v) + " is tight on only " + std::to_string(tight) + " facets");
        for (std::size_t a = 0; a < dimension; ++a) centroid[a] += vertices[v][a];
    }
    for (auto& c : centroid) c /= static_cast<long>(vertices.size());
    if (!all_positive(facets, centroid)) throw PolytopeError("the vertex centroid is not an interior point");
    return PolytopeH{dimension, std::move(facets), std::move(vertices)};
}

std::vector<Point> parse_vertex_list(std::string_view text) {
    std::vector<Point> out;
    std::size_t line_no = 0, start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(start, end - start);
        ++line_no;
        start = end + 1;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) {
            if (end == text.size()) break;
            continue;
        }
        auto p = parse_point(line);
        if (!p || p->size() != 2)
            throw std::invalid_argument("line " + std::to_string(line_no) + ": expected two rationals \"x y\"");
        out.push_back(std::move(*p));
        if (end == text.size()) break;
    }
    return out;
}

bool parallel(const Polynomial& p, const Polynomial& q) {
    auto a = linear_parts(p), b = linear_parts(q);
    return a.a[0] * b.a[1] - a.a[1] * b.a[0] == 0;
}

std::optional<Point> line_intersection(const Polynomial& p, const Polynomial& q) {
    auto a = linear_parts(p), b = linear_parts(q);
    Rational det = a.a[0] * b.a[1] - a.a[1] * b.a[0];
    if (det == 0) return std::nullopt;
    // a0 x + a1 y = -ac, b0 x + b1 y = -bc
    Rational x = (-a.c * b.a[1] + b.c * a.a[1]) / det;
    Rational y = (-b.c * a.a[0] + a.c * b.a[0]) / det;
    return Point{x, y};
}

std::vector<Point> vertices_from_facets(const PolytopeH& polygon) {
    const std::size_t m = polygon.facets.size();
    std::vector<Point> out;
    for (std::size_t i = 0; i < m; ++i) {
        auto v = line_intersection(polygon.facets[(i + m - 1) % m], polygon.facets[i]);
        if (!v) throw PolytopeError("consecutive parallel facets " + facet_label((i + m - 1) % m) + ", " +
                                    facet_label(i));
        out.push_back(std::move(*v));
    }
    return out;
}

FactorMapReport check_polytope_factor_map(const PolytopeH& polytope, std::span<const Polynomial> qs,
                                          std::size_t grid_resolution, unsigned threads) {
    if (qs.size() != polytope.dimension)
        throw std::invalid_argument("expected " + std::to_string(polytope.dimension) + " polynomials q_j, got " +
                                    std::to_string(qs.size()));
    for (const auto& q : qs)
        if (q.is_zero()) throw std::invalid_argument("q_j must be nonzero");
    FactorMapReport r;
    for (std::size_t i = 0; i < polytope.facets.size(); ++i) {
        std::vector<unsigned> row;
        FacetAssignment fa{i, {}};
        for (std::size_t j = 0; j < qs.size(); ++j) {
            row.push_back(multiplicity(polytope.facets[i], qs[j]));
            if (row.back()) fa.qs.emplace_back(j, row.back());
        }
        const auto name = facet_label(i) + " = " + polytope.facets[i].to_string();
        if (fa.qs.empty()) r.violations.push_back(name + " divides no q");
        if (fa.qs.size() > 1) r.violations.push_back(name + " divides " + std::to_string(fa.qs.size()) + " of the q");
        for (auto [j, k] : fa.qs)
            if (k % 2 == 0)
                r.violations.push_back(name + " has even multiplicity " + std::to_string(k) + " in q" +
                                       std::to_string(j + 1));
        r.multiplicity.push_back(std::move(row));
        r.assignment.push_back(std::move(fa));
    }
    r.pass = r.violations.empty();
    r.grid = polytope.default_grid(grid_resolution);
    r.agreement = compare_sets(polytope.representation(), elementary_closed(qs), r.grid, threads);
    return r;
}

PolygonStructure check_polygon_structure(const PolytopeH& polygon, const Polynomial& q1, const Polynomial& q2,
                                         std::size_t grid_resolution, unsigned threads) {
    if (q1.is_zero() || q2.is_zero()) throw std::invalid_argument("q1 and q2 must be nonzero");
    const std::size_t m = polygon.facets.size();
    const std::array<const Polynomial*, 2> q{&q1, &q2};
    PolygonStructure r;
    r.edges = m;
    for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t i = 0; i < m; ++i) {
            r.k[j].push_back(multiplicity(polygon.facets[i], *q[j]));
            if (r.k[j].back()) r.index_sets[j].push_back(i);
        }
    r.split = !r.index_sets[0].empty() && !r.index_sets[1].empty();
    for (std::size_t c = 0; c < 2; ++c)
        if (r.index_sets[c].size() == m && r.index_sets[1 - c].empty()) r.carrier = c;

    if (r.carrier) {
        const std::size_t c = *r.carrier;
        Polynomial product = Polynomial::constant(2, 1);
        for (std::size_t i = 0; i < m; ++i) product = product * polygon.facets[i].pow(r.k[c][i]);
        r.g1 = *try_divide(*q[c], product);
        r.g2 = *q[1 - c];
        r.odd_multiplicities = std::all_of(r.k[c].begin(), r.k[c].end(), [](unsigned k) { return k % 2 == 1; });
        bool clean = true;
        for (const auto& p : polygon.facets) clean = clean && multiplicity(p, *r.g1) == 0 && multiplicity(p, *r.g2) == 0;
        r.g_not_divisible = clean;
        bool vanishes = true;
        for (const auto& v : polygon.vertices) {
            r.g2_at_vertices.push_back(r.g2->eval(v));
            vanishes = vanishes && r.g2_at_vertices.back() == 0;
        }
        r.g2_vanishes = vanishes;
    }

    for (std::size_t i = 0; i < m && !r.has_parallel_edges; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (parallel(polygon.facets[i], polygon.facets[j])) {
                r.has_parallel_edges = true;
                break;
            }

    if (r.split) {
        auto adjacent = [m](std::size_t i, std::size_t j) { return (i + 1) % m == j || (j + 1) % m == i; };
        for (auto i : r.index_sets[0]) {
            for (auto j : r.index_sets[1]) {
                if (i == j || adjacent(i, j)) continue;
                auto y = line_intersection(polygon.facets[i], polygon.facets[j]);
                if (!y || std::all_of(polygon.facets.begin(), polygon.facets.end(),
                                 [&](const Polynomial& p) { return sgn(p.eval(*y)) >= 0; }))
                    continue;
                r.obstruction_edges = {i, j};
                r.obstruction_point = std::move(*y);
                break;
            }
            if (r.obstruction_edges) break;
        }
    }

    if (m < 7)
        r.notes.push_back("m = " + std::to_string(m) +
                          " < 7: the polygon corollary's hypothesis on the number of edges does not hold");
    if (!r.has_parallel_edges && m >= 5)
        r.notes.push_back("no two edges are parallel: the structural conclusion already applies for m >= 5");
    if (r.split && !r.obstruction_edges)
        r.notes.push_back("every non-adjacent pair of edges from different index sets is parallel, so no common zero "
                          "of q1 and q2 outside P arises from them");
    if (r.split && r.obstruction_edges)
        r.notes.push_back("edge lines " + facet_label(r.obstruction_edges->first) + " and " +
                          facet_label(r.obstruction_edges->second) + " meet outside P at a common zero of q1 and q2");
    r.notes.push_back("the conclusions presuppose (q1, q2)_{>=0} = P, evidenced here only by grid agreement");

    r.grid = polygon.default_grid(grid_resolution);
    std::vector<Polynomial> qs{q1, q2};
    r.agreement = compare_sets(polygon.representation(), elementary_closed(qs), r.grid, threads);
    return r;
}

HexagonCounterexample hexagon_counterexample() {
    auto h = make_rational(1, 2);
    auto P = polygon_from_vertices({{Rational(1), Rational(0)},
                                    {h, Rational(1)},
                                    {-h, Rational(1)},
                                    {Rational(-1), Rational(0)},
                                    {-h, Rational(-1)},
                                    {h, Rational(-1)}});
    const auto& p = P.facets;
    auto q1 = p[0] * p[2] * p[4];
    auto q2 = p[1] * p[3] * p[5];
    return {std::move(P), std::move(q1), std::move(q2)};
}

std::vector<Polynomial> vanishing_polynomials(std::span<const Point> points, unsigned degree) {
    if (points.empty()) throw std::invalid_argument("no points");
    const std::size_t dim = points.front().size();
    std::vector<Exponents> monomials;
    for (unsigned d = 0; d <= degree; ++d) {
        // exponent vectors of total degree d, lexicographically
        Exponents e(dim, 0);
        std::function<void(std::size_t, unsigned)> rec = [&](std::size_t axis, unsigned left) {
            if (axis + 1 == dim) {
                e[axis] = left;
                monomials.push_back(e);
                return;
            }
            for (unsigned k = left + 1; k-- > 0;) {
                e[axis] = k;
                rec(axis + 1, left - k);
            }
        };
        rec(0, d);
    }
    const std::size_t cols = monomials.size();
    std::vector<std::vector<Rational>> rows;
    for (const auto& x : points) {
        if (x.size() != dim) throw std::invalid_argument("points of mixed dimension");
        std::vector<Rational> row;
        for (const auto& e : monomials) {
            Rational v = 1;
            for (std::size_t a = 0; a < dim; ++a)
                for (unsigned k = 0; k < e[a]; ++k) v *= x[a];
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    // reduced row echelon form
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t sel = r;
        while (sel < rows.size() && rows[sel][c] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        Rational inv = 1 / rows[r][c];
        for (auto& v : rows[r]) v *= inv;
        for (std::size_t o = 0; o < rows.size(); ++o) {
            if (o == r || rows[o][c] == 0) continue;
            Rational f = rows[o][c];
            for (std::size_t k = 0; k < cols; ++k) rows[o][k] -= f * rows[r][k];
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<Polynomial> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
        std::vector<Term> terms{{monomials[free], Rational(1)}};
        for (std::size_t i = 0; i < pivots.size(); ++i)
            if (rows[i][free] != 0) terms.push_back({monomials[pivots[i]], -rows[i][free]});
        basis.push_back(make_primitive(Polynomial::from_terms(dim, std::move(terms))));
    }
    return basis;
}

VanishingSearch find_vertex_vanishing_q2(const PolytopeH& polygon, const Polynomial& q1, unsigned max_degree,
                                         std::size_t grid_resolution, unsigned threads) {
    VanishingSearch out;
    auto target = polygon.representation();
    auto grid = polygon.default_grid(grid_resolution);
    for (unsigned d = 1; d <= max_degree; ++d) {
        out.degree_tried = d;
        for (const auto& b : vanishing_polynomials(polygon.vertices, d)) {
            for (const auto& cand : {b, -b}) {
                ++out.candidates_tried;
                std::vector<Polynomial> qs{q1, cand};
                if (compare_sets(target, elementary_closed(qs), grid, threads).full_agreement()) {
                    out.q2 = cand;
                    return out;
                }
            }
        }
    }
    return out;
}

}  // namespace semialg
