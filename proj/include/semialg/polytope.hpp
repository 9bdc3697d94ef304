#pragma once

#include "semialg/geom.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace semialg {

/// H-representation {p_1 >= 0, ..., p_m >= 0} with degree-one facet forms.
/// In the plane the vertices are in counterclockwise order and facet i is
/// the edge from vertex i to vertex i + 1.
struct PolytopeH {
    std::size_t dimension = 2;
    std::vector<Polynomial> facets;
    std::vector<Point> vertices;

    std::size_t facet_count() const { return facets.size(); }
    Representation representation() const;
    /// Bounding box of the vertices widened by half its extent on each side.
    GridSpec default_grid(std::size_t resolution) const;
};

/// Rejected vertex list. `triple` holds the offending vertex indices when
/// the failure is local to three vertices.
class PolytopeError : public std::invalid_argument {
public:
    PolytopeError(const std::string& message, std::optional<std::array<std::size_t, 3>> triple = std::nullopt);
    const std::optional<std::array<std::size_t, 3>>& triple() const { return triple_; }

private:
    std::optional<std::array<std::size_t, 3>> triple_;
};

/// Edge forms with coprime integer coefficients, positive on the interior.
/// Throws PolytopeError for fewer than three vertices, duplicates,
/// collinear triples, clockwise order and non-convex position.
PolytopeH polygon_from_vertices(std::vector<Point> vertices);

/// Explicit facet and vertex lists in any dimension, checked for
/// consistency: degree one, every vertex feasible and tight on at least d
/// facets, the vertex centroid strictly inside. Facets are made primitive.
PolytopeH polytope_from_facets(std::size_t dimension, std::vector<Polynomial> facets, std::vector<Point> vertices);

/// "x y" rationals per line; '#' starts a comment. Errors carry the
/// 1-based line number in the message.
std::vector<Point> parse_vertex_list(std::string_view text);

/// Intersection point of two degree-one forms in the plane, if not parallel.
std::optional<Point> line_intersection(const Polynomial& p, const Polynomial& q);
bool parallel(const Polynomial& p, const Polynomial& q);
/// Vertices recomputed from consecutive facet intersections.
std::vector<Point> vertices_from_facets(const PolytopeH& polygon);

struct FacetAssignment {
    std::size_t facet = 0;
    /// (q index, multiplicity) for every q divisible by the facet form.
    std::vector<std::pair<std::size_t, unsigned>> qs;
};

struct FactorMapReport {
    /// multiplicity[i][j] = multiplicity(p_i, q_j)
    std::vector<std::vector<unsigned>> multiplicity;
    std::vector<FacetAssignment> assignment;
    bool pass = false;
    std::vector<std::string> violations;
    GridSpec grid;
    SampleReport agreement;
};

/// Each facet form must divide exactly one q_j, with odd multiplicity.
/// Throws std::invalid_argument unless qs.size() == P.dimension.
FactorMapReport check_polytope_factor_map(const PolytopeH& polytope, std::span<const Polynomial> qs,
                                          std::size_t grid_resolution = 128, unsigned threads = 1);

struct PolygonStructure {
    std::size_t edges = 0;
    /// k[j][i] = multiplicity(p_i, q_j)
    std::array<std::vector<unsigned>, 2> k;
    /// Edge indices dividing q1 and q2 (0-based).
    std::array<std::vector<std::size_t>, 2> index_sets;
    bool split = false;
    /// Index of the q carrying every edge form while the other carries
    /// none, when that is the case.
    std::optional<std::size_t> carrier;
    std::optional<Polynomial> g1, g2;
    std::optional<bool> odd_multiplicities;  // condition 1
    std::optional<bool> g_not_divisible;     // condition 2
    std::optional<bool> g2_vanishes;         // condition 3
    std::vector<Rational> g2_at_vertices;
    /// Non-adjacent, non-parallel edges from different index sets whose
    /// lines meet outside P in a common zero of q1 and q2.
    std::optional<std::pair<std::size_t, std::size_t>> obstruction_edges;
    std::optional<Point> obstruction_point;
    bool has_parallel_edges = false;
    std::vector<std::string> notes;
    GridSpec grid;
    SampleReport agreement;
};

PolygonStructure check_polygon_structure(const PolytopeH& polygon, const Polynomial& q1, const Polynomial& q2,
                                         std::size_t grid_resolution = 128, unsigned threads = 1);

struct HexagonCounterexample {
    PolytopeH hexagon;
    Polynomial q1, q2;
};

/// Centrally symmetric hexagon (+-1, 0), (+-1/2, +-1) with q1 = p1 p3 p5
/// and q2 = p2 p4 p6.
HexagonCounterexample hexagon_counterexample();

/// Basis of the polynomials of total degree <= degree vanishing at every
/// point (exact nullspace, reduced row echelon order).
std::vector<Polynomial> vanishing_polynomials(std::span<const Point> points, unsigned degree);

struct VanishingSearch {
    std::optional<Polynomial> q2;
    unsigned degree_tried = 0;
    std::size_t candidates_tried = 0;
};

/// Looks for q2 of degree <= max_degree vanishing at the vertices with
/// (q1, q2)_{>=0} agreeing with P on the grid. Candidates are the basis
/// elements of each degree and their negatives.
VanishingSearch find_vertex_vanishing_q2(const PolytopeH& polygon, const Polynomial& q1, unsigned max_degree,
                                         std::size_t grid_resolution = 128, unsigned threads = 1);

}  // namespace semialg
