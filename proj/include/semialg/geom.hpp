#pragma once

#include "semialg/formula.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace semialg {

/// Open Euclidean ball B(center, radius).
struct Ball {
    Point center;
    Rational radius;

    Ball() = default;
    /// Throws std::invalid_argument unless radius > 0 and center is non-empty.
    Ball(Point center, Rational radius);
    std::size_t dimension() const { return center.size(); }
    bool contains(std::span<const Rational> x) const;
};

struct Interval {
    Rational lo, hi;
};

/// Axis-aligned box split into `resolution` cells per axis; the corner
/// lattice has resolution + 1 points per axis.
struct GridSpec {
    std::vector<Interval> box;
    std::size_t resolution = 128;

    GridSpec() = default;
    GridSpec(std::vector<Interval> box, std::size_t resolution);
    /// [lo, hi]^d
    static GridSpec cube(std::size_t dimension, const Rational& lo, const Rational& hi, std::size_t resolution);

    std::size_t dimension() const { return box.size(); }
    Rational coordinate(std::size_t axis, std::size_t k) const;
    std::size_t corner_count() const;
    std::size_t cell_count() const;
    Point corner(std::size_t linear_index) const;
};

/// Claimed local shape of A inside a witness ball.
struct LocalShape {
    enum class Kind { ZeroSet, ClosedHalf, OpenHalf, ComplementOfZero };
    Kind kind = Kind::ZeroSet;
    Polynomial f;

    /// Throws std::invalid_argument for a constant f.
    LocalShape(Kind kind, Polynomial f);
    /// Whether a point with sign(f(x)) = s belongs to the shape.
    bool admits(int s) const;
};

std::string_view to_string(LocalShape::Kind kind);
std::optional<LocalShape::Kind> parse_shape_kind(std::string_view text);

struct NonsingularZero {
    std::vector<double> point;
    double value = 0;
    double gradient_norm = 0;
    /// Exact rational endpoints bracketing the sign change (equal when the
    /// zero is a lattice point).
    Point bracket_lo, bracket_hi;
};

struct SampleReport {
    std::size_t points_tested = 0;
    std::size_t agreements = 0;
    std::optional<Point> first_counterexample;
    std::optional<NonsingularZero> nonsingular_zero;

    bool vacuous() const { return points_tested == 0; }
    bool full_agreement() const { return !vacuous() && agreements == points_tested; }
};

/// Tolerances are relative to the largest absolute coefficient of f.
struct SamplingOptions {
    std::size_t per_axis = 33;
    std::size_t budget = 100000;  // segments examined by find_nonsingular_zero
    double tol_zero = 1e-9;
    double tol_grad = 1e-4;
    unsigned threads = 1;  // 0: hardware concurrency
};

/// Points of the per_axis^d corner grid over the ball's bounding box that lie
/// strictly inside the ball, in lexicographic grid order (last axis fastest).
/// Throws std::invalid_argument if per_axis < 3.
std::vector<Point> ball_lattice(const Ball& ball, std::size_t per_axis);

/// Compares membership in A with the shape predicate on ball_lattice points.
SampleReport check_local_shape(const Representation& rep, const LocalShape& shape, const Ball& ball,
                               const SamplingOptions& options = {});

/// Looks for a zero of f in the ball with |grad f| bounded away from 0,
/// walking segments between neighbouring lattice points.
std::optional<NonsingularZero> find_nonsingular_zero(const Polynomial& f, const Ball& ball,
                                                     const SamplingOptions& options = {});

/// Exact membership at every grid corner, linear order with the last axis
/// fastest.
std::vector<unsigned char> grid_membership(const Representation& rep, const GridSpec& grid, unsigned threads = 1);

struct BoundaryCell {
    std::vector<std::size_t> index;  // lower corner, per axis
    double min_abs_p = 0;            // min over i and corners of |p_i|
};

/// Cells whose corner memberships differ.
std::vector<BoundaryCell> boundary_cells(const Representation& rep, const GridSpec& grid, unsigned threads = 1);

/// Same, reusing a membership vector from grid_membership.
std::vector<BoundaryCell> boundary_cells(const Representation& rep, const GridSpec& grid,
                                         const std::vector<unsigned char>& membership);

/// Membership agreement of two representations at all grid corners.
SampleReport compare_sets(const Representation& a, const Representation& b, const GridSpec& grid,
                          unsigned threads = 1);

/// bd A within the union of the Z(p_i), at cell scale: for each boundary
/// cell, some |p_i(midpoint)| < 4 * diameter * (largest |grad p_i| on the
/// cell's corners and midpoint).
struct BoundaryContainment {
    std::size_t cells = 0;
    std::size_t satisfied = 0;
    std::vector<Point> failing_midpoints;  // first few, in cell order
};

BoundaryContainment boundary_containment(const Representation& rep, const GridSpec& grid, unsigned threads = 1);

struct WitnessProposal {
    Ball ball;
    LocalShape shape;
    SampleReport report;
};

/// Heuristic search: balls around boundary cells near Z(f), tried against
/// each shape of f and -f. Every returned proposal passed check_local_shape
/// and has a non-singular zero; callers still re-verify through the lints.
std::vector<WitnessProposal> propose_witnesses(const Representation& rep, const Polynomial& f, const GridSpec& grid,
                                               std::size_t max_proposals = 4, const SamplingOptions& options = {});

}  // namespace semialg
