#include "semialg/geom.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace semialg {

Ball::Ball(Point c, Rational r) : center(std::move(c)), radius(std::move(r)) {
    if (center.empty()) throw std::invalid_argument("ball center must be non-empty");
    if (radius <= 0) throw std::invalid_argument("ball radius must be positive");
}

bool Ball::contains(std::span<const Rational> x) const {
    if (x.size() != center.size()) throw DimensionMismatch("point and ball dimensions differ");
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        Rational d = x[i] - center[i];
        s += d * d;
    }
    return s < radius * radius;
}

GridSpec::GridSpec(std::vector<Interval> b, std::size_t res) : box(std::move(b)), resolution(res) {
    if (box.empty()) throw std::invalid_argument("grid needs at least one axis");
    if (resolution < 2) throw std::invalid_argument("grid resolution must be at least 2");
    for (const auto& iv : box)
        if (!(iv.lo < iv.hi)) throw std::invalid_argument("grid interval must have lo < hi");
}

GridSpec GridSpec::cube(std::size_t dimension, const Rational& lo, const Rational& hi, std::size_t resolution) {
    return GridSpec(std::vector<Interval>(dimension, Interval{lo, hi}), resolution);
}

Rational GridSpec::coordinate(std::size_t axis, std::size_t k) const {
    const auto& iv = box.at(axis);
    return iv.lo + (iv.hi - iv.lo) * make_rational(static_cast<long>(k), static_cast<long>(resolution));
}

std::size_t GridSpec::corner_count() const {
    std::size_t n = 1;
    for (std::size_t i = 0; i < dimension(); ++i) n *= resolution + 1;
    return n;
}

std::size_t GridSpec::cell_count() const {
    std::size_t n = 1;
    for (std::size_t i = 0; i < dimension(); ++i) n *= resolution;
    return n;
}

Point GridSpec::corner(std::size_t linear) const {
    Point p(dimension());
    for (std::size_t a = dimension(); a-- > 0;) {
        p[a] = coordinate(a, linear % (resolution + 1));
        linear /= resolution + 1;
    }
    return p;
}

LocalShape::LocalShape(Kind k, Polynomial poly) : kind(k), f(std::move(poly)) {
    if (f.is_constant()) throw std::invalid_argument("shape polynomial must be non-constant");
}

bool LocalShape::admits(int s) const {
    switch (kind) {
    case Kind::ZeroSet: return s == 0;
    case Kind::ClosedHalf: return s >= 0;
    case Kind::OpenHalf: return s > 0;
    case Kind::ComplementOfZero: return s != 0;
    }
    return false;
}

std::string_view to_string(LocalShape::Kind kind) {
    switch (kind) {
    case LocalShape::Kind::ZeroSet: return "zero";
    case LocalShape::Kind::ClosedHalf: return "closed";
    case LocalShape::Kind::OpenHalf: return "open";
    case LocalShape::Kind::ComplementOfZero: return "complement";
    }
    return "zero";
}

std::optional<LocalShape::Kind> parse_shape_kind(std::string_view text) {
    using K = LocalShape::Kind;
    for (auto k : {K::ZeroSet, K::ClosedHalf, K::OpenHalf, K::ComplementOfZero})
        if (to_string(k) == text) return k;
    return std::nullopt;
}

namespace {

// Corner grid of the ball's bounding box with per_axis points per axis.
struct BallGrid {
    std::size_t dim, per_axis;
    std::vector<Point> axis_values;  // per axis
    std::vector<std::size_t> inside;  // linear indices strictly inside, ascending
    std::vector<long> slot;           // linear index -> position in `inside`, or -1

    BallGrid(const Ball& ball, std::size_t n) : dim(ball.dimension()), per_axis(n) {
        if (n < 3) throw std::invalid_argument("per_axis must be at least 3");
        for (std::size_t a = 0; a < dim; ++a) {
            Point vals;
            for (std::size_t k = 0; k < n; ++k)
                vals.push_back(ball.center[a] - ball.radius +
                               2 * ball.radius * make_rational(static_cast<long>(k), static_cast<long>(n - 1)));
            axis_values.push_back(std::move(vals));
        }
        std::size_t total = 1;
        for (std::size_t a = 0; a < dim; ++a) {
            if (total > std::numeric_limits<std::size_t>::max() / n) throw std::length_error("lattice too large");
            total *= n;
        }
        if (total > 50'000'000) throw std::length_error("lattice too large; lower per_axis");
        slot.assign(total, -1);
        Rational r2 = ball.radius * ball.radius;
        for (std::size_t i = 0; i < total; ++i) {
            Rational s = 0;
            std::size_t rest = i;
            for (std::size_t a = dim; a-- > 0;) {
                Rational d = axis_values[a][rest % n] - ball.center[a];
                rest /= n;
                s += d * d;
            }
            if (s < r2) {
                slot[i] = static_cast<long>(inside.size());
                inside.push_back(i);
            }
        }
    }

    Point point(std::size_t linear) const {
        Point p(dim);
        for (std::size_t a = dim; a-- > 0;) {
            p[a] = axis_values[a][linear % per_axis];
            linear /= per_axis;
        }
        return p;
    }

    std::size_t stride(std::size_t axis) const {
        std::size_t s = 1;
        for (std::size_t a = axis + 1; a < dim; ++a) s *= per_axis;
        return s;
    }
};

double norm(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double gradient_norm(const std::vector<Polynomial>& grad, std::span<const double> x) {
    std::vector<double> g;
    for (const auto& p : grad) g.push_back(p.eval(x));
    return norm(g);
}

double exact_gradient_norm(const std::vector<Polynomial>& grad, std::span<const Rational> x) {
    std::vector<double> g;
    for (const auto& p : grad) g.push_back(to_double(p.eval(x)));
    return norm(g);
}

}  // namespace

std::vector<Point> ball_lattice(const Ball& ball, std::size_t per_axis) {
    BallGrid g(ball, per_axis);
    std::vector<Point> out;
    out.reserve(g.inside.size());
    for (auto i : g.inside) out.push_back(g.point(i));
    if (out.empty()) out.push_back(ball.center);
    return out;
}

SampleReport check_local_shape(const Representation& rep, const LocalShape& shape, const Ball& ball,
                               const SamplingOptions& options) {
    if (ball.dimension() != rep.dimension || shape.f.dimension() != rep.dimension)
        throw DimensionMismatch("representation, shape and ball dimensions differ");
    auto pts = ball_lattice(ball, options.per_axis);
    std::vector<unsigned char> agree(pts.size());
    detail::parallel_for(pts.size(), options.threads, [&](std::size_t i) {
        bool member = eval_formula(rep, pts[i]);
        agree[i] = member == shape.admits(sign(shape.f.eval(pts[i])));
    });
    SampleReport r;
    r.points_tested = pts.size();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (agree[i]) ++r.agreements;
        else if (!r.first_counterexample) r.first_counterexample = pts[i];
    }
    return r;
}

std::optional<NonsingularZero> find_nonsingular_zero(const Polynomial& f, const Ball& ball,
                                                     const SamplingOptions& options) {
    if (f.dimension() != ball.dimension()) throw DimensionMismatch("polynomial and ball dimensions differ");
    if (f.is_constant()) throw std::invalid_argument("find_nonsingular_zero needs a non-constant polynomial");
    BallGrid g(ball, options.per_axis);
    const double scale = f.coefficient_scale();
    const double zero_tol = options.tol_zero * scale, grad_tol = options.tol_grad * scale;
    auto grad = gradient(f);

    std::vector<Point> pts(g.inside.size());
    std::vector<int> signs(g.inside.size());
    detail::parallel_for(g.inside.size(), options.threads, [&](std::size_t k) {
        pts[k] = g.point(g.inside[k]);
        signs[k] = sign(f.eval(pts[k]));
    });

    std::size_t segments = 0;
    for (std::size_t k = 0; k < g.inside.size(); ++k) {
        if (signs[k] == 0) {
            double gn = exact_gradient_norm(grad, pts[k]);
            if (gn >= grad_tol) return NonsingularZero{to_double(pts[k]), 0.0, gn, pts[k], pts[k]};
        }
        for (std::size_t axis = 0; axis < g.dim; ++axis) {
            std::size_t lin = g.inside[k];
            if ((lin / g.stride(axis)) % g.per_axis + 1 >= g.per_axis) continue;
            long nb = g.slot[lin + g.stride(axis)];
            if (nb < 0) continue;
            if (segments++ >= options.budget) return std::nullopt;
            int sa = signs[k], sb = signs[static_cast<std::size_t>(nb)];
            if (sa * sb >= 0) continue;
            // Exact bisection on the dyadic parameter t in [0, 1].
            const Point& a = pts[k];
            const Point& b = pts[static_cast<std::size_t>(nb)];
            auto exact_at = [&](const Rational& t) {
                Point x(g.dim);
                for (std::size_t i = 0; i < g.dim; ++i) x[i] = a[i] + t * (b[i] - a[i]);
                return x;
            };
            Rational lo = 0, hi = 1;
            Point plo = a, phi = b;
            for (int it = 0; it < 48; ++it) {
                Rational mid = (lo + hi) / 2;
                Point pm = exact_at(mid);
                int s = sign(f.eval(pm));
                if (s == 0) {
                    lo = hi = mid;
                    plo = phi = pm;
                    break;
                }
                if (s == sa) {
                    lo = mid;
                    plo = std::move(pm);
                } else {
                    hi = mid;
                    phi = std::move(pm);
                }
            }
            auto x = to_double(exact_at((lo + hi) / 2));
            double v = f.eval(std::span<const double>(x));
            double gn = gradient_norm(grad, x);
            if (std::abs(v) <= zero_tol && gn >= grad_tol)
                return NonsingularZero{std::move(x), v, gn, std::move(plo), std::move(phi)};
        }
    }
    return std::nullopt;
}

std::vector<unsigned char> grid_membership(const Representation& rep, const GridSpec& grid, unsigned threads) {
    if (grid.dimension() != rep.dimension) throw DimensionMismatch("grid and representation dimensions differ");
    std::vector<unsigned char> out(grid.corner_count());
    detail::parallel_for(out.size(), threads, [&](std::size_t i) { out[i] = eval_formula(rep, grid.corner(i)); });
    return out;
}

namespace {

template <class Fn>
void for_each_cell_corner(const GridSpec& grid, std::size_t cell, Fn&& fn) {
    const std::size_t d = grid.dimension(), n = grid.resolution;
    std::vector<std::size_t> idx(d);
    std::size_t rest = cell;
    for (std::size_t a = d; a-- > 0;) {
        idx[a] = rest % n;
        rest /= n;
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
        std::size_t lin = 0;
        for (std::size_t a = 0; a < d; ++a) lin = lin * (n + 1) + idx[a] + ((mask >> a) & 1u);
        fn(lin);
    }
}

std::vector<std::size_t> cell_index(const GridSpec& grid, std::size_t cell) {
    std::vector<std::size_t> idx(grid.dimension());
    for (std::size_t a = grid.dimension(); a-- > 0;) {
        idx[a] = cell % grid.resolution;
        cell /= grid.resolution;
    }
    return idx;
}

Point cell_midpoint(const GridSpec& grid, const std::vector<std::size_t>& idx) {
    Point m(grid.dimension());
    for (std::size_t a = 0; a < grid.dimension(); ++a)
        m[a] = (grid.coordinate(a, idx[a]) + grid.coordinate(a, idx[a] + 1)) / 2;
    return m;
}

std::vector<std::size_t> boundary_cell_ids(const GridSpec& grid, const std::vector<unsigned char>& membership) {
    std::vector<std::size_t> out;
    const std::size_t cells = grid.cell_count();
    for (std::size_t c = 0; c < cells; ++c) {
        bool any_in = false, any_out = false;
        for_each_cell_corner(grid, c, [&](std::size_t lin) { (membership[lin] ? any_in : any_out) = true; });
        if (any_in && any_out) out.push_back(c);
    }
    return out;
}

}  // namespace

std::vector<BoundaryCell> boundary_cells(const Representation& rep, const GridSpec& grid,
                                         const std::vector<unsigned char>& membership) {
    if (membership.size() != grid.corner_count()) throw std::invalid_argument("membership size does not match grid");
    std::vector<BoundaryCell> out;
    for (std::size_t c : boundary_cell_ids(grid, membership)) {
        BoundaryCell cell{cell_index(grid, c), std::numeric_limits<double>::infinity()};
        for_each_cell_corner(grid, c, [&](std::size_t lin) {
            Point x = grid.corner(lin);
            for (const auto& p : rep.polys) cell.min_abs_p = std::min(cell.min_abs_p, std::abs(to_double(p.eval(x))));
        });
        out.push_back(std::move(cell));
    }
    return out;
}

std::vector<BoundaryCell> boundary_cells(const Representation& rep, const GridSpec& grid, unsigned threads) {
    return boundary_cells(rep, grid, grid_membership(rep, grid, threads));
}

SampleReport compare_sets(const Representation& a, const Representation& b, const GridSpec& grid, unsigned threads) {
    if (a.dimension != b.dimension) throw DimensionMismatch("representations have different dimensions");
    auto ma = grid_membership(a, grid, threads);
    auto mb = grid_membership(b, grid, threads);
    SampleReport r;
    r.points_tested = ma.size();
    for (std::size_t i = 0; i < ma.size(); ++i) {
        if (ma[i] == mb[i]) ++r.agreements;
        else if (!r.first_counterexample) r.first_counterexample = grid.corner(i);
    }
    return r;
}

BoundaryContainment boundary_containment(const Representation& rep, const GridSpec& grid, unsigned threads) {
    auto membership = grid_membership(rep, grid, threads);
    auto ids = boundary_cell_ids(grid, membership);
    std::vector<std::vector<Polynomial>> grads;
    for (const auto& p : rep.polys) grads.push_back(gradient(p));
    double diam = 0;
    for (std::size_t a = 0; a < grid.dimension(); ++a) {
        double h = to_double(grid.coordinate(a, 1) - grid.coordinate(a, 0));
        diam += h * h;
    }
    diam = std::sqrt(diam);

    std::vector<unsigned char> ok(ids.size());
    std::vector<Point> mids(ids.size());
    detail::parallel_for(ids.size(), threads, [&](std::size_t k) {
        Point mid = cell_midpoint(grid, cell_index(grid, ids[k]));
        std::vector<Point> probes{mid};
        for_each_cell_corner(grid, ids[k], [&](std::size_t lin) { probes.push_back(grid.corner(lin)); });
        for (std::size_t i = 0; i < rep.polys.size() && !ok[k]; ++i) {
            double lip = 0;
            for (const auto& x : probes) lip = std::max(lip, exact_gradient_norm(grads[i], x));
            if (std::abs(to_double(rep.polys[i].eval(mid))) < 4 * diam * lip) ok[k] = 1;
        }
        mids[k] = std::move(mid);
    });
    BoundaryContainment out;
    out.cells = ids.size();
    for (std::size_t k = 0; k < ids.size(); ++k) {
        if (ok[k]) ++out.satisfied;
        else if (out.failing_midpoints.size() < 8) out.failing_midpoints.push_back(mids[k]);
    }
    return out;
}

std::vector<WitnessProposal> propose_witnesses(const Representation& rep, const Polynomial& f, const GridSpec& grid,
                                               std::size_t max_proposals, const SamplingOptions& options) {
    if (f.dimension() != rep.dimension) throw DimensionMismatch("f and representation dimensions differ");
    auto membership = grid_membership(rep, grid, options.threads);
    auto ids = boundary_cell_ids(grid, membership);
    Rational width = grid.coordinate(0, 1) - grid.coordinate(0, 0);
    for (std::size_t a = 1; a < grid.dimension(); ++a) {
        Rational w = grid.coordinate(a, 1) - grid.coordinate(a, 0);
        if (w < width) width = w;
    }
    using K = LocalShape::Kind;
    std::vector<WitnessProposal> out;
    std::vector<std::size_t> seen;
    for (std::size_t c : ids) {
        if (out.size() >= max_proposals) break;
        std::optional<std::size_t> zero_corner;
        for_each_cell_corner(grid, c, [&](std::size_t lin) {
            if (!zero_corner && sign(f.eval(grid.corner(lin))) == 0) zero_corner = lin;
        });
        if (!zero_corner || std::find(seen.begin(), seen.end(), *zero_corner) != seen.end()) continue;
        seen.push_back(*zero_corner);
        Ball ball(grid.corner(*zero_corner), 2 * width);
        for (int orientation : {1, -1}) {
            Polynomial g = orientation > 0 ? f : -f;
            bool placed = false;
            for (K k : {K::ZeroSet, K::ClosedHalf, K::OpenHalf, K::ComplementOfZero}) {
                if (orientation < 0 && (k == K::ZeroSet || k == K::ComplementOfZero)) continue;
                LocalShape shape(k, g);
                auto report = check_local_shape(rep, shape, ball, options);
                if (!report.full_agreement()) continue;
                report.nonsingular_zero = find_nonsingular_zero(g, ball, options);
                if (!report.nonsingular_zero) continue;
                out.push_back({ball, shape, std::move(report)});
                placed = true;
                break;
            }
            if (placed) break;
        }
    }
    return out;
}

}  // namespace semialg
