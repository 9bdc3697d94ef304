#include "semialg/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace semialg;
using nlohmann::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_fail = 1;
constexpr int exit_input = 2;
constexpr int exit_unsupported = 3;
constexpr int exit_usage = 64;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input rejected: grammar errors, invalid polygons, unwritable output.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Flags {
    unsigned threads = 1;
    std::size_t grid = 128;
    std::size_t per_axis = 33;
    double tol_zero = 1e-9;
    double tol_grad = 1e-4;
    std::optional<std::uint64_t> seed;
    bool timing = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct SourceFile {
    std::string path;
    std::string text;  // comments blanked, offsets preserved
};

SourceFile load(const std::string& path) { return {path, strip_comments(read_file(path))}; }

[[noreturn]] void rethrow_parse(const SourceFile& src, const ParseError& e) {
    auto [line, col] = line_column(src.text, e.position());
    throw InputError(src.path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.detail() +
                     " (offset " + std::to_string(e.position()) + ")");
}

Representation parse_rep(const SourceFile& src, std::optional<std::size_t> dim) {
    try {
        return parse_formula(src.text, dim);
    } catch (const ParseError& e) {
        rethrow_parse(src, e);
    }
}

Polynomial parse_poly(const SourceFile& src, std::optional<std::size_t> dim) {
    try {
        return parse_polynomial(src.text, dim);
    } catch (const ParseError& e) {
        rethrow_parse(src, e);
    }
}

Point parse_point_arg(const std::string& text, const std::string& what) {
    auto p = parse_point(text);
    if (!p || p->empty()) throw UsageError("malformed " + what + ": \"" + text + "\"");
    return *p;
}

Rational parse_rational_arg(const std::string& text, const std::string& what) {
    auto q = parse_rational(text);
    if (!q) throw UsageError("malformed " + what + ": \"" + text + "\"");
    return *q;
}

Ball parse_ball(const std::string& text) {
    auto semi = text.find(';');
    if (semi == std::string::npos) throw UsageError("ball must be CENTER;RADIUS, got \"" + text + "\"");
    auto center = parse_point_arg(text.substr(0, semi), "ball center");
    auto radius = parse_rational_arg(text.substr(semi + 1), "ball radius");
    if (radius <= 0) throw UsageError("ball radius must be positive");
    return Ball(std::move(center), std::move(radius));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) return out;
        start = pos + 1;
    }
}

// RULE:SHAPE:CENTER;RADIUS[:ICENTER;IRADIUS], or a bare "T1-I".
std::pair<Rule, std::optional<Witness>> parse_witness(const std::string& spec) {
    auto parts = split(spec, ':');
    auto rule = parse_rule(parts[0]);
    if (!rule) throw UsageError("unknown rule \"" + parts[0] + "\"");
    if (*rule == Rule::T1_I) {
        if (parts.size() != 1) throw UsageError("T1-I takes no witness ball");
        return {*rule, std::nullopt};
    }
    if (parts.size() < 3 || parts.size() > 4)
        throw UsageError("witness must be RULE:SHAPE:CENTER;RADIUS[:CENTER;RADIUS], got \"" + spec + "\"");
    Witness w;
    std::string shape = parts[1];
    if (!shape.empty() && shape.front() == '-') {
        w.negate = true;
        shape.erase(0, 1);
    }
    auto kind = parse_shape_kind(shape);
    if (!kind) throw UsageError("unknown shape \"" + parts[1] + "\" (zero, closed, open, complement)");
    w.shape = *kind;
    w.ball = parse_ball(parts[2]);
    if (parts.size() == 4) w.interior = parse_ball(parts[3]);
    return {*rule, std::move(w)};
}

std::vector<Interval> parse_box(const std::string& text, std::size_t dim) {
    auto parts = split(text, ',');
    std::vector<Rational> v;
    for (const auto& p : parts) v.push_back(parse_rational_arg(p, "box bound"));
    std::vector<Interval> box;
    if (v.size() == 2) {
        for (std::size_t a = 0; a < dim; ++a) box.push_back({v[0], v[1]});
    } else if (v.size() == 2 * dim) {
        for (std::size_t a = 0; a < dim; ++a) box.push_back({v[2 * a], v[2 * a + 1]});
    } else {
        throw UsageError("box needs LO,HI or " + std::to_string(2 * dim) + " bounds");
    }
    for (const auto& i : box)
        if (!(i.lo < i.hi)) throw UsageError("box bounds must satisfy LO < HI");
    return box;
}

GridSpec make_grid(std::vector<Interval> box, std::size_t resolution) {
    try {
        return GridSpec(std::move(box), resolution);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

json flags_json(const Flags& f) {
    json out{{"grid", f.grid}, {"per_axis", f.per_axis}, {"tol_zero", f.tol_zero}, {"tol_grad", f.tol_grad}};
    out["seed"] = f.seed ? json(*f.seed) : json(nullptr);
    return out;
}

LintOptions lint_options(const Flags& f) {
    LintOptions o;
    o.grid = f.grid;
    o.sampling.per_axis = f.per_axis;
    o.sampling.tol_zero = f.tol_zero;
    o.sampling.tol_grad = f.tol_grad;
    o.sampling.threads = f.threads;
    return o;
}

void emit(json report, const Flags& flags, std::chrono::steady_clock::time_point start) {
    if (flags.timing)
        report["timing"] = {
            {"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
    std::cout << report.dump(2) << '\n';
}

int cmd_eval(const std::string& file, const std::vector<std::string>& coords) {
    std::string joined;
    for (const auto& c : coords) joined += c + " ";
    auto x = parse_point_arg(joined, "point");
    auto rep = parse_rep(load(file), x.size());
    auto signs = signs_at(rep, x);
    std::cout << (eval_formula(rep, x) ? "true" : "false") << '\n';
    for (std::size_t i = 0; i < rep.polys.size(); ++i) {
        auto v = rep.polys[i].eval(x);
        std::cout << "p" << i + 1 << " = " << rep.polys[i].to_string() << ": " << (signs[i] > 0 ? "+1" : signs[i] < 0 ? "-1" : "0")
                  << " (" << v.get_str() << ")\n";
    }
    return exit_ok;
}

int cmd_parse(const std::string& file, bool as_json) {
    auto rep = parse_rep(load(file), std::nullopt);
    if (as_json) {
        std::cout << to_json(rep).dump(2) << '\n';
    } else {
        std::cout << print_formula(rep) << '\n' << "dimension " << rep.dimension << ", kind " << to_string(rep.kind)
                  << '\n';
    }
    return exit_ok;
}

int cmd_lint(const Flags& flags, const std::string& set_file, const std::string& f_file,
             const std::vector<std::string>& specs, bool certificate, const std::string& kind_name) {
    auto start = std::chrono::steady_clock::now();
    if (specs.empty()) throw UsageError("at least one --witness is required");
    std::vector<std::pair<Rule, std::optional<Witness>>> ws;
    for (const auto& s : specs) ws.push_back(parse_witness(s));

    auto set_src = load(set_file);
    auto f_src = load(f_file);
    std::size_t dim = parse_rep(set_src, std::nullopt).dimension;
    dim = std::max(dim, parse_poly(f_src, std::nullopt).dimension());
    for (const auto& [rule, w] : ws)
        if (w) dim = std::max({dim, w->ball.dimension(), w->interior ? w->interior->dimension() : 0});
    auto rep = parse_rep(set_src, dim);
    auto f = parse_poly(f_src, dim);
    for (const auto& [rule, w] : ws)
        if (w && (w->ball.dimension() != dim || (w->interior && w->interior->dimension() != dim)))
            throw UsageError("witness centers need " + std::to_string(dim) + " coordinates");
    auto options = lint_options(flags);

    json witnesses = json::array();
    for (const auto& [rule, w] : ws)
        witnesses.push_back({{"rule", std::string(to_string(rule))}, {"witness", w ? to_json(*w) : json(nullptr)}});
    json input{{"set_file", set_file},
               {"formula", print_formula(rep)},
               {"kind", std::string(to_string(rep.kind))},
               {"f_file", f_file},
               {"f", f.to_string()},
               {"witnesses", witnesses},
               {"flags", flags_json(flags)}};

    try {
        if (certificate) {
            std::optional<RepKind> kind;
            if (!kind_name.empty()) {
                kind = parse_rep_kind(kind_name);
                if (!kind || (*kind != RepKind::ElementaryClosed && *kind != RepKind::ElementaryOpen))
                    throw UsageError("--kind must be elementary-closed or elementary-open");
            }
            std::vector<std::pair<Witness, Rule>> pairs;
            for (const auto& [rule, w] : ws) {
                if (!w) throw UsageError("T1-I has no witness and cannot enter a certificate");
                if (!kind && rule == Rule::C_Closed) kind = RepKind::ElementaryClosed;
                if (!kind && rule == Rule::C_Open) kind = RepKind::ElementaryOpen;
                pairs.emplace_back(*w, rule);
            }
            if (!kind) throw UsageError("--certificate needs a C-closed or C-open witness, or --kind");
            input["certificate_kind"] = std::string(to_string(*kind));
            auto result = derive_contradiction(rep, f, *kind, pairs, options);
            emit(make_report("lint", std::move(input), to_json(result)), flags, start);
            return std::holds_alternative<Certificate>(result) ? exit_fail : exit_ok;
        }

        json verdicts = json::array();
        bool any_fail = false, any_unsupported = false;
        for (std::size_t i = 0; i < ws.size(); ++i) {
            const auto& [rule, w] = ws[i];
            LintVerdict v;
            if (rule == Rule::T1_I) {
                v = lint_boundary(rep, options);
            } else if (rule == Rule::C1_II) {
                if (i + 1 >= ws.size() || ws[i + 1].first != Rule::C1_II)
                    throw UsageError("C1-II takes two consecutive witnesses: closed, then zero");
                v = lint_both_shapes(rep, f, *w, *ws[i + 1].second, options);
                ++i;
            } else {
                v = run_lint(rule, rep, f, std::span(&*w, 1), options);
            }
            any_fail = any_fail || v.status == Status::Fail;
            any_unsupported = any_unsupported || v.status == Status::HypothesisUnsupported;
            verdicts.push_back(to_json(v));
        }
        emit(make_report("lint", std::move(input), {{"verdicts", verdicts}}), flags, start);
        return any_fail ? exit_fail : any_unsupported ? exit_unsupported : exit_ok;
    } catch (const LintError& e) {
        throw UsageError(e.what());
    }
}

int cmd_raster(const Flags& flags, const std::string& file, const std::string& box_text, std::size_t resolution,
               const std::string& out_path) {
    if (resolution < 2 || resolution > 4096) throw UsageError("resolution must be in [2, 4096]");
    auto rep = parse_rep(load(file), 2);
    auto grid = make_grid(parse_box(box_text, 2), resolution);
    auto inside = grid_membership(rep, grid, flags.threads);
    auto boundary = boundary_cells(rep, grid, inside);
    const std::size_t n = resolution, corners = n + 1;
    std::vector<unsigned char> pixels(n * n);
    // cell (i1, i2) -> row n-1-i2, column i1; the top row is the largest x2
    for (std::size_t i1 = 0; i1 < n; ++i1)
        for (std::size_t i2 = 0; i2 < n; ++i2) pixels[(n - 1 - i2) * n + i1] = inside[i1 * corners + i2] ? 255 : 0;
    for (const auto& c : boundary) pixels[(n - 1 - c.index[1]) * n + c.index[0]] = 128;

    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw InputError("cannot write " + out_path);
    out << "P5\n" << n << ' ' << n << "\n255\n";
    out.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
    if (!out) throw InputError("cannot write " + out_path);
    return exit_ok;
}

PolytopeH load_polygon(const std::string& path) {
    auto text = read_file(path);
    try {
        return polygon_from_vertices(parse_vertex_list(text));
    } catch (const PolytopeError& e) {
        std::string msg = path + ": " + e.what();
        if (e.triple())
            msg += " [triple " + std::to_string((*e.triple())[0]) + " " + std::to_string((*e.triple())[1]) + " " +
                   std::to_string((*e.triple())[2]) + "]";
        throw InputError(msg);
    } catch (const std::invalid_argument& e) {
        throw InputError(path + ": " + e.what());
    }
}

int cmd_polygon(const Flags& flags, const std::string& vtx, const std::string& q1_file, const std::string& q2_file) {
    auto start = std::chrono::steady_clock::now();
    auto polygon = load_polygon(vtx);
    auto q1 = parse_poly(load(q1_file), 2), q2 = parse_poly(load(q2_file), 2);
    if (q1.is_zero() || q2.is_zero()) throw InputError("q1 and q2 must be nonzero");
    auto r = check_polygon_structure(polygon, q1, q2, flags.grid, flags.threads);
    json input{{"vertices_file", vtx},
               {"polytope", to_json(polygon)},
               {"q1", q1.to_string()},
               {"q2", q2.to_string()},
               {"flags", flags_json(flags)}};
    emit(make_report("polygon", std::move(input), to_json(r)), flags, start);
    return exit_ok;
}

int cmd_factor_map(const Flags& flags, const std::string& vtx, const std::vector<std::string>& q_files) {
    auto start = std::chrono::steady_clock::now();
    auto polygon = load_polygon(vtx);
    std::vector<Polynomial> qs;
    json q_text = json::array();
    for (const auto& path : q_files) {
        qs.push_back(parse_poly(load(path), 2));
        if (qs.back().is_zero()) throw InputError(path + ": q must be nonzero");
        q_text.push_back(qs.back().to_string());
    }
    if (qs.size() != polygon.dimension) throw UsageError("a polygon needs exactly 2 q files");
    auto r = check_polytope_factor_map(polygon, qs, flags.grid, flags.threads);
    json input{{"vertices_file", vtx}, {"polytope", to_json(polygon)}, {"qs", q_text}, {"flags", flags_json(flags)}};
    emit(make_report("factor-map", std::move(input), to_json(r)), flags, start);
    return r.pass ? exit_ok : exit_fail;
}

int cmd_compare(const Flags& flags, const std::string& a_file, const std::string& b_file, const std::string& box_text) {
    auto start = std::chrono::steady_clock::now();
    auto a_src = load(a_file), b_src = load(b_file);
    std::size_t dim = std::max(parse_rep(a_src, std::nullopt).dimension, parse_rep(b_src, std::nullopt).dimension);
    auto a = parse_rep(a_src, dim), b = parse_rep(b_src, dim);
    auto grid = make_grid(parse_box(box_text, dim), flags.grid);
    auto r = compare_sets(a, b, grid, flags.threads);
    json input{{"a_file", a_file},
               {"a", print_formula(a)},
               {"b_file", b_file},
               {"b", print_formula(b)},
               {"grid", to_json(grid)},
               {"flags", flags_json(flags)}};
    emit(make_report("compare", std::move(input), to_json(r)), flags, start);
    return r.full_agreement() ? exit_ok : exit_fail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semi-algebraic representation checks with exact arithmetic"};
    app.set_version_flag("--version", SEMIALG_VERSION);
    app.require_subcommand(1);
    app.fallthrough();

    Flags flags;
    app.add_option("--threads", flags.threads, "Worker threads for lattice work (0: hardware)")->capture_default_str();
    app.add_option("--grid", flags.grid, "Grid resolution per axis")->capture_default_str()->check(CLI::Range(2, 4096));
    app.add_option("--per-axis", flags.per_axis, "Lattice points per axis in witness balls")
        ->capture_default_str()
        ->check(CLI::Range(2, 1025));
    app.add_option("--tol-zero", flags.tol_zero, "Relative tolerance for |f| at a nonsingular zero")->capture_default_str();
    app.add_option("--tol-grad", flags.tol_grad, "Relative lower bound for |grad f| there")->capture_default_str();
    app.add_option("--seed", flags.seed, "Seed for randomized drivers; echoed in reports");
    app.add_flag("--timing", flags.timing, "Add wall-clock timing to JSON reports");

    std::string file, f_file, box = "-3,3", out_path, kind_name, a_file, b_file, vtx, q1_file, q2_file;
    std::vector<std::string> coords, witnesses, q_files;
    std::size_t resolution = 256;
    bool as_json = false, certificate = false;

    auto* eval = app.add_subcommand("eval", "Membership and exact signs at a point");
    eval->add_option("formula", file, "Formula file")->required();
    eval->add_option("point", coords, "Coordinates, e.g. \"0 1/2\"")->required();

    auto* parse = app.add_subcommand("parse", "Print the canonical formula and its kind");
    parse->add_option("formula", file, "Formula file")->required();
    parse->add_flag("--json", as_json, "Print the representation as JSON");

    auto* lint = app.add_subcommand("lint", "Run theorem lints against witnesses (JSON report)");
    lint->add_option("formula", file, "Formula file describing the set")->required();
    lint->add_option("f", f_file, "File holding the polynomial f")->required();
    lint->add_option("-w,--witness", witnesses, "RULE:SHAPE:CENTER;RADIUS[:CENTER;RADIUS]")->required();
    lint->add_flag("--certificate", certificate, "Combine the witnesses into a non-representability certificate");
    lint->add_option("--kind", kind_name, "Kind refuted by --certificate");

    auto* raster = app.add_subcommand("raster", "Write a membership raster as binary PGM");
    raster->add_option("formula", file, "Formula file in x1, x2")->required();
    raster->add_option("-o,--output", out_path, "Output .pgm path")->required();
    raster->add_option("--box", box, "LO,HI or X1LO,X1HI,X2LO,X2HI")->capture_default_str();
    raster->add_option("--resolution", resolution, "Pixels per side (at most 4096)")->capture_default_str();

    auto* polygon = app.add_subcommand("polygon", "Two-polynomial polygon structure report");
    polygon->add_option("vertices", vtx, "Vertex file, counterclockwise")->required();
    polygon->add_option("q1", q1_file, "First polynomial file")->required();
    polygon->add_option("q2", q2_file, "Second polynomial file")->required();

    auto* factor_map = app.add_subcommand("factor-map", "Facet-to-q factor map of a polygon");
    factor_map->add_option("vertices", vtx, "Vertex file, counterclockwise")->required();
    factor_map->add_option("qs", q_files, "One polynomial file per dimension")->required();

    auto* compare = app.add_subcommand("compare", "Compare two sets on a grid");
    compare->add_option("a", a_file, "First formula file")->required();
    compare->add_option("b", b_file, "Second formula file")->required();
    compare->add_option("--box", box, "LO,HI or per-axis bounds")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*eval) return cmd_eval(file, coords);
        if (*parse) return cmd_parse(file, as_json);
        if (*lint) return cmd_lint(flags, file, f_file, witnesses, certificate, kind_name);
        if (*raster) return cmd_raster(flags, file, box, resolution, out_path);
        if (*polygon) return cmd_polygon(flags, vtx, q1_file, q2_file);
        if (*factor_map) return cmd_factor_map(flags, vtx, q_files);
        if (*compare) return cmd_compare(flags, a_file, b_file, box);
    } catch (const UsageError& e) {
        std::cerr << "semialg: " << e.what() << '\n';
        return exit_usage;
    } catch (const InputError& e) {
        std::cerr << "semialg: " << e.what() << '\n';
        return exit_input;
    } catch (const std::exception& e) {
        std::cerr << "semialg: " << e.what() << '\n';
        return exit_input;
    }
    return exit_usage;
}
