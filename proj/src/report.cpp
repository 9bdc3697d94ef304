#include "semialg/report.hpp"

namespace semialg {

using nlohmann::json;

namespace {

template <class T>
json optional_json(const std::optional<T>& v) {
    return v ? to_json(*v) : json(nullptr);
}

json poly_text(const Polynomial& p) { return p.to_string(); }

}  // namespace

json to_json(const Rational& q) { return q.get_str(); }

json to_json(const Point& p) {
    json out = json::array();
    for (const auto& q : p) out.push_back(to_json(q));
    return out;
}

json to_json(const Ball& b) { return {{"center", to_json(b.center)}, {"radius", to_json(b.radius)}}; }

json to_json(const GridSpec& g) {
    json box = json::array();
    for (const auto& i : g.box) box.push_back({to_json(i.lo), to_json(i.hi)});
    return {{"box", box}, {"resolution", g.resolution}};
}

json to_json(const Witness& w) {
    return {{"ball", to_json(w.ball)},
            {"shape", std::string(to_string(w.shape))},
            {"negate", w.negate},
            {"interior", optional_json(w.interior)}};
}

json to_json(const SampleReport& r) {
    json out{{"points_tested", r.points_tested},
             {"agreements", r.agreements},
             {"full_agreement", r.full_agreement()},
             {"first_counterexample", optional_json(r.first_counterexample)},
             {"nonsingular_zero", nullptr}};
    if (r.nonsingular_zero) {
        const auto& z = *r.nonsingular_zero;
        out["nonsingular_zero"] = {{"point", z.point},
                                   {"value", z.value},
                                   {"gradient_norm", z.gradient_norm},
                                   {"bracket_lo", to_json(z.bracket_lo)},
                                   {"bracket_hi", to_json(z.bracket_hi)}};
    }
    return out;
}

json to_json(const HypothesisCheck& h) {
    return {{"name", h.name}, {"supported", h.supported}, {"detail", h.detail}, {"sample", optional_json(h.report)}};
}

json to_json(const LintVerdict& v) {
    json hyps = json::array();
    for (const auto& h : v.hypotheses) hyps.push_back(to_json(h));
    return {{"rule", std::string(to_string(v.rule))},
            {"status", std::string(to_string(v.status))},
            {"f", poly_text(v.f)},
            {"multiplicities", v.multiplicities},
            {"demand", v.demand},
            {"demand_met", v.demand_met},
            {"hypotheses_supported", v.hypotheses_supported},
            {"evidence", v.evidence},
            {"branch", v.branch.empty() ? json(nullptr) : json(v.branch)},
            {"irreducibility", std::string(to_string(v.irreducibility))},
            {"hypotheses", hyps},
            {"counterexample", optional_json(v.counterexample)}};
}

json to_json(const Requirement& r) {
    json hyps = json::array();
    for (const auto& h : r.hypotheses) hyps.push_back(to_json(h));
    return {{"rule", std::string(to_string(r.rule))},
            {"witness", to_json(r.witness)},
            {"demand", r.demand},
            {"supported", r.supported},
            {"hypotheses", hyps}};
}

json to_json(const ContradictionResult& r) {
    if (const auto* c = std::get_if<Certificate>(&r)) {
        return {{"type", "certificate"},
                {"kind", std::string(to_string(c->kind))},
                {"f", poly_text(c->f)},
                {"irreducibility", std::string(to_string(c->irreducibility))},
                {"odd", to_json(c->odd)},
                {"even", to_json(c->even)},
                {"conclusion", c->conclusion}};
    }
    const auto& c = std::get<Consistent>(r);
    json reqs = json::array();
    for (const auto& q : c.requirements) reqs.push_back(to_json(q));
    return {{"type", "consistent"}, {"reason", c.reason}, {"requirements", reqs}};
}

json to_json(const PolytopeH& p) {
    json facets = json::array(), vertices = json::array();
    for (const auto& f : p.facets) facets.push_back(poly_text(f));
    for (const auto& v : p.vertices) vertices.push_back(to_json(v));
    return {{"dimension", p.dimension}, {"facets", facets}, {"vertices", vertices}};
}

json to_json(const FactorMapReport& r) {
    json assignment = json::array();
    for (const auto& a : r.assignment) {
        json qs = json::array();
        for (auto [j, k] : a.qs) qs.push_back({{"q", j + 1}, {"multiplicity", k}});
        assignment.push_back({{"facet", a.facet + 1}, {"qs", qs}});
    }
    return {{"verdict", r.pass ? "PASS" : "FAIL"},
            {"multiplicity", r.multiplicity},
            {"assignment", assignment},
            {"violations", r.violations},
            {"grid", to_json(r.grid)},
            {"agreement", to_json(r.agreement)},
            {"conditional_on", "P = (q_1, ..., q_d)_{>=0}, evidenced only by grid agreement"}};
}

json to_json(const PolygonStructure& r) {
    auto one_based = [](const std::vector<std::size_t>& v) {
        json out = json::array();
        for (auto i : v) out.push_back(i + 1);
        return out;
    };
    auto flag = [](const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); };
    json g2_values = json::array();
    for (const auto& v : r.g2_at_vertices) g2_values.push_back(to_json(v));
    json obstruction = nullptr;
    if (r.obstruction_edges)
        obstruction = {{"edges", {r.obstruction_edges->first + 1, r.obstruction_edges->second + 1}},
                       {"point", to_json(*r.obstruction_point)}};
    return {{"edges", r.edges},
            {"k", r.k},
            {"I1", one_based(r.index_sets[0])},
            {"I2", one_based(r.index_sets[1])},
            {"split", r.split},
            {"carrier", r.carrier ? json(*r.carrier + 1) : json(nullptr)},
            {"g1", r.g1 ? json(r.g1->to_string()) : json(nullptr)},
            {"g2", r.g2 ? json(r.g2->to_string()) : json(nullptr)},
            {"conditions",
             {{"1_odd_multiplicities", flag(r.odd_multiplicities)},
              {"2_g_not_divisible", flag(r.g_not_divisible)},
              {"3_g2_vanishes_at_vertices", flag(r.g2_vanishes)}}},
            {"g2_at_vertices", g2_values},
            {"obstruction", obstruction},
            {"has_parallel_edges", r.has_parallel_edges},
            {"notes", r.notes},
            {"grid", to_json(r.grid)},
            {"agreement", to_json(r.agreement)}};
}

json claims() {
    return {{"exact",
             "divisibility, multiplicities, irreducibility findings, exact signs and vertex evaluations are computed "
             "in exact rational arithmetic"},
            {"sampled",
             "local-shape hypotheses, nonsingular zeros, boundary containment and set agreement are evidenced on "
             "finite lattices only; a PASS is consistent with the theorem, not a proof of its hypotheses"},
            {"certificates", "a certificate is relative to the asserted witnesses"}};
}

json make_report(const std::string& command, json input, json result) {
    return {{"schema_version", report_schema_version},
            {"tool", {{"name", "semialg"}, {"version", SEMIALG_VERSION}}},
            {"command", command},
            {"input", std::move(input)},
            {"claims", claims()},
            {"result", std::move(result)}};
}

}  // namespace semialg
