#include "semialg/lint.hpp"

#include <sstream>

namespace semialg {

std::string_view to_string(Rule rule) {
    switch (rule) {
    case Rule::T1_I: return "T1-I";
    case Rule::T1_II: return "T1-II";
    case Rule::T1_III: return "T1-III";
    case Rule::T1_IV: return "T1-IV";
    case Rule::C1_I: return "C1-I";
    case Rule::C1_II: return "C1-II";
    case Rule::C_Closed: return "C-closed";
    case Rule::C_Open: return "C-open";
    }
    return "T1-II";
}

std::optional<Rule> parse_rule(std::string_view text) {
    for (auto r : {Rule::T1_I, Rule::T1_II, Rule::T1_III, Rule::T1_IV, Rule::C1_I, Rule::C1_II, Rule::C_Closed,
                   Rule::C_Open})
        if (to_string(r) == text) return r;
    return std::nullopt;
}

std::string_view to_string(Status status) {
    switch (status) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::HypothesisUnsupported: return "HYPOTHESIS-UNSUPPORTED";
    }
    return "FAIL";
}

namespace {

using K = LocalShape::Kind;

void require_dimensions(const Representation& rep, const Polynomial& f, const Witness& w) {
    if (f.dimension() != rep.dimension || w.ball.dimension() != rep.dimension ||
        (w.interior && w.interior->dimension() != rep.dimension))
        throw DimensionMismatch("representation, f and witness dimensions differ");
}

std::string lattice_detail(const SampleReport& r) {
    std::ostringstream out;
    out << r.agreements << " of " << r.points_tested << " lattice points agree";
    if (r.first_counterexample) out << "; first counterexample " << to_string(*r.first_counterexample);
    return out.str();
}

std::vector<HypothesisCheck> witness_hypotheses(const Representation& set, const Polynomial& f, const Witness& w,
                                                bool interior, const LintOptions& options) {
    require_dimensions(set, f, w);
    std::vector<HypothesisCheck> out;
    const Polynomial g = w.negate ? -f : f;
    const LocalShape shape(w.shape, g);

    Irreducibility irr = check_irreducible(f);
    out.push_back({"f-irreducible", irr != Irreducibility::Reducible, std::nullopt,
                   irr == Irreducibility::Unchecked ? "beyond the bounded check; taken as a caller assertion"
                                                    : "bounded check: " + std::string(to_string(irr))});

    bool on_zero = sign(f.eval(w.ball.center)) == 0;
    out.push_back({"center-on-Z(f)", on_zero, std::nullopt,
                   on_zero ? "f(center) = 0 exactly" : "f(center) = " + to_string(f.eval(w.ball.center))});

    SampleReport shape_report = check_local_shape(set, shape, w.ball, options.sampling);
    std::string shape_detail = std::string(to_string(w.shape)) + (w.negate ? " of -f: " : " of f: ") +
                               lattice_detail(shape_report) + (shape_report.vacuous() ? " (vacuous)" : "");
    out.push_back({"local-shape", shape_report.full_agreement(), shape_report, shape_detail});

    SampleReport zero_report;
    zero_report.nonsingular_zero = find_nonsingular_zero(g, w.ball, options.sampling);
    std::string zero_detail = zero_report.nonsingular_zero ? "gradient norm " + std::to_string(zero_report.nonsingular_zero->gradient_norm)
                                                           : "none found within the segment budget";
    out.push_back({"nonsingular-zero", zero_report.nonsingular_zero.has_value(), zero_report, zero_detail});

    if (interior) {
        HypothesisCheck h{"interior-meets-Z(f)", false, std::nullopt, {}};
        if (!w.interior) {
            h.detail = "no interior ball supplied";
        } else {
            auto pts = ball_lattice(*w.interior, options.sampling.per_axis);
            SampleReport r;
            r.points_tested = pts.size();
            bool zero_in_a = false;
            for (const auto& p : pts) {
                bool member = eval_formula(set, p);
                if (member) ++r.agreements;
                else if (!r.first_counterexample) r.first_counterexample = p;
                if (member && sign(f.eval(p)) == 0) zero_in_a = true;
            }
            r.nonsingular_zero = find_nonsingular_zero(f, *w.interior, options.sampling);
            h.supported = r.full_agreement() && zero_in_a && r.nonsingular_zero.has_value();
            h.detail = "interior ball in A: " + lattice_detail(r) + "; lattice point of A on Z(f): " +
                       (zero_in_a ? "yes" : "no") + "; non-singular zero: " + (r.nonsingular_zero ? "yes" : "no");
            h.report = std::move(r);
        }
        out.push_back(std::move(h));
    }
    return out;
}

bool all_supported(const std::vector<HypothesisCheck>& hs) {
    for (const auto& h : hs)
        if (!h.supported) return false;
    return true;
}

std::vector<unsigned> multiplicities(const Representation& rep, const Polynomial& fn) {
    std::vector<unsigned> out;
    for (const auto& p : rep.polys) out.push_back(multiplicity(fn, p));
    return out;
}

std::string multiplicity_evidence(const std::vector<unsigned>& m) {
    std::ostringstream out;
    out << "multiplicity of f:";
    for (std::size_t i = 0; i < m.size(); ++i) out << (i ? ", " : " ") << "p" << i + 1 << "=" << m[i];
    if (m.empty()) out << " (no polynomials)";
    return out.str();
}

bool some_divides(const std::vector<unsigned>& m) {
    for (auto k : m)
        if (k >= 1) return true;
    return false;
}

bool some_odd(const std::vector<unsigned>& m) {
    for (auto k : m)
        if (k % 2 == 1) return true;
    return false;
}

bool divides_and_all_even(const std::vector<unsigned>& m) {
    if (!some_divides(m)) return false;
    for (auto k : m)
        if (k % 2 == 1) return false;
    return true;
}

LintVerdict start(Rule rule, const Representation& rep, const Polynomial& f) {
    if (f.is_constant()) throw LintError("f must be non-constant");
    if (f.dimension() != rep.dimension) throw DimensionMismatch("f and representation dimensions differ");
    LintVerdict v;
    v.rule = rule;
    v.f = normalize(f);
    v.multiplicities = multiplicities(rep, v.f);
    v.irreducibility = check_irreducible(v.f);
    return v;
}

LintVerdict finish(LintVerdict v, bool demand_met, std::string demand) {
    v.demand = std::move(demand);
    v.demand_met = demand_met;
    v.hypotheses_supported = all_supported(v.hypotheses);
    v.status = !v.hypotheses_supported ? Status::HypothesisUnsupported : demand_met ? Status::Pass : Status::Fail;
    v.evidence = multiplicity_evidence(v.multiplicities);
    return v;
}

void require_nonnegative_atoms(const Representation& rep) {
    if (!uses_only_nonnegative_atoms(rep))
        throw LintError("this rule needs a formula whose atoms are all of the form p_i(x) >= 0");
}

void require_shape(const Witness& w, K kind, Rule rule) {
    if (w.shape != kind)
        throw LintError(std::string(to_string(rule)) + " needs a " + std::string(to_string(kind)) + " witness");
}

}  // namespace

LintVerdict lint_boundary(const Representation& rep, const LintOptions& options) {
    LintVerdict v;
    v.rule = Rule::T1_I;
    GridSpec grid = GridSpec::cube(rep.dimension, -options.box_half_width, options.box_half_width, options.grid);
    auto bc = boundary_containment(rep, grid, options.sampling.threads);
    std::ostringstream ev;
    ev << bc.satisfied << " of " << bc.cells << " boundary cells lie within 4 cell diameters (gradient-scaled) of some Z(p_i)";
    v.demand = "bd A is contained in the union of the Z(p_i), checked at boundary-cell scale";
    v.demand_met = bc.satisfied == bc.cells;
    v.hypotheses_supported = true;
    v.status = v.demand_met ? Status::Pass : Status::Fail;
    v.evidence = ev.str();
    if (!bc.failing_midpoints.empty()) v.counterexample = bc.failing_midpoints.front();
    return v;
}

LintVerdict lint_factor(const Representation& rep, const Polynomial& f, const Witness& witness,
                        const LintOptions& options) {
    LintVerdict v = start(Rule::T1_II, rep, f);
    v.hypotheses = witness_hypotheses(rep, f, witness, false, options);
    bool met = some_divides(v.multiplicities);
    return finish(std::move(v), met, "f is a factor of some p_i");
}

LintVerdict lint_odd(const Representation& rep, const Polynomial& f, const Witness& witness,
                     const LintOptions& options) {
    Rule rule;
    if (witness.shape == K::ClosedHalf) rule = Rule::T1_III;
    else if (witness.shape == K::OpenHalf) rule = Rule::T1_IV;
    else throw LintError("odd-multiplicity lint needs a closed or open half witness");
    LintVerdict v = start(rule, rep, f);
    v.hypotheses = witness_hypotheses(rep, f, witness, false, options);
    bool met = some_odd(v.multiplicities);
    return finish(std::move(v), met, "f is an odd-multiplicity factor of some p_i");
}

LintVerdict lint_zero_locally(const Representation& rep, const Polynomial& f, const Witness& witness,
                              const LintOptions& options) {
    require_nonnegative_atoms(rep);
    require_shape(witness, K::ZeroSet, Rule::C1_I);
    LintVerdict v = start(Rule::C1_I, rep, f);
    v.hypotheses = witness_hypotheses(rep, f, witness, false, options);
    std::size_t dividing = 0;
    bool even = false;
    for (auto k : v.multiplicities) {
        if (k >= 1) ++dividing;
        if (k >= 2 && k % 2 == 0) even = true;
    }
    if (even) v.branch = "even-multiplicity";
    else if (dividing >= 2) v.branch = "two-indices";
    bool met = even || dividing >= 2;
    return finish(std::move(v), met,
                  "f divides p_i and p_j for some i != j, or f is an even-multiplicity factor of some p_i");
}

LintVerdict lint_both_shapes(const Representation& rep, const Polynomial& f, const Witness& closed_witness,
                             const Witness& zero_witness, const LintOptions& options) {
    require_nonnegative_atoms(rep);
    require_shape(closed_witness, K::ClosedHalf, Rule::C1_II);
    require_shape(zero_witness, K::ZeroSet, Rule::C1_II);
    LintVerdict v = start(Rule::C1_II, rep, f);
    for (auto& h : witness_hypotheses(rep, f, closed_witness, false, options)) {
        h.name = "closed: " + h.name;
        v.hypotheses.push_back(std::move(h));
    }
    for (auto& h : witness_hypotheses(rep, f, zero_witness, false, options)) {
        h.name = "zero: " + h.name;
        v.hypotheses.push_back(std::move(h));
    }
    bool met = false;
    const auto& m = v.multiplicities;
    for (std::size_t j = 0; j < m.size() && !met; ++j) {
        if (m[j] % 2 == 0) continue;
        for (std::size_t i = 0; i < m.size(); ++i)
            if (i != j && m[i] >= 1) met = true;
    }
    return finish(std::move(v), met, "f is an odd-multiplicity factor of some p_j and a factor of some p_i, i != j");
}

LintVerdict lint_elementary_closed(const Representation& rep, const Polynomial& f, const Witness& witness,
                                   const LintOptions& options) {
    if (rep.kind != RepKind::ElementaryClosed) throw LintError("C-closed needs an elementary closed representation");
    require_shape(witness, K::ZeroSet, Rule::C_Closed);
    LintVerdict v = start(Rule::C_Closed, rep, f);
    v.hypotheses = witness_hypotheses(rep, f, witness, true, options);
    bool met = divides_and_all_even(v.multiplicities);
    return finish(std::move(v), met,
                  "f divides some p_i, and every p_i divisible by f has even multiplicity");
}

LintVerdict lint_elementary_open(const Representation& rep, const Polynomial& f, const Witness& witness,
                                 const LintOptions& options) {
    if (rep.kind != RepKind::ElementaryOpen) throw LintError("C-open needs an elementary open representation");
    require_shape(witness, K::ComplementOfZero, Rule::C_Open);
    LintVerdict v = start(Rule::C_Open, rep, f);
    v.hypotheses = witness_hypotheses(rep, f, witness, false, options);
    bool met = divides_and_all_even(v.multiplicities);
    return finish(std::move(v), met,
                  "f divides some p_i, and every p_i divisible by f has even multiplicity");
}

LintVerdict run_lint(Rule rule, const Representation& rep, const Polynomial& f, std::span<const Witness> witnesses,
                     const LintOptions& options) {
    if (rule == Rule::T1_I) return lint_boundary(rep, options);
    if (witnesses.empty()) throw LintError(std::string(to_string(rule)) + " needs a witness");
    switch (rule) {
    case Rule::T1_II: return lint_factor(rep, f, witnesses[0], options);
    case Rule::T1_III: require_shape(witnesses[0], K::ClosedHalf, rule); return lint_odd(rep, f, witnesses[0], options);
    case Rule::T1_IV: require_shape(witnesses[0], K::OpenHalf, rule); return lint_odd(rep, f, witnesses[0], options);
    case Rule::C1_I: return lint_zero_locally(rep, f, witnesses[0], options);
    case Rule::C1_II:
        if (witnesses.size() < 2) throw LintError("C1-II needs a closed and a zero witness");
        return lint_both_shapes(rep, f, witnesses[0], witnesses[1], options);
    case Rule::C_Closed: return lint_elementary_closed(rep, f, witnesses[0], options);
    case Rule::C_Open: return lint_elementary_open(rep, f, witnesses[0], options);
    default: break;
    }
    throw LintError("unknown rule");
}

ContradictionResult derive_contradiction(const Representation& set, const Polynomial& f, RepKind kind,
                                         std::span<const std::pair<Witness, Rule>> witnesses,
                                         const LintOptions& options) {
    if (witnesses.size() < 2) throw std::invalid_argument("a contradiction needs at least two witnesses");
    if (kind != RepKind::ElementaryClosed && kind != RepKind::ElementaryOpen)
        throw std::invalid_argument("contradictions are derived for elementary closed or open kinds");
    if (f.is_constant()) throw LintError("f must be non-constant");
    for (const auto& [w, rule] : witnesses) require_dimensions(set, f, w);

    const Rule even_rule = kind == RepKind::ElementaryClosed ? Rule::C_Closed : Rule::C_Open;
    std::vector<Requirement> reqs;
    std::optional<std::size_t> odd, even;
    for (const auto& [w, rule] : witnesses) {
        Requirement r;
        r.rule = rule;
        r.witness = w;
        bool interior = false;
        switch (rule) {
        case Rule::T1_II: r.demand = "f is a factor of some p_i"; break;
        case Rule::T1_III:
            require_shape(w, K::ClosedHalf, rule);
            r.demand = "f is an odd-multiplicity factor of some p_i";
            break;
        case Rule::T1_IV:
            require_shape(w, K::OpenHalf, rule);
            r.demand = "f is an odd-multiplicity factor of some p_i";
            break;
        case Rule::C_Closed:
        case Rule::C_Open:
            if (rule != even_rule)
                throw LintError(std::string(to_string(rule)) + " does not apply to kind " + std::string(to_string(kind)));
            require_shape(w, rule == Rule::C_Closed ? K::ZeroSet : K::ComplementOfZero, rule);
            interior = rule == Rule::C_Closed;
            r.demand = "f divides some p_i, and every p_i divisible by f has even multiplicity";
            break;
        default: throw LintError(std::string(to_string(rule)) + " cannot take part in a contradiction");
        }
        r.hypotheses = witness_hypotheses(set, f, w, interior, options);
        r.supported = all_supported(r.hypotheses);
        if (r.supported) {
            if ((rule == Rule::T1_III || rule == Rule::T1_IV) && !odd) odd = reqs.size();
            if (rule == even_rule && !even) even = reqs.size();
        }
        reqs.push_back(std::move(r));
    }
    if (odd && even) {
        Certificate c;
        c.kind = kind;
        c.f = normalize(f);
        c.odd = reqs[*odd];
        c.even = reqs[*even];
        c.irreducibility = check_irreducible(c.f);
        const char* form = kind == RepKind::ElementaryClosed ? "(p_1,...,p_m)_{>=0}" : "(p_1,...,p_m)_{>0}";
        c.conclusion = std::string("no representation ") + form + " of this set exists: " +
                       std::string(to_string(c.odd.rule)) + " forces f to be an odd-multiplicity factor of some p_i, " +
                       std::string(to_string(c.even.rule)) +
                       " forces every multiplicity of f to be even; certificate relative to the asserted witnesses, "
                       "whose hypotheses were verified at sampled scale";
        return c;
    }
    Consistent out;
    if (!odd && !even) out.reason = "no supported odd demand and no supported even demand";
    else if (!odd) out.reason = "no supported odd-multiplicity demand (T1-III/T1-IV)";
    else out.reason = std::string("no supported all-even demand (") + std::string(to_string(even_rule)) + ")";
    out.requirements = std::move(reqs);
    return out;
}

}  // namespace semialg
