#pragma once

#include "semialg/factor.hpp"
#include "semialg/geom.hpp"

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace semialg {

enum class Rule { T1_I, T1_II, T1_III, T1_IV, C1_I, C1_II, C_Closed, C_Open };

/// "T1-I", ..., "C-closed", "C-open"
std::string_view to_string(Rule rule);
std::optional<Rule> parse_rule(std::string_view text);

enum class Status { Pass, Fail, HypothesisUnsupported };

/// "PASS", "FAIL", "HYPOTHESIS-UNSUPPORTED"
std::string_view to_string(Status status);

/// A lint was called outside its preconditions (wrong shape, kind or atoms).
class LintError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Instantiates a theorem's "there exist a and eps": the ball, and the local
/// shape of A in it, stated for f (or -f when `negate`).
struct Witness {
    Ball ball;
    LocalShape::Kind shape = LocalShape::Kind::ZeroSet;
    bool negate = false;
    /// For the interior condition of the closed-set corollary: a ball inside A
    /// that Z(f) crosses.
    std::optional<Ball> interior;
};

struct HypothesisCheck {
    std::string name;
    bool supported = false;
    std::optional<SampleReport> report;
    std::string detail;
};

struct LintVerdict {
    Rule rule = Rule::T1_II;
    Status status = Status::HypothesisUnsupported;
    Polynomial f;                         // normalized
    std::vector<unsigned> multiplicities;  // multiplicity of f in each p_i
    bool demand_met = false;
    bool hypotheses_supported = false;
    std::string demand;
    std::string evidence;
    std::string branch;  // C1-I: "even-multiplicity" or "two-indices"
    std::vector<HypothesisCheck> hypotheses;
    Irreducibility irreducibility = Irreducibility::Unchecked;
    std::optional<Point> counterexample;  // T1-I
};

struct LintOptions {
    SamplingOptions sampling;
    std::size_t grid = 128;  // T1-I boundary grid resolution
    Rational box_half_width{3};
};

/// T1-I: bd A lies on the zero sets, at cell scale on [-w, w]^d.
LintVerdict lint_boundary(const Representation& rep, const LintOptions& options = {});

/// T1-II: f divides some p_i.
LintVerdict lint_factor(const Representation& rep, const Polynomial& f, const Witness& witness,
                        const LintOptions& options = {});

/// T1-III (ClosedHalf) / T1-IV (OpenHalf): f has odd multiplicity in some p_i.
LintVerdict lint_odd(const Representation& rep, const Polynomial& f, const Witness& witness,
                     const LintOptions& options = {});

/// C1-I (ZeroSet, only ">= 0" atoms): f divides two p's, or some p
/// with even multiplicity.
LintVerdict lint_zero_locally(const Representation& rep, const Polynomial& f, const Witness& witness,
                              const LintOptions& options = {});

/// C1-II: odd in some p_j and dividing some other p_i.
LintVerdict lint_both_shapes(const Representation& rep, const Polynomial& f, const Witness& closed_witness,
                             const Witness& zero_witness, const LintOptions& options = {});

/// C-closed: f divides some p_i and every such multiplicity is even.
LintVerdict lint_elementary_closed(const Representation& rep, const Polynomial& f, const Witness& witness,
                                   const LintOptions& options = {});

/// C-open: same conclusion, ComplementOfZero witness.
LintVerdict lint_elementary_open(const Representation& rep, const Polynomial& f, const Witness& witness,
                                 const LintOptions& options = {});

/// Dispatch by rule; lint_both_shapes takes the first two witnesses.
LintVerdict run_lint(Rule rule, const Representation& rep, const Polynomial& f, std::span<const Witness> witnesses,
                     const LintOptions& options = {});

/// What one witness forces on every representation of the given kind.
struct Requirement {
    Rule rule = Rule::T1_II;
    Witness witness;
    std::string demand;
    bool supported = false;
    std::vector<HypothesisCheck> hypotheses;
};

/// Two requirements on the same irreducible f that no polynomial list can
/// meet together (some multiplicity odd vs all multiplicities even).
struct Certificate {
    RepKind kind = RepKind::ElementaryClosed;
    Polynomial f;
    Requirement odd;
    Requirement even;
    Irreducibility irreducibility = Irreducibility::Unchecked;
    std::string conclusion;
};

struct Consistent {
    std::string reason;
    std::vector<Requirement> requirements;
};

using ContradictionResult = std::variant<Certificate, Consistent>;

/// `set` is any representation of A; witness hypotheses are checked on it.
/// Rules: T1-III/T1-IV give the odd demand; C-closed (kind elementary-closed)
/// or C-open (kind elementary-open) give the all-even demand.
ContradictionResult derive_contradiction(const Representation& set, const Polynomial& f, RepKind kind,
                                         std::span<const std::pair<Witness, Rule>> witnesses,
                                         const LintOptions& options = {});

}  // namespace semialg
