#pragma once

#include "semialg/polynomial.hpp"

#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace semialg {

/// Non-empty subset of {-1, 0, +1}: the allowed signs of an atom.
class SignSet {
public:
    SignSet(std::initializer_list<int> signs);
    static SignSet from_bits(std::uint8_t bits);

    static SignSet nonnegative() { return {0, 1}; }
    static SignSet positive() { return {1}; }
    static SignSet zero() { return {0}; }
    static SignSet all() { return {-1, 0, 1}; }

    bool contains(int s) const;
    /// Signs of -p given the signs of p.
    SignSet flipped() const;
    std::uint8_t bits() const { return bits_; }
    std::vector<int> members() const;
    /// "{0, 1}"
    std::string to_string() const;

    friend bool operator==(SignSet, SignSet) = default;

private:
    explicit SignSet(std::uint8_t bits) : bits_(bits) {}
    std::uint8_t bits_ = 0;  // bit 0: -1, bit 1: 0, bit 2: +1
};

/// "sign p_i(x) in E": references a polynomial of the owning Representation.
struct Atom {
    std::size_t poly = 0;
    SignSet signs = SignSet::nonnegative();

    friend bool operator==(const Atom&, const Atom&) = default;
};

/// Boolean formula over sign-condition atoms. And/Or nodes are kept
/// flattened (no And directly under And) with at least two children.
class Formula {
public:
    enum class Op { True, False, Atom, And, Or, Not };

    static Formula truth();
    static Formula falsity();
    static Formula atom(Atom a);
    static Formula conjunction(std::vector<Formula> children);
    static Formula disjunction(std::vector<Formula> children);
    static Formula negation(Formula child);

    Op op() const { return op_; }
    const Atom& atom() const { return atom_; }
    const std::vector<Formula>& children() const { return children_; }

    bool eval(std::span<const int> signs) const;
    /// Atoms in left-to-right order.
    std::vector<Atom> atoms() const;

    friend bool operator==(const Formula&, const Formula&) = default;

private:
    Op op_ = Op::True;
    Atom atom_{};
    std::vector<Formula> children_;
};

enum class RepKind { General, ElementaryClosed, ElementaryOpen, Algebraic };

std::string_view to_string(RepKind kind);
std::optional<RepKind> parse_rep_kind(std::string_view text);

/// unit * prod base^exponent: how a polynomial is shown to people. The
/// parser keeps the product structure the user wrote, so
/// "(1 - x1^2 - x2^2)*x2^2" prints back the same way.
struct FactoredForm {
    Rational unit{1};
    std::vector<std::pair<Polynomial, unsigned>> factors;

    /// Constants become the unit, monomials split into variables, anything
    /// else is a single factor.
    static FactoredForm of(const Polynomial& p);

    /// Folds constant and monomial bases into the unit and variables and
    /// merges equal bases; this is the shape the parser produces.
    FactoredForm canonical() const;

    Polynomial expand(std::size_t dimension) const;
    std::string to_string() const;
    FactoredForm negated() const;

    friend bool operator==(const FactoredForm&, const FactoredForm&) = default;
};

/// A set {x : Phi(sign p_1(x) in E_1, ..., sign p_m(x) in E_m)}.
struct Representation {
    std::size_t dimension = 1;
    std::vector<Polynomial> polys;
    std::vector<FactoredForm> display;  // parallel to polys
    Formula formula = Formula::truth();
    RepKind kind = RepKind::General;

    /// Structural equality; display forms are presentation only.
    friend bool operator==(const Representation& a, const Representation& b) {
        return a.dimension == b.dimension && a.polys == b.polys && a.formula == b.formula && a.kind == b.kind;
    }
};

/// Assembles a Representation, sharing one p_i among polynomials that agree
/// up to a nonzero constant (sign sets are flipped for negative multiples).
class RepresentationBuilder {
public:
    explicit RepresentationBuilder(std::size_t dimension);

    /// Throws std::invalid_argument for the zero polynomial or a dimension
    /// mismatch.
    Formula atom(const Polynomial& p, SignSet signs, std::optional<FactoredForm> display = std::nullopt);

    /// Kind is inferred from the formula's shape.
    Representation finish(Formula formula) &&;

private:
    std::size_t dimension_;
    std::vector<Polynomial> polys_;
    std::vector<FactoredForm> display_;
    std::map<std::string, std::size_t> index_;  // keyed by the normalized polynomial's text
};

/// Elementary closed when the formula is a conjunction of {0,+1} atoms,
/// elementary open for {+1}, algebraic for {0}, otherwise general.
RepKind infer_kind(const Formula& formula);

/// Every atom has signs exactly {0, +1} ("p_i(x) >= 0" only).
bool uses_only_nonnegative_atoms(const Representation& rep);

/// Exact sign of every p_i at the point.
std::vector<int> signs_at(const Representation& rep, std::span<const Rational> point);

/// Exact membership. Throws DimensionMismatch on a wrong point length.
bool eval_formula(const Representation& rep, std::span<const Rational> point);

/// (p_1,...,p_m)_{>=0}, (p_1,...,p_m)_{>0}, Z(p_1,...,p_m). Throw on an
/// empty list, mixed dimensions, or if sharing constant multiples would
/// break the requested shape (e.g. both p and -p).
Representation elementary_closed(std::span<const Polynomial> ps);
Representation elementary_open(std::span<const Polynomial> ps);
Representation algebraic(std::span<const Polynomial> ps);

/// Canonical text in the formula grammar; parse_formula(print_formula(r),
/// r.dimension) == r for representations whose polynomials all occur in
/// the formula in order of first appearance.
std::string print_formula(const Representation& rep);

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t position, const std::string& message);
    /// Byte offset into the input.
    std::size_t position() const { return position_; }
    const std::string& detail() const { return detail_; }

private:
    std::size_t position_;
    std::string detail_;
};

/// Parses the formula grammar. The ambient dimension is `dimension` when
/// given (using a higher variable is an error), otherwise the largest
/// variable index that occurs (at least 1).
Representation parse_formula(std::string_view text, std::optional<std::size_t> dimension = std::nullopt);

/// A single polynomial expression in the same grammar.
Polynomial parse_polynomial(std::string_view text, std::optional<std::size_t> dimension = std::nullopt);

/// 1-based line and column of a byte offset, for messages.
std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset);

/// Blanks out '#' comments up to the end of each line. Byte offsets are
/// kept, so parse positions still refer to the original text.
std::string strip_comments(std::string_view text);

}  // namespace semialg
