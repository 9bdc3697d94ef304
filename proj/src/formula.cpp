#include "semialg/formula.hpp"

#include <algorithm>

namespace semialg {

SignSet::SignSet(std::initializer_list<int> signs) {
    for (int s : signs) {
        if (s < -1 || s > 1) throw std::invalid_argument("sign must be -1, 0 or 1");
        bits_ |= static_cast<std::uint8_t>(1u << (s + 1));
    }
    if (bits_ == 0) throw std::invalid_argument("empty sign set");
}

SignSet SignSet::from_bits(std::uint8_t bits) {
    if (bits == 0 || bits > 7) throw std::invalid_argument("invalid sign set bits");
    return SignSet(bits);
}

bool SignSet::contains(int s) const {
    if (s < -1 || s > 1) return false;
    return (bits_ >> (s + 1)) & 1u;
}

SignSet SignSet::flipped() const {
    std::uint8_t b = bits_ & 2u;
    if (bits_ & 1u) b |= 4u;
    if (bits_ & 4u) b |= 1u;
    return SignSet(b);
}

std::vector<int> SignSet::members() const {
    std::vector<int> out;
    for (int s = -1; s <= 1; ++s)
        if (contains(s)) out.push_back(s);
    return out;
}

std::string SignSet::to_string() const {
    std::string out = "{";
    bool first = true;
    for (int s : members()) {
        if (!first) out += ", ";
        out += std::to_string(s);
        first = false;
    }
    return out + "}";
}

// --- Formula ---------------------------------------------------------------

Formula Formula::truth() {
    return Formula{};
}

Formula Formula::falsity() {
    Formula f;
    f.op_ = Op::False;
    return f;
}

Formula Formula::atom(Atom a) {
    Formula f;
    f.op_ = Op::Atom;
    f.atom_ = a;
    return f;
}

namespace {

Formula nary(Formula::Op op, std::vector<Formula> children, Formula (*make)(Formula::Op, std::vector<Formula>)) {
    if (children.empty()) throw std::invalid_argument("And/Or needs at least one child");
    std::vector<Formula> flat;
    for (auto& c : children) {
        if (c.op() == op) {
            for (const auto& g : c.children()) flat.push_back(g);
        } else {
            flat.push_back(std::move(c));
        }
    }
    if (flat.size() == 1) return std::move(flat.front());
    return make(op, std::move(flat));
}

}  // namespace

Formula Formula::conjunction(std::vector<Formula> children) {
    return nary(Op::And, std::move(children), [](Op op, std::vector<Formula> c) {
        Formula f;
        f.op_ = op;
        f.children_ = std::move(c);
        return f;
    });
}

Formula Formula::disjunction(std::vector<Formula> children) {
    return nary(Op::Or, std::move(children), [](Op op, std::vector<Formula> c) {
        Formula f;
        f.op_ = op;
        f.children_ = std::move(c);
        return f;
    });
}

Formula Formula::negation(Formula child) {
    Formula f;
    f.op_ = Op::Not;
    f.children_.push_back(std::move(child));
    return f;
}

bool Formula::eval(std::span<const int> signs) const {
    switch (op_) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Atom:
        if (atom_.poly >= signs.size()) throw std::out_of_range("atom references a missing polynomial");
        return atom_.signs.contains(signs[atom_.poly]);
    case Op::And:
        return std::all_of(children_.begin(), children_.end(), [&](const Formula& c) { return c.eval(signs); });
    case Op::Or:
        return std::any_of(children_.begin(), children_.end(), [&](const Formula& c) { return c.eval(signs); });
    case Op::Not: return !children_.front().eval(signs);
    }
    return false;
}

std::vector<Atom> Formula::atoms() const {
    std::vector<Atom> out;
    auto walk = [&](auto&& self, const Formula& f) -> void {
        if (f.op() == Op::Atom) out.push_back(f.atom());
        for (const auto& c : f.children()) self(self, c);
    };
    walk(walk, *this);
    return out;
}

std::string_view to_string(RepKind kind) {
    switch (kind) {
    case RepKind::General: return "general";
    case RepKind::ElementaryClosed: return "elementary-closed";
    case RepKind::ElementaryOpen: return "elementary-open";
    case RepKind::Algebraic: return "algebraic";
    }
    return "general";
}

std::optional<RepKind> parse_rep_kind(std::string_view text) {
    for (auto k : {RepKind::General, RepKind::ElementaryClosed, RepKind::ElementaryOpen, RepKind::Algebraic})
        if (to_string(k) == text) return k;
    return std::nullopt;
}

// --- FactoredForm ----------------------------------------------------------

FactoredForm FactoredForm::of(const Polynomial& p) {
    FactoredForm out;
    if (p.is_constant()) {
        out.unit = p.constant_term();
        return out;
    }
    if (p.size() == 1) {
        const Term& t = p.leading_term();
        out.unit = t.coefficient;
        for (std::size_t i = 0; i < t.exponents.size(); ++i)
            if (t.exponents[i] > 0) out.factors.emplace_back(Polynomial::variable(p.dimension(), i), t.exponents[i]);
        return out;
    }
    out.factors.emplace_back(p, 1u);
    return out;
}

FactoredForm FactoredForm::canonical() const {
    FactoredForm out;
    out.unit = unit;
    auto push = [&](const Polynomial& base, unsigned k) {
        auto it = std::find_if(out.factors.begin(), out.factors.end(), [&](const auto& bk) { return bk.first == base; });
        if (it != out.factors.end()) it->second += k;
        else out.factors.emplace_back(base, k);
    };
    for (const auto& [base, k] : factors) {
        if (k == 0) continue;
        FactoredForm inner = FactoredForm::of(base);
        for (unsigned i = 0; i < k; ++i) out.unit *= inner.unit;
        for (const auto& [b, e] : inner.factors) push(b, e * k);
    }
    if (out.unit == 0) out.factors.clear();
    return out;
}

Polynomial FactoredForm::expand(std::size_t dimension) const {
    Polynomial out = Polynomial::constant(dimension, unit);
    for (const auto& [base, k] : factors) out = out * base.pow(k);
    return out;
}

std::string FactoredForm::to_string() const {
    if (factors.empty()) return semialg::to_string(unit);
    std::string out;
    if (unit == -1) {
        out = "-";
    } else if (unit != 1) {
        out = semialg::to_string(unit) + "*";
    }
    if (out.empty() && factors.size() == 1 && factors.front().second == 1) return factors.front().first.to_string();
    bool first = true;
    for (const auto& [base, k] : factors) {
        if (!first) out += "*";
        first = false;
        if (base.size() == 1 && base.leading_term().coefficient == 1 && base.total_degree() == 1) {
            out += base.to_string();
        } else {
            out += "(" + base.to_string() + ")";
        }
        if (k != 1) out += "^" + std::to_string(k);
    }
    return out;
}

FactoredForm FactoredForm::negated() const {
    FactoredForm out = *this;
    out.unit = -out.unit;
    return out;
}

// --- RepresentationBuilder ---------------------------------------------------

RepresentationBuilder::RepresentationBuilder(std::size_t dimension) : dimension_(dimension) {
    if (dimension == 0) throw std::invalid_argument("dimension must be positive");
}

Formula RepresentationBuilder::atom(const Polynomial& p, SignSet signs, std::optional<FactoredForm> display) {
    if (p.dimension() != dimension_) throw DimensionMismatch("atom polynomial has the wrong dimension");
    if (p.is_zero()) throw std::invalid_argument("atom polynomial is zero");
    Polynomial key = normalize(p);
    std::string text = key.to_string();
    auto it = index_.find(text);
    if (it != index_.end()) {
        std::size_t i = it->second;
        auto c = proportionality(polys_[i], p);
        if (*c < 0) signs = signs.flipped();
        return Formula::atom({i, signs});
    }
    std::size_t i = polys_.size();
    polys_.push_back(p);
    FactoredForm shown = display ? display->canonical() : FactoredForm::of(p);
    if (shown.expand(dimension_) != p) throw std::invalid_argument("display form does not expand to the atom polynomial");
    display_.push_back(std::move(shown));
    index_.emplace(std::move(text), i);
    return Formula::atom({i, signs});
}

Representation RepresentationBuilder::finish(Formula formula) && {
    Representation rep;
    rep.dimension = dimension_;
    rep.polys = std::move(polys_);
    rep.display = std::move(display_);
    rep.kind = infer_kind(formula);
    rep.formula = std::move(formula);
    return rep;
}

RepKind infer_kind(const Formula& formula) {
    std::vector<SignSet> sets;
    if (formula.op() == Formula::Op::Atom) {
        sets.push_back(formula.atom().signs);
    } else if (formula.op() == Formula::Op::And) {
        for (const auto& c : formula.children()) {
            if (c.op() != Formula::Op::Atom) return RepKind::General;
            sets.push_back(c.atom().signs);
        }
    } else {
        return RepKind::General;
    }
    auto all = [&](SignSet s) { return std::all_of(sets.begin(), sets.end(), [&](SignSet t) { return t == s; }); };
    if (all(SignSet::nonnegative())) return RepKind::ElementaryClosed;
    if (all(SignSet::positive())) return RepKind::ElementaryOpen;
    if (all(SignSet::zero())) return RepKind::Algebraic;
    return RepKind::General;
}

bool uses_only_nonnegative_atoms(const Representation& rep) {
    for (const auto& a : rep.formula.atoms())
        if (a.signs != SignSet::nonnegative()) return false;
    return true;
}

std::vector<int> signs_at(const Representation& rep, std::span<const Rational> point) {
    if (point.size() != rep.dimension) throw DimensionMismatch("point length differs from the ambient dimension");
    std::vector<int> out;
    out.reserve(rep.polys.size());
    for (const auto& p : rep.polys) out.push_back(sign(p.eval(point)));
    return out;
}

bool eval_formula(const Representation& rep, std::span<const Rational> point) {
    auto s = signs_at(rep, point);
    return rep.formula.eval(s);
}

namespace {

Representation elementary(std::span<const Polynomial> ps, SignSet signs, RepKind expected) {
    if (ps.empty()) throw std::invalid_argument("empty polynomial list");
    RepresentationBuilder b(ps.front().dimension());
    std::vector<Formula> atoms;
    for (const auto& p : ps) atoms.push_back(b.atom(p, signs));
    Representation rep = std::move(b).finish(Formula::conjunction(std::move(atoms)));
    if (rep.kind != expected)
        throw std::invalid_argument("constant multiples of opposite sign cannot share one atom of this kind");
    return rep;
}

}  // namespace

Representation elementary_closed(std::span<const Polynomial> ps) {
    return elementary(ps, SignSet::nonnegative(), RepKind::ElementaryClosed);
}

Representation elementary_open(std::span<const Polynomial> ps) {
    return elementary(ps, SignSet::positive(), RepKind::ElementaryOpen);
}

Representation algebraic(std::span<const Polynomial> ps) {
    return elementary(ps, SignSet::zero(), RepKind::Algebraic);
}

// --- printing ----------------------------------------------------------------

namespace {

std::string print_atom(const Representation& rep, const Atom& a) {
    std::string body = a.poly < rep.display.size() ? rep.display[a.poly].to_string()
                                                   : FactoredForm::of(rep.polys.at(a.poly)).to_string();
    if (a.signs == SignSet::nonnegative()) return body + " >= 0";
    if (a.signs == SignSet::positive()) return body + " > 0";
    if (a.signs == SignSet::zero()) return body + " = 0";
    return "sign(" + body + ") in " + a.signs.to_string();
}

std::string print_node(const Representation& rep, const Formula& f) {
    using Op = Formula::Op;
    switch (f.op()) {
    case Op::True: return "true";
    case Op::False: return "false";
    case Op::Atom: return print_atom(rep, f.atom());
    case Op::And:
    case Op::Or: {
        std::string sep = f.op() == Op::And ? " & " : " | ";
        std::string out = "(";
        for (std::size_t i = 0; i < f.children().size(); ++i) {
            if (i) out += sep;
            out += print_node(rep, f.children()[i]);
        }
        return out + ")";
    }
    case Op::Not: {
        const Formula& c = f.children().front();
        if (c.op() == Op::Atom) return "!(" + print_node(rep, c) + ")";
        return "!" + print_node(rep, c);
    }
    }
    return {};
}

}  // namespace

std::string print_formula(const Representation& rep) {
    return print_node(rep, rep.formula);
}

}  // namespace semialg
