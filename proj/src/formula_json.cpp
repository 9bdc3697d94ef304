#include "semialg/formula_json.hpp"

namespace semialg {

using nlohmann::json;

json to_json(const Polynomial& p) {
    json terms = json::array();
    for (const auto& t : p.terms()) {
        terms.push_back({{"exp", t.exponents},
                         {"num", t.coefficient.get_num().get_str()},
                         {"den", t.coefficient.get_den().get_str()}});
    }
    return terms;
}

namespace {

Integer integer_field(const json& j, const char* key) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("term lacks \"") + key + "\"");
    const json& v = j.at(key);
    std::string text;
    if (v.is_string()) text = v.get<std::string>();
    else if (v.is_number_integer()) text = std::to_string(v.get<long long>());
    else throw std::invalid_argument(std::string("\"") + key + "\" must be an integer string");
    Integer out;
    if (text.empty() || out.set_str(text, 10) != 0) throw std::invalid_argument("malformed integer '" + text + "'");
    return out;
}

}  // namespace

Polynomial polynomial_from_json(const json& j, std::size_t dimension) {
    if (!j.is_array()) throw std::invalid_argument("polynomial must be an array of terms");
    std::vector<Term> terms;
    for (const auto& t : j) {
        if (!t.is_object() || !t.contains("exp") || !t.at("exp").is_array())
            throw std::invalid_argument("term must be an object with an \"exp\" array");
        Exponents e;
        for (const auto& v : t.at("exp")) {
            if (!v.is_number_unsigned()) throw std::invalid_argument("exponents must be non-negative integers");
            e.push_back(v.get<std::uint32_t>());
        }
        if (e.size() != dimension) throw DimensionMismatch("exponent vector length differs from the dimension");
        Integer den = integer_field(t, "den");
        if (den == 0) throw std::invalid_argument("zero denominator");
        terms.push_back({std::move(e), make_rational(integer_field(t, "num"), den)});
    }
    return Polynomial::from_terms(dimension, std::move(terms));
}

json to_json(const Formula& f) {
    using Op = Formula::Op;
    switch (f.op()) {
    case Op::True: return {{"op", "true"}};
    case Op::False: return {{"op", "false"}};
    case Op::Atom: return {{"op", "atom"}, {"poly", f.atom().poly}, {"signs", f.atom().signs.members()}};
    case Op::Not: return {{"op", "not"}, {"child", to_json(f.children().front())}};
    case Op::And:
    case Op::Or: {
        json children = json::array();
        for (const auto& c : f.children()) children.push_back(to_json(c));
        return {{"op", f.op() == Op::And ? "and" : "or"}, {"children", children}};
    }
    }
    return {};
}

Formula formula_from_json(const json& j, std::size_t poly_count) {
    if (!j.is_object() || !j.contains("op") || !j.at("op").is_string())
        throw std::invalid_argument("formula node must be an object with \"op\"");
    std::string op = j.at("op").get<std::string>();
    if (op == "true") return Formula::truth();
    if (op == "false") return Formula::falsity();
    if (op == "atom") {
        if (!j.contains("poly") || !j.at("poly").is_number_unsigned())
            throw std::invalid_argument("atom needs a polynomial index");
        std::size_t i = j.at("poly").get<std::size_t>();
        if (i >= poly_count) throw std::invalid_argument("atom polynomial index out of range");
        if (!j.contains("signs") || !j.at("signs").is_array()) throw std::invalid_argument("atom needs a sign list");
        std::uint8_t bits = 0;
        for (const auto& s : j.at("signs")) {
            if (!s.is_number_integer()) throw std::invalid_argument("signs must be -1, 0 or 1");
            int v = s.get<int>();
            if (v < -1 || v > 1) throw std::invalid_argument("signs must be -1, 0 or 1");
            bits |= static_cast<std::uint8_t>(1u << (v + 1));
        }
        if (bits == 0) throw std::invalid_argument("empty sign set");
        return Formula::atom({i, SignSet::from_bits(bits)});
    }
    if (op == "not") {
        if (!j.contains("child")) throw std::invalid_argument("not needs a child");
        return Formula::negation(formula_from_json(j.at("child"), poly_count));
    }
    if (op == "and" || op == "or") {
        if (!j.contains("children") || !j.at("children").is_array() || j.at("children").empty())
            throw std::invalid_argument(op + " needs a non-empty children array");
        std::vector<Formula> children;
        for (const auto& c : j.at("children")) children.push_back(formula_from_json(c, poly_count));
        return op == "and" ? Formula::conjunction(std::move(children)) : Formula::disjunction(std::move(children));
    }
    throw std::invalid_argument("unknown formula op '" + op + "'");
}

json to_json(const Representation& rep) {
    json polys = json::array();
    for (const auto& p : rep.polys) polys.push_back(to_json(p));
    return {{"dimension", rep.dimension},
            {"polys", polys},
            {"formula", to_json(rep.formula)},
            {"kind", std::string(to_string(rep.kind))}};
}

Representation representation_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("representation must be an object");
    if (!j.contains("dimension") || !j.at("dimension").is_number_unsigned() || j.at("dimension").get<std::size_t>() == 0)
        throw std::invalid_argument("representation needs a positive dimension");
    if (!j.contains("polys") || !j.at("polys").is_array()) throw std::invalid_argument("representation needs polys");
    Representation rep;
    rep.dimension = j.at("dimension").get<std::size_t>();
    for (const auto& p : j.at("polys")) {
        rep.polys.push_back(polynomial_from_json(p, rep.dimension));
        if (rep.polys.back().is_zero()) throw std::invalid_argument("zero polynomial in representation");
        rep.display.push_back(FactoredForm::of(rep.polys.back()));
    }
    if (!j.contains("formula")) throw std::invalid_argument("representation needs a formula");
    rep.formula = formula_from_json(j.at("formula"), rep.polys.size());
    rep.kind = infer_kind(rep.formula);
    if (j.contains("kind")) {
        if (!j.at("kind").is_string()) throw std::invalid_argument("kind must be a string");
        auto k = parse_rep_kind(j.at("kind").get<std::string>());
        if (!k) throw std::invalid_argument("unknown kind");
        if (*k != RepKind::General && *k != rep.kind)
            throw std::invalid_argument("kind does not match the formula's shape");
        rep.kind = *k;
    }
    return rep;
}

}  // namespace semialg
