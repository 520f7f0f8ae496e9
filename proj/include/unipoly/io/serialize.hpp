#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "unipoly/adjoint/adjoint.hpp"
#include "unipoly/greenberg/greenberg.hpp"
#include "unipoly/rings/symbolic.hpp"
#include "unipoly/rings/trunc_series.hpp"
#include "unipoly/rings/zmod.hpp"
#include "unipoly/witt/witt.hpp"

namespace unipoly::io {

using Json = nlohmann::json;

namespace detail {

inline const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return j.at(key);
}

template <class T>
T get(const Json& j, const char* key) {
    try {
        return field(j, key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("field '") + key + "': " + e.what());
    }
}

inline BigInt big_from_json(const Json& j) {
    if (j.is_string()) return big_from_string(j.get<std::string>());
    if (j.is_number_integer()) return BigInt(std::to_string(j.get<long long>()));
    throw ParseError("expected a decimal string, got " + j.dump());
}

inline BigRational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return BigRational(big_from_json(j));
    if (!j.is_string()) throw ParseError("expected a rational string, got " + j.dump());
    const auto s = j.get<std::string>();
    auto slash = s.find('/');
    if (slash == std::string::npos) return BigRational(big_from_string(s));
    BigInt num = big_from_string(s.substr(0, slash)), den = big_from_string(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in " + s);
    BigRational out(num, den);
    out.canonicalize();
    return out;
}

inline const Json& array(const Json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
    return j;
}

} // namespace detail

// Rings. {"kind": "zmod", "m": "25", "p": "5", "n": 2}; p and n only for prime powers.

template <class Int>
Json ring_to_json(const BasicZMod<Int>& r) {
    Json j{{"kind", "zmod"}, {"m", to_string(r.modulus())}};
    if (r.has_q_adic()) {
        j["p"] = to_string(r.prime());
        j["n"] = r.precision();
    }
    return j;
}

inline Json ring_to_json(const TruncSeriesFp& r) {
    return {{"kind", "tq"}, {"field", std::to_string(r.field().characteristic())}, {"e", r.precision()}};
}
inline Json ring_to_json(const TruncSeriesQ& r) { return {{"kind", "tq"}, {"field", "Q"}, {"e", r.precision()}}; }

inline Json ring_to_json(const Symbolic& r) {
    Json j{{"kind", "sym"}, {"n", r.precision()}, {"generators", r.generators()}};
    if (auto inv = r.inverted()) j["inverted"] = *inv;
    return j;
}

template <class R>
R ring_from_json(const Json& j);

template <>
inline ZMod ring_from_json<ZMod>(const Json& j) {
    if (detail::get<std::string>(j, "kind") != "zmod") throw ParseError("expected a zmod ring, got " + j.dump());
    ZMod r(detail::big_from_json(detail::field(j, "m")));
    if (j.contains("p")) {
        if (!r.has_q_adic() || r.prime() != detail::big_from_json(j.at("p")) ||
            (j.contains("n") && r.precision() != j.at("n").get<int>())) {
            throw ParseError("inconsistent zmod descriptor " + j.dump());
        }
    }
    return r;
}

template <>
inline TruncSeriesFp ring_from_json<TruncSeriesFp>(const Json& j) {
    if (detail::get<std::string>(j, "kind") != "tq") throw ParseError("expected a tq ring, got " + j.dump());
    auto f = detail::get<std::string>(j, "field");
    if (f == "Q") throw ParseError("expected F_p coefficients, got Q");
    return TruncSeriesFp(PrimeField(detail::big_from_json(Json(f)).get_ui()), detail::get<int>(j, "e"));
}

template <>
inline TruncSeriesQ ring_from_json<TruncSeriesQ>(const Json& j) {
    if (detail::get<std::string>(j, "kind") != "tq" || detail::get<std::string>(j, "field") != "Q") {
        throw ParseError("expected a tq:Q ring, got " + j.dump());
    }
    return TruncSeriesQ(Rationals{}, detail::get<int>(j, "e"));
}

template <>
inline Symbolic ring_from_json<Symbolic>(const Json& j) {
    if (detail::get<std::string>(j, "kind") != "sym") throw ParseError("expected a sym ring, got " + j.dump());
    auto gens = j.contains("generators") ? j.at("generators").get<std::vector<std::string>>()
                                         : std::vector<std::string>{"a", "b", "c", "d", "e"};
    std::optional<std::string> inv;
    if (j.contains("inverted")) inv = j.at("inverted").get<std::string>();
    else if (!j.contains("generators")) inv = "b";
    return Symbolic(detail::get<int>(j, "n"), gens, inv);
}

// Elements. Integers mod m as decimal strings; series as coefficient arrays.

template <class Int>
Json elem_to_json(const BasicZMod<Int>& r, const typename BasicZMod<Int>::Elem& a) {
    return r.to_string(a);
}
template <class Int>
typename BasicZMod<Int>::Elem elem_from_json(const BasicZMod<Int>& r, const Json& j) {
    return r.from_integer(detail::big_from_json(j));
}

template <class Field>
Json elem_to_json(const TruncSeries<Field>& r, const typename TruncSeries<Field>::Elem& a) {
    Json out = Json::array();
    for (const auto& c : a) out.push_back(r.field().to_string(c));
    return out;
}
template <class Field>
typename TruncSeries<Field>::Elem elem_from_json(const TruncSeries<Field>& r, const Json& j) {
    detail::array(j, "series element");
    if (j.size() > static_cast<std::size_t>(r.precision())) throw ParseError("series element longer than precision");
    auto out = r.zero();
    for (std::size_t i = 0; i < j.size(); ++i) {
        if constexpr (std::is_same_v<Field, Rationals>) {
            out[i] = detail::rational_from_json(j[i]);
        } else {
            out[i] = r.field().from_integer(detail::big_from_json(j[i]));
        }
    }
    return out;
}

// Symbolic elements as term lists; a negative power of the inverted
// generator is written as "b_denominator". Terms are ordered by their
// (name, exponent) lists.
inline Json elem_to_json(const Symbolic& r, const Symbolic::Elem& a) {
    std::vector<std::pair<std::vector<std::pair<std::string, int>>, Json>> terms;
    for (const auto& [m, c] : a) {
        std::vector<std::pair<std::string, int>> key;
        Json exps = Json::object();
        int den = 0;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            std::string name = i == r.q_slot() ? "q" : r.generators()[i];
            key.emplace_back(name, m[i]);
            if (m[i] < 0) {
                den = -m[i];
            } else {
                exps[name] = m[i];
            }
        }
        std::sort(key.begin(), key.end());
        terms.emplace_back(std::move(key), Json{{"coeff", to_string(c)}, {"exponents", exps}, {"b_denominator", den}});
    }
    std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    Json out = Json::array();
    for (auto& t : terms) out.push_back(std::move(t.second));
    return out;
}

inline Symbolic::Elem elem_from_json(const Symbolic& r, const Json& j) {
    detail::array(j, "symbolic element");
    auto out = r.zero();
    for (const auto& t : j) {
        Symbolic::Monomial m(r.slots(), 0);
        for (const auto& [name, e] : detail::field(t, "exponents").items()) {
            auto idx = r.generator_index(name);
            if (!idx) throw ParseError("unknown generator " + name);
            m[*idx] += e.get<int>();
        }
        int den = t.contains("b_denominator") ? t.at("b_denominator").get<int>() : 0;
        if (den != 0) {
            if (r.inverted_index() < 0) throw ParseError("b_denominator in a ring without an inverted generator");
            m[static_cast<std::size_t>(r.inverted_index())] -= den;
        }
        out = r.add(out, r.term(detail::big_from_json(detail::field(t, "coeff")), std::move(m)));
    }
    return out;
}

// Polynomials: {"ring": ..., "coeffs": [...]} lowest degree first.

template <QAdicRing R>
Json poly_to_json(const TruncPoly<R>& f) {
    Json coeffs = Json::array();
    for (const auto& c : f.coeffs()) coeffs.push_back(elem_to_json(f.ring(), c));
    return {{"ring", ring_to_json(f.ring())}, {"coeffs", coeffs}};
}

// The ring recorded in the file must equal `ring` when both are present.
template <QAdicRing R>
TruncPoly<R> poly_from_json(const Json& j, std::shared_ptr<const R> ring) {
    if (j.contains("ring")) {
        auto recorded = ring_from_json<R>(j.at("ring"));
        if (!ring) {
            ring = std::make_shared<const R>(recorded);
        } else if (!(recorded == *ring)) {
            throw RingMismatch("polynomial over " + recorded.describe() + " given for " + ring->describe());
        }
    }
    if (!ring) throw ParseError("polynomial has no ring and none was given");
    std::vector<typename R::Elem> c;
    for (const auto& x : detail::array(detail::field(j, "coeffs"), "coeffs")) c.push_back(elem_from_json(*ring, x));
    return TruncPoly<R>(ring, std::move(c));
}

// Integer polynomials as term lists [{"coeff": "3", "exponents": {"x0": 2}}],
// ordered like Symbolic terms.
inline Json mpoly_to_json(const MPoly& f, const std::function<std::string(std::size_t)>& name) {
    std::vector<std::pair<std::vector<std::pair<std::string, std::uint32_t>>, Json>> terms;
    for (const auto& t : f.terms()) {
        std::vector<std::pair<std::string, std::uint32_t>> key;
        Json exps = Json::object();
        for (std::size_t v = 0; v < t.exps.size(); ++v) {
            if (t.exps[v] == 0) continue;
            key.emplace_back(name(v), t.exps[v]);
            exps[name(v)] = t.exps[v];
        }
        std::sort(key.begin(), key.end());
        terms.emplace_back(std::move(key), Json{{"coeff", to_string(t.coeff)}, {"exponents", exps}});
    }
    std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    Json out = Json::array();
    for (auto& t : terms) out.push_back(std::move(t.second));
    return out;
}

inline MPoly mpoly_from_json(const Json& j, const std::function<std::size_t(const std::string&)>& index) {
    std::vector<MPoly::Term> terms;
    for (const auto& t : detail::array(j, "term list")) {
        MPoly::Term term;
        term.coeff = detail::big_from_json(detail::field(t, "coeff"));
        for (const auto& [name, e] : detail::field(t, "exponents").items()) {
            auto v = index(name);
            if (term.exps.size() <= v) term.exps.resize(v + 1, 0);
            term.exps[v] += e.get<std::uint32_t>();
        }
        terms.push_back(std::move(term));
    }
    return MPoly::from_terms(std::move(terms));
}

inline std::size_t witt_variable_index(const std::string& name) {
    if (name.size() < 2 || (name[0] != 'x' && name[0] != 'y')) throw ParseError("not a Witt variable: " + name);
    auto i = big_from_string(name.substr(1));
    if (i < 0 || !i.fits_uint_p()) throw ParseError("not a Witt variable: " + name);
    return name[0] == 'x' ? witt_x(i.get_ui()) : witt_y(i.get_ui());
}

// Witt vectors: {"p": 2, "components": ["1", "0"]}.
inline Json witt_vec_to_json(unsigned long p, const std::vector<BigInt>& u) {
    Json comps = Json::array();
    for (const auto& c : u) comps.push_back(to_string(c));
    return {{"p", p}, {"components", comps}};
}

inline std::pair<unsigned long, std::vector<BigInt>> witt_vec_from_json(const Json& j) {
    auto p = detail::get<unsigned long>(j, "p");
    std::vector<BigInt> comps;
    for (const auto& c : detail::array(detail::field(j, "components"), "components")) comps.push_back(detail::big_from_json(c));
    if (comps.empty()) throw ParseError("Witt vector needs at least one component");
    return {p, comps};
}

inline Json witt_law_to_json(const UniversalWittLaw& law) {
    Json sum = Json::array(), prod = Json::array();
    for (const auto& s : law.sum) sum.push_back(mpoly_to_json(s, witt_variable_name));
    for (const auto& m : law.prod) prod.push_back(mpoly_to_json(m, witt_variable_name));
    return {{"p", law.p}, {"n", law.level}, {"sum", sum}, {"product", prod}};
}

inline UniversalWittLaw witt_law_from_json(const Json& j) {
    UniversalWittLaw law;
    law.p = detail::get<unsigned long>(j, "p");
    law.level = detail::get<int>(j, "n");
    for (const auto& s : detail::array(detail::field(j, "sum"), "sum")) law.sum.push_back(mpoly_from_json(s, witt_variable_index));
    for (const auto& m : detail::array(detail::field(j, "product"), "product")) {
        law.prod.push_back(mpoly_from_json(m, witt_variable_index));
    }
    const auto len = static_cast<std::size_t>(law.level) + 1;
    if (law.sum.size() != len || law.prod.size() != len) throw ParseError("Witt law needs n + 1 sum and product polynomials");
    return law;
}

// Group laws: coordinates, product polynomials per coordinate (primed names
// for the second factor), relations in the coordinates and y.
inline Json group_law_to_json(const GroupLaw& law) {
    Json coords = Json::array();
    for (std::size_t k = 0; k < law.dimension(); ++k) {
        coords.push_back({{"name", law.names[k]}, {"coefficient", law.slots[k].first}, {"component", law.slots[k].second}});
    }
    auto prod_name = [&](std::size_t v) { return law.variable_name(v); };
    auto rel_name = [&](std::size_t v) { return law.relation_variable_name(v); };
    Json product = Json::array(), raw = Json::array(), relations = Json::array(), overflow = Json::array();
    for (const auto& f : law.product) product.push_back(mpoly_to_json(f, prod_name));
    for (const auto& f : law.raw_product) raw.push_back(mpoly_to_json(f, prod_name));
    for (const auto& f : law.relations) relations.push_back(mpoly_to_json(f, rel_name));
    for (const auto& [name, f] : law.overflow) overflow.push_back({{"name", name}, {"poly", mpoly_to_json(f, prod_name)}});
    return {{"kind", law.kind == GroupLaw::Kind::Ad ? "Ad" : "Full"},
            {"p", law.p},
            {"d", law.d},
            {"level", law.level},
            {"degree_cap", law.degree_cap},
            {"coordinates", coords},
            {"unit_coordinate", law.unit_coordinate},
            {"product", product},
            {"raw_product", raw},
            {"relations", relations},
            {"overflow", overflow}};
}

inline GroupLaw group_law_from_json(const Json& j) {
    GroupLaw law;
    auto kind = detail::get<std::string>(j, "kind");
    if (kind != "Ad" && kind != "Full") throw ParseError("unknown group law kind " + kind);
    law.kind = kind == "Ad" ? GroupLaw::Kind::Ad : GroupLaw::Kind::Full;
    law.p = detail::get<unsigned long>(j, "p");
    law.d = detail::get<int>(j, "d");
    law.level = detail::get<int>(j, "level");
    law.degree_cap = detail::get<int>(j, "degree_cap");
    for (const auto& c : detail::array(detail::field(j, "coordinates"), "coordinates")) {
        law.slots.emplace_back(detail::get<int>(c, "coefficient"), detail::get<int>(c, "component"));
        law.names.push_back(detail::get<std::string>(c, "name"));
    }
    law.unit_coordinate = detail::get<std::size_t>(j, "unit_coordinate");
    if (law.unit_coordinate >= law.dimension()) throw ParseError("unit coordinate out of range");
    auto prod_index = [&](const std::string& name) {
        try {
            return law.index_of(name);
        } catch (const OutOfRange& e) {
            throw ParseError(e.what());
        }
    };
    auto rel_index = [&](const std::string& name) { return name == "y" ? law.aux_variable() : prod_index(name); };
    for (const auto& f : detail::array(detail::field(j, "product"), "product")) law.product.push_back(mpoly_from_json(f, prod_index));
    for (const auto& f : detail::array(detail::field(j, "raw_product"), "raw_product")) {
        law.raw_product.push_back(mpoly_from_json(f, prod_index));
    }
    for (const auto& f : detail::array(detail::field(j, "relations"), "relations")) {
        law.relations.push_back(mpoly_from_json(f, rel_index));
    }
    for (const auto& o : detail::array(detail::field(j, "overflow"), "overflow")) {
        law.overflow.emplace_back(detail::get<std::string>(o, "name"), mpoly_from_json(detail::field(o, "poly"), prod_index));
    }
    if (law.product.size() != law.dimension() || law.raw_product.size() != law.dimension()) {
        throw ParseError("group law needs one product polynomial per coordinate");
    }
    return law;
}

// Human-readable form: one line per product coordinate, then relations.
inline std::string group_law_text(const GroupLaw& law) {
    auto prod_name = [&](std::size_t v) { return law.variable_name(v); };
    auto rel_name = [&](std::size_t v) { return law.relation_variable_name(v); };
    std::string out = law.describe() + ", " + std::to_string(law.dimension()) + " coordinates over F_" + std::to_string(law.p) + "\n";
    for (std::size_t k = 0; k < law.dimension(); ++k) {
        out += "  " + law.names[k] + "'' = " + law.product[k].to_string(prod_name) + "\n";
    }
    for (const auto& r : law.relations) out += "  0 = " + r.to_string(rel_name) + "\n";
    for (const auto& [name, f] : law.overflow) out += "  overflow " + name + " = " + f.to_string(prod_name) + "\n";
    return out;
}

inline Json axiom_report_to_json(const AxiomReport& rep) {
    Json j{{"exhaustive", rep.exhaustive},     {"points", rep.points},          {"triples", rep.triples},
           {"inverses_checked", rep.inverses_checked}, {"closure", rep.closure()}, {"identity", rep.identity()},
           {"associativity", rep.associativity()},     {"inverses", rep.inverses()}, {"ok", rep.ok()}};
    Json failures = Json::object();
    if (rep.closure_failure) failures["closure"] = *rep.closure_failure;
    if (rep.identity_failure) failures["identity"] = *rep.identity_failure;
    if (rep.associativity_failure) failures["associativity"] = *rep.associativity_failure;
    if (rep.inverse_failure) failures["inverses"] = *rep.inverse_failure;
    j["failures"] = failures;
    return j;
}

// Adjoint matrices: entries[row][col] over R/q^{n-r}.
template <QAdicRing R>
Json matrix_to_json(const AdjointMatrix<R>& m) {
    Json rows = Json::array();
    for (const auto& row : m.entries) {
        Json out = Json::array();
        for (const auto& e : row) out.push_back(elem_to_json(*m.entry_ring, e));
        rows.push_back(std::move(out));
    }
    return {{"ring", ring_to_json(*m.entry_ring)}, {"n", m.n}, {"r", m.r}, {"entries", rows}};
}

template <QAdicRing R>
AdjointMatrix<R> matrix_from_json(const Json& j) {
    AdjointMatrix<R> m;
    m.entry_ring = std::make_shared<const R>(ring_from_json<R>(detail::field(j, "ring")));
    m.n = detail::get<int>(j, "n");
    m.r = detail::get<int>(j, "r");
    const auto& rows = detail::array(detail::field(j, "entries"), "entries");
    for (const auto& row : rows) {
        if (detail::array(row, "matrix row").size() != rows.size()) throw ShapeMismatch("adjoint matrix must be square");
        m.entries.emplace_back();
        for (const auto& e : row) m.entries.back().push_back(elem_from_json(*m.entry_ring, e));
    }
    return m;
}

} // namespace unipoly::io
