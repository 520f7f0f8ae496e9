#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "unipoly/witt/witt.hpp"

namespace unipoly {

// Component i of variable v lives at index v * (level + 1) + i.
inline std::size_t greenberg_variable(std::size_t v, std::size_t i, int level) {
    return v * static_cast<std::size_t>(level + 1) + i;
}

struct GreenbergSystem {
    unsigned long p = 2;
    int level = 0;
    MPoly input;
    std::size_t input_vars = 0;
    std::vector<MPoly> components; // g_0 .. g_level
};

// Witt vectors with integer polynomial entries, using the universal laws by
// substitution.
class PolyWitt {
public:
    explicit PolyWitt(std::shared_ptr<const UniversalWittLaw> law) : law_(std::move(law)) {}

    std::size_t length() const { return static_cast<std::size_t>(law_->level) + 1; }
    unsigned long p() const { return law_->p; }

    std::vector<MPoly> constant(const BigInt& c) const {
        auto comps = witt_from_ghost(p(), std::vector<BigInt>(length(), c));
        return std::vector<MPoly>(comps.begin(), comps.end());
    }
    std::vector<MPoly> add(const std::vector<MPoly>& u, const std::vector<MPoly>& v) const { return apply(law_->sum, u, v); }
    std::vector<MPoly> mul(const std::vector<MPoly>& u, const std::vector<MPoly>& v) const { return apply(law_->prod, u, v); }

private:
    std::vector<MPoly> apply(const std::vector<MPoly>& laws, const std::vector<MPoly>& u, const std::vector<MPoly>& v) const {
        if (u.size() != length() || v.size() != length()) throw ShapeMismatch("PolyWitt: vector length");
        std::vector<MPoly> values;
        for (std::size_t i = 0; i < length(); ++i) {
            values.push_back(u[i]);
            values.push_back(v[i]);
        }
        std::vector<MPoly> out;
        for (const auto& s : laws) out.push_back(s.substitute(values));
        return out;
    }

    std::shared_ptr<const UniversalWittLaw> law_;
};

// g_0..g_n with [g_0, ..., g_n] = f([x_{0,0}, ..., x_{0,n}], ...), evaluated
// term by term with Witt addition and multiplication.
inline GreenbergSystem greenberg_transform(const MPoly& f, unsigned long p, int level) {
    auto law = std::make_shared<const UniversalWittLaw>(derive_witt_laws(p, level));
    PolyWitt w(law);
    const std::size_t m = f.variable_span();
    std::vector<std::vector<MPoly>> vars(m);
    for (std::size_t v = 0; v < m; ++v) {
        for (std::size_t i = 0; i < w.length(); ++i) vars[v].push_back(MPoly::variable(greenberg_variable(v, i, level)));
    }
    std::map<std::pair<std::size_t, std::uint32_t>, std::vector<MPoly>> power_cache;
    auto power = [&](std::size_t v, std::uint32_t e) {
        auto key = std::make_pair(v, e);
        auto it = power_cache.find(key);
        if (it != power_cache.end()) return it->second;
        std::vector<MPoly> out = vars[v];
        for (std::uint32_t k = 1; k < e; ++k) out = w.mul(out, vars[v]);
        power_cache.emplace(key, out);
        return out;
    };
    std::vector<MPoly> acc = w.constant(0);
    for (const auto& t : f.terms()) {
        auto term = w.constant(t.coeff);
        for (std::size_t v = 0; v < t.exps.size(); ++v) {
            if (t.exps[v] > 0) term = w.mul(term, power(v, t.exps[v]));
        }
        acc = w.add(acc, term);
    }
    return GreenbergSystem{p, level, f, m, std::move(acc)};
}

namespace detail {

// Coefficient lists of two polynomials whose coefficients are Witt vectors of
// integer polynomials; returns the Witt vectors of the coefficients of f o g.
// Works on ghost components, where composition is plain arithmetic, and
// recovers components by exact division.
inline std::vector<std::vector<MPoly>> compose_witt_coefficients(unsigned long p, int level,
                                                                 const std::vector<std::vector<MPoly>>& f,
                                                                 const std::vector<std::vector<MPoly>>& g) {
    const std::size_t df = f.size() - 1, dg = g.size() - 1;
    const std::size_t out_len = df * dg + 1;
    std::vector<std::vector<MPoly>> ghosts(out_len); // ghosts[k][j]
    for (int j = 0; j <= level; ++j) {
        MPoly wj = witt_polynomial(p, j);
        std::vector<MPoly> fj, gj;
        for (const auto& c : f) fj.push_back(wj.substitute(c));
        for (const auto& c : g) gj.push_back(wj.substitute(c));
        std::vector<MPoly> acc(out_len);
        std::vector<MPoly> gpow{MPoly(1)};
        for (std::size_t i = 0; i <= df; ++i) {
            if (i > 0) {
                std::vector<MPoly> next(gpow.size() + dg);
                for (std::size_t a = 0; a < gpow.size(); ++a) {
                    if (gpow[a].is_zero()) continue;
                    for (std::size_t b = 0; b <= dg; ++b) {
                        if (!gj[b].is_zero()) next[a + b] += gpow[a] * gj[b];
                    }
                }
                gpow = std::move(next);
            }
            if (fj[i].is_zero()) continue;
            for (std::size_t k = 0; k < gpow.size(); ++k) {
                if (!gpow[k].is_zero()) acc[k] += fj[i] * gpow[k];
            }
        }
        for (std::size_t k = 0; k < out_len; ++k) ghosts[k].push_back(std::move(acc[k]));
    }
    std::vector<std::vector<MPoly>> out;
    for (auto& gh : ghosts) out.push_back(witt_from_ghost(p, gh));
    return out;
}

inline std::string coefficient_letter(std::size_t i) {
    if (i < 26) return std::string(1, static_cast<char>('a' + i));
    return "a" + std::to_string(i) + "_";
}

} // namespace detail

struct GroupLaw {
    enum class Kind { Ad, Full };
    Kind kind = Kind::Ad;
    unsigned long p = 2;
    // Ad: d, Witt level d - 1. Full: precision n + 1 = level + 1 and degree cap.
    int d = 0;
    int level = 0;
    int degree_cap = 0;

    // Surviving coordinates as (coefficient, Witt component); names like b1.
    std::vector<std::pair<int, int>> slots;
    std::vector<std::string> names;
    std::size_t unit_coordinate = 0;
    // Relations in coordinates 0..N-1 and the auxiliary y at index N. Points
    // are tuples on which every relation vanishes for some y.
    std::vector<MPoly> relations;

    // Product coordinates in variables 0..N-1 (first factor) and N..2N-1
    // (second factor), after and before the mod p simplification.
    std::vector<MPoly> product;
    std::vector<MPoly> raw_product;
    // Components of coefficients beyond the degree cap (full laws only).
    std::vector<std::pair<std::string, MPoly>> overflow;

    std::size_t dimension() const { return slots.size(); }
    std::size_t aux_variable() const { return slots.size(); }

    std::string variable_name(std::size_t v) const {
        const std::size_t n = slots.size();
        if (v < n) return names[v];
        if (v < 2 * n) return names[v - n] + "'";
        return "v" + std::to_string(v);
    }

    // Names for relation variables: coordinates, then y.
    std::string relation_variable_name(std::size_t v) const {
        if (v < slots.size()) return names[v];
        if (v == slots.size()) return "y";
        return "v" + std::to_string(v);
    }

    std::size_t index_of(const std::string& name) const {
        for (std::size_t v = 0; v < 2 * slots.size(); ++v) {
            if (variable_name(v) == name) return v;
        }
        throw OutOfRange("GroupLaw: no coordinate named " + name);
    }

    // Coordinates of T.
    std::vector<std::uint64_t> identity() const {
        std::vector<std::uint64_t> e(slots.size(), 0);
        for (std::size_t k = 0; k < slots.size(); ++k) {
            if (slots[k] == std::pair{1, 0}) e[k] = 1;
        }
        return e;
    }

    std::string describe() const {
        if (kind == Kind::Ad) return "A_" + std::to_string(d) + "(Z," + std::to_string(p) + ")";
        return "Aut(A1 over Z/" + std::to_string(p) + "^" + std::to_string(level + 1) + ", deg <= " +
               std::to_string(degree_cap) + ")";
    }
};

namespace detail {

// Shared construction: coefficient i of each factor gets a Witt vector whose
// components below pinned[i] are zero.
inline GroupLaw build_group_law(GroupLaw law, const std::vector<int>& pinned) {
    const unsigned long p = law.p;
    const int level = law.level;
    const std::size_t coeffs = pinned.size();
    for (std::size_t i = 0; i < coeffs; ++i) {
        for (int j = pinned[i]; j <= level; ++j) {
            law.slots.emplace_back(static_cast<int>(i), j);
            law.names.push_back(coefficient_letter(i) + std::to_string(j));
        }
    }
    const std::size_t n = law.slots.size();
    std::map<std::pair<int, int>, std::size_t> where;
    for (std::size_t k = 0; k < n; ++k) where[law.slots[k]] = k;
    law.unit_coordinate = where.at({1, 0});

    auto factor = [&](std::size_t offset) {
        std::vector<std::vector<MPoly>> out(coeffs, std::vector<MPoly>(static_cast<std::size_t>(level) + 1));
        for (std::size_t k = 0; k < n; ++k) {
            auto [i, j] = law.slots[k];
            out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = MPoly::variable(offset + k);
        }
        return out;
    };
    auto composed = compose_witt_coefficients(p, level, factor(0), factor(n));

    law.raw_product.resize(n);
    law.product.resize(n);
    for (std::size_t i = 0; i < composed.size(); ++i) {
        for (int j = 0; j <= level; ++j) {
            const MPoly& raw = composed[i][static_cast<std::size_t>(j)];
            MPoly simple = raw.as_function_mod(p);
            auto it = where.find({static_cast<int>(i), j});
            if (it != where.end()) {
                law.raw_product[it->second] = raw;
                law.product[it->second] = std::move(simple);
            } else if (i < coeffs) {
                // a pinned component: zero on F_p points for A_d
                if (!simple.is_zero()) {
                    throw InternalInconsistency("pinned component " + coefficient_letter(i) + std::to_string(j) +
                                                " of the product does not vanish mod p");
                }
            } else if (law.kind == GroupLaw::Kind::Full) {
                law.overflow.emplace_back(coefficient_letter(i) + std::to_string(j), std::move(simple));
            } else if (!simple.is_zero()) {
                throw InternalInconsistency("coefficient " + std::to_string(i) + " of the product does not vanish mod p^d");
            }
        }
    }
    MPoly y = MPoly::variable(law.aux_variable());
    law.relations.push_back(MPoly::variable(law.unit_coordinate) * y - MPoly(1));
    return law;
}

} // namespace detail

// Witt coordinates for A_d(Z, p) composed mod p^d: the coefficient of T^i is a
// length-d Witt vector with its first i - 1 components pinned to zero.
inline GroupLaw group_law_Ad(unsigned long p, int d) {
    if (d < 1) throw OutOfRange("group_law_Ad: d must be >= 1");
    GroupLaw law;
    law.kind = GroupLaw::Kind::Ad;
    law.p = p;
    law.d = d;
    law.level = d - 1;
    law.degree_cap = d;
    std::vector<int> pinned{0, 0};
    for (int i = 2; i <= d; ++i) pinned.push_back(i - 1);
    return detail::build_group_law(std::move(law), pinned);
}

// Automorphisms of degree <= D of the affine line over Z/p^{n+1}. Every
// coefficient is a full Witt vector; a_{i,0} = 0 for i >= 2 and a_{1,0} y = 1
// are imposed as relations.
inline GroupLaw group_law_full(unsigned long p, int precision, int degree_cap) {
    if (precision < 1) throw OutOfRange("group_law_full: precision must be >= 1");
    if (degree_cap < 1) throw OutOfRange("group_law_full: degree cap must be >= 1");
    GroupLaw law;
    law.kind = GroupLaw::Kind::Full;
    law.p = p;
    law.level = precision - 1;
    law.degree_cap = degree_cap;
    law = detail::build_group_law(std::move(law), std::vector<int>(static_cast<std::size_t>(degree_cap) + 1, 0));
    for (std::size_t k = 0; k < law.slots.size(); ++k) {
        if (law.slots[k].first >= 2 && law.slots[k].second == 0) law.relations.push_back(MPoly::variable(k));
    }
    return law;
}

// Fast evaluation of polynomials mod a small prime at F_p points.
class ModEvaluator {
public:
    ModEvaluator(const MPoly& f, std::uint64_t m) : m_(m) {
        for (const auto& t : f.terms()) {
            Term term;
            term.coeff = to_u64(mod_floor(t.coeff, from_u64(m)));
            if (term.coeff == 0) continue;
            for (std::size_t v = 0; v < t.exps.size(); ++v) {
                if (t.exps[v] > 0) term.factors.emplace_back(v, t.exps[v]);
            }
            terms_.push_back(std::move(term));
        }
    }

    std::uint64_t operator()(const std::vector<std::uint64_t>& x) const {
        std::uint64_t out = 0;
        for (const auto& t : terms_) {
            std::uint64_t acc = t.coeff;
            for (auto [v, e] : t.factors) {
                for (std::uint32_t k = 0; k < e && acc != 0; ++k) acc = acc * x[v] % m_;
            }
            out = (out + acc) % m_;
        }
        return out;
    }

private:
    struct Term {
        std::uint64_t coeff = 0;
        std::vector<std::pair<std::size_t, std::uint32_t>> factors;
    };
    std::uint64_t m_;
    std::vector<Term> terms_;
};

// The law as a function on F_p points.
class LawEvaluator {
public:
    explicit LawEvaluator(const GroupLaw& law, bool raw = false) : law_(&law) {
        for (const auto& f : raw ? law.raw_product : law.product) product_.emplace_back(f, law.p);
        for (const auto& f : law.relations) relations_.emplace_back(f, law.p);
        for (const auto& [name, f] : law.overflow) overflow_.emplace_back(f, law.p);
    }

    std::size_t dimension() const { return law_->dimension(); }

    bool is_point(const std::vector<std::uint64_t>& x) const {
        const std::uint64_t p = law_->p;
        const std::uint64_t u = x[law_->unit_coordinate] % p;
        if (u == 0) return false;
        std::vector<std::uint64_t> with_y = x;
        std::uint64_t y = 1;
        for (std::uint64_t k = 2; k < p; ++k) y = y * u % p; // u^{p-2}
        with_y.push_back(y);
        for (const auto& r : relations_) {
            if (r(with_y) != 0) return false;
        }
        return true;
    }

    std::vector<std::uint64_t> multiply(const std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& y) const {
        std::vector<std::uint64_t> xy = x;
        xy.insert(xy.end(), y.begin(), y.end());
        std::vector<std::uint64_t> out;
        for (const auto& f : product_) out.push_back(f(xy));
        return out;
    }

    std::vector<std::uint64_t> overflow(const std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& y) const {
        std::vector<std::uint64_t> xy = x;
        xy.insert(xy.end(), y.begin(), y.end());
        std::vector<std::uint64_t> out;
        for (const auto& f : overflow_) out.push_back(f(xy));
        return out;
    }

    // All F_p points, in lexicographic order.
    std::vector<std::vector<std::uint64_t>> points() const {
        const std::uint64_t p = law_->p;
        std::vector<std::vector<std::uint64_t>> out;
        std::vector<std::uint64_t> x(dimension(), 0);
        for (;;) {
            if (is_point(x)) out.push_back(x);
            std::size_t k = 0;
            while (k < x.size() && ++x[k] == p) x[k++] = 0;
            if (k == x.size()) break;
        }
        return out;
    }

private:
    const GroupLaw* law_;
    std::vector<ModEvaluator> product_;
    std::vector<ModEvaluator> relations_;
    std::vector<ModEvaluator> overflow_;
};

// A point of a law as the polynomial it stands for: coefficient i is the
// Witt vector of slot values, read in Z/p^{level+1}.
inline std::vector<BigInt> law_point_coefficients(const GroupLaw& law, const std::vector<std::uint64_t>& x) {
    int top = 0;
    for (const auto& s : law.slots) top = std::max(top, s.first);
    std::vector<std::vector<std::uint64_t>> vecs(static_cast<std::size_t>(top) + 1,
                                                 std::vector<std::uint64_t>(static_cast<std::size_t>(law.level) + 1, 0));
    for (std::size_t k = 0; k < law.slots.size(); ++k) {
        vecs[static_cast<std::size_t>(law.slots[k].first)][static_cast<std::size_t>(law.slots[k].second)] = x[k];
    }
    std::vector<BigInt> out;
    for (const auto& v : vecs) out.push_back(witt_to_residue(law.p, v));
    return out;
}

struct AxiomReport {
    bool exhaustive = false;
    std::size_t points = 0;
    std::size_t triples = 0;
    bool inverses_checked = false;
    // A witness for each failed axiom.
    std::optional<std::string> closure_failure;
    std::optional<std::string> identity_failure;
    std::optional<std::string> associativity_failure;
    std::optional<std::string> inverse_failure;

    bool closure() const { return !closure_failure; }
    bool identity() const { return !identity_failure; }
    bool associativity() const { return !associativity_failure; }
    bool inverses() const { return !inverse_failure; }
    bool ok() const { return closure() && identity() && associativity() && inverses(); }

    std::optional<std::string> first_failure() const {
        for (const auto* f : {&closure_failure, &identity_failure, &associativity_failure, &inverse_failure}) {
            if (*f) return *f;
        }
        return std::nullopt;
    }
};

enum class VerifyMode { Exhaustive, Sampled };

struct VerifyOptions {
    VerifyMode mode = VerifyMode::Exhaustive;
    std::size_t samples = 10000;
    std::uint64_t seed = 1;
    // inverse search is skipped above this many points
    std::size_t inverse_search_limit = 5000;
};

inline std::string point_to_string(const std::vector<std::uint64_t>& x) {
    std::string out = "(";
    for (std::size_t i = 0; i < x.size(); ++i) out += (i ? "," : "") + std::to_string(x[i]);
    return out + ")";
}

// Closure, identity, associativity and inverses on the F_p points.
inline AxiomReport verify_group_axioms(const GroupLaw& law, const VerifyOptions& opts = {}) {
    LawEvaluator ev(law);
    AxiomReport rep;
    rep.exhaustive = opts.mode == VerifyMode::Exhaustive;
    auto pts = ev.points();
    rep.points = pts.size();
    auto fail = [](std::optional<std::string>& slot, const std::string& what) {
        if (!slot) slot = what;
    };
    const auto e = law.identity();
    if (!ev.is_point(e)) fail(rep.identity_failure, "identity coordinates are not a point");
    for (const auto& x : pts) {
        if (ev.multiply(e, x) != x || ev.multiply(x, e) != x) {
            fail(rep.identity_failure, "identity fails at " + point_to_string(x));
            break;
        }
    }
    auto check_triple = [&](const std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& y,
                            const std::vector<std::uint64_t>& z) {
        ++rep.triples;
        auto xy = ev.multiply(x, y);
        auto yz = ev.multiply(y, z);
        if (ev.multiply(xy, z) != ev.multiply(x, yz)) {
            fail(rep.associativity_failure, "(xy)z != x(yz) at x=" + point_to_string(x) + " y=" + point_to_string(y) +
                                        " z=" + point_to_string(z));
            return false;
        }
        return true;
    };
    if (rep.exhaustive) {
        for (const auto& x : pts) {
            for (const auto& y : pts) {
                if (!ev.is_point(ev.multiply(x, y))) {
                    fail(rep.closure_failure, "product leaves the points at " + point_to_string(x) + "," + point_to_string(y));
                }
            }
        }
        for (std::size_t a = 0; a < pts.size() && !rep.associativity_failure; ++a) {
            for (std::size_t b = 0; b < pts.size() && !rep.associativity_failure; ++b) {
                for (std::size_t c = 0; c < pts.size(); ++c) {
                    if (!check_triple(pts[a], pts[b], pts[c])) break;
                }
            }
        }
    } else {
        std::mt19937_64 rng(opts.seed);
        for (std::size_t s = 0; s < opts.samples && !rep.associativity_failure; ++s) {
            const auto& x = pts[rng() % pts.size()];
            const auto& y = pts[rng() % pts.size()];
            const auto& z = pts[rng() % pts.size()];
            if (!ev.is_point(ev.multiply(x, y))) fail(rep.closure_failure, "product leaves the points");
            check_triple(x, y, z);
        }
    }
    if (pts.size() <= opts.inverse_search_limit) {
        rep.inverses_checked = true;
        for (const auto& x : pts) {
            bool found = false;
            for (const auto& y : pts) {
                if (ev.multiply(x, y) == e && ev.multiply(y, x) == e) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                fail(rep.inverse_failure, "no inverse for " + point_to_string(x));
                break;
            }
        }
    }
    return rep;
}

} // namespace unipoly
