#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "unipoly/core/bigint.hpp"
#include "unipoly/rings/concepts.hpp"

namespace unipoly {

// Sparse multivariate polynomial over Z. Variables are indices; exponent
// vectors carry no trailing zeros, so equal monomials have equal vectors and
// the term list (sorted by exponent vector, no zero coefficients) is canonical.
class MPoly {
public:
    using Exponents = std::vector<std::uint32_t>;

    struct Term {
        Exponents exps;
        BigInt coeff;
        bool operator==(const Term&) const = default;
    };

    MPoly() = default;
    MPoly(long c) { // NOLINT(google-explicit-constructor)
        if (c != 0) terms_.push_back({{}, BigInt(c)});
    }
    MPoly(const BigInt& c) { // NOLINT(google-explicit-constructor)
        if (c != 0) terms_.push_back({{}, c});
    }

    static MPoly variable(std::size_t index, std::uint32_t exponent = 1) {
        MPoly out;
        Exponents e(index + 1, 0);
        e[index] = exponent;
        trim(e);
        out.terms_.push_back({std::move(e), BigInt(1)});
        return out;
    }

    // Builds a polynomial from arbitrary (possibly repeated) terms.
    static MPoly from_terms(std::vector<Term> terms) {
        Map acc;
        for (auto& t : terms) {
            trim(t.exps);
            add_into(acc, t.exps, t.coeff);
        }
        return from_map(std::move(acc));
    }

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const MPoly&) const = default;

    BigInt constant_term() const {
        if (!terms_.empty() && terms_.front().exps.empty()) return terms_.front().coeff;
        return 0;
    }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.front().exps.empty()); }

    // Number of variable slots touched (max index + 1).
    std::size_t variable_span() const {
        std::size_t n = 0;
        for (const auto& t : terms_) n = std::max(n, t.exps.size());
        return n;
    }

    BigInt coefficient(const Exponents& exps) const {
        Exponents key = exps;
        trim(key);
        auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                                   [](const Term& t, const Exponents& k) { return t.exps < k; });
        if (it != terms_.end() && it->exps == key) return it->coeff;
        return 0;
    }

    friend MPoly operator+(const MPoly& a, const MPoly& b) { return merge(a, b, 1); }
    friend MPoly operator-(const MPoly& a, const MPoly& b) { return merge(a, b, -1); }
    MPoly operator-() const {
        MPoly out = *this;
        for (auto& t : out.terms_) t.coeff = -t.coeff;
        return out;
    }
    MPoly& operator+=(const MPoly& b) { return *this = *this + b; }
    MPoly& operator-=(const MPoly& b) { return *this = *this - b; }

    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (b.is_constant()) return a.scaled(b.constant_term());
        if (a.is_constant()) return b.scaled(a.constant_term());
        Map acc;
        acc.reserve(std::min<std::size_t>(a.size() * b.size(), 1u << 20));
        Exponents scratch;
        for (const auto& ta : a.terms_) {
            for (const auto& tb : b.terms_) {
                const auto& longer = ta.exps.size() >= tb.exps.size() ? ta.exps : tb.exps;
                const auto& shorter = ta.exps.size() >= tb.exps.size() ? tb.exps : ta.exps;
                scratch.assign(longer.begin(), longer.end());
                for (std::size_t i = 0; i < shorter.size(); ++i) scratch[i] += shorter[i];
                auto it = acc.find(scratch);
                if (it == acc.end()) {
                    it = acc.emplace(scratch, BigInt(0)).first;
                }
                mpz_addmul(it->second.get_mpz_t(), ta.coeff.get_mpz_t(), tb.coeff.get_mpz_t());
            }
        }
        return from_map(std::move(acc));
    }
    MPoly& operator*=(const MPoly& b) { return *this = *this * b; }

    MPoly scaled(const BigInt& c) const {
        if (c == 0) return {};
        MPoly out = *this;
        for (auto& t : out.terms_) t.coeff *= c;
        return out;
    }

    MPoly pow(unsigned long exp) const {
        MPoly out(1);
        MPoly base = *this;
        while (exp > 0) {
            if (exp & 1UL) out *= base;
            exp >>= 1;
            if (exp > 0) base *= base;
        }
        return out;
    }

    bool divisible_by(const BigInt& d) const {
        return std::all_of(terms_.begin(), terms_.end(), [&](const Term& t) { return divides(d, t.coeff); });
    }

    // Coefficientwise exact division; throws NotDivisible when d does not
    // divide every coefficient.
    MPoly exact_div(const BigInt& d) const {
        MPoly out = *this;
        for (auto& t : out.terms_) {
            if (!divides(d, t.coeff)) {
                throw NotDivisible("coefficient " + unipoly::to_string(t.coeff) + " is not divisible by " +
                                   unipoly::to_string(d));
            }
            mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), d.get_mpz_t());
        }
        return out;
    }

    // Rename variable i to map[i].
    MPoly renamed(const std::vector<std::size_t>& map) const {
        std::vector<Term> terms;
        terms.reserve(terms_.size());
        for (const auto& t : terms_) {
            Exponents e;
            for (std::size_t i = 0; i < t.exps.size(); ++i) {
                if (t.exps[i] == 0) continue;
                if (map.at(i) >= e.size()) e.resize(map.at(i) + 1, 0);
                e[map.at(i)] += t.exps[i];
            }
            terms.push_back({std::move(e), t.coeff});
        }
        return from_terms(std::move(terms));
    }

    // Substitute polynomials for variables (variables beyond the list are kept).
    MPoly substitute(const std::vector<MPoly>& values) const {
        std::vector<std::unordered_map<std::uint32_t, MPoly>> cache(values.size());
        auto power = [&](std::size_t var, std::uint32_t e) -> const MPoly& {
            auto it = cache[var].find(e);
            if (it == cache[var].end()) it = cache[var].emplace(e, values[var].pow(e)).first;
            return it->second;
        };
        MPoly out;
        for (const auto& t : terms_) {
            MPoly piece(t.coeff);
            Exponents rest;
            for (std::size_t i = 0; i < t.exps.size(); ++i) {
                if (t.exps[i] == 0) continue;
                if (i < values.size()) {
                    piece *= power(i, t.exps[i]);
                } else {
                    if (rest.size() <= i) rest.resize(i + 1, 0);
                    rest[i] = t.exps[i];
                }
            }
            if (!rest.empty()) piece *= MPoly::from_terms({{rest, BigInt(1)}});
            out += piece;
        }
        return out;
    }

    // Reduction to a polynomial function on F_p^N: coefficients in [0, p) and
    // exponents e >= 1 replaced by ((e - 1) mod (p - 1)) + 1, using x^p = x.
    MPoly as_function_mod(unsigned long p) const {
        std::vector<Term> terms;
        BigInt bp(p);
        for (const auto& t : terms_) {
            BigInt c = mod_floor(t.coeff, bp);
            if (c == 0) continue;
            Exponents e = t.exps;
            for (auto& x : e) {
                if (x > 0) x = ((x - 1) % static_cast<std::uint32_t>(p - 1)) + 1;
            }
            terms.push_back({std::move(e), c});
        }
        MPoly out = from_terms(std::move(terms));
        for (auto& t : out.terms_) t.coeff = mod_floor(t.coeff, bp);
        out.drop_zeros();
        return out;
    }

    // Coefficients reduced to [0, p), exponents untouched.
    MPoly coefficients_mod(unsigned long p) const {
        MPoly out = *this;
        for (auto& t : out.terms_) t.coeff = mod_floor(t.coeff, BigInt(p));
        out.drop_zeros();
        return out;
    }

    template <CommutativeRing R>
    typename R::Elem evaluate(const R& ring, const std::vector<typename R::Elem>& values) const {
        std::vector<std::vector<typename R::Elem>> powers(values.size());
        auto power = [&](std::size_t var, std::uint32_t e) -> const typename R::Elem& {
            auto& cache = powers[var];
            if (cache.empty()) {
                cache.push_back(ring.one());
                cache.push_back(values[var]);
            }
            while (cache.size() <= e) cache.push_back(ring.mul(cache.back(), values[var]));
            return cache[e];
        };
        for (const auto& t : terms_) {
            if (t.exps.size() > values.size()) throw ShapeMismatch("evaluate: not enough variable values");
        }
        // Terms are sorted lexicographically, so those sharing exponents of
        // variables 0..v-1 are contiguous; factor variable v out of each run.
        auto exp_at = [&](std::size_t k, std::size_t v) -> std::uint32_t {
            const auto& e = terms_[k].exps;
            return v < e.size() ? e[v] : 0;
        };
        auto nested = [&](auto&& self, std::size_t lo, std::size_t hi, std::size_t v) -> typename R::Elem {
            if (hi - lo == 1 && terms_[lo].exps.size() <= v) return ring.from_integer(terms_[lo].coeff);
            auto out = ring.zero();
            for (std::size_t k = lo; k < hi;) {
                std::size_t end = k;
                const auto e = exp_at(k, v);
                while (end < hi && exp_at(end, v) == e) ++end;
                auto inner = self(self, k, end, v + 1);
                out = ring.add(out, e == 0 ? inner : ring.mul(inner, power(v, e)));
                k = end;
            }
            return out;
        };
        if (terms_.empty()) return ring.zero();
        return nested(nested, 0, terms_.size(), 0);
    }

    // Same nesting as `evaluate`, specialised to integer values with in-place
    // GMP arithmetic; used for the large Witt laws.
    BigInt evaluate_integers(const std::vector<BigInt>& values) const {
        for (const auto& t : terms_) {
            if (t.exps.size() > values.size()) throw ShapeMismatch("evaluate: not enough variable values");
        }
        std::vector<std::vector<BigInt>> powers(values.size());
        auto power = [&](std::size_t var, std::uint32_t e) -> const BigInt& {
            auto& cache = powers[var];
            if (cache.empty()) {
                cache.emplace_back(1);
                cache.push_back(values[var]);
            }
            while (cache.size() <= e) cache.push_back(cache.back() * values[var]);
            return cache[e];
        };
        auto exp_at = [&](std::size_t k, std::size_t v) -> std::uint32_t {
            const auto& e = terms_[k].exps;
            return v < e.size() ? e[v] : 0;
        };
        std::vector<BigInt> scratch(values.size() + 2);
        auto nested = [&](auto&& self, std::size_t lo, std::size_t hi, std::size_t v, BigInt& out) -> void {
            if (hi - lo == 1 && terms_[lo].exps.size() <= v) {
                out = terms_[lo].coeff;
                return;
            }
            out = 0;
            for (std::size_t k = lo; k < hi;) {
                std::size_t end = k;
                const auto e = exp_at(k, v);
                while (end < hi && exp_at(end, v) == e) ++end;
                if (end - k == 1 && terms_[k].exps.size() == v + 1) {
                    mpz_addmul(out.get_mpz_t(), terms_[k].coeff.get_mpz_t(), power(v, e).get_mpz_t());
                } else {
                    auto& inner = scratch[v + 1];
                    self(self, k, end, v + 1, inner);
                    if (e == 0) {
                        out += inner;
                    } else {
                        mpz_addmul(out.get_mpz_t(), inner.get_mpz_t(), power(v, e).get_mpz_t());
                    }
                }
                k = end;
            }
        };
        BigInt out = 0;
        if (!terms_.empty()) nested(nested, 0, terms_.size(), 0, out);
        return out;
    }

    // Plain machine evaluation modulo a small m (m < 2^32).
    std::uint64_t evaluate_mod(std::uint64_t m, const std::vector<std::uint64_t>& values) const {
        std::uint64_t out = 0;
        for (const auto& t : terms_) {
            std::uint64_t acc = to_u64(mod_floor(t.coeff, from_u64(m)));
            for (std::size_t i = 0; i < t.exps.size() && acc != 0; ++i) {
                for (std::uint32_t k = 0; k < t.exps[i]; ++k) acc = acc * values[i] % m;
            }
            out = (out + acc) % m;
        }
        return out;
    }

    unsigned long total_degree() const {
        unsigned long d = 0;
        for (const auto& t : terms_) {
            unsigned long s = 0;
            for (auto e : t.exps) s += e;
            d = std::max(d, s);
        }
        return d;
    }

    bool uses_variable(std::size_t var) const {
        return std::any_of(terms_.begin(), terms_.end(),
                           [&](const Term& t) { return var < t.exps.size() && t.exps[var] != 0; });
    }

    std::string to_string(const std::function<std::string(std::size_t)>& name) const {
        if (terms_.empty()) return "0";
        std::string out;
        // Highest total degree first reads more naturally.
        std::vector<const Term*> order;
        for (const auto& t : terms_) order.push_back(&t);
        std::stable_sort(order.begin(), order.end(), [](const Term* a, const Term* b) {
            unsigned long da = 0, db = 0;
            for (auto e : a->exps) da += e;
            for (auto e : b->exps) db += e;
            if (da != db) return da < db;
            return a->exps > b->exps;
        });
        for (const Term* t : order) {
            std::string mono;
            for (std::size_t i = 0; i < t->exps.size(); ++i) {
                if (t->exps[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += name(i);
                if (t->exps[i] > 1) mono += "^" + std::to_string(t->exps[i]);
            }
            BigInt mag = abs(t->coeff);
            std::string piece = mono.empty() ? unipoly::to_string(mag)
                                : mag == 1   ? mono
                                             : unipoly::to_string(mag) + "*" + mono;
            if (out.empty()) {
                out = (t->coeff < 0 ? "-" : "") + piece;
            } else {
                out += (t->coeff < 0 ? " - " : " + ") + piece;
            }
        }
        return out;
    }

private:
    struct Hash {
        std::size_t operator()(const Exponents& e) const noexcept {
            std::size_t h = 1469598103934665603ULL;
            for (auto x : e) {
                h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            }
            return h;
        }
    };
    using Map = std::unordered_map<Exponents, BigInt, Hash>;

    static void trim(Exponents& e) {
        while (!e.empty() && e.back() == 0) e.pop_back();
    }

    static void add_into(Map& acc, const Exponents& e, const BigInt& c) {
        auto [it, inserted] = acc.try_emplace(e, c);
        if (!inserted) it->second += c;
    }

    static MPoly from_map(Map&& acc) {
        MPoly out;
        out.terms_.reserve(acc.size());
        for (auto& [e, c] : acc) {
            if (c != 0) out.terms_.push_back({e, std::move(c)});
        }
        std::sort(out.terms_.begin(), out.terms_.end(), [](const Term& a, const Term& b) { return a.exps < b.exps; });
        return out;
    }

    static MPoly merge(const MPoly& a, const MPoly& b, int sign) {
        MPoly out;
        out.terms_.reserve(a.size() + b.size());
        auto ia = a.terms_.begin();
        auto ib = b.terms_.begin();
        while (ia != a.terms_.end() || ib != b.terms_.end()) {
            if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->exps < ib->exps)) {
                out.terms_.push_back(*ia++);
            } else if (ia == a.terms_.end() || ib->exps < ia->exps) {
                out.terms_.push_back({ib->exps, sign > 0 ? ib->coeff : BigInt(-ib->coeff)});
                ++ib;
            } else {
                BigInt c = sign > 0 ? BigInt(ia->coeff + ib->coeff) : BigInt(ia->coeff - ib->coeff);
                if (c != 0) out.terms_.push_back({ia->exps, std::move(c)});
                ++ia;
                ++ib;
            }
        }
        return out;
    }

    void drop_zeros() {
        terms_.erase(std::remove_if(terms_.begin(), terms_.end(), [](const Term& t) { return t.coeff == 0; }),
                     terms_.end());
    }

    std::vector<Term> terms_;
};

// Z[x_0, x_1, ...] as a ring, with an optional distinguished integer q for
// exact division.
class MPolyRing {
public:
    using Elem = MPoly;

    MPolyRing() = default;
    explicit MPolyRing(BigInt q) : q_(std::move(q)) {}

    bool operator==(const MPolyRing& other) const { return q_ == other.q_; }

    const BigInt& q() const { return q_; }

    Elem zero() const { return {}; }
    Elem one() const { return MPoly(1); }
    Elem from_integer(const BigInt& z) const { return MPoly(z); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    bool is_zero(const Elem& a) const { return a.is_zero(); }
    bool is_unit(const Elem& a) const {
        return a.is_constant() && (a.constant_term() == 1 || a.constant_term() == -1);
    }
    Elem inv(const Elem& a) const {
        if (!is_unit(a)) throw NotAUnit("non-constant or non-unit integer polynomial is not invertible");
        return a;
    }
    bool is_nilpotent(const Elem& a) const { return a.is_zero(); }
    bool is_finite() const { return false; }

    Elem exact_div_by_q(const Elem& a, int k) const {
        if (q_ == 0) throw UnsupportedRing("integer polynomial ring has no distinguished q");
        return a.exact_div(big_pow(q_, static_cast<unsigned long>(k)));
    }

    std::string to_string(const Elem& a) const {
        return a.to_string([](std::size_t i) { return "x" + std::to_string(i); });
    }
    std::string describe() const { return q_ == 0 ? "Z[x]" : "Z[x] (q=" + unipoly::to_string(q_) + ")"; }

private:
    BigInt q_{0};
};

} // namespace unipoly
