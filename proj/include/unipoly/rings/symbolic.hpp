#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "unipoly/core/bigint.hpp"
#include "unipoly/rings/concepts.hpp"

namespace unipoly {

// Z[g_1, ..., g_k, 1/b][q] / (q^n): polynomials in named generators with one
// optionally inverted generator b and a formal nilpotent q.
//
// An element is a map from exponent vectors (one slot per generator, then q)
// to non-zero integer coefficients. The inverted generator may carry a negative
// exponent; grouping terms by that exponent gives the (numerator, b^k) form.
class Symbolic {
public:
    using Monomial = std::vector<int>;
    using Elem = std::map<Monomial, BigInt>;

    explicit Symbolic(int precision,
                      std::vector<std::string> generators = {"a", "b", "c", "d", "e"},
                      std::optional<std::string> inverted = std::string("b"))
        : names_(std::move(generators)), n_(precision) {
        if (n_ < 1) throw OutOfRange("symbolic ring requires q-precision >= 1");
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (names_[i] == "q") throw OutOfRange("'q' is reserved for the distinguished element");
            for (std::size_t j = 0; j < i; ++j) {
                if (names_[i] == names_[j]) throw OutOfRange("duplicate generator name " + names_[i]);
            }
        }
        if (inverted) {
            auto it = std::find(names_.begin(), names_.end(), *inverted);
            if (it == names_.end()) throw OutOfRange("inverted generator " + *inverted + " is not a generator");
            inverted_ = static_cast<int>(it - names_.begin());
        }
    }

    bool operator==(const Symbolic& other) const {
        return names_ == other.names_ && inverted_ == other.inverted_ && n_ == other.n_;
    }

    const std::vector<std::string>& generators() const { return names_; }
    std::optional<std::string> inverted() const {
        if (inverted_ < 0) return std::nullopt;
        return names_[static_cast<std::size_t>(inverted_)];
    }
    int inverted_index() const { return inverted_; }
    std::size_t slots() const { return names_.size() + 1; }
    std::size_t q_slot() const { return names_.size(); }

    std::optional<std::size_t> generator_index(const std::string& name) const {
        if (name == "q") return q_slot();
        auto it = std::find(names_.begin(), names_.end(), name);
        if (it == names_.end()) return std::nullopt;
        return static_cast<std::size_t>(it - names_.begin());
    }

    Elem zero() const { return {}; }
    Elem one() const { return from_integer(1); }
    Elem from_integer(const BigInt& z) const {
        Elem out;
        if (z != 0) out.emplace(Monomial(slots(), 0), z);
        return out;
    }
    // c * prod(gen^exp), exponents indexed like the generator list then q.
    Elem term(const BigInt& coeff, Monomial exps) const {
        if (exps.size() != slots()) throw ShapeMismatch("monomial has wrong number of slots");
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] < 0 && static_cast<int>(i) != inverted_) {
                throw OutOfRange("negative exponent on non-inverted generator");
            }
        }
        Elem out;
        if (coeff != 0 && exps[q_slot()] < n_) out.emplace(std::move(exps), coeff);
        return out;
    }
    Elem generator(const std::string& name, int exponent = 1) const {
        auto idx = generator_index(name);
        if (!idx) throw OutOfRange("unknown generator " + name);
        Monomial m(slots(), 0);
        m[*idx] = exponent;
        return term(1, std::move(m));
    }
    Elem q() const { return q_power(1); }

    Elem add(const Elem& a, const Elem& b) const {
        Elem out = a;
        for (const auto& [m, c] : b) accumulate(out, m, c);
        return out;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        Elem out = a;
        for (const auto& [m, c] : b) accumulate(out, m, -c);
        return out;
    }
    Elem neg(const Elem& a) const {
        Elem out = a;
        for (auto& [m, c] : out) c = -c;
        return out;
    }
    Elem mul(const Elem& a, const Elem& b) const {
        Elem out;
        Monomial m(slots());
        for (const auto& [ma, ca] : a) {
            for (const auto& [mb, cb] : b) {
                if (ma[q_slot()] + mb[q_slot()] >= n_) continue;
                for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
                accumulate(out, m, ca * cb);
            }
        }
        return out;
    }

    bool is_zero(const Elem& a) const { return a.empty(); }
    bool is_nilpotent(const Elem& a) const { return constant_part(a).empty(); }
    bool is_unit(const Elem& a) const { return unit_monomial(constant_part(a)).has_value(); }
    bool is_finite() const { return false; }

    Elem inv(const Elem& a) const {
        Elem u = constant_part(a);
        auto mono = unit_monomial(u);
        if (!mono) throw NotAUnit(to_string(a) + " is not a unit of " + describe());
        // u^{-1} * sum_j (-u^{-1} * rest)^j with rest nilpotent.
        Monomial inv_m(slots(), 0);
        if (inverted_ >= 0) inv_m[static_cast<std::size_t>(inverted_)] = -(*mono).second;
        Elem u_inv = term((*mono).first, inv_m);
        Elem rest = sub(a, u);
        Elem step = neg(mul(u_inv, rest));
        Elem sum = one();
        Elem power = one();
        for (int j = 1; j < n_; ++j) {
            power = mul(power, step);
            if (power.empty()) break;
            sum = add(sum, power);
        }
        return mul(u_inv, sum);
    }

    bool has_q_adic() const { return true; }
    int precision() const { return n_; }
    Elem q_power(int k) const {
        Monomial m(slots(), 0);
        m[q_slot()] = k;
        return term(1, std::move(m));
    }
    int valuation(const Elem& a) const {
        int v = kInfiniteValuation;
        for (const auto& [m, c] : a) v = std::min(v, m[q_slot()]);
        return v;
    }
    Elem reduce(const Elem& a, int k) const {
        Elem out;
        for (const auto& [m, c] : a) {
            if (m[q_slot()] < k) out.emplace(m, c);
        }
        return out;
    }
    Elem div_q_power(const Elem& a, int k) const {
        if (k <= 0) return a;
        Elem out;
        for (const auto& [m, c] : a) {
            if (m[q_slot()] < k) throw NotDivisible(to_string(a) + " is not divisible by q^" + std::to_string(k));
            Monomial shifted = m;
            shifted[q_slot()] -= k;
            out.emplace(std::move(shifted), c);
        }
        return out;
    }
    Symbolic with_precision(int k) const { return Symbolic(k, names_, inverted()); }
    Elem reduce_from(const Elem& a) const { return reduce(a, n_); }
    Elem lift_from(const Elem& a) const { return a; }

    // Terms with q-degree zero.
    Elem constant_part(const Elem& a) const { return reduce(a, 1); }

    // (numerator, k) with a = numerator / b^k and b not dividing the numerator.
    std::pair<Elem, int> as_fraction(const Elem& a) const {
        if (inverted_ < 0 || a.empty()) return {a, 0};
        const auto slot = static_cast<std::size_t>(inverted_);
        int min_exp = 0;
        for (const auto& [m, c] : a) min_exp = std::min(min_exp, m[slot]);
        Elem num;
        for (const auto& [m, c] : a) {
            Monomial shifted = m;
            shifted[slot] -= min_exp;
            num.emplace(std::move(shifted), c);
        }
        return {num, -min_exp};
    }

    std::string monomial_string(const Monomial& m, bool with_denominator) const {
        std::string num;
        std::string den;
        auto factor = [](const std::string& name, int e) {
            return e == 1 ? name : name + "^" + std::to_string(e);
        };
        for (std::size_t i = 0; i < m.size(); ++i) {
            const std::string& name = i == q_slot() ? q_name_ : names_[i];
            if (m[i] > 0) num += (num.empty() ? "" : "*") + factor(name, m[i]);
            if (m[i] < 0 && with_denominator) den += (den.empty() ? "" : "*") + factor(name, -m[i]);
        }
        if (num.empty()) num = "1";
        return den.empty() ? num : num + "/" + den;
    }

    std::string to_string(const Elem& a) const {
        if (a.empty()) return "0";
        std::string out;
        for (const auto& [m, c] : a) {
            BigInt mag = abs(c);
            bool unit_mono = std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
            std::string body = monomial_string(m, true);
            std::string piece;
            if (unit_mono) {
                piece = unipoly::to_string(mag);
            } else if (mag == 1) {
                piece = body;
            } else if (body.rfind("1/", 0) == 0) {
                piece = unipoly::to_string(mag) + body.substr(1);
            } else {
                piece = unipoly::to_string(mag) + "*" + body;
            }
            if (out.empty()) {
                out = (c < 0 ? "-" : "") + piece;
            } else {
                out += (c < 0 ? " - " : " + ") + piece;
            }
        }
        return out;
    }

    std::string describe() const {
        std::string out = "Z[";
        for (std::size_t i = 0; i < names_.size(); ++i) out += (i ? "," : "") + names_[i];
        if (inverted_ >= 0) out += ",1/" + names_[static_cast<std::size_t>(inverted_)];
        out += "][q]/(q^" + std::to_string(n_) + ")";
        return out;
    }

private:
    static void accumulate(Elem& out, const Monomial& m, const BigInt& c) {
        if (c == 0) return;
        auto [it, inserted] = out.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) out.erase(it);
        }
    }

    // For u = +-b^k returns (+-1, k).
    std::optional<std::pair<BigInt, int>> unit_monomial(const Elem& u) const {
        if (u.size() != 1) return std::nullopt;
        const auto& [m, c] = *u.begin();
        if (c != 1 && c != -1) return std::nullopt;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (static_cast<int>(i) != inverted_ && m[i] != 0) return std::nullopt;
        }
        int k = inverted_ >= 0 ? m[static_cast<std::size_t>(inverted_)] : 0;
        return std::make_pair(c, k);
    }

    std::vector<std::string> names_;
    int inverted_ = -1;
    int n_;
    std::string q_name_ = "q";
};

// Image of a symbolic element under the ring map sending the generators to
// `values` (indexed like the generator list) and q to `q_value`.
template <class Target>
typename Target::Elem specialize(const Symbolic& ring, const Symbolic::Elem& a, const Target& target,
                                 const std::vector<typename Target::Elem>& values,
                                 const typename Target::Elem& q_value) {
    if (values.size() != ring.generators().size()) throw ShapeMismatch("specialize: one value per generator");
    auto out = target.zero();
    for (const auto& [m, c] : a) {
        auto t = target.from_integer(c);
        for (std::size_t i = 0; i < m.size(); ++i) {
            const auto& base = i == ring.q_slot() ? q_value : values[i];
            if (m[i] >= 0) {
                t = target.mul(t, ring_pow(target, base, static_cast<unsigned long>(m[i])));
            } else {
                t = target.mul(t, ring_pow(target, target.inv(base), static_cast<unsigned long>(-m[i])));
            }
        }
        out = target.add(out, t);
    }
    return out;
}

} // namespace unipoly
