#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <type_traits>
#include <vector>

#include "unipoly/core/bigint.hpp"
#include "unipoly/rings/mpoly.hpp"
#include "unipoly/rings/zmod.hpp"

namespace unipoly {

// Variable layout of the universal laws: x_i is variable 2i, y_i is 2i+1.
inline std::size_t witt_x(std::size_t i) { return 2 * i; }
inline std::size_t witt_y(std::size_t i) { return 2 * i + 1; }

inline std::string witt_variable_name(std::size_t v) {
    return std::string(v % 2 == 0 ? "x" : "y") + std::to_string(v / 2);
}

// w_j = sum_{i=0}^{j} p^i x_i^{p^{j-i}}, with x_i placed at variable var(i).
inline MPoly witt_polynomial(unsigned long p, int j, const std::function<std::size_t(int)>& var = {}) {
    if (j < 0) throw OutOfRange("witt_polynomial: index must be >= 0");
    MPoly out;
    for (int i = 0; i <= j; ++i) {
        std::size_t v = var ? var(i) : static_cast<std::size_t>(i);
        BigInt e = big_pow(BigInt(p), static_cast<unsigned long>(j - i));
        if (!e.fits_uint_p()) throw OutOfRange("witt_polynomial: exponent overflow");
        out += MPoly::variable(v, static_cast<std::uint32_t>(e.get_ui())).scaled(big_pow(BigInt(p), static_cast<unsigned long>(i)));
    }
    return out;
}

namespace detail {

inline MPoly power_of(const MPoly& a, unsigned long e) { return a.pow(e); }
inline BigInt power_of(const BigInt& a, unsigned long e) { return big_pow(a, e); }

inline MPoly divide_exactly(const MPoly& a, const BigInt& d) {
    if (!a.divisible_by(d)) throw IntegralityViolation("ghost inversion left a non-integral coefficient");
    return a.exact_div(d);
}
inline BigInt divide_exactly(const BigInt& a, const BigInt& d) {
    if (!divides(d, a)) throw IntegralityViolation("ghost inversion left a non-integral value");
    BigInt out;
    mpz_divexact(out.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
    return out;
}

} // namespace detail

// The Witt components whose ghost components are `ghost`:
//   c_k = (ghost_k - sum_{i<k} p^i c_i^{p^{k-i}}) / p^k,
// with every division checked. Works for integers and integer polynomials.
template <class T>
std::vector<T> witt_from_ghost(unsigned long p, const std::vector<T>& ghost) {
    std::vector<T> comps;
    // powers[i] = comps[i]^{p^{k-1-i}} going into step k
    std::vector<T> powers;
    BigInt pk = 1;
    for (std::size_t k = 0; k < ghost.size(); ++k) {
        T acc = ghost[k];
        BigInt pi = 1;
        for (std::size_t i = 0; i < k; ++i) {
            powers[i] = detail::power_of(powers[i], p);
            acc -= powers[i] * T(pi);
            pi *= p;
        }
        T ck = detail::divide_exactly(acc, pk);
        comps.push_back(ck);
        powers.push_back(ck);
        pk *= p;
    }
    return comps;
}

// Integer polynomials s_0..s_n and m_0..m_n in x_0, y_0, ..., x_n, y_n.
struct UniversalWittLaw {
    unsigned long p = 2;
    int level = 0;
    std::vector<MPoly> sum;
    std::vector<MPoly> prod;

    bool operator==(const UniversalWittLaw&) const = default;
};

// Positions of x_i and y_i; the default is the interleaved layout above.
struct WittLayout {
    std::function<std::size_t(int)> x = [](int i) { return witt_x(static_cast<std::size_t>(i)); };
    std::function<std::size_t(int)> y = [](int i) { return witt_y(static_cast<std::size_t>(i)); };
};

// Solve w_k(s) = w_k(x) + w_k(y), w_k(m) = w_k(x) w_k(y) for k = 0..level by
// successive exact division by p^k. Integrality is checked at every step.
inline UniversalWittLaw derive_witt_laws(unsigned long p, int level, const WittLayout& layout = {}) {
    if (!is_probable_prime(BigInt(p))) throw OutOfRange("derive_witt_laws: p must be prime");
    if (level < 0) throw OutOfRange("derive_witt_laws: level must be >= 0");
    std::vector<MPoly> ghost_sum, ghost_prod;
    for (int k = 0; k <= level; ++k) {
        MPoly wx = witt_polynomial(p, k, layout.x);
        MPoly wy = witt_polynomial(p, k, layout.y);
        ghost_sum.push_back(wx + wy);
        ghost_prod.push_back(wx * wy);
    }
    UniversalWittLaw law;
    law.p = p;
    law.level = level;
    law.sum = witt_from_ghost(p, ghost_sum);
    law.prod = witt_from_ghost(p, ghost_prod);
    return law;
}

// Truncated Witt vectors W_n(R) of length level + 1 over a base ring, with the
// laws evaluated componentwise. The law is shared and never mutated.
template <CommutativeRing R>
class WittRing {
public:
    using Elem = typename R::Elem;
    using Vec = std::vector<Elem>;

    WittRing(std::shared_ptr<const R> base, std::shared_ptr<const UniversalWittLaw> law)
        : base_(std::move(base)), law_(std::move(law)) {}

    const R& base() const { return *base_; }
    const UniversalWittLaw& law() const { return *law_; }
    unsigned long p() const { return law_->p; }
    std::size_t length() const { return static_cast<std::size_t>(law_->level) + 1; }

    Vec zero() const { return Vec(length(), base_->zero()); }
    Vec one() const { return from_integer(1); }

    // The image of an integer: ghost components (c, c, ..., c).
    Vec from_integer(const BigInt& c) const {
        auto comps = witt_from_ghost(p(), std::vector<BigInt>(length(), c));
        Vec out;
        for (const auto& x : comps) out.push_back(base_->from_integer(x));
        return out;
    }

    Vec add(const Vec& u, const Vec& v) const { return apply(law_->sum, u, v); }
    Vec mul(const Vec& u, const Vec& v) const { return apply(law_->prod, u, v); }
    Vec neg(const Vec& u) const { return mul(from_integer(-1), u); }
    Vec sub(const Vec& u, const Vec& v) const { return add(u, neg(v)); }

    // [w_0(u), ..., w_n(u)].
    Vec ghost(const Vec& u) const {
        check(u);
        Vec out;
        for (std::size_t j = 0; j < length(); ++j) out.push_back(witt_polynomial(p(), static_cast<int>(j)).evaluate(*base_, u));
        return out;
    }

private:
    void check(const Vec& u) const {
        if (u.size() != length()) {
            throw ShapeMismatch("Witt vector of length " + std::to_string(u.size()) + ", expected " +
                                std::to_string(length()));
        }
    }

    Vec apply(const std::vector<MPoly>& polys, const Vec& u, const Vec& v) const {
        check(u);
        check(v);
        Vec values;
        for (std::size_t i = 0; i < length(); ++i) {
            values.push_back(u[i]);
            values.push_back(v[i]);
        }
        Vec out;
        for (const auto& s : polys) {
            if constexpr (std::is_same_v<R, Integers>) {
                out.push_back(s.evaluate_integers(values));
            } else {
                out.push_back(s.evaluate(*base_, values));
            }
        }
        return out;
    }

    std::shared_ptr<const R> base_;
    std::shared_ptr<const UniversalWittLaw> law_;
};

// Ghost components of an arbitrary vector (no law needed).
template <CommutativeRing R>
std::vector<typename R::Elem> ghost_map(unsigned long p, const R& ring, const std::vector<typename R::Elem>& u) {
    std::vector<typename R::Elem> out;
    for (std::size_t j = 0; j < u.size(); ++j) out.push_back(witt_polynomial(p, static_cast<int>(j)).evaluate(ring, u));
    return out;
}

// W_n(F_p) -> Z/p^{n+1}: the last ghost component of any integer lifts,
// reduced mod p^{n+1}. Lifts only matter mod p.
inline BigInt witt_to_residue_from_lifts(unsigned long p, const std::vector<BigInt>& lifts) {
    if (lifts.empty()) throw ShapeMismatch("empty Witt vector");
    const int n = static_cast<int>(lifts.size()) - 1;
    BigInt modulus = big_pow(BigInt(p), static_cast<unsigned long>(n + 1));
    BigInt acc = 0;
    BigInt pi = 1;
    for (int i = 0; i <= n; ++i) {
        BigInt e = big_pow(BigInt(p), static_cast<unsigned long>(n - i));
        BigInt term;
        mpz_powm(term.get_mpz_t(), mod_floor(lifts[static_cast<std::size_t>(i)], modulus).get_mpz_t(), e.get_mpz_t(),
                 modulus.get_mpz_t());
        acc += pi * term;
        pi *= p;
    }
    return mod_floor(acc, modulus);
}

inline BigInt witt_to_residue(unsigned long p, const std::vector<std::uint64_t>& u) {
    std::vector<BigInt> lifts;
    for (auto c : u) {
        if (c >= p) throw OutOfRange("Witt component outside [0, p)");
        lifts.push_back(from_u64(c));
    }
    return witt_to_residue_from_lifts(p, lifts);
}

// Inverse of witt_to_residue by greedy digit extraction:
//   u_k = ((x - sum_{i<k} p^i u_i^{p^{n-i}}) / p^k) mod p.
inline std::vector<std::uint64_t> residue_to_witt(unsigned long p, int n, const BigInt& x) {
    BigInt modulus = big_pow(BigInt(p), static_cast<unsigned long>(n + 1));
    BigInt rest = mod_floor(x, modulus);
    std::vector<std::uint64_t> out;
    BigInt pk = 1;
    for (int k = 0; k <= n; ++k) {
        if (!divides(pk, rest)) throw InternalInconsistency("residue_to_witt: digit extraction lost divisibility");
        BigInt digit = mod_floor(rest / pk, BigInt(p));
        out.push_back(to_u64(digit));
        BigInt e = big_pow(BigInt(p), static_cast<unsigned long>(n - k));
        BigInt term;
        mpz_powm(term.get_mpz_t(), digit.get_mpz_t(), e.get_mpz_t(), modulus.get_mpz_t());
        rest = mod_floor(rest - pk * term, modulus);
        pk *= p;
    }
    return out;
}

} // namespace unipoly
