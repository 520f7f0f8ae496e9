#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "unipoly/core/bigint.hpp"
#include "unipoly/rings/concepts.hpp"

namespace unipoly {

namespace detail {

__extension__ using i128 = __int128;
__extension__ using u128 = unsigned __int128;

template <class Int>
struct ModArith;

template <>
struct ModArith<std::uint64_t> {
    using Int = std::uint64_t;

    static Int from_big(const BigInt& z, const BigInt& m) { return to_u64(mod_floor(z, m)); }
    static BigInt to_big(Int a) { return from_u64(a); }

    static Int add(Int a, Int b, Int m) {
        Int s = a + b;
        return s >= m ? s - m : s;
    }
    static Int sub(Int a, Int b, Int m) { return a >= b ? a - b : a + (m - b); }
    static Int mul(Int a, Int b, Int m) {
        if (m <= (Int{1} << 32)) return (a * b) % m;
        return static_cast<Int>((static_cast<u128>(a) * b) % m);
    }
    static Int mod(Int a, Int m) { return a % m; }
    static Int div(Int a, Int b) { return a / b; }
    static Int gcd(Int a, Int b) { return std::gcd(a, b); }
    static bool is_zero(Int a) { return a == 0; }

    // Inverse of a modulo m, or 0 when gcd(a, m) != 1 (m > 1).
    static Int inverse(Int a, Int m) {
        i128 t = 0, new_t = 1;
        i128 r = m, new_r = a % m;
        while (new_r != 0) {
            i128 q = r / new_r;
            i128 tmp = t - q * new_t;
            t = new_t;
            new_t = tmp;
            tmp = r - q * new_r;
            r = new_r;
            new_r = tmp;
        }
        if (r != 1) return 0;
        if (t < 0) t += m;
        return static_cast<Int>(t);
    }
};

template <>
struct ModArith<BigInt> {
    using Int = BigInt;

    static Int from_big(const BigInt& z, const BigInt& m) { return mod_floor(z, m); }
    static BigInt to_big(const Int& a) { return a; }

    static Int add(const Int& a, const Int& b, const Int& m) {
        Int s = a + b;
        if (s >= m) s -= m;
        return s;
    }
    static Int sub(const Int& a, const Int& b, const Int& m) {
        Int s = a - b;
        if (s < 0) s += m;
        return s;
    }
    static Int mul(const Int& a, const Int& b, const Int& m) { return mod_floor(a * b, m); }
    static Int mod(const Int& a, const Int& m) { return mod_floor(a, m); }
    static Int div(const Int& a, const Int& b) { return a / b; }
    static Int gcd(const Int& a, const Int& b) {
        Int g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return g;
    }
    static bool is_zero(const Int& a) { return a == 0; }
    static Int inverse(const Int& a, const Int& m) {
        Int out;
        if (mpz_invert(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) return 0;
        return out;
    }
};

} // namespace detail

// Z/m with canonical representatives in [0, m). When m = p^n (p prime) the
// ring carries q-adic structure with q = p and precision n.
template <class Int>
class BasicZMod {
    using Ops = detail::ModArith<Int>;

public:
    using Elem = Int;

    explicit BasicZMod(const BigInt& modulus) : modulus_big_(modulus) {
        if (modulus < 2) throw OutOfRange("Z/m requires m >= 2, got " + unipoly::to_string(modulus));
        if constexpr (std::is_same_v<Int, std::uint64_t>) {
            if (!fits_u64(modulus) || modulus >= (BigInt(1) << 62)) {
                throw OutOfRange("modulus too large for word-sized Z/m: " + unipoly::to_string(modulus));
            }
        }
        m_ = Ops::from_big(modulus, modulus + 1);
        BigInt rad = 1;
        auto factors = factorize(modulus);
        for (const auto& f : factors) rad *= f.p;
        radical_ = Ops::from_big(rad, modulus + 1);
        if (factors.size() == 1) {
            p_big_ = factors.front().p;
            n_ = static_cast<int>(factors.front().exponent);
            BigInt pk = 1;
            for (int k = 0; k <= n_; ++k) {
                q_pows_.push_back(Ops::from_big(pk, modulus + 1));
                pk *= p_big_;
            }
        }
    }

    static BasicZMod prime_power(const BigInt& p, int n) {
        if (!is_probable_prime(p)) throw OutOfRange("q-adic Z/p^n requires p prime, got " + unipoly::to_string(p));
        if (n < 1) throw OutOfRange("q-adic Z/p^n requires n >= 1");
        return BasicZMod(big_pow(p, static_cast<unsigned long>(n)));
    }

    bool operator==(const BasicZMod& other) const { return modulus_big_ == other.modulus_big_; }

    const BigInt& modulus() const { return modulus_big_; }
    const Int& modulus_value() const { return m_; }
    const BigInt& prime() const { return p_big_; }

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    Elem from_integer(const BigInt& z) const { return Ops::from_big(z, modulus_big_); }
    Elem from_int(long long v) const { return from_integer(BigInt(static_cast<long>(v))); }
    BigInt to_integer(const Elem& a) const { return Ops::to_big(a); }

    Elem add(const Elem& a, const Elem& b) const { return Ops::add(a, b, m_); }
    Elem sub(const Elem& a, const Elem& b) const { return Ops::sub(a, b, m_); }
    Elem neg(const Elem& a) const { return Ops::sub(Elem(0), a, m_); }
    Elem mul(const Elem& a, const Elem& b) const { return Ops::mul(a, b, m_); }

    bool is_zero(const Elem& a) const { return Ops::is_zero(a); }
    bool is_unit(const Elem& a) const { return Ops::gcd(a, m_) == Elem(1); }
    Elem inv(const Elem& a) const {
        Elem out = Ops::inverse(a, m_);
        if (Ops::is_zero(out)) {
            throw NotAUnit(to_string(a) + " is not invertible in " + describe());
        }
        return out;
    }
    bool is_nilpotent(const Elem& a) const { return Ops::is_zero(Ops::mod(a, radical_)); }
    bool is_finite() const { return true; }

    bool has_q_adic() const { return n_ > 0; }
    int precision() const {
        require_q_adic();
        return n_;
    }
    Elem q() const { return q_power(1); }
    Elem q_power(int k) const {
        require_q_adic();
        if (k >= n_) return Elem(0);
        return q_pows_[static_cast<std::size_t>(k)];
    }

    int valuation(const Elem& a) const {
        require_q_adic();
        if (Ops::is_zero(a)) return kInfiniteValuation;
        int v = 0;
        while (v + 1 < n_ && Ops::is_zero(Ops::mod(a, q_pows_[static_cast<std::size_t>(v + 1)]))) ++v;
        return v;
    }

    // Canonical representative of a mod q^k, read back in this ring.
    Elem reduce(const Elem& a, int k) const {
        require_q_adic();
        if (k >= n_) return a;
        if (k <= 0) return Elem(0);
        return Ops::mod(a, q_pows_[static_cast<std::size_t>(k)]);
    }

    Elem div_q_power(const Elem& a, int k) const {
        require_q_adic();
        if (k <= 0) return a;
        if (k > n_) throw OutOfRange("div_q_power: exponent exceeds precision");
        const Elem& d = q_pows_[static_cast<std::size_t>(k)];
        if (!Ops::is_zero(Ops::mod(a, d))) {
            throw NotDivisible(to_string(a) + " is not divisible by q^" + std::to_string(k));
        }
        return Ops::div(a, d);
    }

    BasicZMod with_precision(int k) const {
        require_q_adic();
        return prime_power(p_big_, k);
    }
    Elem reduce_from(const Elem& a) const { return Ops::mod(a, m_); }
    Elem lift_from(const Elem& a) const { return a; }

    std::string to_string(const Elem& a) const { return unipoly::to_string(Ops::to_big(a)); }
    std::string describe() const {
        std::string out = "Z/" + unipoly::to_string(modulus_big_);
        if (has_q_adic()) out += " (q=" + unipoly::to_string(p_big_) + ")";
        return out;
    }

private:
    void require_q_adic() const {
        if (!has_q_adic()) {
            throw UnsupportedRing(describe() + " has no q-adic structure (modulus is not a prime power)");
        }
    }

    BigInt modulus_big_;
    Int m_{};
    Int radical_{};
    BigInt p_big_{0};
    int n_ = 0;
    std::vector<Int> q_pows_;
};

using ZMod = BasicZMod<std::uint64_t>;
using ZModBig = BasicZMod<BigInt>;

// Z itself, optionally with a distinguished prime q = p for exact division.
class Integers {
public:
    using Elem = BigInt;

    Integers() = default;
    explicit Integers(BigInt p) : p_(std::move(p)) {}

    bool operator==(const Integers& other) const { return p_ == other.p_; }

    const BigInt& prime() const { return p_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_integer(const BigInt& z) const { return z; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool is_unit(const Elem& a) const { return a == 1 || a == -1; }
    Elem inv(const Elem& a) const {
        if (!is_unit(a)) throw NotAUnit(unipoly::to_string(a) + " is not a unit in Z");
        return a;
    }
    bool is_nilpotent(const Elem& a) const { return a == 0; }
    bool is_finite() const { return false; }

    // a / q^k, checked.
    Elem exact_div_by_q(const Elem& a, int k) const {
        if (p_ == 0) throw UnsupportedRing("Z has no distinguished q");
        BigInt d = big_pow(p_, static_cast<unsigned long>(k));
        if (!divides(d, a)) {
            throw NotDivisible(unipoly::to_string(a) + " is not divisible by " + unipoly::to_string(p_) + "^" +
                               std::to_string(k));
        }
        BigInt out;
        mpz_divexact(out.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
        return out;
    }

    int valuation(const Elem& a) const {
        if (p_ == 0) throw UnsupportedRing("Z has no distinguished q");
        if (a == 0) return kInfiniteValuation;
        return static_cast<int>(mpz_remove(BigInt().get_mpz_t(), a.get_mpz_t(), p_.get_mpz_t()));
    }

    std::string to_string(const Elem& a) const { return unipoly::to_string(a); }
    std::string describe() const { return p_ == 0 ? "Z" : "Z (q=" + unipoly::to_string(p_) + ")"; }

private:
    BigInt p_{0};
};

} // namespace unipoly
