#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "unipoly/core/errors.hpp"

namespace unipoly {

using BigInt = mpz_class;
using BigRational = mpq_class;

inline BigInt big_from_string(std::string_view text) {
    std::string s(text);
    if (!s.empty() && s.front() == '+') s.erase(s.begin());
    BigInt out;
    if (s.empty() || out.set_str(s, 10) != 0) {
        throw ParseError("not a decimal integer: '" + std::string(text) + "'");
    }
    return out;
}

inline std::string to_string(const BigInt& z) { return z.get_str(10); }

inline BigInt big_pow(const BigInt& base, unsigned long exp) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

inline BigInt big_pow(unsigned long base, unsigned long exp) {
    BigInt out;
    mpz_ui_pow_ui(out.get_mpz_t(), base, exp);
    return out;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

// Non-negative residue of z modulo m (m > 0).
inline BigInt mod_floor(const BigInt& z, const BigInt& m) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline bool divides(const BigInt& d, const BigInt& z) {
    return mpz_divisible_p(z.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline bool is_probable_prime(const BigInt& z) {
    return z > 1 && mpz_probab_prime_p(z.get_mpz_t(), 30) > 0;
}

inline bool fits_u64(const BigInt& z) {
    return z >= 0 && mpz_sizeinbase(z.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const BigInt& z) {
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, z.get_mpz_t());
    return out;
}

inline BigInt from_u64(std::uint64_t v) {
    BigInt out;
    mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
    return out;
}

struct PrimePower {
    BigInt p;
    unsigned exponent = 0;
};

// Trial-division factorisation; moduli handled here are small enough that
// this is never the bottleneck.
inline std::vector<PrimePower> factorize(BigInt m) {
    if (m < 1) throw OutOfRange("factorize: modulus must be positive");
    std::vector<PrimePower> out;
    if (m > 1 && is_probable_prime(m)) return {{m, 1}};
    for (BigInt d = 2; d * d <= m; ++d) {
        if (divides(d, m)) {
            PrimePower pp{d, 0};
            while (divides(d, m)) {
                m /= d;
                ++pp.exponent;
            }
            out.push_back(pp);
            if (m > 1 && is_probable_prime(m)) break;
        }
    }
    if (m > 1) out.push_back({m, 1});
    return out;
}

// If m = p^n with p prime and n >= 1, returns {p, n}.
inline std::optional<PrimePower> as_prime_power(const BigInt& m) {
    auto f = factorize(m);
    if (f.size() != 1) return std::nullopt;
    return f.front();
}

} // namespace unipoly
