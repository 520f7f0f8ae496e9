#pragma once

#include <concepts>
#include <limits>
#include <string>

#include "unipoly/core/bigint.hpp"

namespace unipoly {

// Valuation reported for the zero element of a truncated ring.
inline constexpr int kInfiniteValuation = std::numeric_limits<int>::max();

// A commutative ring whose elements are plain canonical values interpreted by
// a ring object. Two elements are equal iff their representatives are equal.
template <class R>
concept CommutativeRing =
    std::equality_comparable<R> && std::equality_comparable<typename R::Elem> &&
    requires(const R& r, const typename R::Elem& a, const BigInt& z) {
        { r.zero() } -> std::same_as<typename R::Elem>;
        { r.one() } -> std::same_as<typename R::Elem>;
        { r.from_integer(z) } -> std::same_as<typename R::Elem>;
        { r.add(a, a) } -> std::same_as<typename R::Elem>;
        { r.sub(a, a) } -> std::same_as<typename R::Elem>;
        { r.neg(a) } -> std::same_as<typename R::Elem>;
        { r.mul(a, a) } -> std::same_as<typename R::Elem>;
        { r.is_zero(a) } -> std::same_as<bool>;
        { r.is_unit(a) } -> std::same_as<bool>;
        { r.inv(a) } -> std::same_as<typename R::Elem>;
        { r.is_nilpotent(a) } -> std::same_as<bool>;
        { r.is_finite() } -> std::same_as<bool>;
        { r.to_string(a) } -> std::same_as<std::string>;
        { r.describe() } -> std::same_as<std::string>;
    };

// A ring of the form R/q^n with a distinguished element q. `has_q_adic()` may
// be false at runtime (composite Z/m), in which case the q-adic members throw.
template <class R>
concept QAdicRing =
    CommutativeRing<R> &&
    requires(const R& r, const typename R::Elem& a, int k) {
        { r.has_q_adic() } -> std::same_as<bool>;
        { r.precision() } -> std::same_as<int>;
        { r.valuation(a) } -> std::same_as<int>;
        { r.reduce(a, k) } -> std::same_as<typename R::Elem>;
        { r.q_power(k) } -> std::same_as<typename R::Elem>;
        { r.div_q_power(a, k) } -> std::same_as<typename R::Elem>;
        { r.with_precision(k) } -> std::same_as<R>;
        { r.reduce_from(a) } -> std::same_as<typename R::Elem>;
        { r.lift_from(a) } -> std::same_as<typename R::Elem>;
    };

template <CommutativeRing R>
typename R::Elem ring_pow(const R& ring, typename R::Elem base, unsigned long exp) {
    auto out = ring.one();
    while (exp > 0) {
        if (exp & 1UL) out = ring.mul(out, base);
        exp >>= 1;
        if (exp > 0) base = ring.mul(base, base);
    }
    return out;
}

} // namespace unipoly
