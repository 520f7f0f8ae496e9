#pragma once

#include <cstdint>
#include <random>
#include <type_traits>

#include "unipoly/autgroup/subgroups.hpp"
#include "unipoly/rings/trunc_series.hpp"

namespace unipoly {

using Rng = std::mt19937_64;

inline BigInt random_below(Rng& rng, const BigInt& bound) {
    if (fits_u64(bound)) return from_u64(rng() % to_u64(bound));
    BigInt acc = 0;
    for (std::size_t bits = 0; bits < mpz_sizeinbase(bound.get_mpz_t(), 2) + 64; bits += 64) {
        acc = (acc << 64) + from_u64(rng());
    }
    return mod_floor(acc, bound);
}

template <class Int>
typename BasicZMod<Int>::Elem random_element(const BasicZMod<Int>& ring, Rng& rng) {
    if constexpr (std::is_same_v<Int, std::uint64_t>) {
        return rng() % ring.modulus_value();
    } else {
        return random_below(rng, ring.modulus());
    }
}

inline PrimeField::Elem random_element(const PrimeField& field, Rng& rng) { return rng() % field.characteristic(); }

// Small numerators and denominators keep Q-series arithmetic cheap.
inline Rationals::Elem random_element(const Rationals&, Rng& rng) {
    BigRational out(static_cast<long>(rng() % 11) - 5, static_cast<unsigned long>(rng() % 4 + 1));
    out.canonicalize();
    return out;
}

template <class Field>
typename TruncSeries<Field>::Elem random_element(const TruncSeries<Field>& ring, Rng& rng) {
    auto out = ring.zero();
    for (auto& c : out) c = random_element(ring.field(), rng);
    return out;
}

template <CommutativeRing R>
typename R::Elem random_unit(const R& ring, Rng& rng) {
    for (;;) {
        auto a = random_element(ring, rng);
        if (ring.is_unit(a)) return a;
    }
}

// A random element of the nilradical: a multiple of q^k in the q-adic case,
// of the radical of m for composite Z/m.
template <CommutativeRing R>
typename R::Elem random_nilpotent(const R& ring, Rng& rng, int k = 1) {
    if constexpr (QAdicRing<R>) {
        if (ring.has_q_adic()) return ring.mul(ring.q_power(k), random_element(ring, rng));
    }
    for (;;) {
        auto a = random_element(ring, rng);
        if (ring.is_nilpotent(a)) return a;
    }
}

// With probability 1/density a coefficient is kept; sparse samples make large
// degree bounds affordable while still exercising every slot.
struct SampleShape {
    int max_degree = 4;
    unsigned density = 1;
};

template <CommutativeRing R>
AutMap<R> random_automorphism(std::shared_ptr<const R> ring, Rng& rng, SampleShape shape = {}) {
    std::vector<typename R::Elem> c;
    c.push_back(random_element(*ring, rng));
    c.push_back(random_unit(*ring, rng));
    for (int i = 2; i <= shape.max_degree; ++i) {
        bool keep = shape.density <= 1 || rng() % shape.density == 0;
        c.push_back(keep ? random_nilpotent(*ring, rng) : ring->zero());
    }
    return AutMap<R>::trusted(TruncPoly<R>(std::move(ring), std::move(c)));
}

// Smallest q-adic valuation a coefficient of T^i needs for Atilde(d) at
// precision n: q^m must divide it whenever d 2^{m-2} < i.
inline int atilde_required_valuation(int i, int d, int n) {
    if (i <= 1) return 0;
    int need = 1;
    for (int m = 2; m <= n; ++m) {
        if ((static_cast<long>(d) << (m - 2)) < i) need = m;
    }
    return need;
}

template <QAdicRing R>
AutMap<R> random_atilde(std::shared_ptr<const R> ring, int d, Rng& rng, unsigned density = 1) {
    const int n = ring->precision();
    const int top = atilde_max_degree(d, n);
    std::vector<typename R::Elem> c;
    c.push_back(random_element(*ring, rng));
    c.push_back(random_unit(*ring, rng));
    for (int i = 2; i <= top; ++i) {
        int v = atilde_required_valuation(i, d, n);
        bool keep = density <= 1 || i <= d || rng() % density == 0;
        c.push_back(keep && v < n ? ring->mul(ring->q_power(v), random_element(*ring, rng)) : ring->zero());
    }
    return AutMap<R>::trusted(TruncPoly<R>(std::move(ring), std::move(c)));
}

// a_0 + a_1 T + q a_2 T^2 + ... + q^{d-1} a_d T^d.
template <QAdicRing R>
AutMap<R> random_a_element(std::shared_ptr<const R> ring, int d, Rng& rng) {
    std::vector<typename R::Elem> c;
    c.push_back(random_element(*ring, rng));
    c.push_back(random_unit(*ring, rng));
    for (int i = 2; i <= d; ++i) c.push_back(ring->mul(ring->q_power(i - 1), random_element(*ring, rng)));
    return AutMap<R>::trusted(TruncPoly<R>(std::move(ring), std::move(c)));
}

// T + g h(T) with deg h <= max_degree, for g in the nilradical.
template <CommutativeRing R>
AutMap<R> random_ideal_kernel_element(std::shared_ptr<const R> ring, const typename R::Elem& g, int max_degree,
                                      Rng& rng) {
    std::vector<typename R::Elem> c;
    for (int i = 0; i <= max_degree; ++i) c.push_back(ring->mul(g, random_element(*ring, rng)));
    c.resize(std::max<std::size_t>(c.size(), 2), ring->zero());
    c[1] = ring->add(c[1], ring->one());
    return AutMap<R>::trusted(TruncPoly<R>(std::move(ring), std::move(c)));
}

template <QAdicRing R>
AutMap<R> random_kernel_element(std::shared_ptr<const R> ring, int r, int max_degree, Rng& rng) {
    auto g = ring->q_power(r);
    return random_ideal_kernel_element(std::move(ring), g, max_degree, rng);
}

} // namespace unipoly
