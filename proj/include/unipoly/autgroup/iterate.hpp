#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <type_traits>

#include "unipoly/autgroup/subgroups.hpp"

namespace unipoly {

// r-fold self-composition by repeated squaring; iterate(f, 0) = T.
template <CommutativeRing R>
TruncPoly<R> iterate(const TruncPoly<R>& f, std::uint64_t r) {
    auto result = TruncPoly<R>::identity(f.ring_ptr());
    auto base = f;
    while (r > 0) {
        if (r & 1U) result = compose(result, base);
        r >>= 1;
        if (r > 0) base = compose(base, base);
    }
    return result;
}

template <CommutativeRing R>
AutMap<R> iterate(const AutMap<R>& f, std::uint64_t r) {
    return AutMap<R>::trusted(iterate(f.poly(), r));
}

// Smallest d with f in Atilde(d): max over m of ceil(deg(f mod q^m) / 2^{m-2}).
template <QAdicRing R>
int minimal_atilde_degree(const TruncPoly<R>& f) {
    long d = 1;
    const int n = f.ring().precision();
    for (int m = 2; m <= n; ++m) {
        auto deg = degree_mod(f, m);
        if (!deg) continue;
        long scale = 1L << (m - 2);
        d = std::max(d, (static_cast<long>(*deg) + scale - 1) / scale);
    }
    return static_cast<int>(d);
}

inline constexpr std::uint64_t kDefaultOrderCap = 1'000'000;

// Least k >= 1 with f^k = T. Iterates are formed one composition at a time;
// over q-adic rings each one is checked against the Atilde(d) bounds of f,
// which is what keeps their size bounded. `on_iterate(g, k)` sees every iterate.
template <CommutativeRing R>
std::uint64_t order(const AutMap<R>& f, std::uint64_t cap = kDefaultOrderCap,
                    const std::type_identity_t<std::function<void(const TruncPoly<R>&, std::uint64_t)>>& on_iterate = {}) {
    if (!f.ring().is_finite()) {
        throw InfiniteCoefficientRing("order: " + f.ring().describe() + " is infinite; orders need not exist");
    }
    if (cap < 1) throw OutOfRange("order: cap must be >= 1");
    bool qadic = false;
    int d = 0;
    if constexpr (QAdicRing<R>) {
        qadic = f.ring().has_q_adic();
        if (qadic) d = minimal_atilde_degree(f.poly());
    }
    auto g = f.poly();
    for (std::uint64_t k = 1; k <= cap; ++k) {
        if (on_iterate) on_iterate(g, k);
        if (g.is_identity()) return k;
        if constexpr (QAdicRing<R>) {
            if (qadic && !satisfies_atilde_bounds(g, d)) {
                throw InternalInconsistency("iterate " + std::to_string(k) + " left Atilde(" + std::to_string(d) + ")");
            }
        }
        g = compose(g, f.poly());
    }
    throw NotFoundWithinCap("order of " + f.to_string() + " exceeds " + std::to_string(cap));
}

} // namespace unipoly
