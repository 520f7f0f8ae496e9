#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unipoly/autgroup/sampling.hpp"
#include "unipoly/rings/zmod.hpp"

namespace unipoly {

struct KernelCheckOptions {
    std::uint64_t samples = 10'000;
    int degree_cap = 4;
    bool exhaustive = false;
    std::uint64_t seed = 1;
    // Exhaustive mode falls back to sampling above this many elements.
    std::uint64_t exhaustive_limit = 4096;
};

struct KernelVerdict {
    bool abelian = true;
    bool exhaustive = false;
    std::uint64_t pairs_checked = 0;
    std::uint64_t elements = 0;
    std::optional<std::pair<std::string, std::string>> counterexample;
};

namespace detail {

// Canonical representatives of R modulo the annihilator of g, for exhaustive
// enumeration of the kernel T + g h(T).
template <CommutativeRing R>
std::optional<std::vector<typename R::Elem>> kernel_coefficient_reps(const R& ring, const typename R::Elem& g,
                                                                     std::uint64_t limit) {
    std::vector<typename R::Elem> reps;
    if constexpr (std::is_same_v<R, ZMod>) {
        std::uint64_t m = ring.modulus_value();
        std::uint64_t ord = m / std::gcd(g, m);
        if (ord > limit) return std::nullopt;
        for (std::uint64_t a = 0; a < ord; ++a) reps.push_back(a);
        return reps;
    } else if constexpr (std::is_same_v<R, TruncSeriesFp>) {
        // g h depends only on h mod t^{e - v(g)}
        const int e = ring.precision();
        const int v = ring.valuation(g);
        const int free = v >= e ? 0 : e - v;
        const std::uint64_t p = ring.field().characteristic();
        std::uint64_t count = 1;
        for (int i = 0; i < free; ++i) {
            if (count > limit / p) return std::nullopt;
            count *= p;
        }
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            auto c = ring.zero();
            std::uint64_t x = idx;
            for (int i = 0; i < free; ++i, x /= p) c[static_cast<std::size_t>(i)] = x % p;
            reps.push_back(c);
        }
        return reps;
    } else {
        return std::nullopt;
    }
}

} // namespace detail

// Do the elements T + g h(T), deg h <= degree_cap, commute pairwise? g must be
// nilpotent. Exhaustive when requested and small enough, sampled otherwise;
// stops at the first non-commuting pair.
template <CommutativeRing R>
KernelVerdict check_abelian_kernel_ideal(std::shared_ptr<const R> ring, const typename R::Elem& g,
                                         const KernelCheckOptions& opts) {
    if (!ring->is_nilpotent(g)) throw PreconditionFailed("kernel generator must be nilpotent");
    KernelVerdict out;
    auto record = [&](const TruncPoly<R>& f1, const TruncPoly<R>& f2) {
        ++out.pairs_checked;
        if (compose(f1, f2) == compose(f2, f1)) return true;
        out.abelian = false;
        out.counterexample = std::make_pair(f1.to_string(), f2.to_string());
        return false;
    };

    const std::size_t slots = static_cast<std::size_t>(opts.degree_cap) + 1;
    std::optional<std::vector<typename R::Elem>> reps;
    if (opts.exhaustive) {
        reps = detail::kernel_coefficient_reps(*ring, g, opts.exhaustive_limit);
        if (reps) {
            std::uint64_t total = 1;
            for (std::size_t i = 0; i < slots && total <= opts.exhaustive_limit; ++i) total *= reps->size();
            if (total > opts.exhaustive_limit) reps.reset();
        }
    }

    if (reps) {
        std::vector<TruncPoly<R>> elements;
        std::vector<std::size_t> idx(slots, 0);
        for (;;) {
            std::vector<typename R::Elem> c(slots);
            for (std::size_t i = 0; i < slots; ++i) c[i] = ring->mul(g, (*reps)[idx[i]]);
            c[1] = ring->add(c[1], ring->one());
            elements.emplace_back(ring, std::move(c));
            std::size_t k = 0;
            while (k < slots && ++idx[k] == reps->size()) idx[k++] = 0;
            if (k == slots) break;
        }
        out.exhaustive = true;
        out.elements = elements.size();
        for (std::size_t i = 0; i < elements.size(); ++i) {
            for (std::size_t j = i + 1; j < elements.size(); ++j) {
                if (!record(elements[i], elements[j])) return out;
            }
        }
        return out;
    }

    Rng rng(opts.seed);
    for (std::uint64_t s = 0; s < opts.samples; ++s) {
        auto f1 = random_ideal_kernel_element(ring, g, opts.degree_cap, rng);
        auto f2 = random_ideal_kernel_element(ring, g, opts.degree_cap, rng);
        if (!record(f1.poly(), f2.poly())) return out;
    }
    return out;
}

// K_{n,r}: elements congruent to T mod q^r over R/q^n.
template <QAdicRing R>
KernelVerdict check_abelian_kernel(const R& ring, int r, int n, const KernelCheckOptions& opts) {
    if (n < 1 || r < 1 || r > n) throw OutOfRange("check_abelian_kernel: need 1 <= r <= n");
    auto at_n = std::make_shared<const R>(ring.with_precision(n));
    return check_abelian_kernel_ideal(at_n, at_n->q_power(r), opts);
}

struct FiltrationStep {
    // Precision labels for the q-adic chain; moduli for composite Z/m.
    int from_precision = 0;
    int to_precision = 0;
    std::string from_ring;
    std::string to_ring;
    std::string kernel;
    KernelVerdict verdict;
};

namespace detail {

inline BigInt halved_ideal(const BigInt& m) {
    BigInt out = 1;
    for (const auto& f : factorize(m)) out *= big_pow(f.p, (f.exponent + 1) / 2);
    return out;
}

} // namespace detail

// Precision halvings n -> ceil(n/2) -> ... -> 1 (ending at the affine group
// R_0 semidirect R_0^x). Each step records whether K_{n, ceil(n/2)} commuted.
// For composite Z/m each step passes to Z/m' with m' = prod p_i^{ceil(n_i/2)},
// so that the kernel ideal I = (m') satisfies I^2 = 0, until m is squarefree.
template <QAdicRing R>
std::vector<FiltrationStep> composition_series(const R& ring, const KernelCheckOptions& opts) {
    std::vector<FiltrationStep> steps;
    if constexpr (std::is_same_v<R, ZMod>) {
        if (!ring.has_q_adic()) {
            BigInt m = ring.modulus();
            for (;;) {
                BigInt next = detail::halved_ideal(m);
                if (next == m) break;
                auto at_m = std::make_shared<const ZMod>(m);
                FiltrationStep step;
                step.from_ring = at_m->describe();
                step.to_ring = ZMod(next).describe();
                step.kernel = "f = T mod " + unipoly::to_string(next);
                step.verdict = check_abelian_kernel_ideal(at_m, at_m->from_integer(next), opts);
                steps.push_back(std::move(step));
                m = next;
            }
            return steps;
        }
    }
    if (!ring.has_q_adic()) throw UnsupportedRing("composition_series: " + ring.describe());
    int n = ring.precision();
    while (n > 1) {
        int r = (n + 1) / 2;
        FiltrationStep step;
        step.from_precision = n;
        step.to_precision = r;
        step.from_ring = ring.with_precision(n).describe();
        step.to_ring = ring.with_precision(r).describe();
        step.kernel = "K(" + std::to_string(n) + "," + std::to_string(r) + ")";
        step.verdict = check_abelian_kernel(ring, r, n, opts);
        steps.push_back(std::move(step));
        n = r;
    }
    return steps;
}

// The terminal affine group a_0 + a_1 T over R/q (or Z/rad(m)) is an extension
// of the units by the translations; both are abelian. Checked on samples (or
// every pair when the ring is small).
template <CommutativeRing R>
KernelVerdict check_affine_quotient(std::shared_ptr<const R> base, const KernelCheckOptions& opts) {
    KernelVerdict out;
    Rng rng(opts.seed);
    for (std::uint64_t s = 0; s < opts.samples; ++s) {
        auto a = random_element(*base, rng), b = random_element(*base, rng);
        auto u = random_unit(*base, rng), v = random_unit(*base, rng);
        TruncPoly<R> ta(base, {a, base->one()}), tb(base, {b, base->one()});
        TruncPoly<R> su(base, {base->zero(), u}), sv(base, {base->zero(), v});
        ++out.pairs_checked;
        // translations commute, and conjugating by units keeps them translations
        bool ok = compose(ta, tb) == compose(tb, ta) && compose(su, sv) == compose(sv, su);
        auto conj = compose(compose(su, ta), TruncPoly<R>(base, {base->zero(), base->inv(u)}));
        ok = ok && conj.coeff(1) == base->one() && conj.degree_or(0) <= 1;
        if (!ok) {
            out.abelian = false;
            out.counterexample = std::make_pair(ta.to_string(), su.to_string());
            return out;
        }
    }
    return out;
}

} // namespace unipoly
