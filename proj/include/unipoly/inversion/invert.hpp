#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "unipoly/autgroup/iterate.hpp"
#include "unipoly/autgroup/subgroups.hpp"
#include "unipoly/rings/zmod.hpp"

namespace unipoly {

struct InversionTrace {
    int depth = 0;
    // Precisions visited, outermost first (moduli for composite Z/m).
    std::vector<std::string> levels;
};

// Reinterpret f over a finer ring via canonical representatives.
template <QAdicRing R>
AutMap<R> lift_aut(const AutMap<R>& f, int n) {
    if (n < f.ring().precision()) {
        throw OutOfRange("lift_aut: target precision " + std::to_string(n) + " below source precision " +
                         std::to_string(f.ring().precision()));
    }
    auto fine = std::make_shared<const R>(f.ring().with_precision(n));
    return AutMap<R>::trusted(lift(f.poly(), std::move(fine)));
}

namespace detail {

// The next ring down the halving chain and whether it exists: R/q^{ceil(n/2)}
// for q-adic rings, Z/m' with m' = prod p_i^{ceil(n_i/2)} for composite Z/m.
template <QAdicRing R>
std::optional<R> halved_ring(const R& ring) {
    if constexpr (std::is_same_v<R, ZMod> || std::is_same_v<R, ZModBig>) {
        if (!ring.has_q_adic()) {
            BigInt next = 1;
            for (const auto& f : factorize(ring.modulus())) next *= big_pow(f.p, (f.exponent + 1) / 2);
            if (next == ring.modulus()) return std::nullopt;
            return R(next);
        }
    }
    const int n = ring.precision();
    if (n <= 1) return std::nullopt;
    return ring.with_precision((n + 1) / 2);
}

template <CommutativeRing R>
TruncPoly<R> affine_inverse(const TruncPoly<R>& f) {
    const auto& ring = f.ring();
    if (f.degree_or(0) > 1) {
        throw InternalInconsistency("base of inversion is not affine: " + f.to_string());
    }
    auto u = ring.inv(f.coeff(1));
    return TruncPoly<R>(f.ring_ptr(), {ring.neg(ring.mul(u, f.coeff(0))), u});
}

template <QAdicRing R>
TruncPoly<R> invert_rec(const TruncPoly<R>& f, InversionTrace* trace, int level) {
    const auto& ring = f.ring();
    if (trace) {
        trace->depth = std::max(trace->depth, level);
        trace->levels.push_back(ring.describe());
    }
    auto coarse = halved_ring(ring);
    if (!coarse) return affine_inverse(f);

    auto coarse_ptr = std::make_shared<const R>(*coarse);
    std::vector<typename R::Elem> down;
    for (const auto& c : f.coeffs()) down.push_back(coarse_ptr->reduce_from(c));
    auto phi_coarse = invert_rec(TruncPoly<R>(coarse_ptr, std::move(down)), trace, level + 1);

    std::vector<typename R::Elem> up;
    for (const auto& c : phi_coarse.coeffs()) up.push_back(ring.lift_from(c));
    TruncPoly<R> phi(f.ring_ptr(), std::move(up));

    // kappa = f o phi is congruent to T modulo the coarse ideal I with I^2 = 0,
    // so its inverse is T - (kappa - T).
    auto kappa = compose(f, phi);
    auto t = TruncPoly<R>::identity(f.ring_ptr());
    auto kappa_inv = t - (kappa - t);
    return compose(phi, kappa_inv);
}

} // namespace detail

// Recursive inversion: invert modulo a coarser ideal, lift, and correct the
// residual kernel element by negation. Depth is ceil(log2 n) over R/q^n.
template <QAdicRing R>
AutMap<R> invert(const AutMap<R>& f, InversionTrace* trace = nullptr) {
    return AutMap<R>::trusted(detail::invert_rec(f.poly(), trace, 0));
}

template <QAdicRing R>
AutMap<R> invert(const TruncPoly<R>& f, InversionTrace* trace = nullptr) {
    return invert(AutMap<R>(f), trace);
}

namespace detail {

// Solve M x = b over a ring by elimination with unit pivots. Rows beyond the
// unknowns must reduce to 0 = 0. Returns none when no unit pivot exists or
// the system is inconsistent.
template <CommutativeRing R>
std::optional<std::vector<typename R::Elem>> solve_unit_pivot(const R& ring,
                                                              std::vector<std::vector<typename R::Elem>> m,
                                                              std::vector<typename R::Elem> b) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::vector<std::size_t> pivot_row(cols);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t pr = r;
        while (pr < rows && !ring.is_unit(m[pr][c])) ++pr;
        if (pr == rows) return std::nullopt;
        std::swap(m[pr], m[r]);
        std::swap(b[pr], b[r]);
        auto inv = ring.inv(m[r][c]);
        for (auto& x : m[r]) x = ring.mul(x, inv);
        b[r] = ring.mul(b[r], inv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || ring.is_zero(m[i][c])) continue;
            auto factor = m[i][c];
            for (std::size_t j = 0; j < cols; ++j) m[i][j] = ring.sub(m[i][j], ring.mul(factor, m[r][j]));
            b[i] = ring.sub(b[i], ring.mul(factor, b[r]));
        }
        pivot_row[c] = r++;
    }
    for (std::size_t i = r; i < rows; ++i) {
        if (!ring.is_zero(b[i])) return std::nullopt;
    }
    std::vector<typename R::Elem> x(cols);
    for (std::size_t c = 0; c < cols; ++c) x[c] = b[pivot_row[c]];
    return x;
}

} // namespace detail

// Degree bound used by the oracle: the inverse lies in Atilde(d) for the
// smallest d containing f, hence has degree <= d 2^{n-2}.
template <QAdicRing R>
int inverse_degree_bound(const TruncPoly<R>& f) {
    const int n = f.ring().precision();
    if (n <= 1) return 1;
    return atilde_max_degree(minimal_atilde_degree(f), n);
}

// Independent inverse: start from the affine inverse mod q and gain one power
// of q per step by solving f(g + q^k delta) = T mod q^{k+1} as a linear system
// over R/q in the coefficients of delta. Shares nothing with `invert` beyond
// composition itself.
template <QAdicRing R>
AutMap<R> oracle_invert(const AutMap<R>& f) {
    const auto& ring = f.ring();
    if (!ring.has_q_adic()) throw UnsupportedRing("oracle_invert needs a q-adic ring, got " + ring.describe());
    const int n = ring.precision();
    const int bound = inverse_degree_bound(f.poly());
    const auto field = ring.with_precision(1);
    const auto& rp = f.ring_ptr();

    // g_1: inverse of the affine reduction mod q
    auto a0 = field.reduce_from(f.coeff(0));
    auto a1 = field.reduce_from(f.coeff(1));
    if (!field.is_unit(a1)) throw NotAnAutomorphism(f.to_string() + " has non-unit linear coefficient");
    auto u = field.inv(a1);
    TruncPoly<R> g(rp, {ring.lift_from(field.neg(field.mul(u, a0))), ring.lift_from(u)});

    // d/dT f evaluated at g, mod q; the linear map delta -> f'(g) delta.
    auto fprime = derivative(f.poly());
    auto t = TruncPoly<R>::identity(rp);
    const std::size_t unknowns = static_cast<std::size_t>(bound) + 1;

    for (int k = 1; k < n; ++k) {
        auto residual = compose(f.poly(), g) - t;
        std::vector<typename R::Elem> rhs;
        for (const auto& c : residual.coeffs()) {
            if (ring.valuation(c) < k) throw NoSolution("residual not divisible by q^" + std::to_string(k));
            rhs.push_back(field.neg(field.reduce_from(ring.div_q_power(c, k))));
        }
        auto slope = compose(fprime, g);
        std::vector<typename R::Elem> s;
        for (const auto& c : slope.coeffs()) s.push_back(field.reduce_from(c));
        const std::size_t rows = std::max(unknowns + (s.empty() ? 0 : s.size() - 1), rhs.size());
        std::vector<std::vector<typename R::Elem>> m(rows, std::vector<typename R::Elem>(unknowns, field.zero()));
        for (std::size_t i = 0; i < unknowns; ++i) {
            for (std::size_t j = 0; j < s.size(); ++j) m[i + j][i] = field.add(m[i + j][i], s[j]);
        }
        rhs.resize(rows, field.zero());
        auto delta = detail::solve_unit_pivot(field, std::move(m), std::move(rhs));
        if (!delta) {
            throw NoSolution("no inverse of degree <= " + std::to_string(bound) + " lifts to precision " +
                             std::to_string(k + 1) + " for " + f.to_string());
        }
        std::vector<typename R::Elem> step;
        auto qk = ring.q_power(k);
        for (const auto& c : *delta) step.push_back(ring.mul(qk, ring.lift_from(c)));
        g = g + TruncPoly<R>(rp, std::move(step));
    }
    if (!(compose(f.poly(), g) == t)) throw NoSolution("oracle did not converge for " + f.to_string());
    return AutMap<R>::trusted(std::move(g));
}

} // namespace unipoly
