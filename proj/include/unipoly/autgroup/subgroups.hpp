#pragma once

#include <string>

#include "unipoly/autgroup/automorphism.hpp"

namespace unipoly {

// Named subgroups of Aut(A^1) over R/q^n.
//   A(d)      a_0 + a_1 T + q a_2 T^2 + ... + q^{d-1} a_d T^d, at precision d
//   Atilde(d) deg(f mod q^m) <= d 2^{m-2} for 2 <= m <= n
//   N(n, r)   elements of A(n) congruent to T mod q^r
//   K(n, r)   elements of the full group congruent to T mod q^r
struct SubgroupSpec {
    enum class Kind { Full, A, Atilde, N, K };

    Kind kind = Kind::Full;
    int d = 0;
    int n = 0;
    int r = 0;

    static SubgroupSpec full() { return {}; }
    static SubgroupSpec a(int d) { return checked({Kind::A, d, 0, 0}); }
    static SubgroupSpec atilde(int d) { return checked({Kind::Atilde, d, 0, 0}); }
    static SubgroupSpec kernel_n(int n, int r) { return checked({Kind::N, 0, n, r}); }
    static SubgroupSpec kernel_k(int n, int r) { return checked({Kind::K, 0, n, r}); }

    bool operator==(const SubgroupSpec&) const = default;

    std::string to_string() const {
        switch (kind) {
        case Kind::Full: return "Full";
        case Kind::A: return "A(" + std::to_string(d) + ")";
        case Kind::Atilde: return "Atilde(" + std::to_string(d) + ")";
        case Kind::N: return "N(" + std::to_string(n) + "," + std::to_string(r) + ")";
        case Kind::K: return "K(" + std::to_string(n) + "," + std::to_string(r) + ")";
        }
        return "?";
    }

private:
    static SubgroupSpec checked(SubgroupSpec s) {
        if ((s.kind == Kind::A || s.kind == Kind::Atilde) && s.d < 1) {
            throw OutOfRange("subgroup degree parameter must be >= 1");
        }
        if ((s.kind == Kind::N || s.kind == Kind::K) && (s.r < 1 || s.r > s.n)) {
            throw OutOfRange("kernel parameters need 1 <= r <= n, got n=" + std::to_string(s.n) +
                             " r=" + std::to_string(s.r));
        }
        return s;
    }
};

// Largest degree allowed in Atilde(d) at precision n.
inline int atilde_max_degree(int d, int n) { return n >= 2 ? d << (n - 2) : 1; }

// deg(f mod q^m) <= d 2^{m-2} for every 2 <= m <= precision.
template <QAdicRing R>
bool satisfies_atilde_bounds(const TruncPoly<R>& f, int d) {
    const int n = f.ring().precision();
    for (int m = 2; m <= n; ++m) {
        auto deg = degree_mod(f, m);
        long bound = static_cast<long>(d) << (m - 2);
        if (deg && *deg > bound) return false;
    }
    return true;
}

// Shape a_0 + a_1 T + q a_2 T^2 + ... + q^{d-1} a_d T^d.
template <QAdicRing R>
bool has_a_shape(const TruncPoly<R>& f, int d) {
    const auto& ring = f.ring();
    const auto& c = f.coeffs();
    if (static_cast<int>(c.size()) > d + 1) return false;
    for (std::size_t i = 2; i < c.size(); ++i) {
        if (ring.valuation(c[i]) < static_cast<int>(i) - 1) return false;
    }
    return true;
}

// f = T mod q^r.
template <QAdicRing R>
bool congruent_to_identity(const TruncPoly<R>& f, int r) {
    const auto& ring = f.ring();
    auto t = TruncPoly<R>::identity(f.ring_ptr());
    auto diff = f - t;
    for (const auto& c : diff.coeffs()) {
        if (ring.valuation(c) < r) return false;
    }
    return true;
}

template <QAdicRing R>
bool member(const TruncPoly<R>& f, const SubgroupSpec& spec) {
    if (!is_automorphism(f)) throw PreconditionFailed("member: " + f.to_string() + " is not an automorphism");
    const int prec = f.ring().precision();
    using K = SubgroupSpec::Kind;
    switch (spec.kind) {
    case K::Full: return true;
    case K::A: return has_a_shape(f, spec.d);
    case K::Atilde: return satisfies_atilde_bounds(f, spec.d);
    case K::N:
    case K::K:
        if (prec != spec.n) {
            throw PreconditionFailed("member: " + spec.to_string() + " needs precision " + std::to_string(spec.n) +
                                     ", polynomial lives at precision " + std::to_string(prec));
        }
        if (spec.kind == K::N && !has_a_shape(f, spec.n)) return false;
        return congruent_to_identity(f, spec.r);
    }
    return false;
}

template <QAdicRing R>
bool member(const AutMap<R>& f, const SubgroupSpec& spec) {
    return member(f.poly(), spec);
}

} // namespace unipoly
