#pragma once

#include <memory>
#include <string>

#include "unipoly/autgroup/trunc_poly.hpp"

namespace unipoly {

// Coefficient of T a unit, every higher coefficient nilpotent. Reduction modulo
// the nilradical is then affine with unit slope, and such maps lift to inverses
// by q-adic Newton iteration.
template <CommutativeRing R>
bool is_automorphism(const TruncPoly<R>& f) {
    const auto& ring = f.ring();
    const auto& c = f.coeffs();
    if (c.size() < 2 || !ring.is_unit(c[1])) return false;
    for (std::size_t i = 2; i < c.size(); ++i) {
        if (!ring.is_nilpotent(c[i])) return false;
    }
    return true;
}

template <CommutativeRing R>
class AutMap {
public:
    using Ring = R;
    using Elem = typename R::Elem;

    explicit AutMap(TruncPoly<R> f) : f_(std::move(f)) {
        if (!is_automorphism(f_)) {
            throw NotAnAutomorphism(f_.to_string() + " is not an automorphism over " + f_.ring().describe());
        }
    }

    static AutMap identity(std::shared_ptr<const R> ring) { return trusted(TruncPoly<R>::identity(std::move(ring))); }

    // Skips validation; for results of group operations on validated inputs.
    static AutMap trusted(TruncPoly<R> f) { return AutMap(std::move(f), Trusted{}); }

    const TruncPoly<R>& poly() const { return f_; }
    const R& ring() const { return f_.ring(); }
    const std::shared_ptr<const R>& ring_ptr() const { return f_.ring_ptr(); }
    Elem coeff(std::size_t i) const { return f_.coeff(i); }
    int degree() const { return *f_.degree(); }
    bool is_identity() const { return f_.is_identity(); }

    bool operator==(const AutMap& other) const { return f_ == other.f_; }
    std::string to_string() const { return f_.to_string(); }
    friend std::ostream& operator<<(std::ostream& os, const AutMap& f) { return os << f.to_string(); }

private:
    struct Trusted {};
    AutMap(TruncPoly<R> f, Trusted) : f_(std::move(f)) {}

    TruncPoly<R> f_;
};

template <CommutativeRing R>
AutMap<R> compose(const AutMap<R>& f, const AutMap<R>& g) {
    return AutMap<R>::trusted(compose(f.poly(), g.poly()));
}

template <QAdicRing R>
AutMap<R> reduce(const AutMap<R>& f, int k) {
    return AutMap<R>::trusted(reduce(f.poly(), k));
}

} // namespace unipoly
