#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "unipoly/autgroup/subgroups.hpp"
#include "unipoly/inversion/invert.hpp"

namespace unipoly {

// T + q^r h(T) in K_{n,r} over R/q^n, stored through h over R/q^{n-r}.
// Requires 2r >= n so that the kernel is abelian and h determines the element.
template <QAdicRing R>
class KernelElement {
public:
    using Elem = typename R::Elem;

    KernelElement(std::shared_ptr<const R> ring, int r, const TruncPoly<R>& h)
        : ring_(std::move(ring)), r_(r), h_(reduced(*ring_, r, h)) {}

    // g must be T mod q^r.
    static KernelElement from_poly(const TruncPoly<R>& g, int r) {
        const auto& ring = g.ring();
        auto diff = g - TruncPoly<R>::identity(g.ring_ptr());
        std::vector<Elem> h;
        for (const auto& c : diff.coeffs()) {
            if (ring.valuation(c) < r) {
                throw KernelMismatch(g.to_string() + " is not congruent to T mod q^" + std::to_string(r));
            }
            h.push_back(ring.div_q_power(c, r));
        }
        return KernelElement(g.ring_ptr(), r, TruncPoly<R>(g.ring_ptr(), std::move(h)));
    }

    static KernelElement from_poly(const AutMap<R>& g, int r) { return from_poly(g.poly(), r); }

    int n() const { return ring_->precision(); }
    int r() const { return r_; }
    const R& ring() const { return *ring_; }
    const std::shared_ptr<const R>& ring_ptr() const { return ring_; }
    const TruncPoly<R>& h() const { return h_; }

    TruncPoly<R> poly() const {
        auto qr = ring_->q_power(r_);
        std::vector<Elem> c;
        for (const auto& x : h_.coeffs()) c.push_back(ring_->mul(qr, ring_->lift_from(x)));
        return TruncPoly<R>::identity(ring_) + TruncPoly<R>(ring_, std::move(c));
    }

    AutMap<R> aut() const { return AutMap<R>::trusted(poly()); }

    bool operator==(const KernelElement& other) const {
        return r_ == other.r_ && *ring_ == *other.ring_ && h_ == other.h_;
    }

    std::string to_string() const { return poly().to_string(); }

private:
    static TruncPoly<R> reduced(const R& ring, int r, const TruncPoly<R>& h) {
        const int n = ring.precision();
        if (r < 1 || r >= n) {
            throw OutOfRange("kernel element needs 1 <= r < n, got n=" + std::to_string(n) + " r=" + std::to_string(r));
        }
        if (2 * r < n) {
            throw NotAbelian("K(" + std::to_string(n) + "," + std::to_string(r) + ") is outside the abelian range 2r >= n");
        }
        auto coarse = std::make_shared<const R>(ring.with_precision(n - r));
        std::vector<Elem> c;
        for (const auto& x : h.coeffs()) c.push_back(coarse->reduce_from(x));
        return TruncPoly<R>(std::move(coarse), std::move(c));
    }

    std::shared_ptr<const R> ring_;
    int r_;
    TruncPoly<R> h_;
};

template <QAdicRing R>
std::ostream& operator<<(std::ostream& os, const KernelElement<R>& g) {
    return os << g.to_string();
}

namespace detail {

template <QAdicRing R>
void require_same_kernel(const KernelElement<R>& a, const KernelElement<R>& b) {
    if (a.r() != b.r() || !(a.ring() == b.ring())) throw RingMismatch("kernel elements from different kernels");
}

template <QAdicRing R>
void require_acting_ring(const AutMap<R>& f, const KernelElement<R>& g) {
    if (!(f.ring() == g.ring())) {
        throw RingMismatch("acting map over " + f.ring().describe() + ", kernel over " + g.ring().describe());
    }
}

} // namespace detail

// c (T + q^r h) = T + q^r c h; c is taken in R/q^n and acts through R/q^{n-r}.
template <QAdicRing R>
KernelElement<R> scalar_mul(const typename R::Elem& c, const KernelElement<R>& g) {
    const auto& coarse = g.h().ring();
    return KernelElement<R>(g.ring_ptr(), g.r(), scale(coarse.reduce_from(c), g.h()));
}

// The group law of the kernel, written additively.
template <QAdicRing R>
KernelElement<R> kernel_add(const KernelElement<R>& a, const KernelElement<R>& b) {
    detail::require_same_kernel(a, b);
    return KernelElement<R>(a.ring_ptr(), a.r(), a.h() + b.h());
}

// f o g o f^{-1} by composition.
template <QAdicRing R>
KernelElement<R> ad_direct(const AutMap<R>& f, const KernelElement<R>& g) {
    detail::require_acting_ring(f, g);
    auto conj = compose(compose(f.poly(), g.poly()), invert(f).poly());
    return KernelElement<R>::from_poly(conj, g.r());
}

// T + q^r h(f^{-1}(T)) f'(f^{-1}(T)); only f mod q^{n-r} matters.
template <QAdicRing R>
KernelElement<R> ad_closed_form(const AutMap<R>& f, const KernelElement<R>& g) {
    detail::require_acting_ring(f, g);
    const int k = g.n() - g.r();
    auto finv = reduce(invert(f).poly(), k);
    auto fprime = reduce(derivative(f.poly()), k);
    return KernelElement<R>(g.ring_ptr(), g.r(), compose(g.h(), finv) * compose(fprime, finv));
}

// Both routes, which must agree.
template <QAdicRing R>
KernelElement<R> ad(const AutMap<R>& f, const KernelElement<R>& g) {
    auto closed = ad_closed_form(f, g);
    auto direct = ad_direct(f, g);
    if (!(closed == direct)) {
        throw InternalInconsistency("closed form " + closed.to_string() + " differs from conjugation " + direct.to_string());
    }
    return closed;
}

// Coefficients of T^j in N(n, r) are divisible by q^{j-1}; for h this means
// q^{max(0, j-1-r)}.
inline int kernel_pin(int j, int r) { return std::max(0, j - 1 - r); }

// Basis element j of N(n, r): h = q^{pin_j} T^j.
template <QAdicRing R>
KernelElement<R> kernel_basis_element(std::shared_ptr<const R> ring, int r, int j) {
    std::vector<typename R::Elem> c(static_cast<std::size_t>(j) + 1, ring->zero());
    c.back() = ring->q_power(kernel_pin(j, r));
    TruncPoly<R> h(ring, std::move(c));
    return KernelElement<R>(std::move(ring), r, h);
}

// Matrix of Ad_f on N(n, r): column j lists the coefficients of T^0..T^n in h
// for the image of basis element j, as elements of R/q^{n-r}.
template <QAdicRing R>
struct AdjointMatrix {
    using Elem = typename R::Elem;
    std::shared_ptr<const R> entry_ring;
    int n = 0;
    int r = 0;
    std::vector<std::vector<Elem>> entries; // entries[row][col]

    std::size_t size() const { return entries.size(); }
    const Elem& at(std::size_t row, std::size_t col) const { return entries.at(row).at(col); }
    bool operator==(const AdjointMatrix& other) const {
        return n == other.n && r == other.r && *entry_ring == *other.entry_ring && entries == other.entries;
    }

    bool is_identity() const {
        for (std::size_t i = 0; i < size(); ++i) {
            for (std::size_t j = 0; j < size(); ++j) {
                const auto& e = entries[i][j];
                if (i == j ? !entry_ring->is_zero(entry_ring->sub(e, entry_ring->one())) : !entry_ring->is_zero(e)) return false;
            }
        }
        return true;
    }

    AdjointMatrix operator*(const AdjointMatrix& other) const {
        if (size() != other.size() || !(*entry_ring == *other.entry_ring)) throw ShapeMismatch("matrix product shapes");
        const auto& ring = *entry_ring;
        AdjointMatrix out{entry_ring, n, r, std::vector<std::vector<Elem>>(size(), std::vector<Elem>(size(), ring.zero()))};
        for (std::size_t i = 0; i < size(); ++i) {
            for (std::size_t k = 0; k < size(); ++k) {
                if (ring.is_zero(entries[i][k])) continue;
                for (std::size_t j = 0; j < size(); ++j) {
                    out.entries[i][j] = ring.add(out.entries[i][j], ring.mul(entries[i][k], other.entries[k][j]));
                }
            }
        }
        return out;
    }

    std::string to_string() const {
        std::vector<std::vector<std::string>> cells;
        std::vector<std::size_t> width(size(), 0);
        for (const auto& row : entries) {
            cells.emplace_back();
            for (std::size_t j = 0; j < row.size(); ++j) {
                cells.back().push_back(entry_ring->to_string(row[j]));
                width[j] = std::max(width[j], cells.back().back().size());
            }
        }
        std::string out;
        for (const auto& row : cells) {
            out += "[";
            for (std::size_t j = 0; j < row.size(); ++j) {
                out += (j ? "  " : " ") + std::string(width[j] - row[j].size(), ' ') + row[j];
            }
            out += " ]\n";
        }
        return out;
    }
};

// f must lie in A(n) over R/q^n, where N(n, r) is normal.
template <QAdicRing R>
AdjointMatrix<R> ad_matrix(const AutMap<R>& f, const SubgroupSpec& kernel) {
    if (kernel.kind != SubgroupSpec::Kind::N) throw UnsupportedRing("ad_matrix acts on N(n, r), got " + kernel.to_string());
    const int n = f.ring().precision();
    if (kernel.n != n) {
        throw PreconditionFailed(kernel.to_string() + " needs precision " + std::to_string(kernel.n) + ", map lives at " +
                                 std::to_string(n));
    }
    if (2 * kernel.r < n) throw NotAbelian(kernel.to_string() + " is outside the abelian range 2r >= n");
    if (!member(f, SubgroupSpec::a(n))) throw PreconditionFailed(f.to_string() + " is not in A(" + std::to_string(n) + ")");
    AdjointMatrix<R> m;
    m.entry_ring = std::make_shared<const R>(f.ring().with_precision(n - kernel.r));
    m.n = n;
    m.r = kernel.r;
    const auto size = static_cast<std::size_t>(n) + 1;
    m.entries.assign(size, std::vector<typename R::Elem>(size, m.entry_ring->zero()));
    for (int j = 0; j <= n; ++j) {
        auto image = ad(f, kernel_basis_element(f.ring_ptr(), kernel.r, j));
        const auto& c = image.h().coeffs();
        if (c.size() > size) throw InternalInconsistency("Ad image leaves N" + kernel.to_string());
        for (std::size_t i = 0; i < c.size(); ++i) m.entries[i][static_cast<std::size_t>(j)] = c[i];
    }
    return m;
}

struct ModuleDecomposition {
    int m = 0;
    // annihilator exponent k of each basis slot T^0..T^{2m} (q^k . basis = T)
    std::vector<int> slot_orders;
    // m + 1 copies of m, then m, m-1, ..., 1
    std::vector<int> predicted;

    std::vector<int> sorted_orders() const {
        auto s = slot_orders;
        std::sort(s.begin(), s.end(), std::greater<>());
        return s;
    }
    bool matches() const { return sorted_orders() == predicted; }
};

// Orders of the basis slots of N(2m, m) over base/q^{2m}, found by scaling
// with powers of q until the element becomes T.
template <QAdicRing R>
ModuleDecomposition module_decomposition(const R& base, int m) {
    if (m < 0) throw OutOfRange("module_decomposition: m must be >= 0");
    ModuleDecomposition out;
    out.m = m;
    if (m == 0) return out;
    auto ring = std::make_shared<const R>(base.with_precision(2 * m));
    for (int j = 0; j <= 2 * m; ++j) {
        auto g = kernel_basis_element(ring, m, j);
        int k = 0;
        while (!scalar_mul(ring->q_power(k), g).h().is_zero()) ++k;
        out.slot_orders.push_back(k);
    }
    out.predicted.assign(static_cast<std::size_t>(m) + 1, m);
    for (int k = m; k >= 1; --k) out.predicted.push_back(k);
    return out;
}

} // namespace unipoly
