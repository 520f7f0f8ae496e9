#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "unipoly/core/errors.hpp"
#include "unipoly/rings/concepts.hpp"

namespace unipoly {

// A polynomial in T over a coefficient ring (for q-adic rings, R/q^n).
// Coefficients are canonical ring elements, lowest degree first, with
// trailing zeros trimmed.
template <CommutativeRing R>
class TruncPoly {
public:
    using Ring = R;
    using Elem = typename R::Elem;

    TruncPoly(std::shared_ptr<const R> ring, std::vector<Elem> coeffs)
        : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {
        trim();
    }
    TruncPoly(const R& ring, std::vector<Elem> coeffs)
        : TruncPoly(std::make_shared<const R>(ring), std::move(coeffs)) {}

    static TruncPoly zero(std::shared_ptr<const R> ring) { return TruncPoly(std::move(ring), {}); }
    static TruncPoly identity(std::shared_ptr<const R> ring) {
        auto one = ring->one();
        auto z = ring->zero();
        return TruncPoly(std::move(ring), {z, one});
    }
    static TruncPoly identity(const R& ring) { return identity(std::make_shared<const R>(ring)); }
    static TruncPoly constant(std::shared_ptr<const R> ring, Elem c) { return TruncPoly(std::move(ring), {std::move(c)}); }
    static TruncPoly monomial(std::shared_ptr<const R> ring, Elem c, std::size_t k) {
        std::vector<Elem> coeffs(k + 1, ring->zero());
        coeffs[k] = std::move(c);
        return TruncPoly(std::move(ring), std::move(coeffs));
    }

    const R& ring() const { return *ring_; }
    const std::shared_ptr<const R>& ring_ptr() const { return ring_; }
    const std::vector<Elem>& coeffs() const { return coeffs_; }

    // None for the zero polynomial.
    std::optional<int> degree() const {
        if (coeffs_.empty()) return std::nullopt;
        return static_cast<int>(coeffs_.size()) - 1;
    }
    int degree_or(int fallback) const { return coeffs_.empty() ? fallback : static_cast<int>(coeffs_.size()) - 1; }

    Elem coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : ring_->zero(); }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_identity() const {
        return coeffs_.size() == 2 && ring_->is_zero(coeffs_[0]) && coeffs_[1] == ring_->one();
    }

    bool same_ring(const TruncPoly& other) const { return ring_ == other.ring_ || *ring_ == *other.ring_; }

    bool operator==(const TruncPoly& other) const { return same_ring(other) && coeffs_ == other.coeffs_; }

    std::string to_string() const {
        if (coeffs_.empty()) return "0";
        std::string out;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (ring_->is_zero(coeffs_[i])) continue;
            std::string c = ring_->to_string(coeffs_[i]);
            bool compound = c.find_first_of(" +-/") != std::string::npos && !(c[0] == '-' && c.find(' ') == std::string::npos);
            std::string piece;
            if (i == 0) {
                piece = c;
            } else {
                std::string t = i == 1 ? "T" : "T^" + std::to_string(i);
                piece = c == "1" ? t : (compound ? "(" + c + ")" : c) + "*" + t;
            }
            out += (out.empty() ? "" : " + ") + piece;
        }
        return out;
    }
    friend std::ostream& operator<<(std::ostream& os, const TruncPoly& f) { return os << f.to_string(); }

private:
    void trim() {
        while (!coeffs_.empty() && ring_->is_zero(coeffs_.back())) coeffs_.pop_back();
    }

    std::shared_ptr<const R> ring_;
    std::vector<Elem> coeffs_;
};

namespace detail {

template <class R>
void require_same_ring(const TruncPoly<R>& f, const TruncPoly<R>& g, const char* op) {
    if (!f.same_ring(g)) {
        throw RingMismatch(std::string(op) + ": " + f.ring().describe() + " vs " + g.ring().describe());
    }
}

template <class R>
std::vector<typename R::Elem> mul_coeffs(const R& ring, const std::vector<typename R::Elem>& a,
                                         const std::vector<typename R::Elem>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<typename R::Elem> out(a.size() + b.size() - 1, ring.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (ring.is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (ring.is_zero(b[j])) continue;
            out[i + j] = ring.add(out[i + j], ring.mul(a[i], b[j]));
        }
    }
    while (!out.empty() && ring.is_zero(out.back())) out.pop_back();
    return out;
}

template <class R>
std::vector<typename R::Elem> reduce_coeffs(const R& ring, std::vector<typename R::Elem> a, int k) {
    for (auto& c : a) c = ring.reduce(c, k);
    while (!a.empty() && ring.is_zero(a.back())) a.pop_back();
    return a;
}

} // namespace detail

template <CommutativeRing R>
TruncPoly<R> operator+(const TruncPoly<R>& f, const TruncPoly<R>& g) {
    detail::require_same_ring(f, g, "add");
    const auto& ring = f.ring();
    std::vector<typename R::Elem> out(std::max(f.coeffs().size(), g.coeffs().size()), ring.zero());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = ring.add(f.coeff(i), g.coeff(i));
    return TruncPoly<R>(f.ring_ptr(), std::move(out));
}

template <CommutativeRing R>
TruncPoly<R> operator-(const TruncPoly<R>& f, const TruncPoly<R>& g) {
    detail::require_same_ring(f, g, "sub");
    const auto& ring = f.ring();
    std::vector<typename R::Elem> out(std::max(f.coeffs().size(), g.coeffs().size()), ring.zero());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = ring.sub(f.coeff(i), g.coeff(i));
    return TruncPoly<R>(f.ring_ptr(), std::move(out));
}

template <CommutativeRing R>
TruncPoly<R> operator*(const TruncPoly<R>& f, const TruncPoly<R>& g) {
    detail::require_same_ring(f, g, "mul");
    return TruncPoly<R>(f.ring_ptr(), detail::mul_coeffs(f.ring(), f.coeffs(), g.coeffs()));
}

template <CommutativeRing R>
TruncPoly<R> scale(const typename R::Elem& c, const TruncPoly<R>& f) {
    std::vector<typename R::Elem> out;
    out.reserve(f.coeffs().size());
    for (const auto& a : f.coeffs()) out.push_back(f.ring().mul(c, a));
    return TruncPoly<R>(f.ring_ptr(), std::move(out));
}

template <CommutativeRing R>
typename R::Elem evaluate(const TruncPoly<R>& f, const typename R::Elem& x) {
    const auto& ring = f.ring();
    auto acc = ring.zero();
    for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) acc = ring.add(ring.mul(acc, x), *it);
    return acc;
}

template <CommutativeRing R>
TruncPoly<R> derivative(const TruncPoly<R>& f) {
    const auto& ring = f.ring();
    std::vector<typename R::Elem> out;
    for (std::size_t i = 1; i < f.coeffs().size(); ++i) {
        out.push_back(ring.mul(ring.from_integer(BigInt(static_cast<unsigned long>(i))), f.coeffs()[i]));
    }
    return TruncPoly<R>(f.ring_ptr(), std::move(out));
}

// j-th Hasse derivative: sum_k C(k, j) c_k T^{k-j}, i.e. f^{(j)}/j! without
// dividing.
template <CommutativeRing R>
TruncPoly<R> hasse_derivative(const TruncPoly<R>& f, std::size_t j) {
    const auto& ring = f.ring();
    std::vector<typename R::Elem> out;
    for (std::size_t k = j; k < f.coeffs().size(); ++k) {
        out.push_back(ring.mul(ring.from_integer(binomial(k, j)), f.coeffs()[k]));
    }
    return TruncPoly<R>(f.ring_ptr(), std::move(out));
}

// f(g(T)). Over q-adic rings the power g^i is only carried to the precision
// n - v(c_i) that the coefficient c_i of f can see, which keeps intermediate
// degrees at the size of the final answer.
template <CommutativeRing R>
TruncPoly<R> compose(const TruncPoly<R>& f, const TruncPoly<R>& g) {
    detail::require_same_ring(f, g, "compose");
    const auto& ring = f.ring();
    using Elem = typename R::Elem;
    const auto& fc = f.coeffs();
    if (fc.empty()) return f;

    std::vector<Elem> acc{fc[0]};
    auto add_scaled = [&](const Elem& c, const std::vector<Elem>& pw) {
        if (acc.size() < pw.size()) acc.resize(pw.size(), ring.zero());
        for (std::size_t k = 0; k < pw.size(); ++k) acc[k] = ring.add(acc[k], ring.mul(c, pw[k]));
    };

    bool qadic = false;
    if constexpr (QAdicRing<R>) qadic = ring.has_q_adic();

    if (!qadic) {
        std::vector<Elem> power{ring.one()};
        for (std::size_t i = 1; i < fc.size(); ++i) {
            power = detail::mul_coeffs(ring, power, g.coeffs());
            if (!ring.is_zero(fc[i])) add_scaled(fc[i], power);
        }
        return TruncPoly<R>(f.ring_ptr(), std::move(acc));
    } else {
        if constexpr (QAdicRing<R>) {
            const int n = ring.precision();
            // need[i]: precision at which g^i matters; made non-increasing so
            // each power can be derived from the previous one.
            std::vector<int> need(fc.size(), 0);
            int running = 0;
            for (std::size_t i = fc.size(); i-- > 1;) {
                int v = ring.valuation(fc[i]);
                int want = v >= n ? 0 : n - v;
                running = std::max(running, want);
                need[i] = running;
            }
            std::vector<std::vector<Elem>> g_at(static_cast<std::size_t>(n) + 1);
            auto g_reduced = [&](int k) -> const std::vector<Elem>& {
                auto& slot = g_at[static_cast<std::size_t>(k)];
                if (slot.empty()) slot = detail::reduce_coeffs(ring, g.coeffs(), k);
                return slot;
            };
            std::vector<Elem> power{ring.one()};
            for (std::size_t i = 1; i < fc.size(); ++i) {
                int k = need[i];
                if (k == 0) break;
                power = detail::reduce_coeffs(ring, detail::mul_coeffs(ring, power, g_reduced(k)), k);
                if (!ring.is_zero(fc[i])) add_scaled(fc[i], power);
            }
            return TruncPoly<R>(f.ring_ptr(), std::move(acc));
        }
    }
}

// Coefficients reduced mod q^k but kept in the same ring.
template <QAdicRing R>
TruncPoly<R> truncate_mod(const TruncPoly<R>& f, int k) {
    return TruncPoly<R>(f.ring_ptr(), detail::reduce_coeffs(f.ring(), f.coeffs(), k));
}

// pi_{n,k}: the image of f over R/q^k.
template <QAdicRing R>
TruncPoly<R> reduce(const TruncPoly<R>& f, int k) {
    auto coarse = std::make_shared<const R>(f.ring().with_precision(k));
    std::vector<typename R::Elem> out;
    out.reserve(f.coeffs().size());
    for (const auto& c : f.coeffs()) out.push_back(coarse->reduce_from(c));
    return TruncPoly<R>(std::move(coarse), std::move(out));
}

// Canonical-representative section of reduction: reinterpret f over `fine`.
template <QAdicRing R>
TruncPoly<R> lift(const TruncPoly<R>& f, std::shared_ptr<const R> fine) {
    if (fine->precision() < f.ring().precision()) throw OutOfRange("lift: target precision below source precision");
    std::vector<typename R::Elem> out;
    out.reserve(f.coeffs().size());
    for (const auto& c : f.coeffs()) out.push_back(fine->lift_from(c));
    return TruncPoly<R>(std::move(fine), std::move(out));
}

// Degree of f mod q^m, none for a polynomial vanishing mod q^m.
template <QAdicRing R>
std::optional<int> degree_mod(const TruncPoly<R>& f, int m) {
    const auto& ring = f.ring();
    if (m < 1 || m > ring.precision()) {
        throw OutOfRange("degree_mod: m = " + std::to_string(m) + " outside [1, " + std::to_string(ring.precision()) + "]");
    }
    for (std::size_t i = f.coeffs().size(); i-- > 0;) {
        if (ring.valuation(f.coeffs()[i]) < m) return static_cast<int>(i);
    }
    return std::nullopt;
}

} // namespace unipoly
