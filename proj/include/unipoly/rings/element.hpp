#pragma once

#include <memory>
#include <ostream>
#include <string>

#include "unipoly/rings/concepts.hpp"
#include "unipoly/rings/mpoly.hpp"
#include "unipoly/rings/zmod.hpp"

namespace unipoly {

// An element bundled with its ring. Rings are shared immutably, so copies are
// cheap and safe to hand to other threads.
template <CommutativeRing R>
class RingElem {
public:
    using Value = typename R::Elem;

    RingElem(std::shared_ptr<const R> ring, Value value) : ring_(std::move(ring)), value_(std::move(value)) {}
    RingElem(const R& ring, Value value) : RingElem(std::make_shared<const R>(ring), std::move(value)) {}

    const R& ring() const { return *ring_; }
    const std::shared_ptr<const R>& ring_ptr() const { return ring_; }
    const Value& value() const { return value_; }

    bool operator==(const RingElem& other) const { return *ring_ == *other.ring_ && value_ == other.value_; }

    std::string to_string() const { return ring_->to_string(value_); }
    friend std::ostream& operator<<(std::ostream& os, const RingElem& e) { return os << e.to_string(); }

private:
    std::shared_ptr<const R> ring_;
    Value value_;
};

namespace detail {
template <class R>
void require_same_ring(const RingElem<R>& a, const RingElem<R>& b, const char* op) {
    if (!(a.ring() == b.ring())) {
        throw RingMismatch(std::string(op) + ": " + a.ring().describe() + " vs " + b.ring().describe());
    }
}
} // namespace detail

template <CommutativeRing R>
RingElem<R> ring_add(const RingElem<R>& a, const RingElem<R>& b) {
    detail::require_same_ring(a, b, "ring_add");
    return {a.ring_ptr(), a.ring().add(a.value(), b.value())};
}

template <CommutativeRing R>
RingElem<R> ring_sub(const RingElem<R>& a, const RingElem<R>& b) {
    detail::require_same_ring(a, b, "ring_sub");
    return {a.ring_ptr(), a.ring().sub(a.value(), b.value())};
}

template <CommutativeRing R>
RingElem<R> ring_mul(const RingElem<R>& a, const RingElem<R>& b) {
    detail::require_same_ring(a, b, "ring_mul");
    return {a.ring_ptr(), a.ring().mul(a.value(), b.value())};
}

template <CommutativeRing R>
RingElem<R> ring_inv(const RingElem<R>& a) {
    return {a.ring_ptr(), a.ring().inv(a.value())};
}

template <QAdicRing R>
int q_valuation(const RingElem<R>& a) {
    return a.ring().valuation(a.value());
}

inline RingElem<Integers> exact_div_by_q(const RingElem<Integers>& a, int k) {
    return {a.ring_ptr(), a.ring().exact_div_by_q(a.value(), k)};
}

inline RingElem<MPolyRing> exact_div_by_q(const RingElem<MPolyRing>& a, int k) {
    return {a.ring_ptr(), a.ring().exact_div_by_q(a.value(), k)};
}

} // namespace unipoly
