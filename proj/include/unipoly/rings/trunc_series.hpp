#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "unipoly/core/bigint.hpp"
#include "unipoly/rings/concepts.hpp"
#include "unipoly/rings/zmod.hpp"

namespace unipoly {

// F_p as a coefficient field for K[t]/(t^e).
class PrimeField {
public:
    using Elem = std::uint64_t;

    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (!is_probable_prime(from_u64(p)) || p >= (std::uint64_t{1} << 32)) {
            throw OutOfRange("F_p requires a prime p < 2^32, got " + std::to_string(p));
        }
    }

    bool operator==(const PrimeField&) const = default;

    std::uint64_t characteristic() const { return p_; }
    std::string name() const { return "F_" + std::to_string(p_); }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_integer(const BigInt& z) const { return to_u64(mod_floor(z, from_u64(p_))); }
    Elem add(Elem a, Elem b) const { return (a + b) % p_; }
    Elem sub(Elem a, Elem b) const { return (a + p_ - b) % p_; }
    Elem neg(Elem a) const { return (p_ - a) % p_; }
    Elem mul(Elem a, Elem b) const { return (a * b) % p_; }
    bool is_zero(Elem a) const { return a == 0; }
    Elem inv(Elem a) const {
        if (a == 0) throw NotAUnit("0 is not invertible in " + name());
        return detail::ModArith<std::uint64_t>::inverse(a, p_);
    }
    std::string to_string(Elem a) const { return std::to_string(a); }

private:
    std::uint64_t p_;
};

class Rationals {
public:
    using Elem = BigRational;

    bool operator==(const Rationals&) const = default;

    std::string name() const { return "Q"; }
    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_integer(const BigInt& z) const { return Elem(z); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    bool is_zero(const Elem& a) const { return a == 0; }
    Elem inv(const Elem& a) const {
        if (a == 0) throw NotAUnit("0 is not invertible in Q");
        return 1 / a;
    }
    std::string to_string(const Elem& a) const { return a.get_str(10); }
};

// K[t]/(t^e) with q = t. Elements are coefficient vectors of length exactly e,
// lowest degree first.
template <class Field>
class TruncSeries {
public:
    using Elem = std::vector<typename Field::Elem>;

    TruncSeries(Field field, int e) : field_(std::move(field)), e_(e) {
        if (e < 1) throw OutOfRange("K[t]/(t^e) requires e >= 1");
    }

    bool operator==(const TruncSeries& other) const { return field_ == other.field_ && e_ == other.e_; }

    const Field& field() const { return field_; }

    Elem zero() const { return Elem(static_cast<std::size_t>(e_), field_.zero()); }
    Elem one() const { return constant(field_.one()); }
    Elem constant(const typename Field::Elem& c) const {
        Elem out = zero();
        out[0] = c;
        return out;
    }
    Elem from_integer(const BigInt& z) const { return constant(field_.from_integer(z)); }
    Elem from_coefficients(const std::vector<typename Field::Elem>& coeffs) const {
        if (coeffs.size() > static_cast<std::size_t>(e_)) {
            throw ShapeMismatch("series element has more than e coefficients");
        }
        Elem out = zero();
        std::copy(coeffs.begin(), coeffs.end(), out.begin());
        return out;
    }

    Elem add(const Elem& a, const Elem& b) const {
        Elem out(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = field_.add(a[i], b[i]);
        return out;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        Elem out(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = field_.sub(a[i], b[i]);
        return out;
    }
    Elem neg(const Elem& a) const {
        Elem out(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = field_.neg(a[i]);
        return out;
    }
    Elem mul(const Elem& a, const Elem& b) const {
        Elem out = zero();
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (field_.is_zero(a[i])) continue;
            for (std::size_t j = 0; i + j < out.size(); ++j) {
                out[i + j] = field_.add(out[i + j], field_.mul(a[i], b[j]));
            }
        }
        return out;
    }

    bool is_zero(const Elem& a) const {
        for (const auto& c : a) {
            if (!field_.is_zero(c)) return false;
        }
        return true;
    }
    bool is_unit(const Elem& a) const { return !field_.is_zero(a[0]); }
    bool is_nilpotent(const Elem& a) const { return field_.is_zero(a[0]); }
    bool is_finite() const { return std::is_same_v<Field, PrimeField>; }

    // Power-series inverse: solve a * b = 1 coefficient by coefficient.
    Elem inv(const Elem& a) const {
        if (!is_unit(a)) throw NotAUnit(to_string(a) + " has zero constant term in " + describe());
        Elem out = zero();
        auto lead_inv = field_.inv(a[0]);
        out[0] = lead_inv;
        for (std::size_t k = 1; k < out.size(); ++k) {
            auto acc = field_.zero();
            for (std::size_t i = 1; i <= k; ++i) acc = field_.add(acc, field_.mul(a[i], out[k - i]));
            out[k] = field_.neg(field_.mul(acc, lead_inv));
        }
        return out;
    }

    bool has_q_adic() const { return true; }
    int precision() const { return e_; }
    Elem q() const { return q_power(1); }
    Elem q_power(int k) const {
        Elem out = zero();
        if (k < e_) out[static_cast<std::size_t>(k)] = field_.one();
        return out;
    }
    int valuation(const Elem& a) const {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!field_.is_zero(a[i])) return static_cast<int>(i);
        }
        return kInfiniteValuation;
    }
    Elem reduce(const Elem& a, int k) const {
        Elem out = a;
        for (std::size_t i = static_cast<std::size_t>(std::max(k, 0)); i < out.size(); ++i) out[i] = field_.zero();
        return out;
    }
    Elem div_q_power(const Elem& a, int k) const {
        if (k <= 0) return a;
        if (valuation(a) < k) throw NotDivisible(to_string(a) + " is not divisible by t^" + std::to_string(k));
        Elem out = zero();
        for (std::size_t i = static_cast<std::size_t>(k); i < a.size(); ++i) out[i - static_cast<std::size_t>(k)] = a[i];
        return out;
    }
    TruncSeries with_precision(int k) const { return TruncSeries(field_, k); }
    Elem reduce_from(const Elem& a) const {
        Elem out = zero();
        for (std::size_t i = 0; i < out.size() && i < a.size(); ++i) out[i] = a[i];
        return out;
    }
    Elem lift_from(const Elem& a) const { return reduce_from(a); }

    std::string to_string(const Elem& a) const {
        std::string out;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (field_.is_zero(a[i])) continue;
            if (!out.empty()) out += " + ";
            std::string c = field_.to_string(a[i]);
            if (i == 0) {
                out += c;
            } else {
                if (c != "1") out += (c.find_first_of("/-") != std::string::npos ? "(" + c + ")" : c) + "*";
                out += i == 1 ? "t" : "t^" + std::to_string(i);
            }
        }
        return out.empty() ? "0" : out;
    }
    std::string describe() const { return field_.name() + "[t]/(t^" + std::to_string(e_) + ")"; }

private:
    Field field_;
    int e_;
};

using TruncSeriesFp = TruncSeries<PrimeField>;
using TruncSeriesQ = TruncSeries<Rationals>;

} // namespace unipoly
