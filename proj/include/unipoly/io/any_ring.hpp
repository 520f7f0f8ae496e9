#pragma once

#include <string>
#include <variant>

#include "unipoly/io/serialize.hpp"

namespace unipoly::io {

// A coefficient ring chosen at run time.
using AnyRing = std::variant<ZMod, TruncSeriesFp, TruncSeriesQ, Symbolic>;

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) return out;
        start = pos + 1;
    }
}

inline int small_int(const std::string& s, const std::string& flag) {
    auto z = big_from_string(s);
    if (!z.fits_sint_p()) throw ParseError("number out of range in ring flag " + flag);
    return static_cast<int>(z.get_si());
}

} // namespace detail

// zmod:<m>[:q=<p>] | tq:<p|Q>:<e> | sym[:<n>]
inline AnyRing parse_ring_flag(const std::string& flag) {
    auto parts = detail::split(flag, ':');
    const auto& kind = parts[0];
    if (kind == "zmod" && (parts.size() == 2 || parts.size() == 3)) {
        ZMod r(big_from_string(parts[1]));
        if (parts.size() == 3) {
            if (parts[2].rfind("q=", 0) != 0) throw ParseError("expected q=<p> in ring flag " + flag);
            auto p = big_from_string(parts[2].substr(2));
            if (!r.has_q_adic() || r.prime() != p) {
                throw ParseError("ring flag " + flag + ": modulus is not a power of " + to_string(p));
            }
        }
        return r;
    }
    if (kind == "tq" && parts.size() == 3) {
        int e = detail::small_int(parts[2], flag);
        if (parts[1] == "Q") return TruncSeriesQ(Rationals{}, e);
        auto p = big_from_string(parts[1]);
        if (!p.fits_ulong_p()) throw ParseError("characteristic too large in ring flag " + flag);
        return TruncSeriesFp(PrimeField(p.get_ui()), e);
    }
    if (kind == "sym" && parts.size() <= 2) {
        return Symbolic(parts.size() == 2 ? detail::small_int(parts[1], flag) : 4);
    }
    throw ParseError("unrecognised ring flag '" + flag + "' (expected zmod:<m>[:q=<p>], tq:<p|Q>:<e> or sym[:<n>])");
}

inline AnyRing any_ring_from_json(const Json& j) {
    auto kind = detail::get<std::string>(j, "kind");
    if (kind == "zmod") return ring_from_json<ZMod>(j);
    if (kind == "tq") {
        if (detail::get<std::string>(j, "field") == "Q") return ring_from_json<TruncSeriesQ>(j);
        return ring_from_json<TruncSeriesFp>(j);
    }
    if (kind == "sym") return ring_from_json<Symbolic>(j);
    throw ParseError("unknown ring kind " + kind);
}

inline std::string describe(const AnyRing& r) {
    return std::visit([](const auto& x) { return x.describe(); }, r);
}

} // namespace unipoly::io
