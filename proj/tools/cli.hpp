#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "unipoly/adjoint/adjoint.hpp"
#include "unipoly/autgroup/iterate.hpp"
#include "unipoly/autgroup/solvable.hpp"
#include "unipoly/greenberg/greenberg.hpp"
#include "unipoly/inversion/invert.hpp"
#include "unipoly/io/any_ring.hpp"
#include "unipoly/witt/witt.hpp"

namespace unipoly::cli {

using io::Json;

inline const std::vector<std::string>& verbs() {
    static const std::vector<std::string> v{"compose",     "invert",    "order",    "member",        "iterate",   "series",
                                            "witt-derive", "witt-add",  "witt-mul", "ghost",         "witt-iso",  "greenberg",
                                            "greenberg-law", "verify-law", "ad",    "ad-matrix",     "module-decomp"};
    return v;
}

// Bad invocation (exit 2), as opposed to a library error (exit 1).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Output {
    Json json;
    std::string text;
};

struct Args {
    std::string ring, format = "json", out;
    std::optional<std::uint64_t> seed;
    std::string f, g, u, v, law, subgroup, verify = "none", x;
    std::uint64_t k = 1, cap = kDefaultOrderCap;
    std::optional<unsigned long> p;
    std::optional<int> d, n, r, m, precision, degree_cap, generic;
    std::size_t samples = 10000;
    bool check = false, exhaustive = false;
};

namespace detail {

// Inline JSON when the argument starts with '{' or '[', otherwise a file path.
inline Json load_json(const std::string& arg, const std::string& flag) {
    if (arg.empty()) throw UsageError(flag + " is required");
    std::string text;
    if (arg.front() == '{' || arg.front() == '[') {
        text = arg;
    } else {
        std::ifstream in(arg);
        if (!in) throw UsageError("cannot read " + flag + " file '" + arg + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(flag + ": " + e.what());
    }
}

template <class T>
T need(const std::optional<T>& x, const std::string& flag) {
    if (!x) throw UsageError(flag + " is required");
    return *x;
}

inline std::uint64_t need_seed(const Args& a, const std::string& why) {
    if (!a.seed) throw UsageError("--seed is required for " + why);
    return *a.seed;
}

inline io::AnyRing resolve_ring(const Args& a, const std::vector<const Json*>& inputs) {
    if (!a.ring.empty()) {
        try {
            return io::parse_ring_flag(a.ring);
        } catch (const Error& e) {
            throw UsageError(std::string("--ring: ") + e.what());
        }
    }
    for (const auto* j : inputs) {
        if (j && j->is_object() && j->contains("ring")) return io::any_ring_from_json(j->at("ring"));
    }
    throw UsageError("--ring is required");
}

inline SubgroupSpec parse_subgroup(const std::string& s) {
    auto parts = io::detail::split(s, ':');
    auto num = [&](std::size_t i) {
        if (i >= parts.size()) throw UsageError("bad --subgroup '" + s + "'");
        try {
            return std::stoi(parts[i]);
        } catch (const std::exception&) {
            throw UsageError("bad --subgroup '" + s + "'");
        }
    };
    if (parts[0] == "full" && parts.size() == 1) return SubgroupSpec::full();
    if (parts[0] == "A" && parts.size() == 2) return SubgroupSpec::a(num(1));
    if (parts[0] == "Atilde" && parts.size() == 2) return SubgroupSpec::atilde(num(1));
    if (parts[0] == "N" && parts.size() == 3) return SubgroupSpec::kernel_n(num(1), num(2));
    if (parts[0] == "K" && parts.size() == 3) return SubgroupSpec::kernel_k(num(1), num(2));
    throw UsageError("bad --subgroup '" + s + "' (expected full, A:<d>, Atilde:<d>, N:<n>:<r> or K:<n>:<r>)");
}

inline VerifyOptions verify_options(const Args& a) {
    VerifyOptions o;
    o.samples = a.samples;
    if (a.verify == "exhaustive") {
        o.mode = VerifyMode::Exhaustive;
    } else if (a.verify == "sampled") {
        o.mode = VerifyMode::Sampled;
        o.seed = need_seed(a, "sampled verification");
    } else {
        throw UsageError("--verify must be exhaustive or sampled");
    }
    return o;
}

inline std::string report_text(const AxiomReport& rep) {
    std::string out = std::string(rep.exhaustive ? "exhaustive" : "sampled") + " check over " + std::to_string(rep.points) +
                      " points, " + std::to_string(rep.triples) + " triples\n";
    auto line = [&](const char* name, const std::optional<std::string>& fail) {
        out += std::string("  ") + name + ": " + (fail ? "FAIL " + *fail : "ok") + "\n";
    };
    line("closure", rep.closure_failure);
    line("identity", rep.identity_failure);
    line("associativity", rep.associativity_failure);
    line("inverses", rep.inverse_failure);
    return out;
}

inline std::string greenberg_variable_name(std::size_t var, int level) {
    const auto len = static_cast<std::size_t>(level) + 1;
    return "X" + std::to_string(var / len) + "_" + std::to_string(var % len);
}

inline std::size_t input_variable_index(const std::string& name) {
    if (name.size() < 2 || name[0] != 'X') throw ParseError("input variables are X0, X1, ...; got " + name);
    auto i = big_from_string(name.substr(1));
    if (i < 0 || !i.fits_uint_p()) throw ParseError("input variables are X0, X1, ...; got " + name);
    return i.get_ui();
}

inline std::vector<BigInt> witt_components(const Json& j, unsigned long p) {
    auto [q, comps] = io::witt_vec_from_json(j);
    if (q != p) throw RingMismatch("Witt vectors for different primes");
    return comps;
}

template <class R>
constexpr bool finite_qadic = std::is_same_v<R, ZMod> || std::is_same_v<R, TruncSeriesFp>;

// Verbs that act on polynomials over the chosen ring.
template <QAdicRing R>
Output poly_verb(const std::string& verb, const Args& a, const R& ring_value, const Json* fj, const Json* gj) {
    auto ring = std::make_shared<const R>(ring_value);
    auto poly = [&](const Json* j, const char* flag) {
        if (!j) throw UsageError(std::string(flag) + " is required");
        return io::poly_from_json<R>(*j, ring);
    };
    if (verb == "compose") {
        auto h = compose(poly(fj, "--f"), poly(gj, "--g"));
        return {io::poly_to_json(h), h.to_string()};
    }
    if (verb == "invert") {
        AutMap<R> f(poly(fj, "--f"));
        InversionTrace trace;
        auto inv = invert(f, &trace);
        Json j{{"inverse", io::poly_to_json(inv.poly())}, {"depth", trace.depth}};
        std::string text = inv.to_string() + "\n";
        if (a.check) {
            bool agrees = oracle_invert(f) == inv;
            bool both = compose(f, inv).is_identity() && compose(inv, f).is_identity();
            j["oracle_agrees"] = agrees;
            j["two_sided"] = both;
            text += std::string("oracle agrees: ") + (agrees ? "yes" : "no") + "\ntwo-sided: " + (both ? "yes" : "no") + "\n";
        }
        return {j, text};
    }
    if (verb == "order") {
        auto k = order(AutMap<R>(poly(fj, "--f")), a.cap);
        return {Json{{"order", std::to_string(k)}}, std::to_string(k) + "\n"};
    }
    if (verb == "member") {
        auto spec = parse_subgroup(a.subgroup);
        bool in = member(poly(fj, "--f"), spec);
        return {Json{{"subgroup", spec.to_string()}, {"member", in}}, std::string(in ? "yes" : "no") + "\n"};
    }
    if (verb == "iterate") {
        auto h = iterate(poly(fj, "--f"), a.k);
        return {io::poly_to_json(h), h.to_string()};
    }
    if (verb == "series") {
        if constexpr (finite_qadic<R>) {
            KernelCheckOptions opts;
            opts.samples = a.samples;
            opts.exhaustive = a.exhaustive;
            if (a.degree_cap) opts.degree_cap = *a.degree_cap;
            if (!a.exhaustive) opts.seed = need_seed(a, "sampled kernel checks");
            Json steps = Json::array();
            std::string text;
            for (const auto& s : composition_series(*ring, opts)) {
                Json step{{"from", s.from_ring},
                          {"to", s.to_ring},
                          {"kernel", s.kernel},
                          {"abelian", s.verdict.abelian},
                          {"exhaustive", s.verdict.exhaustive},
                          {"pairs_checked", s.verdict.pairs_checked},
                          {"elements", s.verdict.elements}};
                if (s.verdict.counterexample) step["counterexample"] = {s.verdict.counterexample->first, s.verdict.counterexample->second};
                text += s.from_ring + " -> " + s.to_ring + "  kernel " + s.kernel + "  " +
                        (s.verdict.abelian ? "abelian" : "NOT abelian") + " (" + std::to_string(s.verdict.pairs_checked) +
                        " pairs)\n";
                steps.push_back(std::move(step));
            }
            return {Json{{"ring", io::ring_to_json(*ring)}, {"steps", steps}}, text};
        } else {
            throw UnsupportedRing("series needs a finite ring Z/m or F_p[t]/(t^e), got " + ring->describe());
        }
    }
    if (verb == "ad") {
        auto r = need(a.r, "--r");
        AutMap<R> f(poly(fj, "--f"));
        auto g = KernelElement<R>::from_poly(poly(gj, "--g"), r);
        auto img = ad(f, g);
        return {Json{{"image", io::poly_to_json(img.poly())}}, img.to_string()};
    }
    if (verb == "ad-matrix") {
        auto r = need(a.r, "--r");
        AutMap<R> f = [&] {
            if (!a.generic) return AutMap<R>(poly(fj, "--f"));
            if constexpr (std::is_same_v<R, Symbolic>) {
                std::vector<Symbolic::Elem> c{ring->generator("a"), ring->generator("b")};
                const auto& names = ring->generators();
                for (int i = 2; i <= *a.generic; ++i) {
                    if (static_cast<std::size_t>(i) >= names.size()) throw OutOfRange("--generic degree exceeds the generators");
                    c.push_back(ring->mul(ring->q_power(i - 1), ring->generator(names[static_cast<std::size_t>(i)])));
                }
                return AutMap<R>(TruncPoly<R>(ring, c));
            } else {
                throw UsageError("--generic needs --ring sym");
            }
        }();
        auto mat = ad_matrix(f, SubgroupSpec::kernel_n(ring->precision(), r));
        return {io::matrix_to_json(mat), mat.to_string()};
    }
    if (verb == "module-decomp") {
        auto dec = module_decomposition(*ring, need(a.m, "--m"));
        std::string text = "slot orders:";
        for (int o : dec.slot_orders) text += " " + std::to_string(o);
        text += "\npredicted:";
        for (int o : dec.predicted) text += " " + std::to_string(o);
        text += std::string("\nmatches: ") + (dec.matches() ? "yes" : "no") + "\n";
        return {Json{{"m", dec.m}, {"slot_orders", dec.slot_orders}, {"predicted", dec.predicted}, {"matches", dec.matches()}}, text};
    }
    throw UsageError("unknown verb " + verb);
}

inline Output witt_verb(const std::string& verb, const Args& a) {
    if (verb == "witt-derive") {
        auto law = derive_witt_laws(need(a.p, "--p"), need(a.n, "--n"));
        std::string text;
        for (std::size_t i = 0; i < law.sum.size(); ++i) text += "s" + std::to_string(i) + " = " + law.sum[i].to_string(witt_variable_name) + "\n";
        for (std::size_t i = 0; i < law.prod.size(); ++i) text += "m" + std::to_string(i) + " = " + law.prod[i].to_string(witt_variable_name) + "\n";
        return {io::witt_law_to_json(law), text};
    }
    if (verb == "witt-iso") {
        if (!a.u.empty()) {
            auto [p, comps] = io::witt_vec_from_json(load_json(a.u, "--u"));
            std::vector<std::uint64_t> residues;
            for (const auto& c : comps) residues.push_back(mod_floor(c, BigInt(p)).get_ui());
            auto x = witt_to_residue(p, residues);
            auto mod = big_pow(BigInt(p), comps.size());
            return {Json{{"p", p}, {"modulus", to_string(mod)}, {"residue", to_string(x)}}, to_string(x) + " mod " + to_string(mod) + "\n"};
        }
        auto p = need(a.p, "--p");
        auto n = need(a.n, "--n");
        if (a.x.empty()) throw UsageError("witt-iso needs --u or --x");
        auto u = residue_to_witt(p, n, big_from_string(a.x));
        std::vector<BigInt> comps(u.begin(), u.end());
        return {io::witt_vec_to_json(p, comps), to_string(comps.front()) + (comps.size() > 1 ? ", ..." : "") + "\n"};
    }
    auto uj = load_json(a.u, "--u");
    auto [p, u] = io::witt_vec_from_json(uj);
    if (verb == "ghost") {
        Integers z;
        auto g = ghost_map(p, z, u);
        Json comps = Json::array();
        std::string text;
        for (const auto& c : g) {
            comps.push_back(to_string(c));
            text += to_string(c) + "\n";
        }
        return {Json{{"p", p}, {"ghost", comps}}, text};
    }
    auto v = witt_components(load_json(a.v, "--v"), p);
    if (u.size() != v.size()) throw ShapeMismatch("Witt vectors of different lengths");
    auto law = std::make_shared<const UniversalWittLaw>(derive_witt_laws(p, static_cast<int>(u.size()) - 1));
    std::vector<BigInt> w;
    if (!a.ring.empty()) {
        auto any = resolve_ring(a, {});
        auto* zm = std::get_if<ZMod>(&any);
        if (!zm) throw UsageError("witt arithmetic takes --ring zmod:<m> or no ring (integers)");
        WittRing<ZMod> wr(std::make_shared<const ZMod>(*zm), law);
        std::vector<std::uint64_t> uu, vv;
        for (const auto& c : u) uu.push_back(zm->from_integer(c));
        for (const auto& c : v) vv.push_back(zm->from_integer(c));
        for (auto c : verb == "witt-add" ? wr.add(uu, vv) : wr.mul(uu, vv)) w.push_back(zm->to_integer(c));
    } else {
        WittRing<Integers> wr(std::make_shared<const Integers>(), law);
        w = verb == "witt-add" ? wr.add(u, v) : wr.mul(u, v);
    }
    std::string text;
    for (const auto& c : w) text += (text.empty() ? "" : " ") + to_string(c);
    return {io::witt_vec_to_json(p, w), text + "\n"};
}

inline Output greenberg_verb(const std::string& verb, const Args& a) {
    if (verb == "greenberg") {
        auto f = io::mpoly_from_json(load_json(a.f, "--f"), input_variable_index);
        const int level = need(a.n, "--n");
        auto sys = greenberg_transform(f, need(a.p, "--p"), level);
        auto name = [&](std::size_t v) { return greenberg_variable_name(v, level); };
        Json comps = Json::array();
        std::string text;
        for (std::size_t i = 0; i < sys.components.size(); ++i) {
            comps.push_back(io::mpoly_to_json(sys.components[i], name));
            text += "g" + std::to_string(i) + " = " + sys.components[i].to_string(name) + "\n";
        }
        return {Json{{"p", sys.p}, {"n", sys.level}, {"components", comps}}, text};
    }
    GroupLaw law;
    if (verb == "greenberg-law") {
        auto p = need(a.p, "--p");
        if (a.d) {
            law = group_law_Ad(p, *a.d);
        } else if (a.precision && a.degree_cap) {
            law = group_law_full(p, *a.precision, *a.degree_cap);
        } else {
            throw UsageError("greenberg-law needs --d, or --precision with --degree-cap");
        }
        Output out{Json{{"law", io::group_law_to_json(law)}}, io::group_law_text(law)};
        if (a.verify != "none") {
            auto rep = verify_group_axioms(law, verify_options(a));
            out.json["report"] = io::axiom_report_to_json(rep);
            out.text += report_text(rep);
        }
        return out;
    }
    auto j = load_json(a.law, "--law");
    law = io::group_law_from_json(j.contains("law") ? j.at("law") : j);
    auto rep = verify_group_axioms(law, verify_options(a));
    return {io::axiom_report_to_json(rep), report_text(rep)};
}

inline Output dispatch(const std::string& verb, const Args& a) {
    if (verb.rfind("witt", 0) == 0 || verb == "ghost") return witt_verb(verb, a);
    if (verb.rfind("greenberg", 0) == 0 || verb == "verify-law") return greenberg_verb(verb, a);
    std::optional<Json> fj, gj;
    if (!a.f.empty()) fj = load_json(a.f, "--f");
    if (!a.g.empty()) gj = load_json(a.g, "--g");
    auto ring = resolve_ring(a, {fj ? &*fj : nullptr, gj ? &*gj : nullptr});
    return std::visit([&](const auto& r) { return poly_verb(verb, a, r, fj ? &*fj : nullptr, gj ? &*gj : nullptr); }, ring);
}

inline std::string verb_list() {
    std::string out;
    for (const auto& v : verbs()) out += (out.empty() ? "" : ", ") + v;
    return out;
}

} // namespace detail

// Exit codes: 0 success, 1 domain error, 2 usage error.
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    Args a;
    CLI::App app{"Automorphisms of the affine line over truncated rings", "unipoly"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--ring", a.ring, "zmod:<m>[:q=<p>], tq:<p|Q>:<e> or sym[:<n>]");
    app.add_option("--seed", a.seed, "seed for sampled verbs");
    app.add_option("--format", a.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--out", a.out, "write output to this file");

    auto sub = [&](const std::string& name, const std::string& desc) { return app.add_subcommand(name, desc); };
    auto f_opt = [&](CLI::App* s) { s->add_option("--f", a.f, "polynomial JSON (file or inline)"); };
    auto g_opt = [&](CLI::App* s) { s->add_option("--g", a.g, "polynomial JSON (file or inline)"); };

    auto* c = sub("compose", "f o g");
    f_opt(c);
    g_opt(c);
    c = sub("invert", "compositional inverse");
    f_opt(c);
    c->add_flag("--check", a.check, "compare with the linear-algebra oracle");
    c = sub("order", "order of an automorphism");
    f_opt(c);
    c->add_option("--cap", a.cap, "iteration cap");
    c = sub("member", "subgroup membership");
    f_opt(c);
    c->add_option("--subgroup", a.subgroup, "full, A:<d>, Atilde:<d>, N:<n>:<r> or K:<n>:<r>")->required();
    c = sub("iterate", "k-fold composite");
    f_opt(c);
    c->add_option("--k", a.k, "number of iterations")->required();
    c = sub("series", "precision-halving composition series");
    c->add_option("--degree-cap", a.degree_cap, "degree cap for kernel checks");
    c->add_option("--samples", a.samples, "pairs per sampled kernel check");
    c->add_flag("--exhaustive", a.exhaustive, "enumerate kernels when small");
    c = sub("witt-derive", "universal Witt addition and multiplication");
    c->add_option("--p", a.p)->required();
    c->add_option("--n", a.n, "Witt level (components 0..n)")->required();
    for (const auto* name : {"witt-add", "witt-mul"}) {
        c = sub(name, std::string("Witt vector ") + (name[5] == 'a' ? "sum" : "product"));
        c->add_option("--u", a.u)->required();
        c->add_option("--v", a.v)->required();
    }
    c = sub("ghost", "ghost components");
    c->add_option("--u", a.u)->required();
    c = sub("witt-iso", "W_n(F_p) <-> Z/p^{n+1}");
    c->add_option("--u", a.u, "Witt vector to map to a residue");
    c->add_option("--x", a.x, "residue to map to a Witt vector");
    c->add_option("--p", a.p);
    c->add_option("--n", a.n);
    c = sub("greenberg", "Greenberg transform of an integer polynomial");
    c->add_option("--f", a.f, "term list in X0, X1, ...")->required();
    c->add_option("--p", a.p)->required();
    c->add_option("--n", a.n, "Witt level")->required();
    c = sub("greenberg-law", "group law over F_p");
    c->add_option("--p", a.p)->required();
    c->add_option("--d", a.d, "A_d law");
    c->add_option("--precision", a.precision, "full law over Z/p^precision");
    c->add_option("--degree-cap", a.degree_cap, "degree cap of the full law");
    c->add_option("--verify", a.verify, "none, exhaustive or sampled")->check(CLI::IsMember({"none", "exhaustive", "sampled"}));
    c->add_option("--samples", a.samples);
    c = sub("verify-law", "check group axioms of a law");
    c->add_option("--law", a.law)->required();
    c->add_option("--verify", a.verify)->check(CLI::IsMember({"exhaustive", "sampled"}))->required();
    c->add_option("--samples", a.samples);
    c = sub("ad", "conjugation action on an abelian kernel");
    f_opt(c);
    g_opt(c);
    c->add_option("--r", a.r)->required();
    c = sub("ad-matrix", "matrix of the action on N(n, r)");
    f_opt(c);
    c->add_option("--generic", a.generic, "use a + bT + q c T^2 + ... of this degree (sym rings)");
    c->add_option("--r", a.r)->required();
    c = sub("module-decomp", "cyclic orders of the basis slots of N(2m, m)");
    c->add_option("--m", a.m)->required();

    if (!argv.empty() && argv[0].rfind("-", 0) != 0 &&
        std::find(verbs().begin(), verbs().end(), argv[0]) == verbs().end()) {
        err << "usage error: unknown verb '" << argv[0] << "'\nvalid verbs: " << detail::verb_list() << "\n";
        return 2;
    }
    std::vector<const char*> cargv{"unipoly"};
    for (const auto& s : argv) cargv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\nvalid verbs: " << detail::verb_list() << "\n";
        return 2;
    }
    const std::string verb = app.get_subcommands().front()->get_name();
    try {
        auto result = detail::dispatch(verb, a);
        std::string body = a.format == "json" ? result.json.dump(2) + "\n" : result.text;
        if (!body.empty() && body.back() != '\n') body += "\n";
        if (a.out.empty()) {
            out << body;
        } else {
            std::ofstream file(a.out);
            if (!file || !(file << body)) {
                err << "usage error: cannot write " << a.out << "\n";
                return 2;
            }
        }
        return 0;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.name() << ": " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        err << "error: ParseError: " << e.what() << "\n";
        return 1;
    }
}

} // namespace unipoly::cli
