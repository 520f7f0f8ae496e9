#include <gtest/gtest.h>

#include "unipoly/adjoint/adjoint.hpp"
#include "unipoly/autgroup/sampling.hpp"
#include "unipoly/rings/symbolic.hpp"

using namespace unipoly;

namespace {

using Poly = TruncPoly<ZMod>;
using Kernel = KernelElement<ZMod>;

std::shared_ptr<const ZMod> zmod_pp(unsigned long p, int n) { return std::make_shared<const ZMod>(ZMod::prime_power(p, n)); }

Poly poly(const std::shared_ptr<const ZMod>& r, std::vector<long long> c) {
    std::vector<std::uint64_t> out;
    for (auto x : c) out.push_back(r->from_int(x));
    return Poly(r, out);
}

// coeff * a^ea b^eb c^ec q^eq in a symbolic ring
Symbolic::Elem mono(const Symbolic& r, long coeff, int ea, int eb, int ec = 0, int eq = 0) {
    return r.term(BigInt(coeff), {ea, eb, ec, 0, 0, eq});
}

Symbolic::Elem sum(const Symbolic& r, std::initializer_list<Symbolic::Elem> xs) {
    auto out = r.zero();
    for (const auto& x : xs) out = r.add(out, x);
    return out;
}

AutMap<Symbolic> generic_a(const std::shared_ptr<const Symbolic>& r, int degree) {
    std::vector<Symbolic::Elem> c{r->generator("a"), r->generator("b")};
    const char* names[] = {"c", "d", "e"};
    for (int i = 2; i <= degree; ++i) c.push_back(r->mul(r->q_power(i - 1), r->generator(names[i - 2])));
    return AutMap<Symbolic>(TruncPoly<Symbolic>(r, c));
}

void expect_matrix(const AdjointMatrix<Symbolic>& m, const std::vector<std::vector<Symbolic::Elem>>& expect) {
    ASSERT_EQ(m.size(), expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) {
        for (std::size_t j = 0; j < expect.size(); ++j) {
            EXPECT_EQ(m.at(i, j), expect[i][j]) << "entry (" << i + 1 << "," << j + 1 << "): got "
                                                << m.entry_ring->to_string(m.at(i, j)) << ", expected "
                                                << m.entry_ring->to_string(expect[i][j]);
        }
    }
}

} // namespace

TEST(ScalarMulTest, Examples) {
    auto r16 = std::make_shared<const ZMod>(ZMod::prime_power(2, 4));
    auto g = Kernel::from_poly(poly(r16, {0, 1, 0, 4}), 2);
    EXPECT_EQ(scalar_mul(r16->from_int(3), g).poly(), poly(r16, {0, 1, 0, 12}));
    EXPECT_EQ(scalar_mul(r16->one(), g), g);
    EXPECT_TRUE(scalar_mul(r16->zero(), g).poly().is_identity());
    // q^{n-r} annihilates the kernel
    Rng rng(61);
    for (int i = 0; i < 50; ++i) {
        auto h = Kernel::from_poly(random_kernel_element(r16, 2, 5, rng), 2);
        EXPECT_TRUE(scalar_mul(r16->q_power(2), h).poly().is_identity());
    }
}

TEST(KernelElementTest, Validation) {
    auto r = zmod_pp(3, 4);
    EXPECT_THROW(Kernel::from_poly(poly(r, {3, 1}), 2), KernelMismatch);
    EXPECT_THROW(Kernel::from_poly(poly(r, {3, 1}), 1), NotAbelian);
    EXPECT_THROW(Kernel(r, 4, Poly::zero(r)), OutOfRange);
    auto g = Kernel::from_poly(poly(r, {9, 1, 18}), 2);
    EXPECT_EQ(g.h(), poly(std::make_shared<const ZMod>(ZMod::prime_power(3, 2)), {1, 0, 2}));
    EXPECT_EQ(g.poly(), poly(r, {9, 1, 18}));
}

// Composition in the kernel is addition of the h's.
TEST(KernelElementTest, CompositionIsAddition) {
    Rng rng(62);
    for (unsigned long p : {2UL, 3UL, 5UL}) {
        for (int n = 2; n <= 6; ++n) {
            auto r = zmod_pp(p, n);
            for (int rr = (n + 1) / 2; rr < n; ++rr) {
                for (int i = 0; i < 20; ++i) {
                    auto a = Kernel::from_poly(random_kernel_element(r, rr, 5, rng), rr);
                    auto b = Kernel::from_poly(random_kernel_element(r, rr, 5, rng), rr);
                    ASSERT_EQ(compose(a.poly(), b.poly()), kernel_add(a, b).poly());
                }
            }
        }
    }
}

TEST(AdTest, IdentityActsTrivially) {
    auto r = zmod_pp(5, 3);
    auto g = Kernel::from_poly(poly(r, {25, 1, 50, 0, 25}), 2);
    EXPECT_EQ(ad(AutMap<ZMod>::identity(r), g), g);
}

TEST(AdTest, TranslationMod9) {
    // (1 + T) o (T + 3T^2) o (T - 1) = T + 3(T - 1)^2
    auto r = zmod_pp(3, 2);
    auto f = AutMap<ZMod>(poly(r, {1, 1}));
    auto g = Kernel::from_poly(poly(r, {0, 1, 3}), 1);
    EXPECT_EQ(ad(f, g).poly(), poly(r, {3, 4, 3}));
    EXPECT_EQ(ad_direct(f, g), ad_closed_form(f, g));
}

TEST(AdTest, LinearAndAdditive) {
    Rng rng(63);
    for (unsigned long p : {2UL, 3UL, 5UL}) {
        for (int n = 2; n <= 6; ++n) {
            auto r = zmod_pp(p, n);
            for (int rr = n / 2 + 1; rr < n; ++rr) {
                for (int i = 0; i < 15; ++i) {
                    auto f = random_automorphism(r, rng);
                    auto g1 = Kernel::from_poly(random_kernel_element(r, rr, 4, rng), rr);
                    auto g2 = Kernel::from_poly(random_kernel_element(r, rr, 4, rng), rr);
                    auto c = random_element(*r, rng);
                    ASSERT_EQ(ad(f, scalar_mul(c, g1)), scalar_mul(c, ad(f, g1)));
                    ASSERT_EQ(ad(f, kernel_add(g1, g2)), kernel_add(ad(f, g1), ad(f, g2)));
                    // composing actions
                    auto f2 = random_automorphism(r, rng);
                    ASSERT_EQ(ad(compose(f, f2), g1), ad(f, ad(f2, g1)));
                }
            }
        }
    }
}

// n = 2r: I^2 = 0 holds as well, and the closed form still applies.
TEST(AdTest, BoundaryCaseHalfPrecision) {
    Rng rng(64);
    for (unsigned long p : {2UL, 3UL}) {
        for (int n : {2, 4, 6}) {
            auto r = zmod_pp(p, n);
            for (int i = 0; i < 30; ++i) {
                auto f = random_automorphism(r, rng);
                auto g = Kernel::from_poly(random_kernel_element(r, n / 2, 4, rng), n / 2);
                ASSERT_EQ(ad_direct(f, g), ad_closed_form(f, g));
            }
        }
    }
}

// Entries are raw coefficients, so pinned slots show q^pin on the diagonal.
TEST(AdMatrixTest, IdentityMap) {
    for (int n = 2; n <= 5; ++n) {
        auto r = zmod_pp(3, n);
        for (int rr = (n + 1) / 2; rr < n; ++rr) {
            auto m = ad_matrix(AutMap<ZMod>::identity(r), SubgroupSpec::kernel_n(n, rr));
            EXPECT_EQ(m.is_identity(), rr >= n - 1);
            for (std::size_t i = 0; i < m.size(); ++i) {
                for (std::size_t j = 0; j < m.size(); ++j) {
                    auto expect = i == j ? m.entry_ring->q_power(kernel_pin(static_cast<int>(j), rr)) : m.entry_ring->zero();
                    EXPECT_EQ(m.at(i, j), expect) << n << " " << rr << " (" << i << "," << j << ")";
                }
            }
        }
    }
}

TEST(AdMatrixTest, Preconditions) {
    auto r = zmod_pp(2, 4);
    auto f = AutMap<ZMod>(poly(r, {0, 1, 0, 2}));
    EXPECT_THROW(ad_matrix(f, SubgroupSpec::kernel_n(4, 2)), PreconditionFailed); // not in A(4)
    EXPECT_THROW(ad_matrix(AutMap<ZMod>::identity(r), SubgroupSpec::kernel_n(4, 1)), NotAbelian);
    EXPECT_THROW(ad_matrix(AutMap<ZMod>::identity(r), SubgroupSpec::kernel_n(3, 2)), PreconditionFailed);
    EXPECT_THROW(ad_matrix(AutMap<ZMod>::identity(r), SubgroupSpec::kernel_k(4, 2)), UnsupportedRing);
}

// Without pinned slots (r = n - 1) the matrices multiply.
TEST(AdMatrixTest, Homomorphism) {
    Rng rng(65);
    for (unsigned long p : {2UL, 3UL, 5UL}) {
        for (int n = 2; n <= 5; ++n) {
            auto r = zmod_pp(p, n);
            auto spec = SubgroupSpec::kernel_n(n, n - 1);
            for (int i = 0; i < 20; ++i) {
                auto f = random_a_element(r, n, rng);
                auto g = random_a_element(r, n, rng);
                ASSERT_EQ(ad_matrix(compose(f, g), spec), ad_matrix(f, spec) * ad_matrix(g, spec));
            }
        }
    }
}

// The representation of A_d on N(d, d-1) kills N_d.
TEST(AdMatrixTest, KernelContainsN) {
    Rng rng(66);
    for (unsigned long p : {2UL, 3UL, 5UL}) {
        for (int d = 2; d <= 5; ++d) {
            auto r = zmod_pp(p, d);
            for (int i = 0; i < 20; ++i) {
                auto f = random_kernel_element(r, d - 1, d, rng);
                ASSERT_TRUE(member(f, SubgroupSpec::kernel_n(d, d - 1)));
                ASSERT_TRUE(ad_matrix(f, SubgroupSpec::kernel_n(d, d - 1)).is_identity());
            }
        }
    }
}

TEST(SymbolicAdMatrixTest, A3OnN31) {
    auto r = std::make_shared<const Symbolic>(3);
    auto m = ad_matrix(generic_a(r, 3), SubgroupSpec::kernel_n(3, 2));
    const Symbolic& s = *m.entry_ring;
    auto z = s.zero();
    expect_matrix(m, {{mono(s, 1, 0, 1), mono(s, -1, 1, 0), mono(s, 1, 2, -1), mono(s, -1, 3, -2)},
                      {z, s.one(), mono(s, -2, 1, -1), mono(s, 3, 2, -2)},
                      {z, z, mono(s, 1, 0, -1), mono(s, -3, 1, -2)},
                      {z, z, z, mono(s, 1, 0, -2)}});
}

TEST(SymbolicAdMatrixTest, A4OnN41) {
    auto r = std::make_shared<const Symbolic>(4);
    auto m = ad_matrix(generic_a(r, 4), SubgroupSpec::kernel_n(4, 3));
    const Symbolic& s = *m.entry_ring;
    auto z = s.zero();
    expect_matrix(m, {{mono(s, 1, 0, 1), mono(s, -1, 1, 0), mono(s, 1, 2, -1), mono(s, -1, 3, -2), mono(s, 1, 4, -3)},
                      {z, s.one(), mono(s, -2, 1, -1), mono(s, 3, 2, -2), mono(s, -4, 3, -3)},
                      {z, z, mono(s, 1, 0, -1), mono(s, -3, 1, -2), mono(s, 6, 2, -3)},
                      {z, z, z, mono(s, 1, 0, -2), mono(s, -4, 1, -3)},
                      {z, z, z, z, mono(s, 1, 0, -3)}});
}

// The third matrix is labelled as acting on N_{2,2}; it is reproduced as the
// action on K(4,2) inside A_4 with the T^4 slot carrying its forced factor q.
TEST(SymbolicAdMatrixTest, A4OnK42PinnedBasis) {
    auto r = std::make_shared<const Symbolic>(4);
    auto m = ad_matrix(generic_a(r, 3), SubgroupSpec::kernel_n(4, 2));
    const Symbolic& s = *m.entry_ring;
    auto z = s.zero();
    expect_matrix(m, {{sum(s, {mono(s, -2, 1, -1, 1, 1), mono(s, 1, 0, 1)}), sum(s, {mono(s, 1, 2, -2, 1, 1), mono(s, -1, 1, 0)}),
                       mono(s, 1, 2, -1), sum(s, {mono(s, -1, 4, -4, 1, 1), mono(s, -1, 3, -2)}), mono(s, 1, 4, -3, 0, 1)},
                      {mono(s, 2, 0, -1, 1, 1), sum(s, {mono(s, -2, 1, -2, 1, 1), s.one()}), mono(s, -2, 1, -1),
                       sum(s, {mono(s, 4, 3, -4, 1, 1), mono(s, 3, 2, -2)}), mono(s, -4, 3, -3, 0, 1)},
                      {z, mono(s, 1, 0, -2, 1, 1), mono(s, 1, 0, -1), sum(s, {mono(s, -6, 2, -4, 1, 1), mono(s, -3, 1, -2)}),
                       mono(s, 6, 2, -3, 0, 1)},
                      {z, z, z, sum(s, {mono(s, 4, 1, -4, 1, 1), mono(s, 1, 0, -2)}), mono(s, -4, 1, -3, 0, 1)},
                      {z, z, z, mono(s, -1, 0, -4, 1, 1), mono(s, 1, 0, -3, 0, 1)}});
}

// Substituting numbers for a..e and p for q in the symbolic matrix gives the
// numeric matrix of the specialised map.
TEST(SymbolicAdMatrixTest, SpecializesToNumeric) {
    Rng rng(67);
    struct Case {
        int n, r, degree;
    };
    for (auto [n, rr, degree] : {Case{3, 2, 3}, Case{4, 3, 4}, Case{4, 2, 3}}) {
        auto sr = std::make_shared<const Symbolic>(n);
        auto sym = ad_matrix(generic_a(sr, degree), SubgroupSpec::kernel_n(n, rr));
        for (int i = 0; i < 70; ++i) {
            unsigned long p = std::vector<unsigned long>{2, 3, 5}[static_cast<std::size_t>(i) % 3];
            auto zr = zmod_pp(p, n);
            auto entry_ring = ZMod(ZMod::prime_power(p, n - rr));
            std::vector<std::uint64_t> vals;
            for (int k = 0; k < 5; ++k) vals.push_back(random_element(*zr, rng));
            vals[1] = random_unit(*zr, rng);
            std::vector<std::uint64_t> c{vals[0], vals[1]};
            for (int k = 2; k <= degree; ++k) c.push_back(zr->mul(zr->q_power(k - 1), vals[static_cast<std::size_t>(k)]));
            auto num = ad_matrix(AutMap<ZMod>(Poly(zr, c)), SubgroupSpec::kernel_n(n, rr));
            std::vector<std::uint64_t> small;
            for (auto v : vals) small.push_back(entry_ring.reduce_from(v));
            for (std::size_t a = 0; a < sym.size(); ++a) {
                for (std::size_t b = 0; b < sym.size(); ++b) {
                    ASSERT_EQ(specialize(*sym.entry_ring, sym.at(a, b), entry_ring, small, entry_ring.from_integer(BigInt(p))),
                              num.at(a, b));
                }
            }
        }
    }
}

TEST(ModuleDecompositionTest, Shapes) {
    ZMod fp = ZMod::prime_power(3, 1);
    auto m1 = module_decomposition(fp, 1);
    EXPECT_EQ(m1.slot_orders, (std::vector<int>{1, 1, 1}));
    EXPECT_TRUE(m1.matches());
    // the worked case (R/q^2)^4 + R/q
    auto m2 = module_decomposition(fp, 2);
    EXPECT_EQ(m2.slot_orders, (std::vector<int>{2, 2, 2, 2, 1}));
    EXPECT_EQ(m2.predicted, (std::vector<int>{2, 2, 2, 2, 1}));
    EXPECT_TRUE(m2.matches());
    for (int m = 1; m <= 4; ++m) {
        auto dec = module_decomposition(ZMod::prime_power(2, 1), m);
        EXPECT_EQ(dec.slot_orders.size(), static_cast<std::size_t>(2 * m + 1));
        EXPECT_TRUE(dec.matches()) << "m = " << m;
        auto series = module_decomposition(TruncSeriesFp(PrimeField(5), 1), m);
        EXPECT_EQ(series.slot_orders, dec.slot_orders);
    }
    EXPECT_TRUE(module_decomposition(fp, 0).slot_orders.empty());
}
