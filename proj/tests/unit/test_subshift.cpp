#include <gtest/gtest.h>

#include <random>
#include <set>

#include "gibbs/errors.hpp"
#include "gibbs/fixtures.hpp"
#include "gibbs/subshift.hpp"

using namespace gibbs;
namespace fx = gibbs::fixtures;

namespace {

Pattern word(std::int64_t start, const std::vector<Symbol>& symbols)
{
    Pattern p;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        p.set(Element{start + static_cast<std::int64_t>(i)}, symbols[i]);
    }
    return p;
}

// Oracle: a golden-mean word is admissible iff no two adjacent ones.
bool golden_ok(const std::vector<Symbol>& w)
{
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i] == 1 && w[i + 1] == 1) {
            return false;
        }
    }
    return true;
}

std::uint64_t fibonacci(int n)
{
    std::uint64_t a = 0, b = 1;
    for (int i = 0; i < n; ++i) {
        const auto c = a + b;
        a = b;
        b = c;
    }
    return a;
}

} // namespace

TEST(ShiftPattern, IdentityAndComposition)
{
    Group f2(GroupSpec::parse("F2"));
    const Element a{1}, b{2};
    Pattern p;
    p.set(f2.identity(), 0);
    p.set(b, 1);
    EXPECT_EQ(shift_pattern(f2, f2.identity(), p), p);
    const auto q = shift_pattern(f2, a, p);
    EXPECT_EQ(q.at(a), 0);
    EXPECT_EQ(q.at(Element{1, 2}), 1);
    const auto els = ball_elements(f2, 3);
    for (const auto& g : els) {
        for (const auto& h : els) {
            EXPECT_EQ(shift_pattern(f2, g, shift_pattern(f2, h, p)), shift_pattern(f2, f2.multiply(g, h), p));
        }
    }
}

TEST(ShiftPattern, TranslationOnIntegers)
{
    Group z = fx::integers();
    Pattern p;
    p.set(Element{0}, 1);
    const auto q = shift_pattern(z, Element{1}, p);
    EXPECT_EQ(q.size(), 1u);
    EXPECT_EQ(q.at(Element{1}), 1);
}

TEST(Pattern, MissingElementNamed)
{
    Pattern p;
    try {
        (void)p.at(Element{7});
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("7"), std::string::npos);
    }
}

TEST(LocalAdmissibility, GoldenMeanExamples)
{
    const auto x = fx::golden_mean();
    EXPECT_EQ(x.range(), 1);
    EXPECT_FALSE(x.is_locally_admissible(word(-1, {0, 1, 1, 0})));
    EXPECT_TRUE(x.is_locally_admissible(word(0, {0, 1, 0, 1, 0})));
    const auto full = fx::full_shift(fx::integers(), fx::bits());
    EXPECT_TRUE(full.is_locally_admissible(word(0, {1, 1, 1})));
}

TEST(Fillings, FullShiftCount)
{
    const auto full = fx::full_shift(fx::integers(), fx::bits());
    const auto region = fx::interval(0, 2);
    EXPECT_EQ(enumerate_fillings(full, region, Pattern{}).size(), 8u);
}

TEST(Fillings, GoldenMeanFibonacci)
{
    const auto x = fx::golden_mean();
    for (int L = 1; L <= 12; ++L) {
        const auto region = fx::interval(0, L - 1);
        const Pattern boundary = word(-1, {0}).overwritten(word(L, {0}));
        const auto fills = enumerate_fillings(x, region, boundary);
        EXPECT_EQ(fills.size(), fibonacci(L + 2)) << L;
        // brute force over all 2^L words
        std::size_t brute = 0;
        for (std::size_t idx = 0; idx < (std::size_t{1} << L); ++idx) {
            std::vector<Symbol> w{0};
            for (int i = L - 1; i >= 0; --i) {
                w.push_back(static_cast<Symbol>((idx >> i) & 1));
            }
            w.push_back(0);
            brute += golden_ok(w) ? 1 : 0;
        }
        EXPECT_EQ(fills.size(), brute);
    }
}

TEST(Fillings, OrderedAndDeterministic)
{
    const auto x = fx::golden_mean();
    const auto region = fx::interval(0, 2);
    const Pattern boundary = word(-1, {0}).overwritten(word(3, {0}));
    const auto a = enumerate_fillings(x, region, boundary);
    const auto b = enumerate_fillings(x, region, boundary);
    EXPECT_EQ(a, b);
    EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
}

TEST(Fillings, OnesOnBothSidesForceZero)
{
    const auto x = fx::golden_mean();
    const Pattern boundary = word(-1, {1}).overwritten(word(1, {1}));
    const auto fills = enumerate_fillings(x, fx::interval(0, 0), boundary);
    ASSERT_EQ(fills.size(), 1u);
    EXPECT_EQ(fills[0].at(Element{0}), 0);
}

TEST(Fillings, BudgetAndCollarErrors)
{
    const auto full = fx::full_shift(fx::integers(), fx::bits());
    EXPECT_THROW(enumerate_fillings(full, fx::interval(0, 30), Pattern{}, Admissibility::Local, 1000), ResourceError);
    const auto x = fx::golden_mean();
    EXPECT_THROW(enumerate_fillings(x, fx::interval(0, 2), word(-1, {0})), UsageError);
}

TEST(Fillings, AdmissiblePatternsNeedNoBoundary)
{
    const auto x = fx::golden_mean();
    EXPECT_EQ(admissible_patterns(x, fx::interval(0, 3)).size(), fibonacci(6));
}

TEST(Holonomy, SwapExamples)
{
    const auto full = fx::full_shift(fx::integers(), fx::bits());
    const auto region = fx::interval(0, 0);
    const Pattern omega = word(0, {0}), eta = word(0, {1});
    WindowConfig w = make_window(fx::integers(), omega, word(-1, {0}).overwritten(word(1, {1})));
    EXPECT_EQ(holonomy_swap(full, omega, omega, w), w);
    EXPECT_EQ(holonomy_swap(full, omega, eta, w).values.at(Element{0}), 1);

    const auto x = fx::golden_mean();
    EXPECT_EQ(holonomy_swap(x, omega, eta, w), w);
    (void)region;
}

TEST(Holonomy, SupportMismatchIsUsageError)
{
    const auto x = fx::golden_mean();
    WindowConfig w = make_window(fx::integers(), word(0, {0, 0}), word(-1, {0}).overwritten(word(2, {0})));
    EXPECT_THROW(holonomy_swap(x, word(0, {0}), word(1, {0}), w), UsageError);
}

TEST(Holonomy, SwapIsInvolution)
{
    std::mt19937_64 rng(7);
    const auto x = fx::golden_mean();
    const auto region = fx::interval(0, 5);
    const auto pats = admissible_patterns(x, fx::interval(1, 2));
    for (int trial = 0; trial < 200; ++trial) {
        const Pattern boundary = word(-1, {0}).overwritten(word(6, {static_cast<Symbol>(rng() % 2)}));
        const auto interior = sample_admissible(x, region, boundary, rng);
        const WindowConfig w = make_window(fx::integers(), interior, boundary);
        const auto& omega = pats[rng() % pats.size()];
        const auto& eta = pats[rng() % pats.size()];
        for (auto sem : {Admissibility::Local, Admissibility::Exact1D}) {
            const auto once = holonomy_swap(x, omega, eta, w, sem);
            EXPECT_EQ(holonomy_swap(x, omega, eta, once, sem), w);
        }
    }
}

TEST(Holonomy, OrbitExamples)
{
    const auto full = fx::full_shift(fx::integers(), fx::bits());
    const auto sites = fx::interval(0, 1);
    const Pattern zero_boundary = word(-1, {0}).overwritten(word(2, {0}));
    const WindowConfig w = make_window(fx::integers(), word(0, {0, 0}), zero_boundary);
    EXPECT_EQ(holonomy_group_orbit(full, sites, w).size(), 4u);
    const auto x = fx::golden_mean();
    const auto orbit = holonomy_group_orbit(x, sites, w);
    std::set<std::vector<Symbol>> words;
    for (const auto& o : orbit) {
        words.insert({o.values.at(Element{0}), o.values.at(Element{1})});
    }
    EXPECT_EQ(words, (std::set<std::vector<Symbol>>{{0, 0}, {0, 1}, {1, 0}}));
    EXPECT_EQ(holonomy_group_orbit(x, std::vector<Element>{}, w), std::vector<WindowConfig>{w});
}

TEST(Holonomy, OrbitsAreEquivalenceClasses)
{
    const auto x = fx::golden_mean();
    const auto sites = fx::interval(0, 2);
    const Pattern boundary = word(-1, {0}).overwritten(word(3, {1}));
    const WindowConfig w = make_window(fx::integers(), word(0, {0, 0, 0}), boundary);
    const auto orbit = holonomy_group_orbit(x, sites, w);
    std::set<Pattern> base;
    for (const auto& o : orbit) {
        base.insert(o.values);
    }
    for (const auto& member : orbit) {
        std::set<Pattern> other;
        for (const auto& o : holonomy_group_orbit(x, sites, member)) {
            other.insert(o.values);
        }
        EXPECT_EQ(other, base);
    }
}

// With a collar of radius r_X, local admissibility agrees with extension to
// a bi-infinite point for a strongly connected golden mean graph.
TEST(FollowerGraph, LocalEqualsExactForGoldenMean)
{
    const auto x = fx::golden_mean();
    ASSERT_TRUE(x.supports_exact());
    EXPECT_TRUE(x.follower_graph()->is_strongly_connected());
    for (int L = 1; L <= 8; ++L) {
        const auto region = fx::interval(0, L - 1);
        for (std::size_t idx = 0; idx < (std::size_t{1} << (L + 2)); ++idx) {
            std::vector<Symbol> w;
            for (int i = L + 1; i >= 0; --i) {
                w.push_back(static_cast<Symbol>((idx >> i) & 1));
            }
            const auto p = word(-1, w);
            // oracle: a finite golden word always extends by zeros
            EXPECT_EQ(x.is_admissible(p, Admissibility::Exact1D), golden_ok(w));
            EXPECT_EQ(x.is_admissible(p, Admissibility::Local), golden_ok(w));
        }
    }
}

// Alternating shift (00 and 11 forbidden): a pattern with a gap is locally
// fine but extends only when the parities match.
TEST(FollowerGraph, ExactDetectsNonExtensibleGaps)
{
    const Group z = fx::integers();
    const std::vector<Element> pair{Element{0}, Element{1}};
    const SFT alternating(z, fx::bits(), {Pattern(pair, std::vector<Symbol>{0, 0}), Pattern(pair, std::vector<Symbol>{1, 1})});
    Pattern gap;
    gap.set(Element{0}, 0);
    gap.set(Element{3}, 0);
    EXPECT_TRUE(alternating.is_admissible(gap, Admissibility::Local));
    EXPECT_FALSE(alternating.is_admissible(gap, Admissibility::Exact1D));
    Pattern ok;
    ok.set(Element{0}, 0);
    ok.set(Element{2}, 0);
    EXPECT_TRUE(alternating.is_admissible(ok, Admissibility::Exact1D));
}

TEST(Collar, IntervalCollar)
{
    const auto c = collar(fx::integers(), fx::interval(0, 2), 2);
    std::set<Element> got(c.begin(), c.end());
    EXPECT_EQ(got, (std::set<Element>{{-2}, {-1}, {3}, {4}}));
}

TEST(Window, OverlapRejected)
{
    EXPECT_THROW(make_window(fx::integers(), word(0, {0}), word(0, {1})), UsageError);
}
