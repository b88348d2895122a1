#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "gibbs/conversion.hpp"
#include "gibbs/errors.hpp"
#include "gibbs/fixtures.hpp"
#include "gibbs/potential.hpp"

using namespace gibbs;
namespace fx = gibbs::fixtures;

namespace {

// Oracle: v_k by brute force over all pairs of full-shift patterns on the
// support that agree on B_k.
double brute_variation(const LocalPotential& f, std::size_t k)
{
    const auto& g = f.group();
    const auto bk = ball_elements(g, k);
    const std::size_t q = f.alphabet().size();
    const std::size_t n = f.support().size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= q;
    double best = 0.0;
    for (std::size_t a = 0; a < total; ++a) {
        for (std::size_t b = 0; b < total; ++b) {
            const auto sa = pattern_symbols(a, n, q);
            const auto sb = pattern_symbols(b, n, q);
            bool agree = true;
            for (std::size_t i = 0; i < n; ++i) {
                if (std::find(bk.begin(), bk.end(), f.support()[i]) != bk.end() && sa[i] != sb[i]) agree = false;
            }
            if (agree) best = std::max(best, std::abs(f.table()[a] - f.table()[b]));
        }
    }
    return best;
}

} // namespace

TEST(LocalPotential, SupportSortedAndReindexed)
{
    const LocalPotential f(fx::integers(), fx::bits(), {Element{1}, Element{0}}, {1, 2, 3, 4});
    EXPECT_EQ(f.support(), (std::vector<Element>{{0}, {1}}));
    EXPECT_EQ(f.table(), (std::vector<double>{1, 3, 2, 4}));
    EXPECT_EQ(f.radius(), 2);
    EXPECT_EQ(LocalPotential::constant(fx::integers(), fx::bits(), 3.0).radius(), 1);
    EXPECT_THROW(LocalPotential(fx::integers(), fx::bits(), {Element{0}}, {1, 2, 3}), ValidationError);
}

TEST(LocalPotential, ValueAtIsShiftCovariant)
{
    const auto f = fx::spin_product();
    std::mt19937_64 rng(1);
    Pattern x;
    for (const auto& e : fx::interval(-6, 6)) x.set(e, static_cast<Symbol>(rng() % 2));
    for (std::int64_t h = -4; h <= 4; ++h) {
        EXPECT_EQ(f.value_at(Element{h}, x), f.value(shift_pattern(f.group(), Element{h}, x)));
        // reads x at -h and 1 - h
        EXPECT_EQ(f.value_at(Element{h}, x), fx::spin(x.at(Element{-h})) * fx::spin(x.at(Element{1 - h})));
    }
}

TEST(Variation, SpinProduct)
{
    const auto f = fx::spin_product();
    const auto sft = fx::full_shift(fx::integers(), fx::spins());
    const auto v = variations(f, sft);
    ASSERT_EQ(v.size(), 2u);
    EXPECT_EQ(v[0].value, 1.0);
    EXPECT_EQ(v[1].value, 2.0);
    EXPECT_EQ(variation(f, sft, 2).value, 0.0);
    EXPECT_TRUE(v[1].exact);
}

TEST(Variation, MatchesBruteForceAndIsMonotone)
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto z2 = fx::square_lattice();
    const auto sft = fx::full_shift(z2, fx::bits());
    for (int t = 0; t < 10; ++t) {
        std::vector<Element> support{{0, 0}, {1, 0}, {0, 2}, {-1, 1}};
        std::vector<double> table(16);
        for (auto& v : table) v = u(rng);
        const LocalPotential f(z2, fx::bits(), support, table);
        double prev = 1e300;
        for (std::size_t k = 1; k <= 4; ++k) {
            const double v = variation(f, sft, k).value;
            EXPECT_NEAR(v, brute_variation(f, k), 1e-12);
            EXPECT_LE(v, prev);
            prev = v;
        }
        EXPECT_EQ(variation(f, sft, 4).value, 0.0);
    }
}

TEST(Variation, GoldenMeanRestrictsToAdmissible)
{
    // f = x_0 x_1 on {0,1}: identically 0 on the golden mean shift
    const LocalPotential f(fx::integers(), fx::bits(), {Element{0}, Element{1}}, {0, 0, 0, 1});
    const auto sft = fx::golden_mean();
    EXPECT_EQ(variation(f, sft, 1).value, 0.0);
    EXPECT_EQ(variation(f, fx::full_shift(fx::integers(), fx::bits()), 1).value, 1.0);
    EXPECT_FALSE(variation(f, sft, 1, Admissibility::Local).exact);
}

TEST(Norms, SpinProduct)
{
    const auto f = fx::spin_product();
    const auto sft = fx::full_shift(fx::integers(), fx::spins());
    const auto s = shell_norm(f, sft);
    EXPECT_DOUBLE_EQ(s.value, 5.0);
    EXPECT_TRUE(s.converged);
    EXPECT_TRUE(s.exact);
    EXPECT_DOUBLE_EQ(volume_norm(f, sft).value, 2.0);
}

TEST(Norms, ConstantAndSingleSite)
{
    const auto sft = fx::full_shift(fx::integers(), fx::bits());
    const auto c = LocalPotential::constant(fx::integers(), fx::bits(), -2.5);
    EXPECT_DOUBLE_EQ(shell_norm(c, sft).value, 2.5);
    EXPECT_DOUBLE_EQ(volume_norm(c, sft).value, 0.0);
    const LocalPotential site(fx::integers(), fx::bits(), {Element{0}}, {0.0, 1.5});
    EXPECT_DOUBLE_EQ(shell_norm(site, sft).value, 1.5);
    EXPECT_DOUBLE_EQ(volume_norm(site, sft).value, 0.0);
}

TEST(Norms, MatchOracleSums)
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto sft = fx::full_shift(fx::integers(), fx::bits());
    const auto shells = shell_sizes(fx::integers(), 6);
    const auto balls = ball_sizes(fx::integers(), 6);
    for (int t = 0; t < 20; ++t) {
        std::vector<double> table(8);
        for (auto& v : table) v = u(rng);
        const LocalPotential f(fx::integers(), fx::bits(), {Element{0}, Element{1}, Element{-2}}, table);
        double shell = 0.0, volume = 0.0;
        for (std::size_t k = 0; k < 5; ++k) {
            // v_0 is the sup norm, not the oscillation
            const double v = k == 0 ? f.sup_norm() : brute_variation(f, k);
            shell += static_cast<double>(shells[k]) * v;
            volume += static_cast<double>(balls[k]) * v;
        }
        EXPECT_NEAR(shell_norm(f, sft).value, shell, 1e-12);
        EXPECT_NEAR(volume_norm(f, sft).value, volume, 1e-12);
    }
}

TEST(PartialSum, SpinProduct)
{
    const auto f = fx::spin_product();
    const auto window = fx::interval(-5, 5);
    EXPECT_DOUBLE_EQ(partial_sum_f_m(f, 3, fx::constant_pattern(window, 1)), 5.0);
    std::mt19937_64 rng(6);
    for (int t = 0; t < 20; ++t) {
        Pattern z;
        for (const auto& e : window) z.set(e, static_cast<Symbol>(rng() % 2));
        double oracle = 0.0;
        for (std::int64_t g = -2; g <= 2; ++g) oracle += fx::spin(z.at(Element{-g})) * fx::spin(z.at(Element{1 - g}));
        EXPECT_DOUBLE_EQ(partial_sum_f_m(f, 3, z), oracle);
    }
    EXPECT_THROW(partial_sum_f_m(f, 3, fx::constant_pattern(fx::interval(-1, 1), 1)), DomainError);
}

TEST(CocyclePotential, FlipMatchesInteraction)
{
    const auto f = fx::spin_product();
    const auto window = fx::interval(-3, 3);
    const auto x = fx::constant_pattern(window, 1);
    auto y = x;
    y.set(Element{0}, 0);
    const auto delta = fx::interval(0, 0);
    EXPECT_DOUBLE_EQ(cocycle_potential(f, x, y, delta).value, -4.0);
    EXPECT_DOUBLE_EQ(cocycle_interaction(fx::ising_chain(1.0), x, y, delta).value, -4.0);
}

TEST(CocyclePotential, ChainRuleAndCovariance)
{
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto z2 = fx::square_lattice();
    std::vector<double> table(8);
    for (auto& v : table) v = u(rng);
    const LocalPotential f(z2, fx::bits(), {Element{0, 0}, Element{1, 0}, Element{0, 1}}, table);
    const auto delta = ball_elements(z2, 2);
    auto window = collar(z2, delta, 2 * (f.radius() - 1) + 1);
    window.insert(window.end(), delta.begin(), delta.end());
    const Element h{2, -1};
    for (int t = 0; t < 50; ++t) {
        Pattern x;
        for (const auto& e : window) x.set(e, static_cast<Symbol>(rng() % 2));
        auto y = x, z = x;
        for (const auto& d : delta) {
            y.set(d, static_cast<Symbol>(rng() % 2));
            z.set(d, static_cast<Symbol>(rng() % 2));
        }
        const double xy = cocycle_potential(f, x, y, delta).value;
        EXPECT_NEAR(xy + cocycle_potential(f, y, z, delta).value, cocycle_potential(f, x, z, delta).value, 1e-12);
        const auto hd = translate(z2, h, delta);
        EXPECT_NEAR(cocycle_potential(f, shift_pattern(z2, h, x), shift_pattern(z2, h, y), hd).value, xy, 1e-12);
    }
}

TEST(CocycleBound, HoldsOnRandomPairs)
{
    std::mt19937_64 rng(12);
    const auto f = fx::spin_product();
    const auto sft = fx::full_shift(fx::integers(), fx::spins());
    const double shell = shell_norm(f, sft).value;
    const double ratio = sphere_ratio_sup(f.group(), 10).sup_ratio;
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto delta = ball_elements(f.group(), n);
        const double bound = cocycle_bound(f.group(), n, f.sup_norm(), shell, ratio);
        const auto window = fx::interval(-8, 8);
        for (int t = 0; t < 50; ++t) {
            Pattern x;
            for (const auto& e : window) x.set(e, static_cast<Symbol>(rng() % 2));
            auto y = x;
            for (const auto& d : delta) y.set(d, static_cast<Symbol>(rng() % 2));
            EXPECT_LE(std::abs(cocycle_potential(f, x, y, delta).value), bound);
        }
    }
}

TEST(VariationProfile, InverseSquareTail)
{
    const VariationProfile p{VariationProfile::Kind::InverseSquareTail, 1.0, 2.0};
    EXPECT_NEAR(p.value(1), std::numbers::pi * std::numbers::pi / 6.0, 1e-12);
    EXPECT_NEAR(p.value(0), p.value(1), 0.0);
    for (std::size_t k : {2u, 10u, 100u, 5000u}) {
        // oracle: pi^2/6 - sum_{l<k} 1/l^2
        double head = 0.0;
        for (std::size_t l = 1; l < k; ++l) head += 1.0 / (static_cast<double>(l) * l);
        EXPECT_NEAR(p.value(k), std::numbers::pi * std::numbers::pi / 6.0 - head, 1e-11);
        EXPECT_GE(p.value(k), p.minorant(k));
        EXPECT_DOUBLE_EQ(p.minorant(k), 1.0 / static_cast<double>(k));
    }
}

TEST(SeriesNorm, CounterexampleDiverges)
{
    const auto ce = counterexample_interaction(200);
    EXPECT_NEAR(ce.v1, std::numbers::pi * std::numbers::pi / 6.0, 1e-12);
    const auto& s = ce.shell;
    EXPECT_FALSE(s.converged);
    EXPECT_TRUE(std::isinf(s.value));
    ASSERT_TRUE(s.divergence.has_value());
    // oracle: first K with 1 + sum_{k=1}^K 2/k > 10 ... minorant uses |S_k| = 2
    double acc = 0.0;
    std::size_t k = 0;
    while (acc <= 10.0) {
        ++k;
        acc += 2.0 / static_cast<double>(k);
    }
    EXPECT_EQ(s.divergence->witness_k, k);
    EXPECT_EQ(k, 83u);
    EXPECT_NEAR(s.divergence->witness_sum, acc, 1e-12);
}

TEST(SeriesNorm, PowerProfileConverges)
{
    SeriesPotential f{fx::integers(), fx::bits(), {}, {VariationProfile::Kind::Power, 1.0, 3.0}, 0.0, 1.0};
    const auto s = shell_norm(f, 1000);
    EXPECT_TRUE(s.converged);
    EXPECT_FALSE(s.exact);
    EXPECT_GT(s.tail_bound, 0.0);
    // |S_0| v_0 + sum_{k>=1} 2/(k+1)^3 = 1 + 2 (zeta(3) - 1)
    EXPECT_NEAR(s.value, 1.0 + 2.0 * (1.2020569031595942 - 1.0), s.tail_bound + 1e-9);
}
