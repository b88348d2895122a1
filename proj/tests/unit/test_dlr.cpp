#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gibbs/conversion.hpp"
#include "gibbs/dlr.hpp"
#include "gibbs/errors.hpp"
#include "gibbs/fixtures.hpp"

using namespace gibbs;
namespace fx = gibbs::fixtures;

namespace {

struct Fixture {
    std::string name;
    Interaction phi;
    SFT sft;
    Symbol boundary_symbol;
};

std::vector<Fixture> chain_fixtures()
{
    return {
        {"ising-0.5", fx::ising_chain(0.5), fx::full_shift(fx::integers(), fx::spins()), 1},
        {"ising-1", fx::ising_chain(1.0), fx::full_shift(fx::integers(), fx::spins()), 0},
        {"golden", fx::golden_site_bond(), fx::golden_mean(), 0},
    };
}

Pattern mixed_boundary(std::span<const Element> region, std::int64_t radius, const std::vector<Symbol>& pattern)
{
    const auto sites = collar(fx::integers(), region, radius);
    Pattern p;
    for (std::size_t i = 0; i < sites.size(); ++i) p.set(sites[i], pattern[i % pattern.size()]);
    return p;
}

// Oracle: Boltzmann weights computed from brute-force Hamiltonians.
std::vector<double> boltzmann_oracle(const Interaction& phi, const std::vector<Pattern>& fillings, const Pattern& boundary,
                                     std::span<const Element> region)
{
    std::vector<double> w;
    double z = 0.0;
    for (const auto& eta : fillings) {
        w.push_back(std::exp(-hamiltonian(phi, region, boundary.overwritten(eta)).value));
        z += w.back();
    }
    for (auto& v : w) v /= z;
    return w;
}

} // namespace

TEST(Kernel, UniformForZeroInteraction)
{
    const auto phi = Interaction::zero(fx::integers(), fx::bits());
    const auto region = fx::interval(0, 0);
    const auto k = dlr_kernel(CocycleSource(phi), fx::full_shift(fx::integers(), fx::bits()), region,
                              constant_boundary(fx::integers(), region, 1, 0));
    ASSERT_EQ(k.fillings.size(), 2u);
    EXPECT_DOUBLE_EQ(k.probabilities[0], 0.5);
    EXPECT_DOUBLE_EQ(k.probabilities[1], 0.5);
}

TEST(Kernel, IsingSingleSite)
{
    const auto region = fx::interval(0, 0);
    const auto k = dlr_kernel(CocycleSource(fx::ising_chain(0.5)), fx::full_shift(fx::integers(), fx::spins()), region,
                              constant_boundary(fx::integers(), region, 1, 1));
    const double oracle = std::exp(1.0) / (std::exp(1.0) + std::exp(-1.0));
    EXPECT_NEAR(k.probability(fx::constant_pattern(region, 1)), oracle, 1e-15);
    EXPECT_NEAR(oracle, 0.880797, 1e-6);
}

TEST(Kernel, GoldenForcedZero)
{
    const auto region = fx::interval(0, 0);
    const auto k = dlr_kernel(CocycleSource(fx::golden_site_bond()), fx::golden_mean(), region,
                              constant_boundary(fx::integers(), region, 1, 1));
    ASSERT_EQ(k.fillings.size(), 1u);
    EXPECT_EQ(k.probability(fx::constant_pattern(region, 0)), 1.0);
    EXPECT_EQ(k.probability(fx::constant_pattern(region, 1)), 0.0);
}

TEST(Kernel, NoAdmissibleFillingIsDomainError)
{
    const std::vector<Element> pair{Element{0}, Element{1}};
    const SFT alternating(fx::integers(), fx::bits(),
                          {Pattern(pair, std::vector<Symbol>{0, 0}), Pattern(pair, std::vector<Symbol>{1, 1})});
    Pattern boundary;
    boundary.set(Element{-1}, 0);
    boundary.set(Element{1}, 1);
    EXPECT_THROW(dlr_kernel(CocycleSource(Interaction::zero(fx::integers(), fx::bits())), alternating,
                            fx::interval(0, 0), boundary),
                 DomainError);
}

TEST(Kernel, MatchesBoltzmannOracle)
{
    for (const auto& f : chain_fixtures()) {
        const auto region = fx::interval(0, 4);
        const auto boundary = mixed_boundary(region, 1, {0, 1});
        const auto k = dlr_kernel(CocycleSource(f.phi), f.sft, region, boundary);
        const auto oracle = boltzmann_oracle(f.phi, k.fillings, boundary, region);
        const auto b = boltzmann_kernel(f.phi, f.sft, region, boundary);
        for (std::size_t i = 0; i < k.fillings.size(); ++i) {
            EXPECT_NEAR(k.probabilities[i], oracle[i], 1e-12) << f.name;
            EXPECT_NEAR(b.probabilities[i], oracle[i], 1e-12) << f.name;
        }
    }
}

TEST(Kernel, BasePointIndependence)
{
    for (const auto& f : chain_fixtures()) {
        const auto region = fx::interval(0, 5);
        const auto boundary = constant_boundary(fx::integers(), region, 1, f.boundary_symbol);
        const auto r = kernel_normalisation(CocycleSource(f.phi), f.sft, region, boundary);
        EXPECT_LE(r.max_sum_error, 1e-12) << f.name;
        EXPECT_LE(r.max_reference_spread, 1e-12) << f.name;
        EXPECT_LE(r.max_direct_gap, 1e-12) << f.name;
        const auto k0 = dlr_kernel(CocycleSource(f.phi), f.sft, region, boundary, Admissibility::Exact1D, 0);
        const auto kl = dlr_kernel(CocycleSource(f.phi), f.sft, region, boundary, Admissibility::Exact1D,
                                   k0.fillings.size() - 1);
        EXPECT_LE(max_kernel_gap(k0, kl), 1e-12);
    }
}

TEST(Kernel, InteractionAndPotentialAgree)
{
    for (const auto& f : chain_fixtures()) {
        for (const auto& scheme : {WeightScheme::uniform(), WeightScheme::dictator()}) {
            const auto a = translate_weight(f.phi, scheme);
            const auto region = fx::interval(0, 4);
            const auto boundary = constant_boundary(fx::integers(), region, 2, f.boundary_symbol);
            const auto ki = dlr_kernel(CocycleSource(f.phi), f.sft, region, boundary);
            const auto kp = dlr_kernel(CocycleSource(a), f.sft, region, boundary);
            EXPECT_LE(max_kernel_gap(ki, kp), 1e-12) << f.name;
        }
    }
}

TEST(PartitionFunction, Examples)
{
    const auto zero = Interaction::zero(fx::integers(), fx::bits());
    const auto three = fx::interval(0, 2);
    EXPECT_DOUBLE_EQ(partition_function(zero, fx::full_shift(fx::integers(), fx::bits()), three,
                                        constant_boundary(fx::integers(), three, 1, 0))
                         .value,
                     8.0);
    const auto one = fx::interval(0, 0);
    EXPECT_NEAR(partition_function(fx::ising_chain(1.0), fx::full_shift(fx::integers(), fx::spins()), one,
                                   constant_boundary(fx::integers(), one, 1, 1))
                    .value,
                std::exp(2.0) + std::exp(-2.0), 1e-12);
    const auto golden = partition_function(zero, fx::golden_mean(), three, constant_boundary(fx::integers(), three, 1, 0));
    EXPECT_DOUBLE_EQ(golden.value, 5.0);
    EXPECT_EQ(golden.fillings, 5u);
}

TEST(ExactGibbs, TowerConsistency)
{
    for (const auto& f : chain_fixtures()) {
        const auto region = fx::interval(0, 7);
        const auto mu = exact_gibbs(CocycleSource(f.phi), f.sft, region,
                                    constant_boundary(fx::integers(), region, 1, f.boundary_symbol));
        double total = 0.0;
        for (double p : mu.table.probabilities) total += p;
        EXPECT_NEAR(total, 1.0, 1e-12);
        for (const auto& delta : {fx::interval(0, 0), fx::interval(3, 4), fx::interval(2, 5), fx::interval(7, 7)}) {
            const auto r = tower_check(mu, CocycleSource(f.phi), f.sft, delta);
            EXPECT_LE(r.max_deviation, 1e-10) << f.name;
            EXPECT_GT(r.conditions_tested, 0u);
        }
    }
}

TEST(ExactGibbs, ConditionalOfNullEventIsEmpty)
{
    const auto region = fx::interval(0, 3);
    const auto mu = exact_gibbs(CocycleSource(fx::golden_site_bond()), fx::golden_mean(), region,
                                constant_boundary(fx::integers(), region, 1, 0));
    Pattern outside;
    outside.set(Element{0}, 1);
    outside.set(Element{1}, 1);
    outside.set(Element{3}, 0);
    EXPECT_TRUE(mu.conditional(fx::interval(2, 2), outside).empty());
    outside.set(Element{1}, 0);
    outside.set(Element{2}, 1);
    // forced: 1 0 1 0
    const auto forced = mu.conditional(fx::interval(1, 1), outside);
    ASSERT_EQ(forced.size(), 1u);
    EXPECT_EQ(forced[0].first.at(Element{1}), 0);
    EXPECT_DOUBLE_EQ(forced[0].second, 1.0);
}

TEST(Conformal, FixturesOnWindows)
{
    for (const auto& f : chain_fixtures()) {
        const auto region = fx::interval(0, 9);
        const CocycleSource src(f.phi);
        const auto mu = exact_gibbs(src, f.sft, region, constant_boundary(fx::integers(), region, 1, f.boundary_symbol));
        for (const auto& sites : {fx::interval(0, 0), fx::interval(4, 5), fx::interval(2, 4)}) {
            const auto r = verify_conformal(src, f.sft, sites, mu);
            EXPECT_LE(r.max_deviation, 1e-10) << f.name;
            EXPECT_GT(r.pairs_tested, 0u);
            EXPECT_GT(r.min_derivative, 0.0);
        }
        const auto d = verify_dlr_from_conformal(src, f.sft, fx::interval(3, 5), mu);
        EXPECT_LE(d.conformal.max_deviation, 1e-10);
        EXPECT_LE(d.dlr.max_deviation, 1e-10);
    }
}

TEST(Conformal, WrongMeasureIsDetected)
{
    // a measure built from beta = 1 is not conformal for the beta = 0.5 cocycle
    const auto region = fx::interval(0, 5);
    const auto sft = fx::full_shift(fx::integers(), fx::spins());
    const auto mu = exact_gibbs(CocycleSource(fx::ising_chain(1.0)), sft, region,
                                constant_boundary(fx::integers(), region, 1, 1));
    EXPECT_GT(verify_conformal(CocycleSource(fx::ising_chain(0.5)), sft, fx::interval(2, 2), mu).max_deviation, 1e-3);
    EXPECT_GT(tower_check(mu, CocycleSource(fx::ising_chain(0.5)), sft, fx::interval(2, 2)).max_deviation, 1e-3);
}

TEST(Kimura, MatchesInteractionKernel)
{
    const auto sft = fx::full_shift(fx::integers(), fx::spins());
    const auto region = fx::interval(0, 3);
    const auto f = fx::spin_product();
    for (Symbol b : {0, 1}) {
        const auto boundary = constant_boundary(fx::integers(), region, 2, b);
        const auto kk = kimura_kernel(f, sft, region, boundary);
        const auto ki = dlr_kernel(CocycleSource(fx::ising_chain(1.0)), sft, region, boundary);
        EXPECT_LE(max_kernel_gap(kk, ki), 1e-9);
        EXPECT_NE(kk.semantics.find(";m="), std::string::npos);
    }
    for (const auto& fix : chain_fixtures()) {
        const auto a = translate_weight(fix.phi, WeightScheme::dictator());
        const auto boundary = constant_boundary(fx::integers(), region, 3, fix.boundary_symbol);
        EXPECT_LE(max_kernel_gap(kimura_kernel(a, fix.sft, region, boundary),
                                 dlr_kernel(CocycleSource(fix.phi), fix.sft, region, boundary)),
                  1e-9)
            << fix.name;
    }
}

TEST(Kimura, ThinCollarRejected)
{
    const auto region = fx::interval(0, 3);
    const auto f = LocalPotential(fx::integers(), fx::bits(), {Element{0}, Element{3}}, {0, 0, 0, 1});
    EXPECT_THROW(kimura_kernel(f, fx::full_shift(fx::integers(), fx::bits()), region,
                               constant_boundary(fx::integers(), region, 1, 0)),
                 DomainError);
    // 1 + max |s - lambda| over s in {0, 3}, lambda in [0, 3]
    EXPECT_EQ(kimura_radius(f, region), 4u);
}

TEST(Glauber, DetailedBalance)
{
    for (const auto& f : chain_fixtures()) {
        const auto region = fx::interval(0, 3);
        const CocycleSource src(f.phi);
        const auto mu = exact_gibbs(src, f.sft, region, constant_boundary(fx::integers(), region, 1, f.boundary_symbol));
        const auto t = glauber_transitions(src, f.sft, mu);
        for (std::size_t i = 0; i < t.size(); ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < t.size(); ++j) {
                row += t[i][j];
                EXPECT_NEAR(mu.table.probabilities[i] * t[i][j], mu.table.probabilities[j] * t[j][i], 1e-14);
            }
            EXPECT_NEAR(row, 1.0, 1e-12);
        }
    }
}

TEST(Glauber, TwoSiteConvergence)
{
    const auto region = fx::interval(0, 1);
    const auto sft = fx::full_shift(fx::integers(), fx::spins());
    const auto boundary = constant_boundary(fx::integers(), region, 1, 1);
    const auto r = glauber_chain(CocycleSource(fx::ising_chain(0.5)), sft, region, boundary, 200000, 7, 1000);
    EXPECT_EQ(r.states.size(), 4u);
    EXPECT_LT(r.tv_distance, 0.01);
    EXPECT_EQ(r.final_state.support(fx::integers()), region);
}

TEST(Glauber, StaysInGoldenMeanAndIsSeeded)
{
    const auto region = fx::interval(0, 4);
    const auto boundary = constant_boundary(fx::integers(), region, 1, 0);
    const CocycleSource src(fx::golden_site_bond());
    const auto a = glauber_chain(src, fx::golden_mean(), region, boundary, 20000, 3, 0, 100);
    const auto b = glauber_chain(src, fx::golden_mean(), region, boundary, 20000, 3, 0, 100);
    EXPECT_EQ(a.trace, b.trace);
    EXPECT_EQ(a.trace.size(), 200u);
    for (const auto& row : a.trace) {
        for (std::size_t i = 0; i + 1 < row.size(); ++i) EXPECT_FALSE(row[i] == 1 && row[i + 1] == 1);
    }
    EXPECT_EQ(a.final_state.support(fx::integers()), region);
    EXPECT_TRUE(fx::golden_mean().is_admissible(boundary.overwritten(a.final_state), Admissibility::Local));
}
