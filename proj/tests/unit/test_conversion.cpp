#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "gibbs/conversion.hpp"
#include "gibbs/errors.hpp"
#include "gibbs/fixtures.hpp"

using namespace gibbs;
namespace fx = gibbs::fixtures;

namespace {

std::vector<Element> union_support(const LocalPotential& a, const LocalPotential& b)
{
    std::set<Element> s(a.support().begin(), a.support().end());
    s.insert(b.support().begin(), b.support().end());
    return {s.begin(), s.end()};
}

// Largest |a - b| over every pattern on the union of the supports.
double max_gap(const LocalPotential& a, const LocalPotential& b)
{
    const auto sites = union_support(a, b);
    const std::size_t q = a.alphabet().size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < sites.size(); ++i) total *= q;
    double gap = 0.0;
    for (std::size_t i = 0; i < total; ++i) {
        const Pattern p(sites, pattern_symbols(i, sites.size(), q));
        gap = std::max(gap, std::abs(a.value(p) - b.value(p)));
    }
    return gap;
}

std::vector<LocalPotential> sample_potentials()
{
    return {
        fx::spin_product(),
        LocalPotential(fx::integers(), fx::bits(), {Element{0}, Element{2}}, {0.3, -1.0, 0.5, 2.0}),
        LocalPotential(fx::integers(), fx::bits(), {Element{-1}, Element{0}, Element{1}},
                       {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8}),
        LocalPotential(fx::square_lattice(), fx::bits(), {Element{0, 0}, Element{1, 0}}, {1.0, -0.5, 0.25, 0.0}),
    };
}

} // namespace

TEST(Rational, Arithmetic)
{
    EXPECT_EQ(Rational::make(2, 4), (Rational{1, 2}));
    EXPECT_EQ(Rational::make(1, 3) + Rational::make(1, 6), (Rational{1, 2}));
    EXPECT_EQ(Rational::make(-3, -6), (Rational{1, 2}));
    EXPECT_THROW(Rational::make(1, 0), std::exception);
}

TEST(WeightScheme, ParseAndPrint)
{
    for (const std::string s : {"uniform", "dictator:shortlex-min", "dictator:lex-min", "dictator:lex-middle"}) {
        EXPECT_EQ(WeightScheme::parse(s).to_string(), s);
    }
    EXPECT_EQ(WeightScheme::parse("dictator").rule, DictatorRule::ShortlexMin);
    EXPECT_THROW(WeightScheme::parse("softmax"), ValidationError);
}

TEST(Weights, ExactAndNormalised)
{
    const Group z = fx::integers();
    const std::vector<Element> rep{Element{0}, Element{1}, Element{3}};
    const auto u = exact_weights(z, WeightScheme::uniform(), rep);
    Rational sum;
    for (const auto& w : u) {
        EXPECT_EQ(w, Rational::make(1, 3));
        sum = sum + w;
    }
    EXPECT_EQ(sum, Rational::make(1, 1));
    for (auto rule : {DictatorRule::ShortlexMin, DictatorRule::LexMin, DictatorRule::LexMiddle}) {
        const auto d = exact_weights(z, WeightScheme::dictator(rule), rep);
        Rational s;
        int ones = 0;
        for (const auto& w : d) {
            s = s + w;
            ones += w == Rational::make(1, 1);
        }
        EXPECT_EQ(s, Rational::make(1, 1));
        EXPECT_EQ(ones, 1);
    }
}

TEST(Weights, ExplicitSchemeValidated)
{
    const auto phi = fx::ising_chain(1.0);
    WeightScheme bad;
    bad.kind = WeightScheme::Kind::Explicit;
    bad.table[phi.terms()[0].support] = {0.7, 0.7};
    try {
        check_normalised(phi, bad);
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("orbit"), std::string::npos);
    }
    WeightScheme good = bad;
    good.table[phi.terms()[0].support] = {0.25, 0.75};
    EXPECT_NO_THROW(check_normalised(phi, good));
    bad.table[phi.terms()[0].support] = {1.5, -0.5};
    EXPECT_THROW(check_normalised(phi, bad), ValidationError);
}

TEST(TranslateWeight, IsingUniform)
{
    const double beta = 0.8;
    const auto a = translate_weight(fx::ising_chain(beta), WeightScheme::uniform());
    EXPECT_EQ(a.support(), ball_elements(fx::integers(), 2));
    std::mt19937_64 rng(1);
    for (int t = 0; t < 32; ++t) {
        Pattern x;
        for (const auto& e : fx::interval(-1, 1)) x.set(e, static_cast<Symbol>(rng() % 2));
        const int s0 = fx::spin(x.at(Element{0}));
        const double oracle = beta / 2.0 * (fx::spin(x.at(Element{-1})) * s0 + s0 * fx::spin(x.at(Element{1})));
        EXPECT_NEAR(a.value(x), oracle, 1e-15);
    }
}

TEST(TranslateWeight, IsingDictator)
{
    const double beta = 0.8;
    const auto a = translate_weight(fx::ising_chain(beta), WeightScheme::dictator());
    ASSERT_EQ(a.support().size(), 2u);
    const Element other = a.support()[0] == Element{0} ? a.support()[1] : a.support()[0];
    EXPECT_EQ(std::abs(other.data[0]), 1);
    const auto lex = translate_weight(fx::ising_chain(beta), WeightScheme::dictator(DictatorRule::LexMin));
    EXPECT_EQ(lex.support(), (std::vector<Element>{{0}, {1}}));
    for (Symbol s0 : {0, 1}) {
        for (Symbol s1 : {0, 1}) {
            const Pattern p(std::vector<Element>{{0}, {1}}, std::vector<Symbol>{s0, s1});
            EXPECT_DOUBLE_EQ(lex.value(p), beta * fx::spin(s0) * fx::spin(s1));
        }
    }
}

TEST(TranslateWeight, Linear)
{
    std::mt19937_64 rng(3);
    const auto a = fx::golden_site_bond(0.7, 0.25, -0.5, 0.4);
    const auto b = fx::golden_site_bond(-0.2, 1.0, 0.0, 0.3);
    for (const auto& scheme : {WeightScheme::uniform(), WeightScheme::dictator()}) {
        const auto ab = translate_weight(a.scaled(2.0).plus(b.scaled(-3.0)), scheme);
        const auto ta = translate_weight(a, scheme);
        const auto tb = translate_weight(b, scheme);
        for (int t = 0; t < 50; ++t) {
            Pattern x;
            for (const auto& e : fx::interval(-2, 2)) x.set(e, static_cast<Symbol>(rng() % 2));
            EXPECT_NEAR(ab.value(x), 2.0 * ta.value(x) - 3.0 * tb.value(x), 1e-12);
        }
    }
}

TEST(TranslateWeight, TailRejected)
{
    EXPECT_THROW(translate_weight(counterexample_interaction(5).full, WeightScheme::uniform()), UsageError);
}

TEST(TranslateWeight, ShellNormBoundedByBNorm)
{
    const std::vector<std::pair<Interaction, SFT>> cases{
        {fx::ising_chain(1.0), fx::full_shift(fx::integers(), fx::spins())},
        {fx::plaquette(1.0, 0.25), fx::full_shift(fx::square_lattice(), fx::spins())},
        {fx::golden_site_bond(), fx::golden_mean()},
    };
    for (const auto& [phi, sft] : cases) {
        const double c = is_full_dimensional(phi).constant;
        const double bound = 2.0 * c * b_norm(phi).value;
        for (const auto& scheme : {WeightScheme::uniform(), WeightScheme::dictator()}) {
            EXPECT_LE(shell_norm(translate_weight(phi, scheme), sft).value, bound);
        }
    }
}

TEST(SameCocycle, FixturesAcrossSchemes)
{
    const std::vector<std::pair<Interaction, SFT>> cases{
        {fx::ising_chain(1.0), fx::full_shift(fx::integers(), fx::spins())},
        {fx::plaquette(1.0, 0.25), fx::full_shift(fx::square_lattice(), fx::spins())},
        {fx::golden_site_bond(), fx::golden_mean()},
    };
    for (const auto& [phi, sft] : cases) {
        const auto r = check_same_cocycle(phi, sft, WeightScheme::uniform(), WeightScheme::dictator(), 200, 42);
        EXPECT_EQ(r.pairs, 200u);
        EXPECT_LE(r.max_discrepancy(), 1e-9);
    }
}

TEST(SameCocycle, Deterministic)
{
    const auto phi = fx::golden_site_bond();
    const auto a = check_same_cocycle(phi, fx::golden_mean(), WeightScheme::uniform(),
                                      WeightScheme::dictator(DictatorRule::LexMiddle), 50, 9);
    const auto b = check_same_cocycle(phi, fx::golden_mean(), WeightScheme::uniform(),
                                      WeightScheme::dictator(DictatorRule::LexMiddle), 50, 9);
    EXPECT_EQ(a.max_vs_interaction, b.max_vs_interaction);
    EXPECT_EQ(a.max_between_schemes, b.max_between_schemes);
}

TEST(Preimage, RoundTrip)
{
    for (const auto& f : sample_potentials()) {
        const auto phi = interaction_from_potential(f);
        const auto back = translate_weight(phi, WeightScheme::dictator());
        EXPECT_EQ(max_gap(back, f), 0.0);
    }
}

TEST(Preimage, SpinProductBNorm)
{
    const auto phi = interaction_from_potential(fx::spin_product());
    EXPECT_EQ(phi.terms()[0].support.size(), 3u);
    EXPECT_DOUBLE_EQ(b_norm(phi).value, 3.0);
}

TEST(MeanEnergy, AllPlusIsing)
{
    const auto phi = fx::ising_chain(1.0);
    const auto mu = constant_measure(phi.group(), 1);
    for (const auto& scheme : {WeightScheme::uniform(), WeightScheme::dictator()}) {
        const auto e = mean_energy(phi, mu, scheme);
        EXPECT_DOUBLE_EQ(e.weighted, 1.0);
        EXPECT_DOUBLE_EQ(e.closed_form, 1.0);
    }
}

TEST(MeanEnergy, TorusAgreementAcrossSchemes)
{
    const std::vector<std::pair<Interaction, SFT>> cases{
        {fx::ising_chain(0.5), fx::full_shift(fx::integers(), fx::spins())},
        {fx::golden_site_bond(), fx::golden_mean()},
        {fx::plaquette(0.7, 0.3), fx::full_shift(fx::square_lattice(), fx::spins())},
    };
    for (const auto& [phi, sft] : cases) {
        const auto mu = torus_gibbs(phi, sft, phi.group().dimension() == 1 ? 8 : 3);
        double total = 0.0;
        for (double p : mu.probabilities) total += p;
        EXPECT_NEAR(total, 1.0, 1e-12);
        const auto u = mean_energy(phi, mu, WeightScheme::uniform());
        EXPECT_NEAR(u.weighted, u.closed_form, 1e-10);
        for (auto rule : {DictatorRule::ShortlexMin, DictatorRule::LexMin, DictatorRule::LexMiddle}) {
            EXPECT_NEAR(mean_energy(phi, mu, WeightScheme::dictator(rule)).weighted, u.weighted, 1e-10);
        }
    }
}

TEST(MeanEnergy, GoldenTorusHasNoForbiddenWord)
{
    const auto mu = torus_gibbs(fx::golden_site_bond(), fx::golden_mean(), 6);
    for (std::size_t a = 0; a < mu.atoms.size(); ++a) {
        for (std::int64_t i = 0; i < 6; ++i) {
            EXPECT_FALSE(mu.symbol_at(a, Element{i}) == 1 && mu.symbol_at(a, Element{i + 1}) == 1);
        }
    }
    // Lucas number L_6 = 18 periodic golden-mean words
    EXPECT_EQ(mu.atoms.size(), 18u);
}

TEST(Counterexample, Numbers)
{
    const auto ce = counterexample_interaction(10000);
    EXPECT_NEAR(ce.b_norm_partial.value, std::numbers::pi * std::numbers::pi / 3.0, 1e-3);
    EXPECT_NEAR(ce.v1, std::numbers::pi * std::numbers::pi / 6.0, 1e-6);
    ASSERT_TRUE(ce.shell.divergence.has_value());
    EXPECT_LE(ce.shell.divergence->witness_k, 200u);
    EXPECT_GT(ce.shell.divergence->witness_sum, 10.0);
    EXPECT_EQ(ce.truncated.terms().size(), 10000u);
}

TEST(Counterexample, LexMinImageMatchesPieces)
{
    const auto ce = counterexample_interaction(6);
    const auto a = translate_weight(ce.truncated, WeightScheme::dictator(DictatorRule::LexMin));
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        Pattern x;
        for (const auto& e : fx::interval(-8, 8)) x.set(e, static_cast<Symbol>(rng() % 2));
        double pieces = 0.0;
        for (const auto& p : ce.image.pieces) pieces += p.value(x);
        // oracle: -x_0 sum_j x_j / j^2
        double oracle = 0.0;
        for (int j = 1; j <= 6; ++j) oracle -= x.at(Element{0}) * x.at(Element{j}) / static_cast<double>(j * j);
        EXPECT_NEAR(a.value(x), oracle, 1e-15);
        EXPECT_NEAR(pieces, oracle, 1e-15);
    }
    // v_1 of the truncated image is the head of the tail sum
    const auto v = variation(a, fx::full_shift(fx::integers(), fx::bits()), 1).value;
    double head = 0.0;
    for (int j = 1; j <= 6; ++j) head += 1.0 / (j * j);
    EXPECT_NEAR(v, head, 1e-12);
}
