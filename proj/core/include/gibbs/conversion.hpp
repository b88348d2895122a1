#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gibbs/interaction.hpp"
#include "gibbs/potential.hpp"
#include "gibbs/subshift.hpp"

namespace gibbs {

/// Exact fraction, used to check weight normalisation without rounding.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational make(std::int64_t n, std::int64_t d);
    Rational operator+(const Rational& o) const;
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Rational&, const Rational&) = default;
};

/// How a dictator map picks the designated translate of an orbit among the
/// translates containing e:
///   shortlex-min: the translate whose shortlex-sorted element list is
///                 lexicographically smallest
///   lex-min:      e is the coordinate-lexicographic minimum (lattices)
///   lex-middle:   e is the floor((|L|+1)/2)-th element in coordinate
///                 lexicographic order (lattices)
enum class DictatorRule { ShortlexMin, LexMin, LexMiddle };

std::string to_string(DictatorRule r);

struct WeightScheme {
    enum class Kind { Uniform, Dictator, Explicit };
    Kind kind = Kind::Uniform;
    DictatorRule rule = DictatorRule::ShortlexMin;
    /// Explicit weights keyed by canonical representative support; entry u
    /// is the weight of u^{-1} Lambda for the u-th element of the support.
    std::map<std::vector<Element>, std::vector<double>> table;

    static WeightScheme uniform() { return {}; }
    static WeightScheme dictator(DictatorRule rule = DictatorRule::ShortlexMin);
    /// "uniform", "dictator", "dictator:shortlex-min", "dictator:lex-min",
    /// "dictator:lex-middle".
    static WeightScheme parse(const std::string& text);
    std::string to_string() const;
};

/// Weights a_{u^{-1} Lambda}, u over the support of a canonical
/// representative. Exact for uniform and dictator schemes.
std::vector<Rational> exact_weights(const Group& group, const WeightScheme& s, std::span<const Element> rep);
std::vector<double> weights(const Group& group, const WeightScheme& s, std::span<const Element> rep);

/// Throws ValidationError naming the orbit when the weights of some
/// representative are negative or do not sum to 1.
void check_normalised(const Interaction& phi, const WeightScheme& s);

/// A_Phi(x) = - sum_{Lambda contains e} a_Lambda Phi_Lambda(x).
LocalPotential translate_weight(const Interaction& phi, const WeightScheme& s);

struct SameCocycleReport {
    std::size_t pairs = 0;
    double max_vs_interaction = 0.0; // |phi_{A_Phi via s1} - phi_Phi|
    double max_between_schemes = 0.0; // |phi_{A via s1} - phi_{A via s2}|
    double max_discrepancy() const { return std::max(max_vs_interaction, max_between_schemes); }
};

/// Random asymptotic pairs (x, y) on random windows, differing on a random
/// subset of a small ball. Seeded and deterministic.
SameCocycleReport check_same_cocycle(const Interaction& phi, const SFT& x, const WeightScheme& s1,
                                     const WeightScheme& s2, std::size_t trials, std::uint64_t seed);

/// Shift-invariant probability measure with finitely many atoms, each a
/// configuration periodic under (L Z)^d (period 1 means constant, which is
/// invariant for every group).
struct PeriodicMeasure {
    Group group;
    std::size_t period = 1;
    std::vector<std::vector<Symbol>> atoms; // torus cells in lexicographic order of coordinates
    std::vector<double> probabilities;

    Symbol symbol_at(std::size_t atom, const Element& g) const;
    /// Expectation of a function of the configuration restricted to `sites`.
    template <class F>
    double expect(std::span<const Element> sites, F&& f) const;
};

/// Point mass at the constant configuration.
PeriodicMeasure constant_measure(const Group& group, Symbol s);

/// Gibbs measure of Phi on the discrete torus (Z/LZ)^d, restricted to
/// torus configurations with no forbidden pattern (checked periodically).
PeriodicMeasure torus_gibbs(const Interaction& phi, const SFT& x, std::size_t period);

struct MeanEnergy {
    double weighted = 0.0;    // integral of A_Phi
    double closed_form = 0.0; // - sum_{Lambda contains e} (1/|Lambda|) integral of Phi_Lambda
};

MeanEnergy mean_energy(const Interaction& phi, const PeriodicMeasure& mu, const WeightScheme& s);

/// Interaction with the single representative B_r and table -f.
Interaction interaction_from_potential(const LocalPotential& f);

/// The inverse-square pair interaction on {0,1}^Z.
struct Counterexample {
    std::int64_t radius = 0;
    Interaction truncated;    // pairs {0, j}, 1 <= j <= radius
    Interaction full;         // the same as a radial tail with bound 2/(n+1/2)
    BNorm b_norm_partial;     // of the full interaction summed to `radius`
    SeriesPotential image;    // dictator image (weight on Lambda iff 0 = min Lambda)
    NormReport shell;         // with divergence certificate
    double v1 = 0.0;
};

Counterexample counterexample_interaction(std::int64_t radius, double threshold = 10.0);

// ---------------------------------------------------------------------------

template <class F>
double PeriodicMeasure::expect(std::span<const Element> sites, F&& f) const
{
    double sum = 0.0;
    for (std::size_t a = 0; a < atoms.size(); ++a) {
        Pattern p;
        for (const auto& g : sites) {
            p.set(g, symbol_at(a, g));
        }
        sum += probabilities[a] * f(p);
    }
    return sum;
}

} // namespace gibbs
