#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gibbs/group.hpp"
#include "gibbs/subshift.hpp"

namespace gibbs {

/// Analytic majorant a / (n + b)^p for the tail of a summable series,
/// supplied by the caller (the library never guesses decay rates).
struct TailBound {
    double coefficient = 0.0;
    double shift = 0.0;
    double power = 1.0;

    double operator()(double n) const;

    /// Accepts "a/n", "a/n^p", "a/(n+b)", "a/(n+b)^p".
    static TailBound parse(const std::string& text);
    std::string to_string() const;
};

/// Radial pair profile: Phi_{g,h}(x) = J(d(g,h)) * u(x_g, x_h) for every pair
/// at distance >= 1, with J(k) = coefficient / k^power and u a symmetric
/// |A| x |A| table. `bound(n)` must dominate sum_{k>n} |S_k| |J(k)|.
struct RadialPairTail {
    double coefficient = 0.0;
    double power = 2.0;
    std::vector<double> pair_table; // row-major |A| x |A|
    TailBound bound;

    double profile(std::int64_t k) const;
    double pair_value(Symbol a, Symbol b, std::size_t q) const;
    double max_pair() const;
};

/// Orbit representative of a translation-invariant interaction: a support
/// containing e and the energy table of Phi on it. Tables are indexed in
/// mixed radix with the first (shortlex-smallest) site most significant.
struct InteractionTerm {
    std::vector<Element> support;
    std::vector<double> table;

    double sup_norm() const;
};

std::size_t pattern_index(std::span<const Symbol> symbols, std::size_t q);
std::vector<Symbol> pattern_symbols(std::size_t index, std::size_t length, std::size_t q);

/// Translation-invariant interaction Phi = (Phi_Lambda), stored by orbit
/// representatives. Phi_{g Lambda}(g.x) = Phi_Lambda(x) holds by construction.
/// Representatives are normalised to the shortlex-least translate of their
/// orbit and terms of the same orbit are merged, so each orbit appears once.
class Interaction {
public:
    Interaction(Group group, Alphabet alphabet, std::vector<InteractionTerm> terms,
                std::optional<RadialPairTail> tail = std::nullopt);

    static Interaction zero(Group group, Alphabet alphabet);

    const Group& group() const { return group_; }
    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<InteractionTerm>& terms() const { return terms_; }
    const std::optional<RadialPairTail>& tail() const { return tail_; }
    bool is_finite_range() const { return !tail_ || tail_->coefficient == 0.0; }

    /// Largest word-metric diameter of a finite-part support.
    std::int64_t range() const { return range_; }

    /// Phi_{h.support}(x) for a representative term: reads x_{h s}, s in support.
    double term_value(const InteractionTerm& term, const Element& h, const Pattern& x) const;

    /// Finite-range interaction equal to this one on all pairs of the tail at
    /// distance <= radius.
    Interaction truncated(std::int64_t radius) const;

    Interaction scaled(double factor) const;
    Interaction plus(const Interaction& other) const;

private:
    Group group_;
    Alphabet alphabet_;
    std::vector<InteractionTerm> terms_;
    std::optional<RadialPairTail> tail_;
    std::int64_t range_ = 0;
};

/// The translates of `support` that contain e, as (u, u^{-1} support) for u
/// in support, in the order of the support.
std::vector<std::vector<Element>> translates_through_identity(const Group& group,
                                                              std::span<const Element> support);

struct HamiltonianValue {
    double value = 0.0;
    double truncation_error = 0.0; // 0 for finite-range interactions
    std::int64_t tail_radius = 0;  // pairs up to this distance were summed
};

/// H_Lambda(x) = sum over translates meeting Lambda of Phi_Delta(x). The tail
/// is summed up to `tail_radius` (default: the largest radius the
/// configuration covers) with the reported truncation error.
HamiltonianValue hamiltonian(const Interaction& phi, std::span<const Element> region, const Pattern& x,
                             std::optional<std::int64_t> tail_radius = std::nullopt);

HamiltonianValue hamiltonian(const Interaction& phi, std::span<const Element> region, const WindowConfig& w,
                             std::optional<std::int64_t> tail_radius = std::nullopt);

struct BNorm {
    double value = 0.0;
    double tail_bound = 0.0; // analytic bound on the part not summed
    std::size_t tail_terms = 0;
};

/// ||Phi||_B = sum over supports containing e of sup |Phi_Lambda|.
BNorm b_norm(const Interaction& phi, std::size_t tail_terms = 10000);

struct FullDimensionalReport {
    bool holds = false;
    double constant = 0.0; // smallest C witnessed over the finite part
    std::vector<double> ratios; // per representative: |B_{n*}| / |Lambda|
    std::string warning;
};

/// For every support Lambda containing e with Phi_Lambda != 0:
///   sup { |B_n| : Lambda meets the complement of B_{n-1} } <= C |Lambda|.
/// A nonzero tail makes the condition fail; its constant at `tail_radius`
/// is still reported.
FullDimensionalReport is_full_dimensional(const Interaction& phi, std::int64_t tail_radius = 0);

struct CocycleValue {
    double value = 0.0;
    double error = 0.0;
};

/// phi_Phi(x, y) = H_Delta(x) - H_Delta(y) for configurations that agree
/// off Delta. Throws UsageError when they do not.
CocycleValue cocycle_interaction(const Interaction& phi, const Pattern& x, const Pattern& y,
                                 std::span<const Element> delta,
                                 std::optional<std::int64_t> tail_radius = std::nullopt);

CocycleValue cocycle_interaction(const Interaction& phi, const WindowConfig& wx, const WindowConfig& wy,
                                 std::span<const Element> delta,
                                 std::optional<std::int64_t> tail_radius = std::nullopt);

/// Throws UsageError unless x and y have the same support and agree off delta.
void check_agree_outside(const Group& group, const Pattern& x, const Pattern& y, std::span<const Element> delta);

} // namespace gibbs
