#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gibbs/interaction.hpp"
#include "gibbs/potential.hpp"
#include "gibbs/subshift.hpp"

namespace gibbs {

/// A cocycle phi on the Gibbs relation, induced by an interaction
/// (phi = H_Delta(x) - H_Delta(y)) or by a local potential
/// (phi = sum_g f(g.y) - f(g.x)).
class CocycleSource {
public:
    explicit CocycleSource(Interaction phi, std::optional<std::int64_t> tail_radius = std::nullopt);
    explicit CocycleSource(LocalPotential f);

    const Group& group() const;
    const Alphabet& alphabet() const;
    bool is_interaction() const { return std::holds_alternative<Interaction>(source_); }
    const Interaction* interaction() const { return std::get_if<Interaction>(&source_); }
    const LocalPotential* potential() const { return std::get_if<LocalPotential>(&source_); }
    std::string kind() const { return is_interaction() ? "interaction" : "potential"; }

    /// Distance beyond a region that phi reads.
    std::int64_t reach() const;

    CocycleValue operator()(const Pattern& x, const Pattern& y, std::span<const Element> delta) const;

private:
    std::variant<Interaction, LocalPotential> source_;
    std::optional<std::int64_t> tail_radius_;
};

/// Conditional distribution on the fillings of a region given a boundary.
struct SpecificationKernel {
    std::vector<Element> region; // shortlex
    Pattern boundary;
    std::vector<Pattern> fillings; // lexicographic
    std::vector<double> probabilities;
    std::vector<double> log_weights; // relative to the reference filling
    std::size_t reference = 0;
    std::string semantics;
    double truncation_error = 0.0;

    double probability(const Pattern& filling) const;
};

/// P(eta) = exp(phi(eta_0 x, eta x)) / sum_zeta exp(phi(eta_0 x, zeta x)),
/// computed from the reference filling eta_0 = fillings[reference] and
/// normalised after subtracting the largest log-weight. Throws DomainError
/// when no admissible filling exists.
SpecificationKernel dlr_kernel(const CocycleSource& src, const SFT& x, std::span<const Element> region,
                               const Pattern& boundary, Admissibility semantics = Admissibility::Exact1D,
                               std::size_t reference = 0);

/// The defining form P(eta) = [sum_zeta exp(phi(eta x, zeta x))]^{-1},
/// with no reference filling. Quadratic in the number of fillings.
SpecificationKernel dlr_kernel_direct(const CocycleSource& src, const SFT& x, std::span<const Element> region,
                                      const Pattern& boundary, Admissibility semantics = Admissibility::Exact1D);

/// Boltzmann weights exp(-H_Lambda) / Z_Lambda of an interaction.
SpecificationKernel boltzmann_kernel(const Interaction& phi, const SFT& x, std::span<const Element> region,
                                     const Pattern& boundary, Admissibility semantics = Admissibility::Exact1D);

struct PartitionFunction {
    double value = 0.0;
    double log_value = 0.0;
    std::size_t fillings = 0;
};

/// Z_Lambda = sum over admissible fillings of exp(-H_Lambda(eta x)).
PartitionFunction partition_function(const Interaction& phi, const SFT& x, std::span<const Element> region,
                                     const Pattern& boundary, Admissibility semantics = Admissibility::Exact1D);

/// Exact finite-volume measure on a window with fixed boundary.
struct FiniteVolumeGibbs {
    SpecificationKernel table;

    const std::vector<Element>& region() const { return table.region; }
    std::size_t size() const { return table.fillings.size(); }
    /// Full window configuration (boundary plus filling i).
    Pattern configuration(std::size_t i) const { return table.boundary.overwritten(table.fillings[i]); }
    double probability(const Pattern& filling) const { return table.probability(filling); }

    /// mu(. | outside delta = given), as probabilities over the fillings of
    /// delta in lexicographic order; empty when the event has measure zero.
    std::vector<std::pair<Pattern, double>> conditional(std::span<const Element> delta, const Pattern& outside) const;
};

FiniteVolumeGibbs exact_gibbs(const CocycleSource& src, const SFT& x, std::span<const Element> region,
                              const Pattern& boundary, Admissibility semantics = Admissibility::Exact1D);

struct ConsistencyReport {
    double max_deviation = 0.0;
    std::size_t conditions_tested = 0;
    std::size_t skipped_null = 0;
};

/// For every exterior configuration of delta inside the window, compares
/// mu(. | exterior) with dlr_kernel(delta, exterior).
ConsistencyReport tower_check(const FiniteVolumeGibbs& mu, const CocycleSource& src, const SFT& x,
                              std::span<const Element> delta, Admissibility semantics = Admissibility::Exact1D);

/// Largest |1 - sum p| and largest discrepancy between kernels computed from
/// every admissible reference filling.
struct NormalisationReport {
    double max_sum_error = 0.0;
    double max_reference_spread = 0.0;
    double max_direct_gap = 0.0; // vs dlr_kernel_direct
};

NormalisationReport kernel_normalisation(const CocycleSource& src, const SFT& x, std::span<const Element> region,
                                         const Pattern& boundary, Admissibility semantics = Admissibility::Exact1D);

struct RNResult {
    std::vector<Element> sites;
    std::size_t pairs_tested = 0;
    std::size_t configurations = 0;
    double max_deviation = 0.0;
    double min_derivative = 0.0; // smallest exp(phi) seen on the support
    std::string semantics;
};

/// For every pair (omega, eta) of admissible patterns on `sites` and every
/// window configuration w: |mu(psi(w)) - exp(phi(w, psi(w))) mu(w)|.
/// Singletons generate all events, so this bounds every cylinder event up to
/// a factor of its size.
RNResult verify_conformal(const CocycleSource& src, const SFT& x, std::span<const Element> sites,
                          const FiniteVolumeGibbs& mu, Admissibility semantics = Admissibility::Exact1D);

struct DLRFromConformal {
    RNResult conformal;
    ConsistencyReport dlr;
};

/// Certifies conformality on `delta`, then compares mu's conditionals with
/// the kernel.
DLRFromConformal verify_dlr_from_conformal(const CocycleSource& src, const SFT& x, std::span<const Element> delta,
                                           const FiniteVolumeGibbs& mu,
                                           Admissibility semantics = Admissibility::Exact1D);

/// P(eta) proportional to exp(f_m(eta x)) with m large enough that
/// B_m contains support . region^{-1}; sites outside boundary and region are
/// filled with `fill`.
SpecificationKernel kimura_kernel(const LocalPotential& f, const SFT& x, std::span<const Element> region,
                                  const Pattern& boundary, Admissibility semantics = Admissibility::Exact1D,
                                  Symbol fill = 0);

/// The m used by kimura_kernel.
std::size_t kimura_radius(const LocalPotential& f, std::span<const Element> region);

double max_kernel_gap(const SpecificationKernel& a, const SpecificationKernel& b);

struct GlauberResult {
    std::uint64_t steps = 0;
    std::uint64_t seed = 0;
    std::vector<Pattern> states;        // exact_gibbs order
    std::vector<double> exact;          // exact probabilities
    std::vector<double> empirical;      // visit frequencies after burn-in
    double tv_distance = 0.0;
    std::vector<std::vector<Symbol>> trace; // every `record_every` steps, region order
    Pattern final_state;
};

/// Random-scan heat-bath chain: pick a site uniformly and resample it from
/// the single-site kernel. `record_every` = 0 disables the trace.
GlauberResult glauber_chain(const CocycleSource& src, const SFT& x, std::span<const Element> region,
                            const Pattern& boundary, std::uint64_t steps, std::uint64_t seed,
                            std::uint64_t burn_in = 0, std::uint64_t record_every = 0,
                            Admissibility semantics = Admissibility::Exact1D);

/// One-step transition probabilities P(i -> j) between the exact_gibbs
/// states of the chain above.
std::vector<std::vector<double>> glauber_transitions(const CocycleSource& src, const SFT& x,
                                                     const FiniteVolumeGibbs& mu,
                                                     Admissibility semantics = Admissibility::Exact1D);

} // namespace gibbs
