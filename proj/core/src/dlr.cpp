#include "gibbs/dlr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <unordered_map>

#include "gibbs/errors.hpp"

namespace gibbs {

// ---------------------------------------------------------------------------
// Sources

CocycleSource::CocycleSource(Interaction phi, std::optional<std::int64_t> tail_radius)
    : source_(std::move(phi)), tail_radius_(tail_radius)
{
}

CocycleSource::CocycleSource(LocalPotential f) : source_(std::move(f)) {}

const Group& CocycleSource::group() const
{
    return is_interaction() ? interaction()->group() : potential()->group();
}

const Alphabet& CocycleSource::alphabet() const
{
    return is_interaction() ? interaction()->alphabet() : potential()->alphabet();
}

std::int64_t CocycleSource::reach() const
{
    if (const auto* phi = interaction()) {
        std::int64_t r = phi->range();
        if (!phi->is_finite_range()) {
            r = std::max(r, tail_radius_.value_or(0));
        }
        return r;
    }
    return 2 * (potential()->radius() - 1);
}

CocycleValue CocycleSource::operator()(const Pattern& x, const Pattern& y, std::span<const Element> delta) const
{
    if (const auto* phi = interaction()) {
        return cocycle_interaction(*phi, x, y, delta, tail_radius_);
    }
    return cocycle_potential(*potential(), x, y, delta);
}

// ---------------------------------------------------------------------------
// Kernels

double SpecificationKernel::probability(const Pattern& filling) const
{
    const auto it = std::lower_bound(fillings.begin(), fillings.end(), filling);
    if (it != fillings.end() && *it == filling) {
        return probabilities[static_cast<std::size_t>(it - fillings.begin())];
    }
    return 0.0;
}

namespace {

void check_source(const CocycleSource& src, const SFT& x)
{
    if (!(src.group() == x.group()) || !(src.alphabet() == x.alphabet())) {
        throw UsageError("cocycle source and subshift use different groups or alphabets");
    }
}

std::string semantics_label(const SFT& x, Admissibility semantics)
{
    return x.is_full_shift() ? "full-shift" : to_string(x.effective(semantics));
}

// Fillings sorted by Pattern order (which is the lexicographic order used by
// enumerate_fillings) so probability() can binary search.
SpecificationKernel kernel_frame(const SFT& x, std::span<const Element> region, const Pattern& boundary,
                                 Admissibility semantics)
{
    SpecificationKernel k;
    k.region.assign(region.begin(), region.end());
    sort_shortlex(x.group(), k.region);
    k.boundary = boundary;
    k.fillings = enumerate_fillings(x, k.region, boundary, semantics);
    if (k.fillings.empty()) {
        throw DomainError("no admissible filling: the boundary does not extend to the region");
    }
    std::sort(k.fillings.begin(), k.fillings.end());
    k.semantics = semantics_label(x, semantics);
    return k;
}

void normalise(SpecificationKernel& k)
{
    const double top = *std::max_element(k.log_weights.begin(), k.log_weights.end());
    k.probabilities.resize(k.log_weights.size());
    double z = 0.0;
    for (std::size_t i = 0; i < k.log_weights.size(); ++i) {
        k.probabilities[i] = std::exp(k.log_weights[i] - top);
        z += k.probabilities[i];
    }
    for (auto& p : k.probabilities) {
        p /= z;
    }
}

} // namespace

SpecificationKernel dlr_kernel(const CocycleSource& src, const SFT& x, std::span<const Element> region,
                               const Pattern& boundary, Admissibility semantics, std::size_t reference)
{
    check_source(src, x);
    auto k = kernel_frame(x, region, boundary, semantics);
    if (reference >= k.fillings.size()) {
        throw UsageError("reference filling index out of range");
    }
    k.reference = reference;
    const Pattern base = boundary.overwritten(k.fillings[reference]);
    for (const auto& eta : k.fillings) {
        const auto v = src(base, boundary.overwritten(eta), k.region);
        k.log_weights.push_back(v.value);
        k.truncation_error = std::max(k.truncation_error, v.error);
    }
    normalise(k);
    return k;
}

SpecificationKernel dlr_kernel_direct(const CocycleSource& src, const SFT& x, std::span<const Element> region,
                                      const Pattern& boundary, Admissibility semantics)
{
    check_source(src, x);
    auto k = kernel_frame(x, region, boundary, semantics);
    const std::size_t n = k.fillings.size();
    std::vector<Pattern> configs;
    for (const auto& eta : k.fillings) {
        configs.push_back(boundary.overwritten(eta));
    }
    k.probabilities.assign(n, 0.0);
    k.log_weights.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> exps;
        for (std::size_t j = 0; j < n; ++j) {
            const auto v = src(configs[i], configs[j], k.region);
            exps.push_back(v.value);
            k.truncation_error = std::max(k.truncation_error, v.error);
        }
        const double top = *std::max_element(exps.begin(), exps.end());
        double s = 0.0;
        for (double e : exps) {
            s += std::exp(e - top);
        }
        k.log_weights[i] = -(top + std::log(s));
        k.probabilities[i] = std::exp(k.log_weights[i]);
    }
    return k;
}

SpecificationKernel boltzmann_kernel(const Interaction& phi, const SFT& x, std::span<const Element> region,
                                     const Pattern& boundary, Admissibility semantics)
{
    if (!(phi.group() == x.group()) || !(phi.alphabet() == x.alphabet())) {
        throw UsageError("interaction and subshift use different groups or alphabets");
    }
    auto k = kernel_frame(x, region, boundary, semantics);
    for (const auto& eta : k.fillings) {
        const auto h = hamiltonian(phi, k.region, boundary.overwritten(eta));
        k.log_weights.push_back(-h.value);
        k.truncation_error = std::max(k.truncation_error, h.truncation_error);
    }
    normalise(k);
    return k;
}

PartitionFunction partition_function(const Interaction& phi, const SFT& x, std::span<const Element> region,
                                     const Pattern& boundary, Admissibility semantics)
{
    const auto k = boltzmann_kernel(phi, x, region, boundary, semantics);
    const double top = *std::max_element(k.log_weights.begin(), k.log_weights.end());
    double s = 0.0;
    for (double w : k.log_weights) {
        s += std::exp(w - top);
    }
    PartitionFunction z;
    z.log_value = top + std::log(s);
    z.value = std::exp(z.log_value);
    z.fillings = k.fillings.size();
    return z;
}

// ---------------------------------------------------------------------------
// Finite-volume measures

std::vector<std::pair<Pattern, double>> FiniteVolumeGibbs::conditional(std::span<const Element> delta,
                                                                        const Pattern& outside) const
{
    std::vector<std::pair<Pattern, double>> out;
    double mass = 0.0;
    for (std::size_t i = 0; i < table.fillings.size(); ++i) {
        if (table.fillings[i].agrees_with(outside)) {
            out.emplace_back(table.fillings[i].restricted(delta), table.probabilities[i]);
            mass += table.probabilities[i];
        }
    }
    if (mass <= 0.0) {
        return {};
    }
    for (auto& [p, v] : out) {
        v /= mass;
    }
    std::sort(out.begin(), out.end());
    return out;
}

FiniteVolumeGibbs exact_gibbs(const CocycleSource& src, const SFT& x, std::span<const Element> region,
                              const Pattern& boundary, Admissibility semantics)
{
    return FiniteVolumeGibbs{dlr_kernel(src, x, region, boundary, semantics)};
}

namespace {

std::vector<Element> complement_in(const Group& group, std::span<const Element> region, std::span<const Element> delta)
{
    std::set<Element> d(delta.begin(), delta.end());
    std::vector<Element> out;
    for (const auto& g : region) {
        if (!d.count(g)) {
            out.push_back(g);
        }
    }
    sort_shortlex(group, out);
    return out;
}

void check_subset(const Group& group, std::span<const Element> region, std::span<const Element> delta)
{
    std::set<Element> r(region.begin(), region.end());
    for (const auto& g : delta) {
        if (!r.count(g)) {
            throw UsageError("sub-window site " + group.format(g) + " lies outside the window");
        }
    }
}

} // namespace

ConsistencyReport tower_check(const FiniteVolumeGibbs& mu, const CocycleSource& src, const SFT& x,
                              std::span<const Element> delta, Admissibility semantics)
{
    const auto& group = x.group();
    check_subset(group, mu.region(), delta);
    const auto rest = complement_in(group, mu.region(), delta);
    std::set<Pattern> exteriors;
    for (const auto& f : mu.table.fillings) {
        exteriors.insert(f.restricted(rest));
    }
    ConsistencyReport report;
    for (const auto& ext : exteriors) {
        const auto cond = mu.conditional(delta, ext);
        if (cond.empty()) {
            ++report.skipped_null;
            continue;
        }
        const auto k = dlr_kernel(src, x, delta, mu.table.boundary.overwritten(ext), semantics);
        std::map<Pattern, double> from_mu(cond.begin(), cond.end());
        for (std::size_t i = 0; i < k.fillings.size(); ++i) {
            const auto it = from_mu.find(k.fillings[i]);
            const double p = it == from_mu.end() ? 0.0 : it->second;
            report.max_deviation = std::max(report.max_deviation, std::abs(p - k.probabilities[i]));
            if (it != from_mu.end()) {
                from_mu.erase(it);
            }
        }
        for (const auto& [pat, p] : from_mu) {
            report.max_deviation = std::max(report.max_deviation, p);
        }
        ++report.conditions_tested;
    }
    return report;
}

NormalisationReport kernel_normalisation(const CocycleSource& src, const SFT& x, std::span<const Element> region,
                                         const Pattern& boundary, Admissibility semantics)
{
    NormalisationReport report;
    const auto base = dlr_kernel(src, x, region, boundary, semantics, 0);
    const std::size_t n = base.fillings.size();
    const std::size_t refs = std::min<std::size_t>(n, 64);
    for (std::size_t r = 0; r < refs; ++r) {
        const std::size_t ref = refs == n ? r : r * n / refs;
        const auto k = dlr_kernel(src, x, region, boundary, semantics, ref);
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            s += k.probabilities[i];
            report.max_reference_spread =
                std::max(report.max_reference_spread, std::abs(k.probabilities[i] - base.probabilities[i]));
        }
        report.max_sum_error = std::max(report.max_sum_error, std::abs(1.0 - s));
    }
    if (n <= 128) {
        const auto d = dlr_kernel_direct(src, x, region, boundary, semantics);
        report.max_direct_gap = max_kernel_gap(base, d);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Conformality

RNResult verify_conformal(const CocycleSource& src, const SFT& x, std::span<const Element> sites_in,
                          const FiniteVolumeGibbs& mu, Admissibility semantics)
{
    const auto& group = x.group();
    check_source(src, x);
    check_subset(group, mu.region(), sites_in);
    double total = 0.0;
    for (double p : mu.table.probabilities) {
        if (p < 0.0) {
            throw ValidationError("measure has a negative probability");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw ValidationError("measure probabilities sum to " + std::to_string(total));
    }

    RNResult result;
    result.sites.assign(sites_in.begin(), sites_in.end());
    sort_shortlex(group, result.sites);
    result.semantics = semantics_label(x, semantics);
    result.configurations = mu.size();
    result.min_derivative = std::numeric_limits<double>::infinity();

    const auto patterns = admissible_patterns(x, result.sites, Admissibility::Local);
    std::vector<WindowConfig> windows;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        windows.push_back(WindowConfig{mu.region(), mu.configuration(i)});
    }
    for (const auto& omega : patterns) {
        for (const auto& eta : patterns) {
            ++result.pairs_tested;
            for (std::size_t i = 0; i < windows.size(); ++i) {
                const auto swapped = holonomy_swap(x, omega, eta, windows[i], semantics);
                const double target = mu.probability(swapped.values.restricted(mu.region()));
                const auto phi = src(windows[i].values, swapped.values, result.sites);
                const double rn = std::exp(phi.value);
                result.min_derivative = std::min(result.min_derivative, rn);
                result.max_deviation =
                    std::max(result.max_deviation, std::abs(target - rn * mu.table.probabilities[i]));
            }
        }
    }
    return result;
}

DLRFromConformal verify_dlr_from_conformal(const CocycleSource& src, const SFT& x, std::span<const Element> delta,
                                           const FiniteVolumeGibbs& mu, Admissibility semantics)
{
    DLRFromConformal out;
    out.conformal = verify_conformal(src, x, delta, mu, semantics);
    out.dlr = tower_check(mu, src, x, delta, semantics);
    return out;
}

// ---------------------------------------------------------------------------
// Kimura form

std::size_t kimura_radius(const LocalPotential& f, std::span<const Element> region)
{
    const auto& group = f.group();
    std::int64_t m = 0;
    for (const auto& s : f.support()) {
        for (const auto& lambda : region) {
            m = std::max(m, group.word_length(group.multiply(s, group.inverse(lambda))));
        }
    }
    return static_cast<std::size_t>(m + 1);
}

SpecificationKernel kimura_kernel(const LocalPotential& f, const SFT& x, std::span<const Element> region,
                                  const Pattern& boundary, Admissibility semantics, Symbol fill)
{
    if (!(f.group() == x.group()) || !(f.alphabet() == x.alphabet())) {
        throw UsageError("potential and subshift use different groups or alphabets");
    }
    const auto& group = f.group();
    auto k = kernel_frame(x, region, boundary, semantics);
    const std::size_t m = kimura_radius(f, k.region);

    // every term that sees the region must read only boundary and region
    const std::set<Element> inside(k.region.begin(), k.region.end());
    for (const auto& s : f.support()) {
        for (const auto& lambda : k.region) {
            const Element ginv = group.multiply(lambda, group.inverse(s));
            for (const auto& t : f.support()) {
                const Element site = group.multiply(ginv, t);
                if (!inside.count(site) && !boundary.contains(site)) {
                    throw DomainError("boundary collar too thin for the potential: missing " + group.format(site));
                }
            }
        }
    }

    Pattern padded;
    for (const auto& g : ball_elements(group, m)) {
        const Element ginv = group.inverse(g);
        for (const auto& t : f.support()) {
            padded.set(group.multiply(ginv, t), fill);
        }
    }
    for (const auto& g : k.region) {
        padded.erase(g);
    }
    padded = padded.overwritten(boundary);
    for (const auto& eta : k.fillings) {
        k.log_weights.push_back(partial_sum_f_m(f, m, padded.overwritten(eta)));
    }
    normalise(k);
    k.semantics += ";m=" + std::to_string(m);
    return k;
}

double max_kernel_gap(const SpecificationKernel& a, const SpecificationKernel& b)
{
    double gap = 0.0;
    for (std::size_t i = 0; i < a.fillings.size(); ++i) {
        gap = std::max(gap, std::abs(a.probabilities[i] - b.probability(a.fillings[i])));
    }
    for (std::size_t i = 0; i < b.fillings.size(); ++i) {
        gap = std::max(gap, std::abs(b.probabilities[i] - a.probability(b.fillings[i])));
    }
    return gap;
}

// ---------------------------------------------------------------------------
// Glauber dynamics

namespace {

// Slot >= 0: free site index; slot < 0: fixed symbol -slot - 1.
struct EnergyInstance {
    const std::vector<double>* table;
    std::vector<int> slots;
    double sign;
};

struct ForbiddenInstance {
    std::vector<int> slots;
    std::vector<Symbol> symbols;
};

class CompiledWindow {
public:
    CompiledWindow(const CocycleSource& src, const SFT& x, std::span<const Element> region, const Pattern& boundary,
                   Admissibility semantics)
        : x_(x), boundary_(boundary), q_(src.alphabet().size())
    {
        const auto& group = src.group();
        region_.assign(region.begin(), region.end());
        sort_shortlex(group, region_);
        exact_ = !x.is_full_shift() && x.effective(semantics) == Admissibility::Exact1D;
        std::map<Element, int> index;
        for (std::size_t i = 0; i < region_.size(); ++i) {
            index.emplace(region_[i], static_cast<int>(i));
        }
        auto slot_of = [&](const Element& g) -> std::optional<int> {
            if (auto it = index.find(g); it != index.end()) {
                return it->second;
            }
            if (auto s = boundary.find(g)) {
                return -*s - 1;
            }
            return std::nullopt;
        };

        energy_.resize(region_.size());
        forbidden_.resize(region_.size());
        for (std::size_t i = 0; i < region_.size(); ++i) {
            const Element& site = region_[i];
            if (const auto* phi = src.interaction()) {
                if (!phi->is_finite_range()) {
                    throw UsageError("the Glauber sampler needs a finite-range interaction; truncate the tail");
                }
                for (const auto& term : phi->terms()) {
                    std::set<Element> anchors;
                    for (const auto& s : term.support) {
                        anchors.insert(group.multiply(site, group.inverse(s)));
                    }
                    for (const auto& h : anchors) {
                        EnergyInstance inst{&term.table, {}, 1.0};
                        for (const auto& s : term.support) {
                            const auto slot = slot_of(group.multiply(h, s));
                            if (!slot) {
                                throw DomainError("window does not cover " + group.format(group.multiply(h, s)));
                            }
                            inst.slots.push_back(*slot);
                        }
                        energy_[i].push_back(std::move(inst));
                    }
                }
            } else {
                const auto& f = *src.potential();
                std::set<Element> shifts;
                for (const auto& s : f.support()) {
                    shifts.insert(group.multiply(s, group.inverse(site)));
                }
                for (const auto& g : shifts) {
                    const Element ginv = group.inverse(g);
                    EnergyInstance inst{&f.table(), {}, -1.0};
                    for (const auto& t : f.support()) {
                        const auto slot = slot_of(group.multiply(ginv, t));
                        if (!slot) {
                            throw DomainError("window does not cover " + group.format(group.multiply(ginv, t)));
                        }
                        inst.slots.push_back(*slot);
                    }
                    energy_[i].push_back(std::move(inst));
                }
            }
            for (const auto& fb : x.forbidden()) {
                std::set<Element> anchors;
                for (const auto& [s, sym] : fb.cells()) {
                    anchors.insert(group.multiply(site, group.inverse(s)));
                }
                for (const auto& h : anchors) {
                    ForbiddenInstance inst;
                    bool covered = true;
                    for (const auto& [s, sym] : fb.cells()) {
                        const auto slot = slot_of(group.multiply(h, s));
                        if (!slot) {
                            covered = false;
                            break;
                        }
                        inst.slots.push_back(*slot);
                        inst.symbols.push_back(sym);
                    }
                    if (covered) {
                        forbidden_[i].push_back(std::move(inst));
                    }
                }
            }
        }
    }

    std::size_t size() const { return region_.size(); }
    const std::vector<Element>& region() const { return region_; }

    // Heat-bath distribution of site i given the other sites of `state`.
    void site_distribution(std::size_t i, std::vector<Symbol>& state, std::vector<double>& probs) const
    {
        const Symbol saved = state[i];
        probs.assign(q_, 0.0);
        std::vector<double> energy(q_, 0.0);
        std::vector<char> allowed(q_, 1);
        double lowest = std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < q_; ++a) {
            state[i] = static_cast<Symbol>(a);
            for (const auto& f : forbidden_[i]) {
                bool match = true;
                for (std::size_t j = 0; j < f.slots.size() && match; ++j) {
                    match = read(state, f.slots[j]) == f.symbols[j];
                }
                if (match) {
                    allowed[a] = 0;
                    break;
                }
            }
            if (allowed[a] && exact_) {
                allowed[a] = x_.follower_graph()->is_extensible(boundary_.overwritten(Pattern(region_, state))) ? 1 : 0;
            }
            if (!allowed[a]) {
                continue;
            }
            double e = 0.0;
            for (const auto& inst : energy_[i]) {
                std::size_t idx = 0;
                for (const int slot : inst.slots) {
                    idx = idx * q_ + static_cast<std::size_t>(read(state, slot));
                }
                e += inst.sign * (*inst.table)[idx];
            }
            energy[a] = e;
            lowest = std::min(lowest, e);
        }
        state[i] = saved;
        double z = 0.0;
        for (std::size_t a = 0; a < q_; ++a) {
            if (allowed[a]) {
                probs[a] = std::exp(-(energy[a] - lowest));
                z += probs[a];
            }
        }
        if (z <= 0.0) {
            throw DomainError("Glauber step found no admissible symbol");
        }
        for (auto& p : probs) {
            p /= z;
        }
    }

private:
    static Symbol read(const std::vector<Symbol>& state, int slot)
    {
        return slot >= 0 ? state[static_cast<std::size_t>(slot)] : -slot - 1;
    }

    const SFT& x_;
    Pattern boundary_;
    std::size_t q_;
    bool exact_ = false;
    std::vector<Element> region_;
    std::vector<std::vector<EnergyInstance>> energy_;
    std::vector<std::vector<ForbiddenInstance>> forbidden_;
};

std::vector<Symbol> row_of(const Pattern& p, std::span<const Element> region)
{
    std::vector<Symbol> row;
    row.reserve(region.size());
    for (const auto& g : region) {
        row.push_back(p.at(g));
    }
    return row;
}

} // namespace

GlauberResult glauber_chain(const CocycleSource& src, const SFT& x, std::span<const Element> region,
                            const Pattern& boundary, std::uint64_t steps, std::uint64_t seed, std::uint64_t burn_in,
                            std::uint64_t record_every, Admissibility semantics)
{
    check_source(src, x);
    const CompiledWindow model(src, x, region, boundary, semantics);
    const auto& sites = model.region();
    const std::size_t q = src.alphabet().size();

    GlauberResult result;
    result.steps = steps;
    result.seed = seed;
    const auto mu = exact_gibbs(src, x, sites, boundary, semantics);
    result.states = mu.table.fillings;
    result.exact = mu.table.probabilities;

    std::mt19937_64 rng(seed);
    std::vector<Symbol> state = row_of(mu.table.fillings.front(), sites);
    std::unordered_map<std::uint64_t, std::uint64_t> counts;
    auto code_of = [&](const std::vector<Symbol>& s) {
        std::uint64_t c = 0;
        for (const auto v : s) {
            c = c * q + static_cast<std::uint64_t>(v);
        }
        return c;
    };
    std::uniform_int_distribution<std::size_t> pick(0, sites.size() - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> probs;
    std::uint64_t recorded = 0;
    for (std::uint64_t t = 0; t < burn_in + steps; ++t) {
        if (!sites.empty()) {
            const std::size_t i = pick(rng);
            model.site_distribution(i, state, probs);
            double u = unit(rng);
            std::size_t a = 0;
            while (a + 1 < q && (u -= probs[a]) >= 0.0) {
                ++a;
            }
            while (probs[a] == 0.0 && a > 0) {
                --a;
            }
            state[i] = static_cast<Symbol>(a);
        }
        if (t >= burn_in) {
            ++counts[code_of(state)];
            ++recorded;
            if (record_every != 0 && (t - burn_in) % record_every == 0) {
                result.trace.push_back(state);
            }
        }
    }

    result.empirical.assign(result.states.size(), 0.0);
    double mass_elsewhere = 0.0;
    std::set<std::uint64_t> known;
    for (std::size_t s = 0; s < result.states.size(); ++s) {
        const auto c = code_of(row_of(result.states[s], sites));
        known.insert(c);
        if (auto it = counts.find(c); it != counts.end()) {
            result.empirical[s] = static_cast<double>(it->second) / static_cast<double>(recorded);
        }
        result.tv_distance += std::abs(result.empirical[s] - result.exact[s]);
    }
    for (const auto& [c, n] : counts) {
        if (!known.count(c)) {
            mass_elsewhere += static_cast<double>(n) / static_cast<double>(recorded);
        }
    }
    result.tv_distance = 0.5 * (result.tv_distance + mass_elsewhere);
    result.final_state = Pattern(sites, state);
    return result;
}

std::vector<std::vector<double>> glauber_transitions(const CocycleSource& src, const SFT& x,
                                                     const FiniteVolumeGibbs& mu, Admissibility semantics)
{
    check_source(src, x);
    const CompiledWindow model(src, x, mu.region(), mu.table.boundary, semantics);
    const auto& sites = model.region();
    const std::size_t n = mu.size();
    const std::size_t q = src.alphabet().size();
    std::vector<std::vector<double>> t(n, std::vector<double>(n, 0.0));
    std::vector<double> probs;
    for (std::size_t s = 0; s < n; ++s) {
        auto state = row_of(mu.table.fillings[s], sites);
        for (std::size_t i = 0; i < sites.size(); ++i) {
            model.site_distribution(i, state, probs);
            const Symbol saved = state[i];
            for (std::size_t a = 0; a < q; ++a) {
                if (probs[a] == 0.0) {
                    continue;
                }
                state[i] = static_cast<Symbol>(a);
                const Pattern target(sites, state);
                const auto it = std::lower_bound(mu.table.fillings.begin(), mu.table.fillings.end(), target);
                if (it == mu.table.fillings.end() || !(*it == target)) {
                    throw DomainError("Glauber step leaves the support of the exact measure");
                }
                t[s][static_cast<std::size_t>(it - mu.table.fillings.begin())] +=
                    probs[a] / static_cast<double>(sites.size());
            }
            state[i] = saved;
        }
    }
    return t;
}

} // namespace gibbs
