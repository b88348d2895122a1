#include "gibbs/conversion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <set>

#include "gibbs/errors.hpp"
#include "support_order.hpp"

namespace gibbs {

Rational Rational::make(std::int64_t n, std::int64_t d)
{
    if (d == 0) {
        throw DomainError("rational with zero denominator");
    }
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const auto g = std::gcd(n < 0 ? -n : n, d);
    return {n / (g == 0 ? 1 : g), d / (g == 0 ? 1 : g)};
}

Rational Rational::operator+(const Rational& o) const
{
    const auto g = std::gcd(den, o.den);
    return make(num * (o.den / g) + o.num * (den / g), den / g * o.den);
}

std::string to_string(DictatorRule r)
{
    switch (r) {
    case DictatorRule::ShortlexMin:
        return "shortlex-min";
    case DictatorRule::LexMin:
        return "lex-min";
    case DictatorRule::LexMiddle:
        return "lex-middle";
    }
    return "?";
}

WeightScheme WeightScheme::dictator(DictatorRule rule)
{
    WeightScheme s;
    s.kind = Kind::Dictator;
    s.rule = rule;
    return s;
}

WeightScheme WeightScheme::parse(const std::string& text)
{
    if (text == "uniform") {
        return uniform();
    }
    if (text == "dictator" || text == "dictator:shortlex-min") {
        return dictator(DictatorRule::ShortlexMin);
    }
    if (text == "dictator:lex-min") {
        return dictator(DictatorRule::LexMin);
    }
    if (text == "dictator:lex-middle") {
        return dictator(DictatorRule::LexMiddle);
    }
    throw ValidationError("unknown weight scheme '" + text +
                          "' (expected uniform, dictator, dictator:shortlex-min, dictator:lex-min or "
                          "dictator:lex-middle)");
}

std::string WeightScheme::to_string() const
{
    switch (kind) {
    case Kind::Uniform:
        return "uniform";
    case Kind::Dictator:
        return "dictator:" + gibbs::to_string(rule);
    case Kind::Explicit:
        return "explicit";
    }
    return "?";
}

namespace {

std::size_t designated(const Group& group, DictatorRule rule, std::span<const Element> rep)
{
    if (rule == DictatorRule::ShortlexMin) {
        const auto ts = translates_through_identity(group, rep);
        std::size_t best = 0;
        for (std::size_t i = 1; i < ts.size(); ++i) {
            if (support_less(group, ts[i], ts[best])) {
                best = i;
            }
        }
        return best;
    }
    if (!group.is_lattice()) {
        throw UsageError("dictator rule " + to_string(rule) + " needs an integer lattice");
    }
    // translation preserves coordinate order, so e sits at position i of
    // u^{-1} Lambda exactly when u sits at position i of Lambda
    std::vector<std::size_t> order(rep.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rep[a] < rep[b]; });
    const std::size_t pos = rule == DictatorRule::LexMin ? 0 : (rep.size() + 1) / 2 - 1;
    return order[pos];
}

std::vector<double> explicit_weights(const WeightScheme& s, std::span<const Element> rep)
{
    const std::vector<Element> key(rep.begin(), rep.end());
    auto it = s.table.find(key);
    if (it == s.table.end()) {
        throw ValidationError("explicit weight scheme has no entry for a representative of size " +
                              std::to_string(rep.size()));
    }
    if (it->second.size() != rep.size()) {
        throw ValidationError("explicit weights must list one value per element of the representative");
    }
    return it->second;
}

} // namespace

std::vector<Rational> exact_weights(const Group& group, const WeightScheme& s, std::span<const Element> rep)
{
    std::vector<Rational> out(rep.size(), Rational{0, 1});
    switch (s.kind) {
    case WeightScheme::Kind::Uniform:
        for (auto& w : out) {
            w = Rational::make(1, static_cast<std::int64_t>(rep.size()));
        }
        return out;
    case WeightScheme::Kind::Dictator:
        out[designated(group, s.rule, rep)] = Rational{1, 1};
        return out;
    case WeightScheme::Kind::Explicit:
        break;
    }
    throw UsageError("explicit weights are not rational");
}

std::vector<double> weights(const Group& group, const WeightScheme& s, std::span<const Element> rep)
{
    if (s.kind == WeightScheme::Kind::Explicit) {
        return explicit_weights(s, rep);
    }
    std::vector<double> out;
    for (const auto& r : exact_weights(group, s, rep)) {
        out.push_back(r.to_double());
    }
    return out;
}

void check_normalised(const Interaction& phi, const WeightScheme& s)
{
    for (const auto& term : phi.terms()) {
        std::string orbit = "{";
        for (std::size_t i = 0; i < term.support.size(); ++i) {
            orbit += (i ? ", " : "") + phi.group().format(term.support[i]);
        }
        orbit += "}";
        if (s.kind == WeightScheme::Kind::Explicit) {
            const auto w = explicit_weights(s, term.support);
            double sum = 0.0;
            for (double v : w) {
                if (v < 0.0) {
                    throw ValidationError("negative weight in the orbit of " + orbit);
                }
                sum += v;
            }
            if (std::abs(sum - 1.0) > 1e-12) {
                throw ValidationError("weights of the orbit of " + orbit + " sum to " + std::to_string(sum));
            }
            continue;
        }
        Rational sum{0, 1};
        for (const auto& r : exact_weights(phi.group(), s, term.support)) {
            sum = sum + r;
        }
        if (!(sum == Rational{1, 1})) {
            throw ValidationError("weights of the orbit of " + orbit + " do not sum to 1");
        }
    }
}

LocalPotential translate_weight(const Interaction& phi, const WeightScheme& s)
{
    if (!phi.is_finite_range()) {
        throw UsageError("translate_weight needs a finite-range interaction; truncate the tail first");
    }
    check_normalised(phi, s);
    const auto& group = phi.group();
    const std::size_t q = phi.alphabet().size();

    struct Contribution {
        const InteractionTerm* term;
        double weight;
        std::vector<std::size_t> slots; // positions in the union, in term order
    };
    std::vector<Contribution> parts;
    std::vector<Element> uni;
    for (const auto& term : phi.terms()) {
        const auto w = weights(group, s, term.support);
        for (std::size_t u = 0; u < term.support.size(); ++u) {
            if (w[u] == 0.0) {
                continue;
            }
            const Element uinv = group.inverse(term.support[u]);
            Contribution c{&term, w[u], {}};
            for (const auto& site : term.support) {
                uni.push_back(group.multiply(uinv, site));
            }
            parts.push_back(std::move(c));
        }
    }
    sort_shortlex(group, uni);

    std::size_t p = 0;
    for (const auto& term : phi.terms()) {
        const auto w = weights(group, s, term.support);
        for (std::size_t u = 0; u < term.support.size(); ++u) {
            if (w[u] == 0.0) {
                continue;
            }
            const Element uinv = group.inverse(term.support[u]);
            for (const auto& site : term.support) {
                const Element g = group.multiply(uinv, site);
                const auto pos = std::lower_bound(uni.begin(), uni.end(), g, [&](const Element& a, const Element& b) {
                    return group.shortlex_less(a, b);
                });
                parts[p].slots.push_back(static_cast<std::size_t>(pos - uni.begin()));
            }
            ++p;
        }
    }

    std::size_t size = 1;
    for (std::size_t i = 0; i < uni.size(); ++i) {
        if (size > enumeration_budget() / q) {
            throw ResourceError("translate-weighted potential table exceeds the enumeration budget");
        }
        size *= q;
    }
    std::vector<double> table(size, 0.0);
    std::vector<Symbol> local;
    for (std::size_t idx = 0; idx < size; ++idx) {
        const auto symbols = pattern_symbols(idx, uni.size(), q);
        double v = 0.0;
        for (const auto& c : parts) {
            local.clear();
            for (auto slot : c.slots) {
                local.push_back(symbols[slot]);
            }
            v -= c.weight * c.term->table[pattern_index(local, q)];
        }
        table[idx] = v;
    }
    return LocalPotential(group, phi.alphabet(), std::move(uni), std::move(table));
}

// ---------------------------------------------------------------------------
// Same cocycle

SameCocycleReport check_same_cocycle(const Interaction& phi, const SFT& x, const WeightScheme& s1,
                                     const WeightScheme& s2, std::size_t trials, std::uint64_t seed)
{
    if (!(phi.group() == x.group()) || !(phi.alphabet() == x.alphabet())) {
        throw UsageError("interaction and subshift use different groups or alphabets");
    }
    const auto& group = phi.group();
    const auto a1 = translate_weight(phi, s1);
    const auto a2 = translate_weight(phi, s2);
    const std::int64_t reach =
        std::max({phi.range(), 2 * (a1.radius() - 1), 2 * (a2.radius() - 1), x.range(), std::int64_t{1}});

    std::mt19937_64 rng(seed);
    const auto centres = ball_elements(group, 3);
    const auto small = ball_elements(group, 2);
    SameCocycleReport report;
    for (std::size_t t = 0; t < trials; ++t) {
        const Element c = centres[std::uniform_int_distribution<std::size_t>(0, centres.size() - 1)(rng)];
        std::vector<Element> pool = translate(group, c, small);
        std::shuffle(pool.begin(), pool.end(), rng);
        const std::size_t n = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(3, pool.size()))(rng);
        std::vector<Element> delta(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n));
        sort_shortlex(group, delta);

        auto window = collar(group, delta, reach);
        window.insert(window.end(), delta.begin(), delta.end());
        const Pattern px = sample_admissible(x, window, Pattern{}, rng);
        Pattern rest = px;
        for (const auto& d : delta) {
            rest.erase(d);
        }
        Pattern py = px;
        for (int attempt = 0; attempt < 8 && py == px; ++attempt) {
            py = rest.overwritten(sample_admissible(x, delta, rest, rng));
        }

        const auto phi_int = cocycle_interaction(phi, px, py, delta);
        const auto phi_1 = cocycle_potential(a1, px, py, delta);
        const auto phi_2 = cocycle_potential(a2, px, py, delta);
        report.max_vs_interaction = std::max(report.max_vs_interaction, std::abs(phi_1.value - phi_int.value));
        report.max_between_schemes = std::max(report.max_between_schemes, std::abs(phi_1.value - phi_2.value));
        ++report.pairs;
    }
    return report;
}

// ---------------------------------------------------------------------------
// Invariant measures

namespace {

std::size_t cell_index(const Group& group, std::size_t period, const Element& g)
{
    if (period == 1) {
        return 0;
    }
    std::size_t idx = 0;
    const auto L = static_cast<std::int64_t>(period);
    for (std::size_t i = 0; i < g.data.size(); ++i) {
        const auto r = ((g.data[i] % L) + L) % L;
        idx = idx * period + static_cast<std::size_t>(r);
    }
    (void)group;
    return idx;
}

} // namespace

Symbol PeriodicMeasure::symbol_at(std::size_t atom, const Element& g) const
{
    return atoms.at(atom).at(cell_index(group, period, g));
}

PeriodicMeasure constant_measure(const Group& group, Symbol s)
{
    return PeriodicMeasure{group, 1, {{s}}, {1.0}};
}

PeriodicMeasure torus_gibbs(const Interaction& phi, const SFT& x, std::size_t period)
{
    const auto& group = phi.group();
    if (!group.is_lattice() && period != 1) {
        throw UsageError("periodic measures with period > 1 need an integer lattice");
    }
    if (period == 0) {
        throw UsageError("torus period must be positive");
    }
    if (!phi.is_finite_range()) {
        throw UsageError("torus_gibbs needs a finite-range interaction");
    }
    const std::size_t q = phi.alphabet().size();
    const std::size_t d = period == 1 ? 0 : static_cast<std::size_t>(group.dimension());
    std::size_t cells = 1;
    for (std::size_t i = 0; i < d; ++i) {
        cells *= period;
    }
    std::size_t count = 1;
    for (std::size_t i = 0; i < cells; ++i) {
        if (count > enumeration_budget() / q) {
            throw ResourceError("torus enumeration exceeds the enumeration budget");
        }
        count *= q;
    }

    // torus translates h, one per cell
    std::vector<Element> torus;
    for (std::size_t c = 0; c < cells; ++c) {
        std::vector<std::int64_t> coords(d);
        std::size_t r = c;
        for (std::size_t i = d; i-- > 0;) {
            coords[i] = static_cast<std::int64_t>(r % period);
            r /= period;
        }
        torus.emplace_back(period == 1 ? group.identity().data : coords);
    }

    PeriodicMeasure mu{group, period, {}, {}};
    std::vector<double> energies;
    for (std::size_t idx = 0; idx < count; ++idx) {
        auto atom = pattern_symbols(idx, cells, q);
        auto read = [&](const Element& g) { return atom[cell_index(group, period, g)]; };
        bool allowed = true;
        for (const auto& f : x.forbidden()) {
            for (const auto& h : torus) {
                bool match = true;
                for (const auto& [site, sym] : f.cells()) {
                    if (read(group.multiply(h, site)) != sym) {
                        match = false;
                        break;
                    }
                }
                if (match) {
                    allowed = false;
                    break;
                }
            }
            if (!allowed) {
                break;
            }
        }
        if (!allowed) {
            continue;
        }
        double energy = 0.0;
        for (const auto& term : phi.terms()) {
            for (const auto& h : torus) {
                std::size_t t = 0;
                for (const auto& s : term.support) {
                    t = t * q + static_cast<std::size_t>(read(group.multiply(h, s)));
                }
                energy += term.table[t];
            }
        }
        mu.atoms.push_back(std::move(atom));
        energies.push_back(energy);
    }
    if (mu.atoms.empty()) {
        throw DomainError("no periodic point of period " + std::to_string(period));
    }
    const double emin = *std::min_element(energies.begin(), energies.end());
    double z = 0.0;
    for (double e : energies) {
        mu.probabilities.push_back(std::exp(-(e - emin)));
        z += mu.probabilities.back();
    }
    for (auto& p : mu.probabilities) {
        p /= z;
    }
    return mu;
}

MeanEnergy mean_energy(const Interaction& phi, const PeriodicMeasure& mu, const WeightScheme& s)
{
    if (!(phi.group() == mu.group)) {
        throw UsageError("measure and interaction use different groups");
    }
    const auto& group = phi.group();
    MeanEnergy out;
    const auto a = translate_weight(phi, s);
    out.weighted = mu.expect(a.support(), [&](const Pattern& p) { return a.value(p); });
    for (const auto& term : phi.terms()) {
        const double share = 1.0 / static_cast<double>(term.support.size());
        for (const auto& u : term.support) {
            const Element uinv = group.inverse(u);
            const auto sites = translate(group, uinv, term.support);
            out.closed_form -= share * mu.expect(sites, [&](const Pattern& p) { return phi.term_value(term, uinv, p); });
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Preimages and the counterexample

Interaction interaction_from_potential(const LocalPotential& f)
{
    const auto& group = f.group();
    const std::size_t q = f.alphabet().size();
    const auto region = ball_elements(group, static_cast<std::size_t>(f.radius()));
    std::size_t size = 1;
    for (std::size_t i = 0; i < region.size(); ++i) {
        if (size > enumeration_budget() / q) {
            throw ResourceError("preimage table on B_r exceeds the enumeration budget");
        }
        size *= q;
    }
    std::vector<double> table(size);
    for (std::size_t idx = 0; idx < size; ++idx) {
        const auto symbols = pattern_symbols(idx, region.size(), q);
        table[idx] = -f.value(Pattern(region, symbols));
    }
    return Interaction(group, f.alphabet(), {InteractionTerm{region, std::move(table)}});
}

Counterexample counterexample_interaction(std::int64_t radius, double threshold)
{
    if (radius < 1) {
        throw UsageError("counterexample radius must be at least 1");
    }
    const Group z(GroupSpec::parse("Z"));
    const Alphabet bits({"0", "1"});

    std::vector<InteractionTerm> terms;
    std::vector<LocalPotential> pieces;
    for (std::int64_t j = 1; j <= radius; ++j) {
        const double c = 1.0 / (static_cast<double>(j) * static_cast<double>(j));
        terms.push_back(InteractionTerm{{Element{0}, Element{j}}, {0.0, 0.0, 0.0, c}});
        pieces.emplace_back(z, bits, std::vector<Element>{Element{0}, Element{j}}, std::vector<double>{0.0, 0.0, 0.0, -c});
    }
    RadialPairTail tail;
    tail.coefficient = 1.0;
    tail.power = 2.0;
    tail.pair_table = {0.0, 0.0, 0.0, 1.0};
    tail.bound = TailBound{2.0, 0.5, 1.0};

    SeriesPotential image{z, bits, std::move(pieces), VariationProfile{VariationProfile::Kind::InverseSquareTail, 1.0, 2.0},
                          0.0, std::numbers::pi * std::numbers::pi / 6.0};
    image.piece_tail = image.variations.value(static_cast<std::size_t>(radius) + 1);

    Interaction full(z, bits, {}, tail);
    auto bn = b_norm(full, static_cast<std::size_t>(radius));
    auto shell = shell_norm(image, static_cast<std::size_t>(std::min<std::int64_t>(radius, 1000)), threshold);
    const double v1 = image.variations.value(1);
    return Counterexample{radius, Interaction(z, bits, std::move(terms)), std::move(full), bn, std::move(image),
                          std::move(shell), v1};
}

} // namespace gibbs
