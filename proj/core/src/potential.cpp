#include "gibbs/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "gibbs/errors.hpp"

namespace gibbs {

LocalPotential::LocalPotential(Group group, Alphabet alphabet, std::vector<Element> support, std::vector<double> table)
    : group_(std::move(group)), alphabet_(std::move(alphabet))
{
    const std::size_t q = alphabet_.size();
    for (const auto& g : support) {
        group_.check_member(g);
    }
    std::vector<Element> sorted = support;
    sort_shortlex(group_, sorted);
    if (sorted.size() != support.size()) {
        throw ValidationError("potential support elements must be distinct");
    }
    std::size_t expected = 1;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (expected > enumeration_budget() / q) {
            throw ResourceError("potential table exceeds the enumeration budget");
        }
        expected *= q;
    }
    if (table.size() != expected) {
        throw ValidationError("potential table has " + std::to_string(table.size()) + " entries, expected " +
                              std::to_string(expected));
    }
    if (sorted != support) {
        std::vector<std::size_t> position(support.size());
        for (std::size_t i = 0; i < support.size(); ++i) {
            position[i] = static_cast<std::size_t>(std::find(sorted.begin(), sorted.end(), support[i]) - sorted.begin());
        }
        std::vector<double> reordered(table.size());
        std::vector<Symbol> old_symbols(support.size());
        for (std::size_t idx = 0; idx < table.size(); ++idx) {
            const auto p = pattern_symbols(idx, sorted.size(), q);
            for (std::size_t i = 0; i < support.size(); ++i) {
                old_symbols[i] = p[position[i]];
            }
            reordered[idx] = table[pattern_index(old_symbols, q)];
        }
        table = std::move(reordered);
    }
    support_ = std::move(sorted);
    table_ = std::move(table);
    std::int64_t longest = -1;
    for (const auto& g : support_) {
        longest = std::max(longest, group_.word_length(g));
    }
    radius_ = std::max<std::int64_t>(1, longest + 1);
}

LocalPotential LocalPotential::constant(Group group, Alphabet alphabet, double c)
{
    return LocalPotential(std::move(group), std::move(alphabet), {}, {c});
}

double LocalPotential::value(const Pattern& x) const
{
    const std::size_t q = alphabet_.size();
    std::size_t idx = 0;
    for (const auto& s : support_) {
        idx = idx * q + static_cast<std::size_t>(x.at(s));
    }
    return table_[idx];
}

double LocalPotential::value_at(const Element& g, const Pattern& x) const
{
    const std::size_t q = alphabet_.size();
    const Element ginv = group_.inverse(g);
    std::size_t idx = 0;
    for (const auto& s : support_) {
        idx = idx * q + static_cast<std::size_t>(x.at(group_.multiply(ginv, s)));
    }
    return table_[idx];
}

double LocalPotential::sup_norm() const
{
    double m = 0.0;
    for (double v : table_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

// ---------------------------------------------------------------------------
// Variation profiles

namespace {

// sum_{l >= n} 1/l^2 for n >= 1
double inverse_square_tail(std::size_t n)
{
    const std::size_t big = std::max<std::size_t>(n, 64);
    const double x = static_cast<double>(big);
    const double x2 = x * x;
    double tail = 1.0 / x + 1.0 / (2.0 * x2) + 1.0 / (6.0 * x2 * x) - 1.0 / (30.0 * x2 * x2 * x) +
                  1.0 / (42.0 * x2 * x2 * x2 * x);
    for (std::size_t l = big; l-- > n;) {
        tail += 1.0 / (static_cast<double>(l) * static_cast<double>(l));
    }
    return tail;
}

std::string number(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

double VariationProfile::value(std::size_t k) const
{
    switch (kind) {
    case Kind::InverseSquareTail:
        return coefficient * inverse_square_tail(std::max<std::size_t>(k, 1));
    case Kind::Power:
        return coefficient / std::pow(static_cast<double>(k + 1), power);
    }
    return 0.0;
}

double VariationProfile::minorant(std::size_t k) const
{
    if (kind != Kind::InverseSquareTail) {
        return 0.0;
    }
    return k == 0 ? value(0) : coefficient / static_cast<double>(k);
}

std::string VariationProfile::describe() const
{
    if (kind == Kind::InverseSquareTail) {
        return "v_k = " + number(coefficient) + " * sum_{l>=max(k,1)} 1/l^2";
    }
    return "v_k <= " + number(coefficient) + " / (k+1)^" + number(power);
}

const Group& potential_group(const Potential& f)
{
    return std::visit(
        [](const auto& p) -> const Group& {
            if constexpr (std::is_same_v<std::decay_t<decltype(p)>, LocalPotential>) {
                return p.group();
            } else {
                return p.group;
            }
        },
        f);
}

// ---------------------------------------------------------------------------
// Variations of local potentials

namespace {

struct PatternValues {
    std::vector<Element> sites;             // shortlex
    std::vector<std::vector<Symbol>> rows;  // symbols on `sites`
    std::vector<double> values;
    bool exact = true;
};

PatternValues enumerate_values(const LocalPotential& f, const SFT& x, Admissibility semantics)
{
    if (!(f.group() == x.group()) || !(f.alphabet() == x.alphabet())) {
        throw UsageError("potential and subshift use different groups or alphabets");
    }
    const std::size_t q = f.alphabet().size();
    PatternValues out;
    if (x.is_full_shift()) {
        out.sites = f.support();
        std::size_t count = 1;
        for (std::size_t i = 0; i < out.sites.size(); ++i) {
            count *= q;
        }
        for (std::size_t idx = 0; idx < count; ++idx) {
            out.rows.push_back(pattern_symbols(idx, out.sites.size(), q));
            out.values.push_back(f.table()[idx]);
        }
        return out;
    }
    out.sites = ball_elements(f.group(), static_cast<std::size_t>(f.radius()));
    out.exact = x.effective(semantics) == Admissibility::Exact1D;
    for (const auto& p : admissible_patterns(x, out.sites, semantics)) {
        std::vector<Symbol> row;
        row.reserve(out.sites.size());
        for (const auto& g : out.sites) {
            row.push_back(p.at(g));
        }
        out.rows.push_back(std::move(row));
        out.values.push_back(f.value(p));
    }
    return out;
}

double variation_from(const Group& group, const PatternValues& pv, std::size_t k)
{
    if (k == 0) {
        double m = 0.0;
        for (double v : pv.values) {
            m = std::max(m, std::abs(v));
        }
        return m;
    }
    std::vector<std::size_t> inside;
    for (std::size_t i = 0; i < pv.sites.size(); ++i) {
        if (group.word_length(pv.sites[i]) < static_cast<std::int64_t>(k)) {
            inside.push_back(i);
        }
    }
    std::map<std::vector<Symbol>, std::pair<double, double>> range;
    for (std::size_t r = 0; r < pv.rows.size(); ++r) {
        std::vector<Symbol> key;
        key.reserve(inside.size());
        for (auto i : inside) {
            key.push_back(pv.rows[r][i]);
        }
        const double v = pv.values[r];
        auto [it, fresh] = range.try_emplace(std::move(key), v, v);
        if (!fresh) {
            it->second.first = std::min(it->second.first, v);
            it->second.second = std::max(it->second.second, v);
        }
    }
    double m = 0.0;
    for (const auto& [key, lohi] : range) {
        m = std::max(m, lohi.second - lohi.first);
    }
    return m;
}

} // namespace

VariationValue variation(const LocalPotential& f, const SFT& x, std::size_t k, Admissibility semantics)
{
    if (k > 0 && static_cast<std::int64_t>(k) >= f.radius()) {
        return {0.0, true};
    }
    const auto pv = enumerate_values(f, x, semantics);
    return {variation_from(f.group(), pv, k), pv.exact};
}

std::vector<VariationValue> variations(const LocalPotential& f, const SFT& x, Admissibility semantics)
{
    const auto pv = enumerate_values(f, x, semantics);
    std::vector<VariationValue> out;
    for (std::int64_t k = 0; k < f.radius(); ++k) {
        out.push_back({variation_from(f.group(), pv, static_cast<std::size_t>(k)), pv.exact});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Norms

namespace {

NormReport local_norm(const LocalPotential& f, const SFT& x, Admissibility semantics, bool volume)
{
    NormReport report;
    report.kind = volume ? "volume" : "shell";
    report.group = f.group().spec();
    report.semantics = to_string(x.is_full_shift() ? Admissibility::Exact1D : x.effective(semantics));
    if (x.is_full_shift()) {
        report.semantics = "full-shift";
    }
    const auto vs = variations(f, x, semantics);
    const std::size_t r = vs.size();
    const auto weights = volume ? ball_sizes(f.group(), r) : shell_sizes(f.group(), r);
    double sum = 0.0;
    for (std::size_t k = 0; k < r; ++k) {
        report.variations.push_back(vs[k].value);
        report.exact = report.exact && vs[k].exact;
        sum += static_cast<double>(weights[k]) * vs[k].value;
        report.partial_sums.push_back(sum);
    }
    report.value = sum;
    return report;
}

NormReport series_norm(const SeriesPotential& f, std::size_t kmax, double threshold, bool volume)
{
    NormReport report;
    report.kind = volume ? "volume" : "shell";
    report.group = f.group.spec();
    report.semantics = "declared-variations";
    report.exact = f.variations.exact();
    const auto weights = volume ? ball_sizes(f.group, kmax) : shell_sizes(f.group, kmax);
    double sum = 0.0;
    for (std::size_t k = 0; k <= kmax; ++k) {
        const double v = f.variations.value(k);
        report.variations.push_back(v);
        sum += static_cast<double>(weights[k]) * v;
        report.partial_sums.push_back(sum);
    }

    if (f.variations.kind == VariationProfile::Kind::InverseSquareTail && f.variations.coefficient > 0.0) {
        // |S_k| >= 1 and |B_k| >= 1 for k >= 1, so sum_k w_k c/k diverges.
        DivergenceCertificate cert;
        cert.minorant = "v_k >= " + number(f.variations.coefficient) + "/k for k >= 1";
        cert.series = std::string("sum_{k>=1} ") + (volume ? "|B_k|" : "|S_k|") + " * " +
                      number(f.variations.coefficient) + "/k";
        cert.threshold = threshold;
        std::size_t limit = std::max<std::size_t>(kmax, 64);
        double minor = 0.0;
        std::size_t k = 1;
        while (true) {
            const auto w = volume ? ball_sizes(f.group, limit) : shell_sizes(f.group, limit);
            for (; k <= limit; ++k) {
                minor += static_cast<double>(w[k]) * f.variations.minorant(k);
                if (minor > threshold) {
                    break;
                }
            }
            if (minor > threshold || limit >= (std::size_t{1} << 24)) {
                break;
            }
            limit *= 2;
        }
        cert.witness_k = k;
        cert.witness_sum = minor;
        if (minor > threshold) {
            report.divergence = cert;
            report.value = std::numeric_limits<double>::infinity();
            report.converged = false;
            report.tail_bound = std::numeric_limits<double>::infinity();
            return report;
        }
    }

    report.value = sum;
    if (f.variations.kind == VariationProfile::Kind::Power && f.group.is_lattice() && f.group.dimension() == 1 &&
        f.group.spec().generators == LatticeGenerators::Standard && f.variations.power > (volume ? 2.0 : 1.0)) {
        // weights on Z: |S_k| = 2, |B_k| = 2k - 1 <= 2(k+1)
        const double p = volume ? f.variations.power - 1.0 : f.variations.power;
        report.tail_bound = 2.0 * f.variations.coefficient / ((p - 1.0) * std::pow(static_cast<double>(kmax + 1), p - 1.0));
        report.converged = true;
    } else if (f.variations.coefficient == 0.0) {
        report.tail_bound = 0.0;
    } else {
        report.tail_bound = std::numeric_limits<double>::infinity();
        report.converged = false;
    }
    return report;
}

} // namespace

NormReport shell_norm(const LocalPotential& f, const SFT& x, Admissibility semantics)
{
    return local_norm(f, x, semantics, false);
}

NormReport volume_norm(const LocalPotential& f, const SFT& x, Admissibility semantics)
{
    return local_norm(f, x, semantics, true);
}

NormReport shell_norm(const SeriesPotential& f, std::size_t kmax, double threshold)
{
    return series_norm(f, kmax, threshold, false);
}

NormReport volume_norm(const SeriesPotential& f, std::size_t kmax, double threshold)
{
    return series_norm(f, kmax, threshold, true);
}

// ---------------------------------------------------------------------------
// Sums and cocycles

double partial_sum_f_m(const LocalPotential& f, std::size_t m, const Pattern& z)
{
    double sum = 0.0;
    for (const auto& g : ball_elements(f.group(), m)) {
        sum += f.value_at(g, z);
    }
    return sum;
}

CocycleValue cocycle_potential(const LocalPotential& f, const Pattern& x, const Pattern& y,
                               std::span<const Element> delta)
{
    const auto& group = f.group();
    check_agree_outside(group, x, y, delta);
    // f(g.x) reads x on g^{-1} support, which meets delta iff g = s d^{-1}
    std::set<Element> shifts;
    for (const auto& s : f.support()) {
        for (const auto& d : delta) {
            shifts.insert(group.multiply(s, group.inverse(d)));
        }
    }
    double sum = 0.0;
    for (const auto& g : shifts) {
        sum += f.value_at(g, y) - f.value_at(g, x);
    }
    return {sum, 0.0};
}

double cocycle_bound(const Group& group, std::size_t n, double sup_norm, double shell_norm_value, double sup_ratio)
{
    const auto balls = ball_sizes(group, n);
    return 2.0 * static_cast<double>(balls[n]) * sup_norm + sup_ratio * shell_norm_value;
}

} // namespace gibbs
