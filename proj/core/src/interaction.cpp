#include "gibbs/interaction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "gibbs/errors.hpp"
#include "support_order.hpp"

namespace gibbs {

// ---------------------------------------------------------------------------
// Tail bounds

double TailBound::operator()(double n) const
{
    const double base = n + shift;
    if (base <= 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return coefficient / std::pow(base, power);
}

TailBound TailBound::parse(const std::string& raw)
{
    std::string text;
    for (char c : raw) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            text.push_back(c);
        }
    }
    static const std::regex form(R"(^([0-9.eE+-]+)/(?:n|\(n\+([0-9.eE+-]+)\))(?:\^([0-9.eE+-]+))?$)");
    std::smatch m;
    if (!std::regex_match(text, m, form)) {
        throw ValidationError("unsupported tail bound formula '" + raw + "' (expected a/n, a/n^p or a/(n+b)^p)");
    }
    TailBound b;
    try {
        b.coefficient = std::stod(m[1].str());
        b.shift = m[2].matched ? std::stod(m[2].str()) : 0.0;
        b.power = m[3].matched ? std::stod(m[3].str()) : 1.0;
    } catch (const std::exception&) {
        throw ValidationError("malformed number in tail bound formula '" + raw + "'");
    }
    if (b.coefficient < 0.0 || b.power <= 0.0) {
        throw ValidationError("tail bound must be a nonnegative decreasing majorant");
    }
    return b;
}

std::string TailBound::to_string() const
{
    std::ostringstream os;
    os << coefficient << '/';
    if (shift != 0.0) {
        os << "(n+" << shift << ')';
    } else {
        os << 'n';
    }
    if (power != 1.0) {
        os << '^' << power;
    }
    return os.str();
}

double RadialPairTail::profile(std::int64_t k) const
{
    return k <= 0 ? 0.0 : coefficient / std::pow(static_cast<double>(k), power);
}

double RadialPairTail::pair_value(Symbol a, Symbol b, std::size_t q) const
{
    return pair_table.at(static_cast<std::size_t>(a) * q + static_cast<std::size_t>(b));
}

double RadialPairTail::max_pair() const
{
    double m = 0.0;
    for (double v : pair_table) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

// ---------------------------------------------------------------------------
// Tables

double InteractionTerm::sup_norm() const
{
    double m = 0.0;
    for (double v : table) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

std::size_t pattern_index(std::span<const Symbol> symbols, std::size_t q)
{
    std::size_t idx = 0;
    for (const auto s : symbols) {
        idx = idx * q + static_cast<std::size_t>(s);
    }
    return idx;
}

std::vector<Symbol> pattern_symbols(std::size_t index, std::size_t length, std::size_t q)
{
    std::vector<Symbol> out(length);
    for (std::size_t i = length; i-- > 0;) {
        out[i] = static_cast<Symbol>(index % q);
        index /= q;
    }
    return out;
}

std::vector<std::vector<Element>> translates_through_identity(const Group& group, std::span<const Element> support)
{
    std::vector<std::vector<Element>> out;
    for (const auto& u : support) {
        auto t = translate(group, group.inverse(u), support);
        sort_shortlex(group, t);
        out.push_back(std::move(t));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Interaction

namespace {

std::size_t table_size(std::size_t q, std::size_t n)
{
    std::size_t size = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (size > enumeration_budget() / q) {
            throw ResourceError("interaction table exceeds the enumeration budget");
        }
        size *= q;
    }
    return size;
}

std::int64_t diameter(const Group& group, std::span<const Element> support)
{
    std::int64_t d = 0;
    for (const auto& a : support) {
        const auto ainv = group.inverse(a);
        for (const auto& b : support) {
            d = std::max(d, group.word_length(group.multiply(ainv, b)));
        }
    }
    return d;
}

} // namespace

Interaction::Interaction(Group group, Alphabet alphabet, std::vector<InteractionTerm> terms,
                         std::optional<RadialPairTail> tail)
    : group_(std::move(group)), alphabet_(std::move(alphabet)), tail_(std::move(tail))
{
    const std::size_t q = alphabet_.size();
    const Element e = group_.identity();
    std::map<std::vector<Element>, std::vector<double>> merged;

    for (auto& term : terms) {
        if (term.support.empty()) {
            throw ValidationError("interaction term with empty support");
        }
        for (const auto& g : term.support) {
            group_.check_member(g);
        }
        std::vector<Element> sorted = term.support;
        sort_shortlex(group_, sorted);
        if (sorted.size() != term.support.size()) {
            throw ValidationError("interaction support elements must be distinct");
        }
        if (!std::binary_search(sorted.begin(), sorted.end(), e,
                                [&](const Element& a, const Element& b) { return group_.shortlex_less(a, b); })) {
            throw ValidationError("interaction representative support must contain the identity");
        }
        if (term.table.size() != table_size(q, sorted.size())) {
            throw ValidationError("interaction table has " + std::to_string(term.table.size()) + " entries, expected " +
                                  std::to_string(table_size(q, sorted.size())));
        }
        // Re-express the table on the caller's support order as a table on the
        // canonical translate u^{-1} Lambda: T_new(p) = T_old(s -> p(u^{-1} s)).
        const auto translates = translates_through_identity(group_, term.support);
        std::size_t best = 0;
        for (std::size_t i = 1; i < translates.size(); ++i) {
            if (support_less(group_, translates[i], translates[best])) {
                best = i;
            }
        }
        const Element uinv = group_.inverse(term.support[best]);
        const auto& target = translates[best];
        std::vector<std::size_t> position(term.support.size());
        for (std::size_t i = 0; i < term.support.size(); ++i) {
            const Element moved = group_.multiply(uinv, term.support[i]);
            position[i] = static_cast<std::size_t>(std::find(target.begin(), target.end(), moved) - target.begin());
        }
        std::vector<double> table(term.table.size());
        std::vector<Symbol> old_symbols(term.support.size());
        for (std::size_t idx = 0; idx < table.size(); ++idx) {
            const auto p = pattern_symbols(idx, target.size(), q);
            for (std::size_t i = 0; i < term.support.size(); ++i) {
                old_symbols[i] = p[position[i]];
            }
            table[idx] = term.table[pattern_index(old_symbols, q)];
        }
        auto [it, fresh] = merged.try_emplace(target, std::move(table));
        if (!fresh) {
            auto& acc = it->second;
            for (std::size_t i = 0; i < acc.size(); ++i) {
                acc[i] += table[i];
            }
        }
    }

    for (auto& [support, table] : merged) {
        InteractionTerm t{support, std::move(table)};
        if (t.sup_norm() == 0.0) {
            continue;
        }
        range_ = std::max(range_, diameter(group_, t.support));
        terms_.push_back(std::move(t));
    }
    std::sort(terms_.begin(), terms_.end(), [&](const InteractionTerm& a, const InteractionTerm& b) {
        return support_less(group_, a.support, b.support);
    });

    if (tail_) {
        if (tail_->pair_table.size() != q * q) {
            throw ValidationError("tail pair table must have |A|^2 entries");
        }
        for (std::size_t a = 0; a < q; ++a) {
            for (std::size_t b = 0; b < q; ++b) {
                if (tail_->pair_table[a * q + b] != tail_->pair_table[b * q + a]) {
                    throw ValidationError("tail pair table must be symmetric");
                }
            }
        }
        if (tail_->power <= 0.0) {
            throw ValidationError("tail profile power must be positive");
        }
    }
}

Interaction Interaction::zero(Group group, Alphabet alphabet)
{
    return Interaction(std::move(group), std::move(alphabet), {});
}

double Interaction::term_value(const InteractionTerm& term, const Element& h, const Pattern& x) const
{
    const std::size_t q = alphabet_.size();
    std::size_t idx = 0;
    for (const auto& s : term.support) {
        idx = idx * q + static_cast<std::size_t>(x.at(group_.multiply(h, s)));
    }
    return term.table[idx];
}

Interaction Interaction::truncated(std::int64_t radius) const
{
    std::vector<InteractionTerm> terms = terms_;
    if (tail_ && radius >= 1) {
        const std::size_t q = alphabet_.size();
        const auto table = ball(group_, static_cast<std::size_t>(radius + 1));
        for (std::size_t k = 1; k < table.radius(); ++k) {
            for (const auto& b : table.shells[k]) {
                if (!group_.shortlex_less(b, group_.inverse(b))) {
                    continue; // {e, b} and {e, b^-1} are one orbit
                }
                InteractionTerm t;
                t.support = {group_.identity(), b};
                t.table.resize(q * q);
                for (std::size_t a = 0; a < q; ++a) {
                    for (std::size_t c = 0; c < q; ++c) {
                        t.table[a * q + c] = tail_->profile(static_cast<std::int64_t>(k)) *
                                             tail_->pair_table[a * q + c];
                    }
                }
                terms.push_back(std::move(t));
            }
        }
    }
    return Interaction(group_, alphabet_, std::move(terms));
}

Interaction Interaction::scaled(double factor) const
{
    std::vector<InteractionTerm> terms = terms_;
    for (auto& t : terms) {
        for (auto& v : t.table) {
            v *= factor;
        }
    }
    std::optional<RadialPairTail> tail = tail_;
    if (tail) {
        for (auto& v : tail->pair_table) {
            v *= factor;
        }
        tail->bound.coefficient *= std::abs(factor);
    }
    return Interaction(group_, alphabet_, std::move(terms), std::move(tail));
}

Interaction Interaction::plus(const Interaction& other) const
{
    if (!(group_ == other.group_) || !(alphabet_ == other.alphabet_)) {
        throw UsageError("cannot add interactions over different groups or alphabets");
    }
    if (tail_ && other.tail_) {
        throw UsageError("cannot add two interactions that both carry tails");
    }
    std::vector<InteractionTerm> terms = terms_;
    terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
    return Interaction(group_, alphabet_, std::move(terms), tail_ ? tail_ : other.tail_);
}

// ---------------------------------------------------------------------------
// Hamiltonian

namespace {

// Largest r such that region . B_{r+1} lies inside the configuration.
std::int64_t covered_radius(const Group& group, std::span<const Element> region, const Pattern& x)
{
    std::set<Element> seen{group.identity()};
    std::vector<Element> frontier{group.identity()};
    std::int64_t r = 0;
    while (true) {
        std::vector<Element> next;
        for (const auto& h : frontier) {
            for (const auto& s : group.generators()) {
                Element n = group.multiply(h, s);
                if (seen.insert(n).second) {
                    next.push_back(std::move(n));
                }
            }
        }
        for (const auto& b : next) {
            for (const auto& lambda : region) {
                if (!x.contains(group.multiply(lambda, b))) {
                    return r;
                }
            }
        }
        frontier = std::move(next);
        ++r;
    }
}

} // namespace

HamiltonianValue hamiltonian(const Interaction& phi, std::span<const Element> region, const Pattern& x,
                             std::optional<std::int64_t> tail_radius)
{
    const auto& group = phi.group();
    HamiltonianValue out;
    for (const auto& term : phi.terms()) {
        std::set<Element> anchors;
        for (const auto& lambda : region) {
            for (const auto& s : term.support) {
                anchors.insert(group.multiply(lambda, group.inverse(s)));
            }
        }
        for (const auto& h : anchors) {
            out.value += phi.term_value(term, h, x);
        }
    }

    if (!phi.is_finite_range()) {
        const auto& tail = *phi.tail();
        const std::size_t q = phi.alphabet().size();
        const std::int64_t radius = tail_radius.value_or(covered_radius(group, region, x));
        out.tail_radius = radius;
        if (radius >= 1) {
            const auto table = ball(group, static_cast<std::size_t>(radius + 1));
            std::set<std::pair<Element, Element>> pairs;
            for (const auto& lambda : region) {
                for (std::size_t k = 1; k < table.radius(); ++k) {
                    for (const auto& b : table.shells[k]) {
                        Element other = group.multiply(lambda, b);
                        auto key = lambda < other ? std::make_pair(lambda, other) : std::make_pair(other, lambda);
                        if (!pairs.insert(key).second) {
                            continue;
                        }
                        out.value += tail.profile(static_cast<std::int64_t>(k)) *
                                     tail.pair_value(x.at(lambda), x.at(other), q);
                    }
                }
            }
        }
        out.truncation_error =
            static_cast<double>(region.size()) * tail.max_pair() * tail.bound(static_cast<double>(radius));
    }
    return out;
}

HamiltonianValue hamiltonian(const Interaction& phi, std::span<const Element> region, const WindowConfig& w,
                             std::optional<std::int64_t> tail_radius)
{
    return hamiltonian(phi, region, w.values, tail_radius);
}

// ---------------------------------------------------------------------------
// Norms and full-dimensionality

BNorm b_norm(const Interaction& phi, std::size_t tail_terms)
{
    BNorm out;
    for (const auto& term : phi.terms()) {
        // orbits are free (torsion-free groups): |Lambda| translates contain e
        out.value += static_cast<double>(term.support.size()) * term.sup_norm();
    }
    if (!phi.is_finite_range()) {
        const auto& tail = *phi.tail();
        std::size_t k_max = tail_terms;
        if (phi.group().spec().family == GroupFamily::Heisenberg) {
            k_max = std::min<std::size_t>(k_max, 40);
        }
        const auto shells = shell_sizes(phi.group(), k_max);
        double sum = 0.0;
        for (std::size_t k = 1; k <= k_max; ++k) {
            sum += static_cast<double>(shells[k]) * std::abs(tail.profile(static_cast<std::int64_t>(k)));
        }
        out.value += sum * tail.max_pair();
        out.tail_bound = tail.bound(static_cast<double>(k_max)) * tail.max_pair();
        out.tail_terms = k_max;
    }
    return out;
}

FullDimensionalReport is_full_dimensional(const Interaction& phi, std::int64_t tail_radius)
{
    const auto& group = phi.group();
    FullDimensionalReport report;
    report.holds = true;
    std::int64_t max_len = 0;
    std::vector<std::int64_t> per_term_len;
    for (const auto& term : phi.terms()) {
        std::int64_t worst = 0;
        for (const auto& t : translates_through_identity(group, term.support)) {
            for (const auto& g : t) {
                worst = std::max(worst, group.word_length(g));
            }
        }
        per_term_len.push_back(worst);
        max_len = std::max(max_len, worst);
    }
    const bool tail = !phi.is_finite_range();
    if (tail) {
        max_len = std::max(max_len, tail_radius);
    }
    // Lambda meets the complement of B_{n-1} iff n - 1 <= max |g|, so the
    // supremum is |B_{max |g| + 1}|.
    const auto balls = ball_sizes(group, static_cast<std::size_t>(max_len + 1));
    for (std::size_t i = 0; i < phi.terms().size(); ++i) {
        const double ratio = static_cast<double>(balls[static_cast<std::size_t>(per_term_len[i] + 1)]) /
                             static_cast<double>(phi.terms()[i].support.size());
        report.ratios.push_back(ratio);
        report.constant = std::max(report.constant, ratio);
    }
    if (tail) {
        report.holds = false;
        if (tail_radius >= 1) {
            const double ratio = static_cast<double>(balls[static_cast<std::size_t>(tail_radius + 1)]) / 2.0;
            report.ratios.push_back(ratio);
            report.constant = std::max(report.constant, ratio);
        }
        report.warning = "pair tail has unbounded supports; constant shown for tail radius " +
                         std::to_string(tail_radius) + " grows with the radius";
    }
    return report;
}

// ---------------------------------------------------------------------------
// Cocycle

void check_agree_outside(const Group& group, const Pattern& x, const Pattern& y, std::span<const Element> delta)
{
    std::set<Element> inside(delta.begin(), delta.end());
    if (x.size() != y.size()) {
        throw UsageError("configurations have different supports");
    }
    auto ix = x.cells().begin();
    auto iy = y.cells().begin();
    for (; ix != x.cells().end(); ++ix, ++iy) {
        if (ix->first != iy->first) {
            throw UsageError("configurations have different supports");
        }
        if (ix->second != iy->second && !inside.count(ix->first)) {
            throw UsageError("configurations disagree outside the difference set at " + group.format(ix->first));
        }
    }
}

CocycleValue cocycle_interaction(const Interaction& phi, const Pattern& x, const Pattern& y,
                                 std::span<const Element> delta, std::optional<std::int64_t> tail_radius)
{
    check_agree_outside(phi.group(), x, y, delta);
    const auto hx = hamiltonian(phi, delta, x, tail_radius);
    const auto hy = hamiltonian(phi, delta, y, tail_radius ? tail_radius : std::optional(hx.tail_radius));
    return {hx.value - hy.value, hx.truncation_error + hy.truncation_error};
}

CocycleValue cocycle_interaction(const Interaction& phi, const WindowConfig& wx, const WindowConfig& wy,
                                 std::span<const Element> delta, std::optional<std::int64_t> tail_radius)
{
    return cocycle_interaction(phi, wx.values, wy.values, delta, tail_radius);
}

} // namespace gibbs
