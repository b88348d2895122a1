#include "gibbs/subshift.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_set>

#include "element_hash.hpp"
#include "gibbs/errors.hpp"

namespace gibbs {

// ---------------------------------------------------------------------------
// Alphabet / Pattern

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names))
{
    if (names_.empty()) {
        throw ValidationError("alphabet must be nonempty");
    }
    std::set<std::string> seen(names_.begin(), names_.end());
    if (seen.size() != names_.size()) {
        throw ValidationError("alphabet symbols must be distinct");
    }
}

Symbol Alphabet::index_of(const std::string& name) const
{
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) {
        throw ValidationError("unknown symbol '" + name + "'");
    }
    return static_cast<Symbol>(it - names_.begin());
}

Pattern::Pattern(std::span<const Element> support, std::span<const Symbol> symbols)
{
    if (support.size() != symbols.size()) {
        throw UsageError("pattern support and symbol list differ in length");
    }
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (!cells_.emplace(support[i], symbols[i]).second) {
            throw UsageError("pattern support elements must be distinct");
        }
    }
}

std::optional<Symbol> Pattern::find(const Element& g) const
{
    const auto it = cells_.find(g);
    if (it == cells_.end()) {
        return std::nullopt;
    }
    return it->second;
}

Symbol Pattern::at(const Element& g) const
{
    const auto it = cells_.find(g);
    if (it == cells_.end()) {
        std::string coords;
        for (std::size_t i = 0; i < g.data.size(); ++i) {
            coords += (i ? "," : "") + std::to_string(g.data[i]);
        }
        throw DomainError("configuration does not cover element [" + coords + "]");
    }
    return it->second;
}

std::vector<Element> Pattern::support(const Group& group) const
{
    std::vector<Element> out;
    out.reserve(cells_.size());
    for (const auto& [g, s] : cells_) {
        out.push_back(g);
    }
    sort_shortlex(group, out);
    return out;
}

Pattern Pattern::restricted(std::span<const Element> region) const
{
    Pattern out;
    for (const auto& g : region) {
        if (auto s = find(g)) {
            out.set(g, *s);
        }
    }
    return out;
}

Pattern Pattern::overwritten(const Pattern& other) const
{
    Pattern out = *this;
    for (const auto& [g, s] : other.cells_) {
        out.cells_[g] = s;
    }
    return out;
}

bool Pattern::agrees_with(const Pattern& other) const
{
    for (const auto& [g, s] : other.cells_) {
        const auto it = cells_.find(g);
        if (it == cells_.end() || it->second != s) {
            return false;
        }
    }
    return true;
}

Pattern shift_pattern(const Group& group, const Element& g, const Pattern& p)
{
    Pattern out;
    for (const auto& [h, s] : p.cells()) {
        out.set(group.multiply(g, h), s);
    }
    return out;
}

std::vector<Element> translate(const Group& group, const Element& g, std::span<const Element> set)
{
    std::vector<Element> out;
    out.reserve(set.size());
    for (const auto& h : set) {
        out.push_back(group.multiply(g, h));
    }
    return out;
}

std::string to_string(Admissibility a)
{
    return a == Admissibility::Local ? "local" : "exact-1d";
}

Admissibility parse_admissibility(const std::string& s)
{
    if (s == "local") {
        return Admissibility::Local;
    }
    if (s == "exact-1d" || s == "exact") {
        return Admissibility::Exact1D;
    }
    throw ValidationError("unknown admissibility semantics '" + s + "'");
}

// ---------------------------------------------------------------------------
// SFT

namespace {

struct ForbiddenShape {
    std::vector<Element> support; // shortlex
    std::vector<Symbol> symbols;
};

ForbiddenShape shape_of(const Group& group, const Pattern& f)
{
    ForbiddenShape shape;
    shape.support = f.support(group);
    for (const auto& s : shape.support) {
        shape.symbols.push_back(f.at(s));
    }
    return shape;
}

// Does the translate g.F lie inside `region` and match it?
bool translate_matches(const Group& group, const Element& g, const ForbiddenShape& f, const Pattern& region)
{
    for (std::size_t i = 0; i < f.support.size(); ++i) {
        const auto s = region.find(group.multiply(g, f.support[i]));
        if (!s || *s != f.symbols[i]) {
            return false;
        }
    }
    return true;
}

} // namespace

SFT::SFT(Group group, Alphabet alphabet, std::vector<Pattern> forbidden)
    : group_(std::move(group)), alphabet_(std::move(alphabet)), forbidden_(std::move(forbidden))
{
    if (alphabet_.size() == 0) {
        throw ValidationError("SFT alphabet must be nonempty");
    }
    for (const auto& f : forbidden_) {
        if (f.empty()) {
            throw ValidationError("forbidden pattern with empty support");
        }
        for (const auto& [g, s] : f.cells()) {
            group_.check_member(g);
            if (s < 0 || static_cast<std::size_t>(s) >= alphabet_.size()) {
                throw ValidationError("forbidden pattern uses a symbol outside the alphabet");
            }
        }
        for (const auto& [a, sa] : f.cells()) {
            for (const auto& [b, sb] : f.cells()) {
                range_ = std::max(range_, group_.word_length(group_.multiply(group_.inverse(a), b)));
            }
        }
    }
    if (group_.is_lattice() && group_.dimension() == 1) {
        follower_ = std::make_shared<FollowerGraph>(*this);
    }
}

SFT SFT::full_shift(Group group, Alphabet alphabet)
{
    return SFT(std::move(group), std::move(alphabet), {});
}

bool SFT::is_locally_admissible(const Pattern& region) const
{
    for (const auto& f : forbidden_) {
        const auto shape = shape_of(group_, f);
        const Element anchor_inv = group_.inverse(shape.support.front());
        for (const auto& [h, sym] : region.cells()) {
            if (sym != shape.symbols.front()) {
                continue;
            }
            if (translate_matches(group_, group_.multiply(h, anchor_inv), shape, region)) {
                return false;
            }
        }
    }
    return true;
}

Admissibility SFT::effective(Admissibility requested) const
{
    if (requested == Admissibility::Exact1D && supports_exact()) {
        return Admissibility::Exact1D;
    }
    return Admissibility::Local;
}

bool SFT::is_admissible(const Pattern& region, Admissibility semantics) const
{
    if (effective(semantics) == Admissibility::Exact1D) {
        return follower_->is_extensible(region);
    }
    return is_locally_admissible(region);
}

// ---------------------------------------------------------------------------
// FollowerGraph

FollowerGraph::FollowerGraph(const SFT& sft) : alphabet_size_(sft.alphabet().size())
{
    const auto& group = sft.group();
    if (!group.is_lattice() || group.dimension() != 1) {
        throw UsageError("follower graphs exist only for SFTs on Z");
    }
    std::int64_t span = 1;
    for (const auto& f : sft.forbidden()) {
        std::int64_t lo = 0, hi = 0;
        bool first = true;
        for (const auto& [g, s] : f.cells()) {
            lo = first ? g.data[0] : std::min(lo, g.data[0]);
            hi = first ? g.data[0] : std::max(hi, g.data[0]);
            first = false;
        }
        span = std::max(span, hi - lo + 1);
    }
    m_ = static_cast<std::size_t>(std::max<std::int64_t>(span - 1, 1));

    std::size_t words = 1;
    for (std::size_t i = 0; i <= m_; ++i) {
        if (words > enumeration_budget() / alphabet_size_) {
            throw ResourceError("follower graph exceeds the enumeration budget");
        }
        words *= alphabet_size_;
    }
    const std::size_t state_space = words / alphabet_size_;

    auto word_pattern = [&](std::size_t code, std::size_t len) {
        Pattern p;
        for (std::size_t i = len; i-- > 0;) {
            p.set(Element{static_cast<std::int64_t>(i)}, static_cast<Symbol>(code % alphabet_size_));
            code /= alphabet_size_;
        }
        return p;
    };

    states_.assign(state_space, 0);
    for (std::size_t c = 0; c < state_space; ++c) {
        states_[c] = sft.is_locally_admissible(word_pattern(c, m_)) ? 1 : 0;
    }
    succ_.assign(state_space, {});
    std::vector<std::vector<std::size_t>> pred(state_space);
    for (std::size_t c = 0; c < words; ++c) {
        const std::size_t from = c / alphabet_size_;
        const std::size_t to = c % state_space;
        if (!states_[from] || !states_[to]) {
            continue;
        }
        if (sft.is_locally_admissible(word_pattern(c, m_ + 1))) {
            succ_[from].push_back(to);
            pred[to].push_back(from);
        }
    }

    auto prune = [&](const std::vector<std::vector<std::size_t>>& out_edges) {
        std::vector<char> alive = states_;
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t c = 0; c < state_space; ++c) {
                if (!alive[c]) {
                    continue;
                }
                const bool has = std::any_of(out_edges[c].begin(), out_edges[c].end(),
                                             [&](std::size_t t) { return alive[t] != 0; });
                if (!has) {
                    alive[c] = 0;
                    changed = true;
                }
            }
        }
        return alive;
    };
    right_infinite_ = prune(succ_);
    left_infinite_ = prune(pred);
}

std::size_t FollowerGraph::index_of_word(std::span<const Symbol> word) const
{
    std::size_t code = 0;
    for (const auto s : word) {
        code = code * alphabet_size_ + static_cast<std::size_t>(s);
    }
    return code;
}

bool FollowerGraph::is_extensible(const Pattern& pattern) const
{
    const std::size_t space = states_.size();
    if (pattern.empty()) {
        for (std::size_t c = 0; c < space; ++c) {
            if (left_infinite_[c] && right_infinite_[c]) {
                return true;
            }
        }
        return false;
    }
    std::int64_t lo = pattern.cells().begin()->first.data.at(0);
    std::int64_t hi = lo;
    for (const auto& [g, s] : pattern.cells()) {
        lo = std::min(lo, g.data.at(0));
        hi = std::max(hi, g.data.at(0));
    }
    const std::int64_t m = static_cast<std::int64_t>(m_);
    const std::int64_t last = std::max(lo, hi - m + 1);

    auto consistent = [&](std::size_t code, std::int64_t start) {
        for (std::int64_t i = m - 1; i >= 0; --i) {
            const Symbol sym = static_cast<Symbol>(code % alphabet_size_);
            code /= alphabet_size_;
            if (auto want = pattern.find(Element{start + i}); want && *want != sym) {
                return false;
            }
        }
        return true;
    };

    std::vector<char> current(space, 0);
    bool any = false;
    for (std::size_t c = 0; c < space; ++c) {
        if (left_infinite_[c] && consistent(c, lo)) {
            current[c] = 1;
            any = true;
        }
    }
    for (std::int64_t pos = lo + 1; pos <= last && any; ++pos) {
        std::vector<char> next(space, 0);
        any = false;
        for (std::size_t c = 0; c < space; ++c) {
            if (!current[c]) {
                continue;
            }
            for (const auto t : succ_[c]) {
                if (!next[t] && consistent(t, pos)) {
                    next[t] = 1;
                    any = true;
                }
            }
        }
        current = std::move(next);
    }
    for (std::size_t c = 0; c < space; ++c) {
        if (current[c] && right_infinite_[c]) {
            return true;
        }
    }
    return false;
}

bool FollowerGraph::is_strongly_connected() const
{
    const std::size_t space = states_.size();
    std::vector<std::size_t> nodes;
    for (std::size_t c = 0; c < space; ++c) {
        if (states_[c]) {
            nodes.push_back(c);
        }
    }
    if (nodes.empty()) {
        return false;
    }
    std::vector<std::vector<std::size_t>> pred(space);
    for (std::size_t c = 0; c < space; ++c) {
        for (auto t : succ_[c]) {
            pred[t].push_back(c);
        }
    }
    auto reach_all = [&](const std::vector<std::vector<std::size_t>>& edges) {
        std::vector<char> seen(space, 0);
        std::vector<std::size_t> stack{nodes.front()};
        seen[nodes.front()] = 1;
        while (!stack.empty()) {
            const auto c = stack.back();
            stack.pop_back();
            for (auto t : edges[c]) {
                if (!seen[t]) {
                    seen[t] = 1;
                    stack.push_back(t);
                }
            }
        }
        return std::all_of(nodes.begin(), nodes.end(), [&](std::size_t c) { return seen[c] != 0; });
    };
    return reach_all(succ_) && reach_all(pred);
}

// ---------------------------------------------------------------------------
// Windows

Pattern WindowConfig::interior_pattern() const { return values.restricted(interior); }

Pattern WindowConfig::boundary_pattern() const
{
    Pattern out = values;
    for (const auto& g : interior) {
        out.erase(g);
    }
    return out;
}

WindowConfig make_window(const Group& group, const Pattern& interior, const Pattern& boundary)
{
    for (const auto& [g, s] : interior.cells()) {
        if (boundary.contains(g)) {
            throw UsageError("interior and boundary supports overlap at " + group.format(g));
        }
    }
    WindowConfig w;
    w.interior = interior.support(group);
    w.values = boundary.overwritten(interior);
    return w;
}

std::vector<Element> collar(const Group& group, std::span<const Element> region, std::int64_t radius)
{
    const auto offsets = ball_elements(group, static_cast<std::size_t>(radius + 1));
    std::unordered_set<Element, ElementHash> inside(region.begin(), region.end());
    std::vector<Element> out;
    std::unordered_set<Element, ElementHash> seen;
    for (const auto& g : region) {
        for (const auto& b : offsets) {
            Element h = group.multiply(g, b);
            if (!inside.count(h) && seen.insert(h).second) {
                out.push_back(std::move(h));
            }
        }
    }
    sort_shortlex(group, out);
    return out;
}

Pattern constant_boundary(const Group& group, std::span<const Element> region, std::int64_t radius,
                          Symbol symbol)
{
    Pattern p;
    for (const auto& g : collar(group, region, radius)) {
        p.set(g, symbol);
    }
    return p;
}

bool is_locally_admissible(const SFT& sft, const WindowConfig& w) { return sft.is_locally_admissible(w.values); }

// ---------------------------------------------------------------------------
// Fillings

namespace {

// A forbidden translate meeting the free region, reduced to its free slots
// (its cells on the fixed boundary already match).
struct FreeConstraint {
    std::vector<std::pair<std::size_t, Symbol>> slots;
    std::size_t trigger = 0; // largest slot index; checked once it is assigned
};

} // namespace

namespace {

std::vector<Pattern> fillings_impl(const SFT& sft, std::span<const Element> region_in, const Pattern& boundary,
                                   Admissibility semantics, std::optional<std::size_t> budget, bool require_collar)
{
    const auto& group = sft.group();
    std::vector<Element> region(region_in.begin(), region_in.end());
    sort_shortlex(group, region);
    for (const auto& g : region) {
        group.check_member(g);
        if (boundary.contains(g)) {
            throw UsageError("filling region and boundary overlap at " + group.format(g));
        }
    }

    const std::size_t limit = budget.value_or(enumeration_budget());
    const std::size_t q = sft.alphabet().size();
    std::size_t candidates = 1;
    for (std::size_t i = 0; i < region.size(); ++i) {
        if (candidates > limit / q) {
            throw ResourceError("|A|^|region| = " + std::to_string(q) + "^" + std::to_string(region.size()) +
                                " exceeds the enumeration budget of " + std::to_string(limit));
        }
        candidates *= q;
    }

    if (!sft.is_locally_admissible(boundary)) {
        return {};
    }

    std::map<Element, std::size_t> slot_of;
    for (std::size_t i = 0; i < region.size(); ++i) {
        slot_of.emplace(region[i], i);
    }

    std::vector<FreeConstraint> constraints;
    for (const auto& f : sft.forbidden()) {
        const auto shape = shape_of(group, f);
        std::set<Element> anchors;
        for (const auto& lambda : region) {
            for (const auto& s : shape.support) {
                anchors.insert(group.multiply(lambda, group.inverse(s)));
            }
        }
        for (const auto& g : anchors) {
            FreeConstraint c;
            bool possible = true;
            for (std::size_t i = 0; i < shape.support.size() && possible; ++i) {
                const Element site = group.multiply(g, shape.support[i]);
                if (auto it = slot_of.find(site); it != slot_of.end()) {
                    c.slots.emplace_back(it->second, shape.symbols[i]);
                    c.trigger = std::max(c.trigger, it->second);
                } else if (auto b = boundary.find(site)) {
                    possible = *b == shape.symbols[i];
                } else if (require_collar) {
                    throw UsageError("boundary collar too thin: forbidden translate needs " + group.format(site));
                } else {
                    possible = false;
                }
            }
            if (possible) {
                constraints.push_back(std::move(c));
            }
        }
    }
    std::vector<std::vector<const FreeConstraint*>> by_trigger(region.size());
    for (const auto& c : constraints) {
        by_trigger[c.trigger].push_back(&c);
    }

    const bool exact = sft.effective(semantics) == Admissibility::Exact1D;
    std::vector<Pattern> out;
    std::vector<Symbol> assign(region.size(), 0);
    // iterative depth-first search; assign[pos] is the next symbol to try
    std::size_t pos = 0;
    if (region.empty()) {
        if (!exact || sft.follower_graph()->is_extensible(boundary)) {
            out.emplace_back();
        }
        return out;
    }
    assign[0] = 0;
    while (true) {
        bool ok = true;
        for (const auto* c : by_trigger[pos]) {
            bool matches = true;
            for (const auto& [slot, sym] : c->slots) {
                if (assign[slot] != sym) {
                    matches = false;
                    break;
                }
            }
            if (matches) {
                ok = false;
                break;
            }
        }
        if (ok && pos + 1 == region.size()) {
            Pattern filling(region, assign);
            if (!exact || sft.follower_graph()->is_extensible(boundary.overwritten(filling))) {
                out.push_back(std::move(filling));
            }
        } else if (ok) {
            ++pos;
            assign[pos] = 0;
            continue;
        }
        // advance to the next candidate
        while (true) {
            if (static_cast<std::size_t>(assign[pos] + 1) < q) {
                ++assign[pos];
                break;
            }
            if (pos == 0) {
                return out;
            }
            --pos;
        }
    }
}

} // namespace

std::vector<Pattern> enumerate_fillings(const SFT& sft, std::span<const Element> region, const Pattern& boundary,
                                        Admissibility semantics, std::optional<std::size_t> budget)
{
    return fillings_impl(sft, region, boundary, semantics, budget, true);
}

std::vector<Pattern> admissible_patterns(const SFT& sft, std::span<const Element> region, Admissibility semantics,
                                         std::optional<std::size_t> budget)
{
    return fillings_impl(sft, region, Pattern{}, semantics, budget, false);
}

WindowConfig holonomy_swap(const SFT& sft, const Pattern& omega, const Pattern& eta, const WindowConfig& w,
                           Admissibility semantics)
{
    const auto& group = sft.group();
    const auto support = omega.support(group);
    if (support != eta.support(group)) {
        throw UsageError("holonomy_swap: omega and eta must share their support");
    }
    for (const auto& g : support) {
        if (!std::binary_search(w.interior.begin(), w.interior.end(), g,
                                [&](const Element& a, const Element& b) { return group.shortlex_less(a, b); })) {
            throw UsageError("holonomy_swap: window interior does not contain " + group.format(g));
        }
    }
    if (omega == eta || !sft.is_admissible(w.values, semantics)) {
        return w;
    }
    const Pattern current = w.values.restricted(support);
    const Pattern* target = nullptr;
    if (current == omega) {
        target = &eta;
    } else if (current == eta) {
        target = &omega;
    } else {
        return w;
    }
    Pattern swapped = w.values.overwritten(*target);
    if (!sft.is_admissible(swapped, semantics)) {
        return w;
    }
    return WindowConfig{w.interior, std::move(swapped)};
}

std::vector<WindowConfig> holonomy_group_orbit(const SFT& sft, std::span<const Element> sites,
                                               const WindowConfig& w, Admissibility semantics)
{
    if (sites.empty()) {
        return {w};
    }
    const auto& group = sft.group();
    for (const auto& g : sites) {
        if (!std::binary_search(w.interior.begin(), w.interior.end(), g,
                                [&](const Element& a, const Element& b) { return group.shortlex_less(a, b); })) {
            throw UsageError("holonomy_group_orbit: window interior does not contain " + group.format(g));
        }
    }
    Pattern rest = w.values;
    for (const auto& g : sites) {
        rest.erase(g);
    }
    std::vector<WindowConfig> orbit;
    for (auto& filling : enumerate_fillings(sft, sites, rest, semantics)) {
        orbit.push_back(WindowConfig{w.interior, rest.overwritten(filling)});
    }
    return orbit;
}

Pattern sample_admissible(const SFT& sft, std::span<const Element> region_in, const Pattern& fixed,
                          std::mt19937_64& rng, int max_restarts)
{
    const auto& group = sft.group();
    std::vector<Element> region(region_in.begin(), region_in.end());
    sort_shortlex(group, region);
    std::vector<ForbiddenShape> shapes;
    for (const auto& f : sft.forbidden()) {
        shapes.push_back(shape_of(group, f));
    }
    const auto q = static_cast<Symbol>(sft.alphabet().size());

    for (int attempt = 0; attempt < max_restarts; ++attempt) {
        Pattern current = fixed;
        bool dead = false;
        for (const auto& site : region) {
            std::vector<Symbol> order(static_cast<std::size_t>(q));
            std::iota(order.begin(), order.end(), 0);
            std::shuffle(order.begin(), order.end(), rng);
            bool placed = false;
            for (const auto sym : order) {
                current.set(site, sym);
                bool violates = false;
                for (const auto& shape : shapes) {
                    for (const auto& s : shape.support) {
                        const Element g = group.multiply(site, group.inverse(s));
                        if (translate_matches(group, g, shape, current)) {
                            violates = true;
                            break;
                        }
                    }
                    if (violates) {
                        break;
                    }
                }
                if (!violates) {
                    placed = true;
                    break;
                }
            }
            if (!placed) {
                dead = true;
                break;
            }
        }
        if (!dead) {
            return current.restricted(region);
        }
    }
    throw DomainError("could not sample an admissible filling (boundary may not be extendable)");
}

} // namespace gibbs
