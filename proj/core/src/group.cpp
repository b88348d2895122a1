#include "gibbs/group.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "gibbs/errors.hpp"
#include "element_hash.hpp"

namespace gibbs {

namespace {

std::size_t env_budget(const char* name, std::size_t fallback)
{
    if (const char* raw = std::getenv(name)) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(raw, &end, 10);
        if (end != raw && *end == '\0' && v > 0) {
            return static_cast<std::size_t>(v);
        }
    }
    return fallback;
}

// 0, 1, -1, 2, -2, ... -> 0, 1, 2, 3, 4, ...
std::int64_t zigzag(std::int64_t v) { return v > 0 ? 2 * v - 1 : -2 * v; }

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b)
{
    if (a > std::numeric_limits<std::uint64_t>::max() - b) {
        throw ResourceError("shell size overflows 64-bit integer arithmetic");
    }
    return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
        throw ResourceError("shell size overflows 64-bit integer arithmetic");
    }
    return a * b;
}

std::uint64_t ipow(std::uint64_t base, int exp)
{
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        r = checked_mul(r, base);
    }
    return r;
}

} // namespace

std::size_t element_budget() { return env_budget("GIBBSCERT_ELEMENT_BUDGET", 4'000'000); }
std::size_t enumeration_budget() { return env_budget("GIBBSCERT_ENUM_BUDGET", 1u << 22); }

// ---------------------------------------------------------------------------
// GroupSpec

GroupSpec GroupSpec::parse(const std::string& raw)
{
    std::string text;
    for (char c : raw) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            text.push_back(c);
        }
    }
    auto parse_int = [&](const std::string& s) {
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            throw ValidationError("malformed group spec '" + raw + "'");
        }
        const int v = std::stoi(s);
        if (v < 1 || v > 16) {
            throw ValidationError("group rank out of range in '" + raw + "'");
        }
        return v;
    };

    GroupSpec spec;
    if (text == "H3" || text == "heisenberg" || text == "Heisenberg") {
        spec.family = GroupFamily::Heisenberg;
        spec.rank = 3;
        return spec;
    }
    if (!text.empty() && text[0] == 'F') {
        spec.family = GroupFamily::Free;
        spec.rank = parse_int(text.substr(1));
        return spec;
    }
    if (!text.empty() && text[0] == 'Z') {
        spec.family = GroupFamily::IntegerLattice;
        std::string rest = text.substr(1);
        const auto colon = rest.find(':');
        std::string gens;
        if (colon != std::string::npos) {
            gens = rest.substr(colon + 1);
            rest = rest.substr(0, colon);
        }
        if (rest.empty()) {
            spec.rank = 1;
        } else if (rest[0] == '^') {
            spec.rank = parse_int(rest.substr(1));
        } else {
            throw ValidationError("malformed group spec '" + raw + "'");
        }
        if (gens.empty() || gens == "standard") {
            spec.generators = LatticeGenerators::Standard;
        } else if (gens == "box") {
            spec.generators = LatticeGenerators::Box;
        } else {
            throw ValidationError("unknown lattice generating set '" + gens + "'");
        }
        return spec;
    }
    throw ValidationError("unknown group spec '" + raw + "'");
}

std::string GroupSpec::to_string() const
{
    switch (family) {
    case GroupFamily::IntegerLattice: {
        std::string s = rank == 1 ? "Z" : "Z^" + std::to_string(rank);
        if (generators == LatticeGenerators::Box) {
            s += ":box";
        }
        return s;
    }
    case GroupFamily::Free:
        return "F" + std::to_string(rank);
    case GroupFamily::Heisenberg:
        return "H3";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Group

struct Group::LengthCache {
    std::mutex mutex;
    std::unordered_map<Element, std::int64_t, ElementHash> dist;
    std::vector<Element> frontier;
    std::int64_t frontier_radius = 0;
};

Group::Group(GroupSpec spec) : spec_(spec)
{
    switch (spec_.family) {
    case GroupFamily::IntegerLattice: {
        const int d = spec_.rank;
        if (spec_.generators == LatticeGenerators::Standard) {
            for (int i = 0; i < d; ++i) {
                for (int sgn : {1, -1}) {
                    std::vector<std::int64_t> v(d, 0);
                    v[i] = sgn;
                    generators_.emplace_back(std::move(v));
                }
            }
        } else {
            std::vector<std::int64_t> v(d, -1);
            while (true) {
                if (std::any_of(v.begin(), v.end(), [](std::int64_t c) { return c != 0; })) {
                    generators_.emplace_back(v);
                }
                int i = 0;
                while (i < d && v[i] == 1) {
                    v[i] = -1;
                    ++i;
                }
                if (i == d) {
                    break;
                }
                ++v[i];
            }
        }
        break;
    }
    case GroupFamily::Free:
        for (int i = 1; i <= spec_.rank; ++i) {
            generators_.push_back(Element{i});
            generators_.push_back(Element{-i});
        }
        break;
    case GroupFamily::Heisenberg:
        generators_ = {Element{1, 0, 0}, Element{-1, 0, 0}, Element{0, 1, 0}, Element{0, -1, 0}};
        lengths_ = std::make_shared<LengthCache>();
        lengths_->dist.emplace(identity(), 0);
        lengths_->frontier.push_back(identity());
        break;
    }
    sort_shortlex(*this, generators_);
}

int Group::dimension() const
{
    switch (spec_.family) {
    case GroupFamily::IntegerLattice:
        return spec_.rank;
    case GroupFamily::Heisenberg:
        return 3;
    case GroupFamily::Free:
        return -1;
    }
    return -1;
}

Element Group::identity() const
{
    if (spec_.family == GroupFamily::Free) {
        return Element{};
    }
    return Element(std::vector<std::int64_t>(static_cast<std::size_t>(dimension()), 0));
}

void Group::check_member(const Element& g) const
{
    switch (spec_.family) {
    case GroupFamily::IntegerLattice:
    case GroupFamily::Heisenberg:
        if (static_cast<int>(g.data.size()) != dimension()) {
            throw UsageError("element " + format(g) + " does not belong to " + spec_.to_string());
        }
        break;
    case GroupFamily::Free:
        for (std::size_t i = 0; i < g.data.size(); ++i) {
            const auto l = g.data[i];
            if (l == 0 || l > spec_.rank || -l > spec_.rank) {
                throw UsageError("element " + format(g) + " does not belong to " + spec_.to_string());
            }
            if (i > 0 && g.data[i - 1] == -l) {
                throw UsageError("word " + format(g) + " is not freely reduced");
            }
        }
        break;
    }
}

Element Group::multiply(const Element& a, const Element& b) const
{
    switch (spec_.family) {
    case GroupFamily::IntegerLattice: {
        if (a.data.size() != b.data.size() || static_cast<int>(a.data.size()) != spec_.rank) {
            throw UsageError("multiply: elements do not belong to " + spec_.to_string());
        }
        Element r = a;
        for (std::size_t i = 0; i < r.data.size(); ++i) {
            r.data[i] += b.data[i];
        }
        return r;
    }
    case GroupFamily::Free: {
        Element r = a;
        for (const auto l : b.data) {
            if (!r.data.empty() && r.data.back() == -l) {
                r.data.pop_back();
            } else {
                r.data.push_back(l);
            }
        }
        return r;
    }
    case GroupFamily::Heisenberg: {
        if (a.data.size() != 3 || b.data.size() != 3) {
            throw UsageError("multiply: elements do not belong to H3");
        }
        return Element{a.data[0] + b.data[0], a.data[1] + b.data[1],
                       a.data[2] + b.data[2] + a.data[0] * b.data[1]};
    }
    }
    return {};
}

Element Group::inverse(const Element& a) const
{
    switch (spec_.family) {
    case GroupFamily::IntegerLattice: {
        Element r = a;
        for (auto& c : r.data) {
            c = -c;
        }
        return r;
    }
    case GroupFamily::Free: {
        Element r;
        r.data.reserve(a.data.size());
        for (auto it = a.data.rbegin(); it != a.data.rend(); ++it) {
            r.data.push_back(-*it);
        }
        return r;
    }
    case GroupFamily::Heisenberg:
        return Element{-a.data[0], -a.data[1], -a.data[2] + a.data[0] * a.data[1]};
    }
    return {};
}

std::int64_t Group::word_length(const Element& g) const
{
    switch (spec_.family) {
    case GroupFamily::IntegerLattice: {
        std::int64_t len = 0;
        for (const auto c : g.data) {
            len = spec_.generators == LatticeGenerators::Standard ? len + std::abs(c)
                                                                   : std::max(len, std::abs(c));
        }
        return len;
    }
    case GroupFamily::Free:
        return static_cast<std::int64_t>(g.data.size());
    case GroupFamily::Heisenberg: {
        check_member(g);
        std::lock_guard lock(lengths_->mutex);
        auto& cache = *lengths_;
        while (true) {
            if (auto it = cache.dist.find(g); it != cache.dist.end()) {
                return it->second;
            }
            if (cache.dist.size() > element_budget()) {
                throw ResourceError("heisenberg word length of " + format(g) + " exceeds the element budget");
            }
            std::vector<Element> next;
            for (const auto& h : cache.frontier) {
                for (const auto& s : generators_) {
                    Element n = multiply(h, s);
                    if (cache.dist.emplace(n, cache.frontier_radius + 1).second) {
                        next.push_back(std::move(n));
                    }
                }
            }
            cache.frontier = std::move(next);
            ++cache.frontier_radius;
        }
    }
    }
    return 0;
}

std::vector<std::int64_t> Group::shortlex_key(const Element& g) const
{
    std::vector<std::int64_t> key;
    key.reserve(g.data.size());
    if (spec_.family == GroupFamily::Free) {
        for (const auto l : g.data) {
            key.push_back(l > 0 ? 2 * (l - 1) : 2 * (-l - 1) + 1);
        }
    } else {
        for (const auto c : g.data) {
            key.push_back(zigzag(c));
        }
    }
    return key;
}

bool Group::shortlex_less(const Element& a, const Element& b) const
{
    const auto la = word_length(a);
    const auto lb = word_length(b);
    if (la != lb) {
        return la < lb;
    }
    return shortlex_key(a) < shortlex_key(b);
}

std::string Group::format(const Element& g) const
{
    std::ostringstream os;
    if (spec_.family == GroupFamily::Free) {
        if (g.data.empty()) {
            return "e";
        }
        for (const auto l : g.data) {
            const auto idx = static_cast<char>((l > 0 ? l : -l) - 1);
            os << static_cast<char>(l > 0 ? 'a' + idx : 'A' + idx);
        }
        return os.str();
    }
    if (spec_.family == GroupFamily::IntegerLattice && g.data.size() == 1) {
        os << g.data[0];
        return os.str();
    }
    os << '(';
    for (std::size_t i = 0; i < g.data.size(); ++i) {
        os << (i ? "," : "") << g.data[i];
    }
    os << ')';
    return os.str();
}

void sort_shortlex(const Group& group, std::vector<Element>& elements)
{
    std::vector<std::pair<std::int64_t, Element>> keyed;
    keyed.reserve(elements.size());
    for (auto& e : elements) {
        keyed.emplace_back(group.word_length(e), std::move(e));
    }
    std::sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) {
            return a.first < b.first;
        }
        return group.shortlex_less(a.second, b.second);
    });
    elements.clear();
    for (auto& [len, e] : keyed) {
        if (elements.empty() || elements.back() != e) {
            elements.push_back(std::move(e));
        }
    }
}

// ---------------------------------------------------------------------------
// Balls and shells

std::size_t BallTable::ball_size(std::size_t k) const
{
    if (k > shells.size()) {
        throw UsageError("ball_size: radius " + std::to_string(k) + " beyond table radius " +
                         std::to_string(shells.size()));
    }
    std::size_t n = 0;
    for (std::size_t i = 0; i < k; ++i) {
        n += shells[i].size();
    }
    return n;
}

std::vector<Element> BallTable::ball(std::size_t k) const
{
    if (k > shells.size()) {
        throw UsageError("ball: radius " + std::to_string(k) + " beyond table radius " +
                         std::to_string(shells.size()));
    }
    std::vector<Element> out;
    for (std::size_t i = 0; i < k; ++i) {
        out.insert(out.end(), shells[i].begin(), shells[i].end());
    }
    return out;
}

BallTable ball(const Group& group, std::size_t k, std::optional<std::size_t> budget)
{
    if (k < 1) {
        throw UsageError("ball: radius must be >= 1");
    }
    const std::size_t limit = budget.value_or(element_budget());
    BallTable table;
    table.spec = group.spec();
    std::unordered_set<Element, ElementHash> seen;
    std::vector<Element> frontier{group.identity()};
    seen.insert(group.identity());
    table.shells.push_back(frontier);
    for (std::size_t r = 1; r < k; ++r) {
        std::vector<Element> next;
        for (const auto& h : frontier) {
            for (const auto& s : group.generators()) {
                Element n = group.multiply(h, s);
                if (seen.insert(n).second) {
                    next.push_back(std::move(n));
                    if (seen.size() > limit) {
                        throw ResourceError("ball of radius " + std::to_string(k) + " in " +
                                            group.spec().to_string() + " exceeds the element budget of " +
                                            std::to_string(limit));
                    }
                }
            }
        }
        sort_shortlex(group, next);
        table.shells.push_back(next);
        frontier = std::move(next);
    }
    return table;
}

std::vector<Element> ball_elements(const Group& group, std::size_t k)
{
    if (k == 0) {
        return {};
    }
    return ball(group, k).ball(k);
}

std::vector<std::uint64_t> shell_sizes(const Group& group, std::size_t kmax)
{
    const auto& spec = group.spec();
    std::vector<std::uint64_t> sizes(kmax + 1, 0);
    switch (spec.family) {
    case GroupFamily::IntegerLattice: {
        const int d = spec.rank;
        if (spec.generators == LatticeGenerators::Box) {
            sizes[0] = 1;
            for (std::size_t k = 1; k <= kmax; ++k) {
                sizes[k] = ipow(2 * k + 1, d) - ipow(2 * k - 1, d);
            }
            break;
        }
        // ways[s] = number of integer vectors over the coordinates seen so far
        // with l1 norm s; a coordinate of magnitude t > 0 has two signs.
        std::vector<std::uint64_t> ways(kmax + 1, 0);
        ways[0] = 1;
        for (int c = 0; c < d; ++c) {
            std::vector<std::uint64_t> next(kmax + 1, 0);
            for (std::size_t s = 0; s <= kmax; ++s) {
                if (ways[s] == 0) {
                    continue;
                }
                for (std::size_t t = 0; s + t <= kmax; ++t) {
                    next[s + t] = checked_add(next[s + t], checked_mul(ways[s], t == 0 ? 1 : 2));
                }
            }
            ways = std::move(next);
        }
        sizes = ways;
        break;
    }
    case GroupFamily::Free: {
        // reduced words by last letter; a letter may follow anything but its inverse
        const std::size_t letters = 2 * static_cast<std::size_t>(spec.rank);
        sizes[0] = 1;
        std::vector<std::uint64_t> by_last(letters, 1);
        for (std::size_t k = 1; k <= kmax; ++k) {
            if (k > 1) {
                std::uint64_t total = 0;
                for (auto v : by_last) {
                    total = checked_add(total, v);
                }
                std::vector<std::uint64_t> next(letters, 0);
                for (std::size_t l = 0; l < letters; ++l) {
                    const std::size_t inv = l ^ 1u;
                    next[l] = total - by_last[inv];
                }
                by_last = std::move(next);
            }
            std::uint64_t total = 0;
            for (auto v : by_last) {
                total = checked_add(total, v);
            }
            sizes[k] = total;
        }
        break;
    }
    case GroupFamily::Heisenberg: {
        const auto table = ball(group, kmax + 1);
        for (std::size_t k = 0; k <= kmax; ++k) {
            sizes[k] = table.shell_size(k);
        }
        break;
    }
    }
    return sizes;
}

std::vector<std::uint64_t> ball_sizes(const Group& group, std::size_t kmax)
{
    std::vector<std::uint64_t> out(kmax + 1, 0);
    if (kmax == 0) {
        return out;
    }
    const auto shells = shell_sizes(group, kmax - 1);
    for (std::size_t k = 1; k <= kmax; ++k) {
        out[k] = checked_add(out[k - 1], shells[k - 1]);
    }
    return out;
}

SphereRatioReport sphere_ratio_sup(const std::vector<std::uint64_t>& shells, std::size_t kmax,
                                   std::size_t offset, std::size_t first_m)
{
    if (offset < 1) {
        throw UsageError("sphere_ratio_sup: offset must be >= 1");
    }
    if (first_m < 1) {
        throw UsageError("sphere_ratio_sup: first_m must be >= 1");
    }
    if (kmax < offset + first_m) {
        throw UsageError("sphere_ratio_sup: kmax must be at least offset + first_m");
    }
    if (shells.size() < kmax) {
        throw UsageError("sphere_ratio_sup: shell sizes only known up to radius " +
                         std::to_string(shells.size()));
    }
    SphereRatioReport report;
    // |B_m \ B_{m-1}| = |S_{m-1}|
    for (std::size_t m = first_m; m + offset <= kmax; ++m) {
        const std::uint64_t den = shells[m - 1];
        const std::uint64_t num = shells[m + offset - 1];
        if (den == 0 || num == 0) {
            const std::size_t radius = den == 0 ? m - 1 : m + offset - 1;
            throw DomainError("empty shell at radius " + std::to_string(radius) +
                              " (finite group exhausted)");
        }
        const double ratio = static_cast<double>(num) / static_cast<double>(den);
        if (report.ratios.empty() || ratio > report.sup_ratio) {
            report.sup_ratio = ratio;
            report.argmax_m = m;
        }
        report.ratios.push_back(ratio);
    }
    const std::size_t last_m = kmax - offset;
    report.stabilized = report.argmax_m <= first_m + (last_m - first_m) / 2;
    return report;
}

SphereRatioReport sphere_ratio_sup(const Group& group, std::size_t kmax, std::size_t offset,
                                   std::size_t first_m)
{
    return sphere_ratio_sup(shell_sizes(group, kmax), kmax, offset, first_m);
}

} // namespace gibbs
