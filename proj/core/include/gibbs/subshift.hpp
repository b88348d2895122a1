#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "gibbs/group.hpp"

namespace gibbs {

using Symbol = int;

class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(Symbol s) const { return names_.at(static_cast<std::size_t>(s)); }
    const std::vector<std::string>& names() const { return names_; }
    /// Throws ValidationError for unknown names.
    Symbol index_of(const std::string& name) const;

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::vector<std::string> names_;
};

/// A finite partial configuration: support -> symbol.
class Pattern {
public:
    using Cells = std::map<Element, Symbol>;

    Pattern() = default;
    Pattern(std::span<const Element> support, std::span<const Symbol> symbols);

    void set(const Element& g, Symbol s) { cells_[g] = s; }
    void erase(const Element& g) { cells_.erase(g); }
    bool contains(const Element& g) const { return cells_.count(g) != 0; }
    std::optional<Symbol> find(const Element& g) const;
    /// Throws DomainError naming the element when g is not in the support.
    Symbol at(const Element& g) const;

    std::size_t size() const { return cells_.size(); }
    bool empty() const { return cells_.empty(); }
    const Cells& cells() const { return cells_; }

    /// Support in shortlex order.
    std::vector<Element> support(const Group& group) const;
    Pattern restricted(std::span<const Element> region) const;
    /// Copy of *this with every cell of `other` written over it.
    Pattern overwritten(const Pattern& other) const;
    /// True when every cell of `other` is present here with the same symbol.
    bool agrees_with(const Pattern& other) const;

    friend auto operator<=>(const Pattern&, const Pattern&) = default;
    friend bool operator==(const Pattern&, const Pattern&) = default;

private:
    Cells cells_;
};

/// (g.p)(h) = p(g^{-1} h); support g.support(p).
Pattern shift_pattern(const Group& group, const Element& g, const Pattern& p);

/// Left-translate of a set of elements.
std::vector<Element> translate(const Group& group, const Element& g, std::span<const Element> set);

/// Semantics of the indicator 1_X. Local: no forbidden translate inside the
/// known region. Exact1D: the region pattern extends to a bi-infinite point
/// of X (only available for SFTs on Z).
enum class Admissibility { Local, Exact1D };

std::string to_string(Admissibility a);
Admissibility parse_admissibility(const std::string& s);

class FollowerGraph;

/// Shift of finite type over a built-in group, described by finitely many
/// forbidden patterns.
class SFT {
public:
    SFT(Group group, Alphabet alphabet, std::vector<Pattern> forbidden);

    static SFT full_shift(Group group, Alphabet alphabet);

    const Group& group() const { return group_; }
    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<Pattern>& forbidden() const { return forbidden_; }
    bool is_full_shift() const { return forbidden_.empty(); }

    /// Largest word-metric diameter of a forbidden support.
    std::int64_t range() const { return range_; }

    /// No translate g.F of a forbidden F has support inside the pattern's
    /// support while matching its symbols.
    bool is_locally_admissible(const Pattern& region) const;

    /// Exact1D is honoured when supported, otherwise Local is used.
    bool is_admissible(const Pattern& region, Admissibility semantics) const;

    bool supports_exact() const { return follower_ != nullptr; }
    /// The semantics actually applied for a requested mode.
    Admissibility effective(Admissibility requested) const;

    const FollowerGraph* follower_graph() const { return follower_.get(); }

private:
    Group group_;
    Alphabet alphabet_;
    std::vector<Pattern> forbidden_;
    std::int64_t range_ = 0;
    std::shared_ptr<const FollowerGraph> follower_;
};

/// Transfer graph of a one-dimensional SFT: states are the locally admissible
/// words of length m (m = max(span - 1, 1)), edges the admissible words of
/// length m + 1. Used to decide global extensibility of finite patterns.
class FollowerGraph {
public:
    explicit FollowerGraph(const SFT& sft);

    std::size_t block_length() const { return m_; }
    std::size_t state_count() const { return states_.size(); }

    /// Does some point of X agree with the pattern on its (arbitrary, finite)
    /// support?
    bool is_extensible(const Pattern& pattern) const;

    /// Strong connectivity of the graph on all locally admissible states.
    bool is_strongly_connected() const;

private:
    std::size_t index_of_word(std::span<const Symbol> word) const;

    std::size_t alphabet_size_;
    std::size_t m_;
    std::vector<char> states_;          // indexed by word code; 1 = locally admissible
    std::vector<std::vector<std::size_t>> succ_;
    std::vector<char> left_infinite_;   // has an infinite backward path
    std::vector<char> right_infinite_;  // has an infinite forward path
};

/// Finite-window stand-in for a point with fixed exterior: the free sites
/// (interior) and the values on interior plus collar.
struct WindowConfig {
    std::vector<Element> interior; // shortlex
    Pattern values;                // covers interior and boundary

    Pattern interior_pattern() const;
    Pattern boundary_pattern() const;

    friend bool operator==(const WindowConfig&, const WindowConfig&) = default;
};

/// Combines an interior and a boundary pattern; their supports must be disjoint.
WindowConfig make_window(const Group& group, const Pattern& interior, const Pattern& boundary);

/// Lambda . B_{radius+1} minus Lambda, i.e. every site within distance
/// `radius` of the set, in shortlex order.
std::vector<Element> collar(const Group& group, std::span<const Element> region, std::int64_t radius);

/// Constant boundary pattern on collar(region, radius).
Pattern constant_boundary(const Group& group, std::span<const Element> region, std::int64_t radius,
                          Symbol symbol);

bool is_locally_admissible(const SFT& sft, const WindowConfig& w);

/// All fillings eta of `region` such that eta merged with `boundary` is
/// admissible, ordered lexicographically with the region in shortlex order.
/// Throws ResourceError when |A|^|region| exceeds the budget and UsageError
/// when the boundary does not cover a forbidden translate meeting the region.
std::vector<Pattern> enumerate_fillings(const SFT& sft, std::span<const Element> region,
                                        const Pattern& boundary,
                                        Admissibility semantics = Admissibility::Local,
                                        std::optional<std::size_t> budget = std::nullopt);

/// Patterns on `region` with no forbidden translate inside the region (or,
/// for Exact1D, extensible to a point of X). No boundary is involved.
std::vector<Pattern> admissible_patterns(const SFT& sft, std::span<const Element> region,
                                         Admissibility semantics = Admissibility::Local,
                                         std::optional<std::size_t> budget = std::nullopt);

/// Exchanges omega and eta on their common support when the exchange stays
/// admissible, otherwise returns w unchanged. An involution.
WindowConfig holonomy_swap(const SFT& sft, const Pattern& omega, const Pattern& eta, const WindowConfig& w,
                           Admissibility semantics = Admissibility::Local);

/// The class of w under the Gibbs subrelation restricted to `sites`: every
/// admissible refilling of `sites` with the rest of w fixed.
std::vector<WindowConfig> holonomy_group_orbit(const SFT& sft, std::span<const Element> sites,
                                               const WindowConfig& w,
                                               Admissibility semantics = Admissibility::Local);

/// Random locally admissible filling of `region` compatible with `fixed`,
/// assigned site by site in shortlex order with restarts on dead ends.
Pattern sample_admissible(const SFT& sft, std::span<const Element> region, const Pattern& fixed,
                          std::mt19937_64& rng, int max_restarts = 1000);

} // namespace gibbs
