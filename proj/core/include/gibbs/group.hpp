#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gibbs {

/// A group element in the canonical normal form of its group:
///   integer lattice  -> coordinate vector
///   free group       -> freely reduced word, letter i>0 is generator i, -i its inverse
///   heisenberg       -> (a, b, c) for the matrix [[1 a c] [0 1 b] [0 0 1]]
/// The raw ordering (operator<=>) is only used for container keys; the
/// canonical order is Group::shortlex_less.
struct Element {
    std::vector<std::int64_t> data;

    Element() = default;
    explicit Element(std::vector<std::int64_t> d) : data(std::move(d)) {}
    Element(std::initializer_list<std::int64_t> d) : data(d) {}

    friend auto operator<=>(const Element&, const Element&) = default;
    friend bool operator==(const Element&, const Element&) = default;
};

enum class GroupFamily { IntegerLattice, Free, Heisenberg };

/// Generating set for integer lattices: unit vectors (l1 metric) or the
/// full l-infinity box {-1,0,1}^d minus the origin.
enum class LatticeGenerators { Standard, Box };

struct GroupSpec {
    GroupFamily family = GroupFamily::IntegerLattice;
    int rank = 1; // lattice dimension or free rank; 3 for heisenberg
    LatticeGenerators generators = LatticeGenerators::Standard;

    /// Accepted forms: "Z", "Z^d", "Z^d:box", "F<n>", "H3"/"heisenberg".
    static GroupSpec parse(const std::string& text);
    std::string to_string() const;

    friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

class Group {
public:
    explicit Group(GroupSpec spec);

    const GroupSpec& spec() const { return spec_; }
    bool is_lattice() const { return spec_.family == GroupFamily::IntegerLattice; }
    int dimension() const; // coordinate count of a normal form (free groups: -1)

    Element identity() const;
    Element multiply(const Element& a, const Element& b) const;
    Element inverse(const Element& a) const;

    /// Symmetric generating set in shortlex order.
    const std::vector<Element>& generators() const { return generators_; }

    /// Word-metric distance d(g, e).
    std::int64_t word_length(const Element& g) const;

    /// Length first, then a per-family lexicographic key. The identity is
    /// the minimum, and every open ball is an initial segment of this order.
    bool shortlex_less(const Element& a, const Element& b) const;

    /// Throws UsageError when g is not a well-formed normal form of this group.
    void check_member(const Element& g) const;

    std::string format(const Element& g) const;

    friend bool operator==(const Group& a, const Group& b) { return a.spec_ == b.spec_; }

private:
    struct LengthCache;

    std::vector<std::int64_t> shortlex_key(const Element& g) const;

    GroupSpec spec_;
    std::vector<Element> generators_;
    std::shared_ptr<LengthCache> lengths_; // heisenberg only
};

/// Sorts in place by shortlex and removes duplicates.
void sort_shortlex(const Group& group, std::vector<Element>& elements);

/// Ball convention: open balls B_k = {g : |g| < k} (default) or closed
/// balls {g : |g| <= k}. Closed B_k coincides with open B_{k+1}.
enum class BallConvention { Open, Closed };

/// Word-metric shells of a group, S_k = B_{k+1} \ B_k = {g : |g| = k}.
/// shells[0] = {e}; a table of radius K stores S_0 .. S_{K-1}, i.e. B_K.
struct BallTable {
    GroupSpec spec;
    std::vector<std::vector<Element>> shells;

    std::size_t radius() const { return shells.size(); }
    /// |B_k| for the open ball, 0 <= k <= radius().
    std::size_t ball_size(std::size_t k) const;
    std::size_t shell_size(std::size_t k) const { return shells.at(k).size(); }
    /// All elements of B_k in shortlex order.
    std::vector<Element> ball(std::size_t k) const;
};

/// Breadth-first enumeration of B_k (k >= 1). Throws ResourceError when the
/// ball would exceed the element budget.
BallTable ball(const Group& group, std::size_t k, std::optional<std::size_t> budget = std::nullopt);

/// Elements of B_k in shortlex order (open convention).
std::vector<Element> ball_elements(const Group& group, std::size_t k);

/// |S_0| .. |S_kmax| computed by counting rather than enumeration where the
/// family allows it (lattices: coordinate counting; free groups: reduced-word
/// automaton). Heisenberg falls back to BFS.
std::vector<std::uint64_t> shell_sizes(const Group& group, std::size_t kmax);

/// |B_0| .. |B_kmax| (open convention, |B_0| = 0).
std::vector<std::uint64_t> ball_sizes(const Group& group, std::size_t kmax);

struct SphereRatioReport {
    double sup_ratio = 0.0;
    std::size_t argmax_m = 0;
    std::vector<double> ratios; // ratios[i] belongs to m = first_m + i
    bool stabilized = false;    // no new maximum in the upper half of the m-range
};

/// max over first_m <= m <= kmax - offset of
///   |B_{m+offset} \ B_{m+offset-1}| / |B_m \ B_{m-1}|.
/// Counts are exact integers; only the final division is floating point.
/// Throws DomainError naming the radius when a shell is empty.
SphereRatioReport sphere_ratio_sup(const Group& group, std::size_t kmax, std::size_t offset = 1,
                                   std::size_t first_m = 1);

/// Same computation over precomputed shell sizes (index k = |S_k|).
SphereRatioReport sphere_ratio_sup(const std::vector<std::uint64_t>& shells, std::size_t kmax,
                                   std::size_t offset = 1, std::size_t first_m = 1);

} // namespace gibbs
