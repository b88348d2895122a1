#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gibbs/group.hpp"
#include "gibbs/interaction.hpp"
#include "gibbs/subshift.hpp"

namespace gibbs {

/// f(x) = table(x restricted to support). The support is kept in shortlex
/// order and the table uses the same mixed-radix layout as interactions.
class LocalPotential {
public:
    LocalPotential(Group group, Alphabet alphabet, std::vector<Element> support, std::vector<double> table);

    static LocalPotential constant(Group group, Alphabet alphabet, double c);

    const Group& group() const { return group_; }
    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<Element>& support() const { return support_; }
    const std::vector<double>& table() const { return table_; }

    /// Smallest r >= 1 with support inside B_r.
    std::int64_t radius() const { return radius_; }

    double value(const Pattern& x) const;
    /// f(g.x), which reads x on g^{-1} support.
    double value_at(const Element& g, const Pattern& x) const;
    double sup_norm() const;

private:
    Group group_;
    Alphabet alphabet_;
    std::vector<Element> support_;
    std::vector<double> table_;
    std::int64_t radius_ = 1;
};

/// Declared variation sequence of a series potential.
///   inverse-square-tail: v_k = c * sum_{l >= max(k,1)} 1/l^2  (exact, minorant c/k)
///   power:               v_k <= c / (k+1)^p                   (upper bound)
struct VariationProfile {
    enum class Kind { InverseSquareTail, Power };
    Kind kind = Kind::Power;
    double coefficient = 0.0;
    double power = 2.0;

    bool exact() const { return kind == Kind::InverseSquareTail; }
    double value(std::size_t k) const;
    /// A certified lower bound for v_k (0 when none is known).
    double minorant(std::size_t k) const;
    std::string describe() const;
};

/// f = sum_i f^(i) with the pieces kept for evaluation and the variations
/// supplied analytically. `piece_tail` bounds |f - sum of pieces| uniformly.
struct SeriesPotential {
    Group group;
    Alphabet alphabet;
    std::vector<LocalPotential> pieces;
    VariationProfile variations;
    double piece_tail = 0.0;
    double sup_norm = 0.0;
};

using Potential = std::variant<LocalPotential, SeriesPotential>;

const Group& potential_group(const Potential& f);

struct VariationValue {
    double value = 0.0;
    bool exact = true; // false: upper bound over locally admissible patterns
};

/// v_k(f) for k >= 0 (v_0 is the sup norm over admissible patterns).
VariationValue variation(const LocalPotential& f, const SFT& x, std::size_t k,
                         Admissibility semantics = Admissibility::Exact1D);

/// All of v_0 .. v_{r-1}; later variations vanish.
std::vector<VariationValue> variations(const LocalPotential& f, const SFT& x,
                                       Admissibility semantics = Admissibility::Exact1D);

struct DivergenceCertificate {
    std::string minorant;  // v_k >= ...
    std::string series;    // sum that diverges
    double threshold = 0.0;
    std::size_t witness_k = 0; // partial minorant sum exceeds threshold here
    double witness_sum = 0.0;
};

struct NormReport {
    std::string kind; // "shell" or "volume"
    GroupSpec group;
    std::string semantics;
    double value = 0.0; // +inf when divergent
    bool exact = true;
    bool converged = true;
    double tail_bound = 0.0;
    std::vector<double> variations;
    std::vector<double> partial_sums;
    std::optional<DivergenceCertificate> divergence;
};

/// sum_k |S_k| v_k. For local f the sum is finite and exact up to r-1.
NormReport shell_norm(const LocalPotential& f, const SFT& x, Admissibility semantics = Admissibility::Exact1D);
/// sum_k |B_k| v_k with |B_0| = 0.
NormReport volume_norm(const LocalPotential& f, const SFT& x, Admissibility semantics = Admissibility::Exact1D);

/// Partial sums up to kmax. A divergent minorant is reported with the first K
/// at which its partial sum passes `threshold`.
NormReport shell_norm(const SeriesPotential& f, std::size_t kmax, double threshold = 10.0);
NormReport volume_norm(const SeriesPotential& f, std::size_t kmax, double threshold = 10.0);

/// f_m(z) = sum_{g in B_m} f(g.z). Throws DomainError when z misses a site.
double partial_sum_f_m(const LocalPotential& f, std::size_t m, const Pattern& z);

/// phi_f(x, y) = sum_g [f(g.y) - f(g.x)] over the finitely many g with
/// g^{-1} support meeting delta.
CocycleValue cocycle_potential(const LocalPotential& f, const Pattern& x, const Pattern& y,
                               std::span<const Element> delta);

/// Bound on |phi_f(x, y)| for x, y differing inside B_n:
///   2 |B_n| ||f||_inf + sup_ratio * ||f||   (shell norm ||f||).
double cocycle_bound(const Group& group, std::size_t n, double sup_norm, double shell_norm_value,
                     double sup_ratio);

} // namespace gibbs
