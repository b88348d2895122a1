#pragma once

#include <cstdint>
#include <vector>

#include "gibbs/interaction.hpp"
#include "gibbs/potential.hpp"
#include "gibbs/subshift.hpp"

namespace gibbs::fixtures {

Group integers();
Group square_lattice();

/// {"-1", "+1"}; symbol s has spin 2s - 1.
Alphabet spins();
/// {"0", "1"}.
Alphabet bits();
inline int spin(Symbol s) { return 2 * s - 1; }

SFT full_shift(const Group& group, const Alphabet& alphabet);

/// Forbids the word 11 on {0,1}^Z.
SFT golden_mean();

/// Phi_{0,1}(x) = -beta x_0 x_1 on {-1,+1}^Z.
Interaction ising_chain(double beta);

/// Phi on the unit square of Z^2: -coupling x_00 x_10 x_01 x_11, plus a
/// single-site field term -field x_0.
Interaction plaquette(double coupling = 1.0, double field = 0.25);

/// Golden mean shift energies: site term on {0} and a bond term on {0,1}
/// with distinct values on 00, 01, 10.
Interaction golden_site_bond(double field = 0.7, double bond00 = 0.25, double bond01 = -0.5, double bond10 = 0.4);

/// f(x) = x_0 x_1 on {-1,+1}^Z.
LocalPotential spin_product();

/// The integers a, a+1, ..., b.
std::vector<Element> interval(std::int64_t a, std::int64_t b);

/// Pattern on `sites` with every symbol equal to s.
Pattern constant_pattern(std::span<const Element> sites, Symbol s);

} // namespace gibbs::fixtures
