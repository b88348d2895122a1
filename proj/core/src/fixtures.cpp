#include "gibbs/fixtures.hpp"

namespace gibbs::fixtures {

Group integers() { return Group(GroupSpec::parse("Z")); }

Group square_lattice() { return Group(GroupSpec::parse("Z^2")); }

Alphabet spins() { return Alphabet({"-1", "+1"}); }

Alphabet bits() { return Alphabet({"0", "1"}); }

SFT full_shift(const Group& group, const Alphabet& alphabet) { return SFT::full_shift(group, alphabet); }

SFT golden_mean()
{
    const std::vector<Element> support{Element{0}, Element{1}};
    const std::vector<Symbol> ones{1, 1};
    return SFT(integers(), bits(), {Pattern(support, ones)});
}

Interaction ising_chain(double beta)
{
    std::vector<double> table(4);
    for (Symbol a = 0; a < 2; ++a) {
        for (Symbol b = 0; b < 2; ++b) {
            table[static_cast<std::size_t>(2 * a + b)] = -beta * spin(a) * spin(b);
        }
    }
    return Interaction(integers(), spins(), {InteractionTerm{{Element{0}, Element{1}}, table}});
}

Interaction plaquette(double coupling, double field)
{
    const std::vector<Element> square{Element{0, 0}, Element{1, 0}, Element{0, 1}, Element{1, 1}};
    std::vector<double> table(16);
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
        const auto s = pattern_symbols(idx, 4, 2);
        table[idx] = -coupling * spin(s[0]) * spin(s[1]) * spin(s[2]) * spin(s[3]);
    }
    std::vector<InteractionTerm> terms{InteractionTerm{square, table}};
    if (field != 0.0) {
        terms.push_back(InteractionTerm{{Element{0, 0}}, {field, -field}});
    }
    return Interaction(square_lattice(), spins(), std::move(terms));
}

Interaction golden_site_bond(double field, double bond00, double bond01, double bond10)
{
    return Interaction(integers(), bits(),
                       {InteractionTerm{{Element{0}}, {0.0, field}},
                        InteractionTerm{{Element{0}, Element{1}}, {bond00, bond01, bond10, 0.0}}});
}

LocalPotential spin_product()
{
    return LocalPotential(integers(), spins(), {Element{0}, Element{1}}, {1.0, -1.0, -1.0, 1.0});
}

std::vector<Element> interval(std::int64_t a, std::int64_t b)
{
    std::vector<Element> out;
    for (std::int64_t i = a; i <= b; ++i) {
        out.push_back(Element{i});
    }
    return out;
}

Pattern constant_pattern(std::span<const Element> sites, Symbol s)
{
    Pattern p;
    for (const auto& g : sites) {
        p.set(g, s);
    }
    return p;
}

} // namespace gibbs::fixtures
