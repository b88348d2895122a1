#pragma once

#include <algorithm>
#include <span>

#include "gibbs/group.hpp"

namespace gibbs {

/// Lexicographic order on shortlex-sorted element lists.
inline bool support_less(const Group& group, std::span<const Element> a, std::span<const Element> b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [&](const Element& x, const Element& y) { return group.shortlex_less(x, y); });
}

} // namespace gibbs
