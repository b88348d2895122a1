#pragma once

#include <cstddef>
#include <cstdint>

#include "gibbs/group.hpp"

namespace gibbs {

struct ElementHash {
    std::size_t operator()(const Element& e) const noexcept
    {
        std::uint64_t h = 0xcbf29ce484222325ull ^ e.data.size();
        for (const auto v : e.data) {
            h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace gibbs
