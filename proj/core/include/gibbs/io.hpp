#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "gibbs/conversion.hpp"
#include "gibbs/dlr.hpp"
#include "gibbs/group.hpp"
#include "gibbs/interaction.hpp"
#include "gibbs/potential.hpp"
#include "gibbs/subshift.hpp"

namespace gibbs::io {

using json = nlohmann::ordered_json;

/// Element descriptors: an integer (Z), an integer array (Z^d, H3), or a
/// word over a, b, ... with capitals for inverses (free groups; "e" is the
/// identity).
json element_to_json(const Group& group, const Element& g);
Element element_from_json(const Group& group, const json& j, const std::string& path = "$");

json pattern_to_json(const Group& group, const Alphabet& alphabet, const Pattern& p);
Pattern pattern_from_json(const Group& group, const Alphabet& alphabet, const json& j, const std::string& path = "$");

json sft_to_json(const SFT& x);
SFT sft_from_json(const json& j);

/// Tables are written as objects keyed by comma-joined symbol tuples;
/// arrays in mixed-radix order are accepted on input. Omitted tuples have
/// energy 0.
json interaction_to_json(const Interaction& phi);
Interaction interaction_from_json(const json& j);

json potential_to_json(const Potential& f);
Potential potential_from_json(const json& j);

/// Doubles as numbers, non-finite values as the strings "+inf", "-inf", "nan".
json number(double v);

json to_json(const NormReport& r);
json to_json(const SpecificationKernel& k, const Group& group, const Alphabet& alphabet);
json to_json(const RNResult& r, const Group& group);
json to_json(const ConsistencyReport& r);
json to_json(const BNorm& b);

json read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

} // namespace gibbs::io
