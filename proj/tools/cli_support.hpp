#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gibbs/io.hpp"

namespace gibbscli {

using gibbs::io::json;

/// A source file is either an interaction or a potential (it has "kind").
struct Source {
    std::variant<gibbs::Interaction, gibbs::Potential> model;

    const gibbs::Group& group() const;
    const gibbs::Alphabet& alphabet() const;
    bool is_interaction() const { return model.index() == 0; }
    /// Throws UsageError for series potentials.
    gibbs::CocycleSource cocycle(std::optional<std::int64_t> tail_radius) const;
};

/// "@path" or a path reads a file; text starting with '{' or '[' is inline.
json load_json(const std::string& spec);

Source load_source(const std::string& spec);

/// Full shift over the source's group and alphabet when `spec` is empty.
gibbs::SFT load_sft(const std::string& spec, const gibbs::Group& group, const gibbs::Alphabet& alphabet);

/// "ball:N", "interval:A:B" (Z only), "box:R" (lattices, |coords| <= R), or a
/// JSON array of elements (inline or @file).
std::vector<gibbs::Element> parse_window(const std::string& spec, const gibbs::Group& group);

/// "const:SYM" or "const:SYM:RADIUS" on the collar of the window, or a JSON
/// pattern {support, symbols}.
gibbs::Pattern parse_boundary(const std::string& spec, const gibbs::Group& group, const gibbs::Alphabet& alphabet,
                              std::span<const gibbs::Element> window, std::int64_t default_radius);

gibbs::Admissibility parse_semantics(const std::string& s);

/// Expands `--config FILE` into argv entries. Keys become --key; explicit
/// command-line options win over the file.
std::vector<std::string> expand_config(const std::vector<std::string>& args);

json error_json(const std::string& kind, const std::string& message);

} // namespace gibbscli
