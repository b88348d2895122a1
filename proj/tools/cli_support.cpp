#include "cli_support.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>

#include "gibbs/errors.hpp"

namespace gibbscli {

using namespace gibbs;

const Group& Source::group() const
{
    if (const auto* phi = std::get_if<Interaction>(&model)) {
        return phi->group();
    }
    return potential_group(std::get<Potential>(model));
}

const Alphabet& Source::alphabet() const
{
    if (const auto* phi = std::get_if<Interaction>(&model)) {
        return phi->alphabet();
    }
    const auto& f = std::get<Potential>(model);
    if (const auto* local = std::get_if<LocalPotential>(&f)) {
        return local->alphabet();
    }
    return std::get<SeriesPotential>(f).alphabet;
}

CocycleSource Source::cocycle(std::optional<std::int64_t> tail_radius) const
{
    if (const auto* phi = std::get_if<Interaction>(&model)) {
        return CocycleSource(*phi, tail_radius);
    }
    const auto& f = std::get<Potential>(model);
    if (const auto* local = std::get_if<LocalPotential>(&f)) {
        return CocycleSource(*local);
    }
    throw UsageError("series potentials have no finite cocycle evaluation; use a local potential or an interaction");
}

json load_json(const std::string& spec)
{
    if (spec.empty()) {
        throw UsageError("empty file specification");
    }
    if (spec.front() == '{' || spec.front() == '[') {
        try {
            return json::parse(spec);
        } catch (const json::parse_error& e) {
            throw ValidationError(std::string("$: inline JSON does not parse: ") + e.what());
        }
    }
    return io::read_file(spec.front() == '@' ? spec.substr(1) : spec);
}

namespace {

std::string label(const std::string& spec)
{
    if (!spec.empty() && (spec.front() == '{' || spec.front() == '[')) {
        return "<inline>";
    }
    return spec.front() == '@' ? spec.substr(1) : spec;
}

template <class F>
auto in_file(const std::string& spec, F&& parse)
{
    const auto j = load_json(spec);
    try {
        return parse(j);
    } catch (const ValidationError& e) {
        throw ValidationError(label(spec) + ": " + e.what());
    }
}

} // namespace

Source load_source(const std::string& spec)
{
    return in_file(spec, [](const json& j) {
        if (j.is_object() && j.contains("kind")) {
            return Source{io::potential_from_json(j)};
        }
        return Source{io::interaction_from_json(j)};
    });
}

SFT load_sft(const std::string& spec, const Group& group, const Alphabet& alphabet)
{
    if (spec.empty()) {
        return SFT::full_shift(group, alphabet);
    }
    auto x = in_file(spec, [](const json& j) { return io::sft_from_json(j); });
    if (!(x.group() == group)) {
        throw ValidationError("$.group: subshift group " + x.group().spec().to_string() +
                              " differs from the source group " + group.spec().to_string());
    }
    if (!(x.alphabet() == alphabet)) {
        throw ValidationError("$.alphabet: subshift alphabet differs from the source alphabet");
    }
    return x;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) {
            return out;
        }
        start = pos + 1;
    }
}

std::int64_t to_int(const std::string& s, const std::string& what)
{
    std::int64_t v = 0;
    const auto* end = s.data() + s.size();
    const auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || p != end) {
        throw UsageError(what + ": expected an integer, got '" + s + "'");
    }
    return v;
}

} // namespace

std::vector<Element> parse_window(const std::string& spec, const Group& group)
{
    const auto parts = split(spec, ':');
    std::vector<Element> out;
    if (parts[0] == "ball" && parts.size() == 2) {
        const auto n = to_int(parts[1], "window ball radius");
        if (n < 1) {
            throw UsageError("window ball radius must be at least 1");
        }
        out = ball_elements(group, static_cast<std::size_t>(n));
    } else if (parts[0] == "interval" && parts.size() == 3) {
        if (group.spec().family != GroupFamily::IntegerLattice || group.spec().rank != 1) {
            throw UsageError("interval windows need the group Z");
        }
        const auto a = to_int(parts[1], "interval start");
        const auto b = to_int(parts[2], "interval end");
        if (b < a) {
            throw UsageError("interval end precedes its start");
        }
        for (auto i = a; i <= b; ++i) {
            out.push_back(Element{i});
        }
    } else if (parts[0] == "box" && parts.size() == 2) {
        if (group.spec().family != GroupFamily::IntegerLattice) {
            throw UsageError("box windows need a lattice group");
        }
        const auto r = to_int(parts[1], "box radius");
        const int d = group.dimension();
        std::vector<std::int64_t> c(static_cast<std::size_t>(d), -r);
        for (;;) {
            out.emplace_back(c);
            int i = d - 1;
            while (i >= 0 && c[static_cast<std::size_t>(i)] == r) {
                c[static_cast<std::size_t>(i)] = -r;
                --i;
            }
            if (i < 0) {
                break;
            }
            ++c[static_cast<std::size_t>(i)];
        }
    } else {
        const auto j = load_json(spec);
        if (!j.is_array() || j.empty()) {
            throw ValidationError("$: window must be a nonempty array of elements");
        }
        for (std::size_t i = 0; i < j.size(); ++i) {
            out.push_back(io::element_from_json(group, j[i], "$[" + std::to_string(i) + "]"));
        }
    }
    sort_shortlex(group, out);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Pattern parse_boundary(const std::string& spec, const Group& group, const Alphabet& alphabet,
                       std::span<const Element> window, std::int64_t default_radius)
{
    const auto parts = split(spec, ':');
    if (parts[0] == "const" && (parts.size() == 2 || parts.size() == 3)) {
        const Symbol s = alphabet.index_of(parts[1]);
        const auto radius = parts.size() == 3 ? to_int(parts[2], "boundary radius") : default_radius;
        if (radius < 1) {
            throw UsageError("boundary radius must be at least 1");
        }
        return constant_boundary(group, window, radius, s);
    }
    const auto p = io::pattern_from_json(group, alphabet, load_json(spec));
    for (const auto& g : window) {
        if (p.contains(g)) {
            throw UsageError("boundary pattern overlaps the window at " + group.format(g));
        }
    }
    return p;
}

Admissibility parse_semantics(const std::string& s)
{
    if (s == "exact") {
        return Admissibility::Exact1D;
    }
    if (s == "local") {
        return Admissibility::Local;
    }
    return parse_admissibility(s);
}

std::vector<std::string> expand_config(const std::vector<std::string>& args)
{
    auto it = std::find(args.begin(), args.end(), "--config");
    if (it == args.end()) {
        return args;
    }
    if (it + 1 == args.end()) {
        throw UsageError("--config needs a file");
    }
    const auto cfg = io::read_file(*(it + 1));
    if (!cfg.is_object()) {
        throw ValidationError("$: config must be an object");
    }
    std::vector<std::string> rest(args.begin(), it);
    rest.insert(rest.end(), it + 2, args.end());

    auto given = [&](const std::string& flag) {
        return std::any_of(rest.begin(), rest.end(),
                           [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
    };
    const bool has_command = rest.size() > 1 && rest[1].rfind("-", 0) != 0;
    std::vector<std::string> out{rest.front()};
    if (!has_command) {
        if (!cfg.contains("command") || !cfg["command"].is_string()) {
            throw ValidationError("$.command: config must name a subcommand");
        }
        out.push_back(cfg["command"].get<std::string>());
    } else {
        out.push_back(rest[1]);
    }
    for (const auto& [key, value] : cfg.items()) {
        if (key == "command") {
            continue;
        }
        const std::string flag = "--" + key;
        if (given(flag)) {
            continue;
        }
        if (value.is_boolean()) {
            if (value.get<bool>()) {
                out.push_back(flag);
            }
        } else if (value.is_string()) {
            out.push_back(flag);
            out.push_back(value.get<std::string>());
        } else if (value.is_number() || value.is_object() || value.is_array()) {
            out.push_back(flag);
            out.push_back(value.dump());
        } else {
            throw ValidationError("$." + key + ": unsupported config value");
        }
    }
    out.insert(out.end(), rest.begin() + (has_command ? 2 : 1), rest.end());
    return out;
}

json error_json(const std::string& kind, const std::string& message)
{
    json e;
    e["error"]["kind"] = kind;
    e["error"]["message"] = message;
    const auto start = message.find('$');
    if (start != std::string::npos) {
        const auto end = message.find(": ", start);
        e["error"]["path"] = message.substr(start, end == std::string::npos ? std::string::npos : end - start);
        if (start >= 2 && message.compare(start - 2, 2, ": ") == 0) {
            e["error"]["file"] = message.substr(0, start - 2);
        }
    }
    return e;
}

} // namespace gibbscli
