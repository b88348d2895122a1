#include "gibbs/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "gibbs/errors.hpp"

namespace gibbs::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what)
{
    throw ValidationError(path + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& path)
{
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    const auto it = j.find(key);
    if (it == j.end()) {
        fail(path, std::string("missing field '") + key + "'");
    }
    return *it;
}

std::int64_t integer(const json& j, const std::string& path)
{
    if (!j.is_number_integer()) {
        fail(path, "expected an integer");
    }
    return j.get<std::int64_t>();
}

double real(const json& j, const std::string& path)
{
    if (!j.is_number()) {
        fail(path, "expected a number");
    }
    return j.get<double>();
}

std::string text(const json& j, const std::string& path)
{
    if (!j.is_string()) {
        fail(path, "expected a string");
    }
    return j.get<std::string>();
}

Group group_from(const json& j, const std::string& path)
{
    const auto spec = text(field(j, "group", path), path + ".group");
    try {
        return Group(GroupSpec::parse(spec));
    } catch (const Error& e) {
        fail(path + ".group", e.what());
    }
}

Alphabet alphabet_from(const json& j, const std::string& path)
{
    const auto& a = field(j, "alphabet", path);
    if (!a.is_array() || a.empty()) {
        fail(path + ".alphabet", "expected a nonempty array of symbol names");
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < a.size(); ++i) {
        names.push_back(a[i].is_string() ? a[i].get<std::string>() : a[i].dump());
    }
    try {
        return Alphabet(std::move(names));
    } catch (const Error& e) {
        fail(path + ".alphabet", e.what());
    }
}

json alphabet_to_json(const Alphabet& a)
{
    json out = json::array();
    for (const auto& n : a.names()) {
        out.push_back(n);
    }
    return out;
}

std::vector<Element> support_from(const Group& group, const json& j, const std::string& path)
{
    if (!j.is_array()) {
        fail(path, "expected an array of element descriptors");
    }
    std::vector<Element> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(element_from_json(group, j[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

json support_to_json(const Group& group, std::span<const Element> support)
{
    json out = json::array();
    for (const auto& g : support) {
        out.push_back(element_to_json(group, g));
    }
    return out;
}

std::string tuple_key(const Alphabet& a, std::span<const Symbol> symbols)
{
    std::string key;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        key += (i ? "," : "") + a.name(symbols[i]);
    }
    return key;
}

json table_to_json(const Alphabet& a, std::size_t length, const std::vector<double>& table)
{
    json out = json::object();
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
        out[tuple_key(a, pattern_symbols(idx, length, a.size()))] = table[idx];
    }
    return out;
}

std::vector<double> table_from(const Alphabet& a, std::size_t length, const json& j, const std::string& path)
{
    std::size_t size = 1;
    for (std::size_t i = 0; i < length; ++i) {
        if (size > enumeration_budget() / a.size()) {
            fail(path, "table exceeds the enumeration budget");
        }
        size *= a.size();
    }
    std::vector<double> table(size, 0.0);
    if (j.is_array()) {
        if (j.size() != size) {
            fail(path, "table has " + std::to_string(j.size()) + " entries, expected " + std::to_string(size));
        }
        for (std::size_t i = 0; i < size; ++i) {
            table[i] = real(j[i], path + "[" + std::to_string(i) + "]");
        }
        return table;
    }
    if (!j.is_object()) {
        fail(path, "expected an object keyed by symbol tuples or an array");
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::vector<Symbol> symbols;
        std::stringstream ss(it.key());
        std::string name;
        if (!it.key().empty()) {
            while (std::getline(ss, name, ',')) {
                try {
                    symbols.push_back(a.index_of(name));
                } catch (const Error& e) {
                    fail(path + "[\"" + it.key() + "\"]", e.what());
                }
            }
        }
        if (symbols.size() != length) {
            fail(path + "[\"" + it.key() + "\"]", "tuple length does not match the support size " + std::to_string(length));
        }
        table[pattern_index(symbols, a.size())] = real(it.value(), path + "[\"" + it.key() + "\"]");
    }
    return table;
}

LocalPotential local_from(const Group& group, const Alphabet& alphabet, const json& j, const std::string& path)
{
    auto support = support_from(group, field(j, "support", path), path + ".support");
    auto table = table_from(alphabet, support.size(), field(j, "table", path), path + ".table");
    try {
        LocalPotential f(group, alphabet, support, std::move(table));
        if (j.contains("radius") && integer(j["radius"], path + ".radius") < f.radius()) {
            fail(path + ".radius", "declared radius is smaller than the support radius " + std::to_string(f.radius()));
        }
        return f;
    } catch (const ValidationError&) {
        throw;
    } catch (const Error& e) {
        fail(path, e.what());
    }
}

json local_to_json(const LocalPotential& f)
{
    json out;
    out["support"] = support_to_json(f.group(), f.support());
    out["radius"] = f.radius();
    out["table"] = table_to_json(f.alphabet(), f.support().size(), f.table());
    return out;
}

} // namespace

// ---------------------------------------------------------------------------

json element_to_json(const Group& group, const Element& g)
{
    if (group.spec().family == GroupFamily::Free) {
        return group.format(g);
    }
    if (group.is_lattice() && g.data.size() == 1) {
        return g.data[0];
    }
    json out = json::array();
    for (const auto v : g.data) {
        out.push_back(v);
    }
    return out;
}

Element element_from_json(const Group& group, const json& j, const std::string& path)
{
    Element g;
    if (group.spec().family == GroupFamily::Free) {
        const auto word = text(j, path);
        if (word != "e") {
            for (char c : word) {
                if (c >= 'a' && c < 'a' + group.spec().rank) {
                    g.data.push_back(c - 'a' + 1);
                } else if (c >= 'A' && c < 'A' + group.spec().rank) {
                    g.data.push_back(-(c - 'A' + 1));
                } else {
                    fail(path, std::string("letter '") + c + "' is not a generator of " + group.spec().to_string());
                }
            }
        }
    } else if (j.is_number_integer()) {
        g.data.push_back(j.get<std::int64_t>());
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            g.data.push_back(integer(j[i], path + "[" + std::to_string(i) + "]"));
        }
    } else {
        fail(path, "expected an integer or an integer array");
    }
    try {
        group.check_member(g);
    } catch (const Error& e) {
        fail(path, e.what());
    }
    return g;
}

json pattern_to_json(const Group& group, const Alphabet& alphabet, const Pattern& p)
{
    json out;
    json support = json::array();
    json symbols = json::array();
    for (const auto& g : p.support(group)) {
        support.push_back(element_to_json(group, g));
        symbols.push_back(alphabet.name(p.at(g)));
    }
    out["support"] = std::move(support);
    out["symbols"] = std::move(symbols);
    return out;
}

Pattern pattern_from_json(const Group& group, const Alphabet& alphabet, const json& j, const std::string& path)
{
    const auto support = support_from(group, field(j, "support", path), path + ".support");
    const auto& sym = field(j, "symbols", path);
    if (!sym.is_array() || sym.size() != support.size()) {
        fail(path + ".symbols", "expected one symbol per support element");
    }
    Pattern p;
    for (std::size_t i = 0; i < support.size(); ++i) {
        const std::string where = path + ".symbols[" + std::to_string(i) + "]";
        const std::string name = sym[i].is_string() ? sym[i].get<std::string>() : sym[i].dump();
        Symbol s = 0;
        try {
            s = alphabet.index_of(name);
        } catch (const Error& e) {
            fail(where, e.what());
        }
        if (p.contains(support[i])) {
            fail(path + ".support", "repeated element " + group.format(support[i]));
        }
        p.set(support[i], s);
    }
    return p;
}

json sft_to_json(const SFT& x)
{
    json out;
    out["group"] = x.group().spec().to_string();
    out["alphabet"] = alphabet_to_json(x.alphabet());
    json forbidden = json::array();
    for (const auto& f : x.forbidden()) {
        forbidden.push_back(pattern_to_json(x.group(), x.alphabet(), f));
    }
    out["forbidden"] = std::move(forbidden);
    return out;
}

SFT sft_from_json(const json& j)
{
    const std::string path = "$";
    const auto group = group_from(j, path);
    const auto alphabet = alphabet_from(j, path);
    std::vector<Pattern> forbidden;
    if (j.contains("forbidden")) {
        const auto& f = j["forbidden"];
        if (!f.is_array()) {
            fail("$.forbidden", "expected an array of patterns");
        }
        for (std::size_t i = 0; i < f.size(); ++i) {
            forbidden.push_back(pattern_from_json(group, alphabet, f[i], "$.forbidden[" + std::to_string(i) + "]"));
        }
    }
    try {
        return SFT(group, alphabet, std::move(forbidden));
    } catch (const ValidationError&) {
        throw;
    } catch (const Error& e) {
        fail(path, e.what());
    }
}

json interaction_to_json(const Interaction& phi)
{
    json out;
    out["group"] = phi.group().spec().to_string();
    out["alphabet"] = alphabet_to_json(phi.alphabet());
    json terms = json::array();
    for (const auto& t : phi.terms()) {
        json term;
        term["support"] = support_to_json(phi.group(), t.support);
        term["table"] = table_to_json(phi.alphabet(), t.support.size(), t.table);
        terms.push_back(std::move(term));
    }
    out["terms"] = std::move(terms);
    if (const auto& tail = phi.tail()) {
        json t;
        t["profile"] = "inverse-power";
        t["coefficient"] = tail->coefficient;
        t["power"] = tail->power;
        json rows = json::array();
        const std::size_t q = phi.alphabet().size();
        for (std::size_t a = 0; a < q; ++a) {
            json row = json::array();
            for (std::size_t b = 0; b < q; ++b) {
                row.push_back(tail->pair_table[a * q + b]);
            }
            rows.push_back(std::move(row));
        }
        t["pair_table"] = std::move(rows);
        t["tail_bound_formula"] = tail->bound.to_string();
        out["tail"] = std::move(t);
    }
    return out;
}

Interaction interaction_from_json(const json& j)
{
    const std::string path = "$";
    const auto group = group_from(j, path);
    const auto alphabet = alphabet_from(j, path);
    std::vector<InteractionTerm> terms;
    const auto& ts = field(j, "terms", path);
    if (!ts.is_array()) {
        fail("$.terms", "expected an array");
    }
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const std::string where = "$.terms[" + std::to_string(i) + "]";
        auto support = support_from(group, field(ts[i], "support", where), where + ".support");
        auto table = table_from(alphabet, support.size(), field(ts[i], "table", where), where + ".table");
        terms.push_back(InteractionTerm{std::move(support), std::move(table)});
    }
    std::optional<RadialPairTail> tail;
    if (j.contains("tail") && !j["tail"].is_null()) {
        const auto& t = j["tail"];
        const std::string where = "$.tail";
        RadialPairTail r;
        const auto profile = text(field(t, "profile", where), where + ".profile");
        if (profile == "inverse-square") {
            r.power = 2.0;
        } else if (profile == "inverse-power") {
            r.power = real(field(t, "power", where), where + ".power");
        } else {
            fail(where + ".profile", "unknown profile '" + profile + "' (expected inverse-square or inverse-power)");
        }
        r.coefficient = real(field(t, "coefficient", where), where + ".coefficient");
        const std::size_t q = alphabet.size();
        if (t.contains("pair_table")) {
            const auto& rows = t["pair_table"];
            if (!rows.is_array() || rows.size() != q) {
                fail(where + ".pair_table", "expected an |A| x |A| array");
            }
            for (std::size_t a = 0; a < q; ++a) {
                if (!rows[a].is_array() || rows[a].size() != q) {
                    fail(where + ".pair_table[" + std::to_string(a) + "]", "expected |A| entries");
                }
                for (std::size_t b = 0; b < q; ++b) {
                    r.pair_table.push_back(real(rows[a][b], where + ".pair_table"));
                }
            }
        } else {
            // default: energy on the all-last-symbol pair only
            r.pair_table.assign(q * q, 0.0);
            r.pair_table.back() = 1.0;
        }
        try {
            r.bound = TailBound::parse(text(field(t, "tail_bound_formula", where), where + ".tail_bound_formula"));
        } catch (const Error& e) {
            fail(where + ".tail_bound_formula", e.what());
        }
        tail = std::move(r);
    }
    try {
        return Interaction(group, alphabet, std::move(terms), std::move(tail));
    } catch (const ValidationError& e) {
        fail(path, e.what());
    } catch (const Error& e) {
        fail(path, e.what());
    }
}

json potential_to_json(const Potential& f)
{
    json out;
    if (const auto* local = std::get_if<LocalPotential>(&f)) {
        out["kind"] = "local";
        out["group"] = local->group().spec().to_string();
        out["alphabet"] = alphabet_to_json(local->alphabet());
        const json body = local_to_json(*local);
        for (auto& [k, v] : body.items()) {
            out[k] = v;
        }
        return out;
    }
    const auto& s = std::get<SeriesPotential>(f);
    out["kind"] = "series";
    out["group"] = s.group.spec().to_string();
    out["alphabet"] = alphabet_to_json(s.alphabet);
    json pieces = json::array();
    for (const auto& p : s.pieces) {
        pieces.push_back(local_to_json(p));
    }
    out["pieces"] = std::move(pieces);
    json v;
    v["profile"] = s.variations.kind == VariationProfile::Kind::InverseSquareTail ? "inverse-square-tail" : "power";
    v["coefficient"] = s.variations.coefficient;
    v["power"] = s.variations.power;
    out["variations"] = std::move(v);
    out["piece_tail"] = s.piece_tail;
    out["sup_norm"] = s.sup_norm;
    return out;
}

Potential potential_from_json(const json& j)
{
    const std::string path = "$";
    const auto group = group_from(j, path);
    const auto alphabet = alphabet_from(j, path);
    const auto kind = text(field(j, "kind", path), "$.kind");
    if (kind == "local") {
        return local_from(group, alphabet, j, path);
    }
    if (kind != "series") {
        fail("$.kind", "unknown potential kind '" + kind + "' (expected local or series)");
    }
    SeriesPotential s{group, alphabet, {}, {}, 0.0, 0.0};
    if (j.contains("pieces")) {
        const auto& ps = j["pieces"];
        if (!ps.is_array()) {
            fail("$.pieces", "expected an array");
        }
        for (std::size_t i = 0; i < ps.size(); ++i) {
            s.pieces.push_back(local_from(group, alphabet, ps[i], "$.pieces[" + std::to_string(i) + "]"));
        }
    }
    const json* v = nullptr;
    if (j.contains("variations")) {
        v = &j["variations"];
    } else if (j.contains("majorant")) {
        v = &j["majorant"];
    } else {
        fail(path, "series potential needs 'variations'");
    }
    const auto profile = text(field(*v, "profile", "$.variations"), "$.variations.profile");
    if (profile == "inverse-square-tail") {
        s.variations.kind = VariationProfile::Kind::InverseSquareTail;
    } else if (profile == "power") {
        s.variations.kind = VariationProfile::Kind::Power;
        s.variations.power = real(field(*v, "power", "$.variations"), "$.variations.power");
    } else {
        fail("$.variations.profile", "unknown profile '" + profile + "' (expected inverse-square-tail or power)");
    }
    s.variations.coefficient = real(field(*v, "coefficient", "$.variations"), "$.variations.coefficient");
    if (s.variations.coefficient < 0.0) {
        fail("$.variations.coefficient", "variations must be nonnegative");
    }
    if (j.contains("piece_tail")) {
        s.piece_tail = real(j["piece_tail"], "$.piece_tail");
    }
    if (j.contains("sup_norm")) {
        s.sup_norm = real(j["sup_norm"], "$.sup_norm");
    } else {
        s.sup_norm = s.variations.value(0);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Reports

json number(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "+inf" : "-inf";
    }
    return v;
}

json to_json(const NormReport& r)
{
    json out;
    out["kind"] = r.kind;
    out["group"] = r.group.to_string();
    out["semantics"] = r.semantics;
    out["value"] = number(r.value);
    out["exact"] = r.exact;
    out["converged"] = r.converged;
    out["tail_bound"] = number(r.tail_bound);
    json v = json::array();
    for (double x : r.variations) {
        v.push_back(number(x));
    }
    out["variations"] = std::move(v);
    json p = json::array();
    for (double x : r.partial_sums) {
        p.push_back(number(x));
    }
    out["partial_sums"] = std::move(p);
    if (r.divergence) {
        json d;
        d["minorant"] = r.divergence->minorant;
        d["series"] = r.divergence->series;
        d["threshold"] = r.divergence->threshold;
        d["witness_k"] = r.divergence->witness_k;
        d["witness_sum"] = r.divergence->witness_sum;
        out["divergence_certificate"] = std::move(d);
    } else {
        out["divergence_certificate"] = nullptr;
    }
    return out;
}

json to_json(const SpecificationKernel& k, const Group& group, const Alphabet& alphabet)
{
    json out;
    out["region"] = support_to_json(group, k.region);
    out["boundary"] = pattern_to_json(group, alphabet, k.boundary);
    out["semantics"] = k.semantics;
    out["reference"] = k.reference;
    out["truncation_error"] = number(k.truncation_error);
    json rows = json::array();
    for (std::size_t i = 0; i < k.fillings.size(); ++i) {
        json row;
        json symbols = json::array();
        for (const auto& g : k.region) {
            symbols.push_back(alphabet.name(k.fillings[i].at(g)));
        }
        row["filling"] = std::move(symbols);
        row["probability"] = number(k.probabilities[i]);
        rows.push_back(std::move(row));
    }
    out["fillings"] = std::move(rows);
    return out;
}

json to_json(const RNResult& r, const Group& group)
{
    json out;
    out["sites"] = support_to_json(group, r.sites);
    out["pairs_tested"] = r.pairs_tested;
    out["configurations"] = r.configurations;
    out["max_deviation"] = number(r.max_deviation);
    out["min_derivative"] = number(r.min_derivative);
    out["semantics"] = r.semantics;
    return out;
}

json to_json(const ConsistencyReport& r)
{
    json out;
    out["max_deviation"] = number(r.max_deviation);
    out["conditions_tested"] = r.conditions_tested;
    out["skipped_null"] = r.skipped_null;
    return out;
}

json to_json(const BNorm& b)
{
    json out;
    out["value"] = number(b.value);
    out["tail_bound"] = number(b.tail_bound);
    out["tail_terms"] = b.tail_terms;
    return out;
}

json read_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ValidationError(path.string() + ": cannot open file");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(path.string() + ": malformed JSON (" + e.what() + ")");
    }
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path);
    if (!out) {
        throw UsageError(path.string() + ": cannot write file");
    }
    out << content;
}

} // namespace gibbs::io
