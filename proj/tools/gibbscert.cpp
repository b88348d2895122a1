#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "cli_support.hpp"
#include "gibbs/conversion.hpp"
#include "gibbs/dlr.hpp"
#include "gibbs/errors.hpp"

using namespace gibbs;
using namespace gibbscli;

namespace {

constexpr int kOk = 0;
constexpr int kBreach = 1;
constexpr int kInvalid = 2;

struct Output {
    std::string out;
    std::string csv;
};

void emit(const Output& o, const json& report)
{
    const std::string text = report.dump(2) + "\n";
    if (o.out.empty() || o.out == "-") {
        std::cout << text;
    } else {
        io::write_file(o.out, text);
    }
}

void emit_csv(const Output& o, const std::string& text)
{
    if (o.csv.empty()) {
        return;
    }
    if (o.csv == "-") {
        std::cout << text;
    } else {
        io::write_file(o.csv, text);
    }
}

json typed(const std::string& text)
{
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (!text.empty() && end == text.c_str() + text.size() && std::isfinite(v)) {
        return json::parse(text, nullptr, false).is_number() ? json::parse(text) : json(v);
    }
    return text;
}

json resolved_config(const CLI::App& sub)
{
    json cfg;
    cfg["command"] = sub.get_name();
    for (const auto* opt : sub.get_options()) {
        if (opt->get_lnames().empty() || opt->get_lnames()[0] == "help") {
            continue;
        }
        const auto& name = opt->get_lnames()[0];
        if (opt->count() > 0) {
            const auto& r = opt->results();
            if (opt->get_type_size() == 0) {
                cfg[name] = true;
            } else {
                cfg[name] = r.size() == 1 ? typed(r[0]) : json(r);
            }
        } else if (!opt->get_default_str().empty()) {
            cfg[name] = typed(opt->get_default_str());
        } else if (opt->get_type_size() == 0) {
            cfg[name] = false;
        } else {
            cfg[name] = nullptr;
        }
    }
    return cfg;
}

json envelope(const CLI::App& sub, const std::string& semantics, std::optional<double> tolerance)
{
    json r;
    r["command"] = sub.get_name();
    r["config"] = resolved_config(sub);
    r["semantics"] = semantics;
    r["tolerance"] = tolerance ? json(*tolerance) : json(nullptr);
    return r;
}

int breach(const std::string& invariant, double deviation, double tolerance)
{
    json e;
    e["tolerance_breach"]["invariant"] = invariant;
    e["tolerance_breach"]["max_deviation"] = io::number(deviation);
    e["tolerance_breach"]["tolerance"] = tolerance;
    std::cerr << e.dump() << "\n";
    return kBreach;
}

std::string csv_number(double v)
{
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

std::int64_t default_reach(const CocycleSource& src, const SFT& x)
{
    return std::max<std::int64_t>({src.reach(), x.range(), 1});
}

// ---------------------------------------------------------------- growth

struct GrowthArgs {
    std::string group;
    std::size_t kmax = 20;
    std::size_t offset = 1;
    std::size_t first_m = 1;
};

int run_growth(const CLI::App& sub, const GrowthArgs& a, const Output& o)
{
    const Group g(GroupSpec::parse(a.group));
    const auto shells = shell_sizes(g, a.kmax);
    const auto balls = ball_sizes(g, a.kmax);
    const auto ratio = sphere_ratio_sup(shells, a.kmax, a.offset, a.first_m);

    std::ostringstream csv;
    csv << "k,ball,shell,ratio\n";
    for (std::size_t k = 0; k <= a.kmax; ++k) {
        csv << k << "," << balls[k] << "," << shells[k] << ",";
        // row k carries the ratio for m = k + 1, |S_{m+offset-1}| / |S_{m-1}|
        if (k + 1 >= a.first_m && k + 1 + a.offset <= a.kmax) {
            csv << csv_number(static_cast<double>(shells[k + a.offset]) / static_cast<double>(shells[k]));
        }
        csv << "\n";
    }
    emit_csv(o, csv.str());

    auto r = envelope(sub, "exact-integer", std::nullopt);
    r["ball_convention"] = "open: B_k = {|g| < k}, S_k = {|g| = k}";
    r["shells"] = shells;
    r["balls"] = balls;
    r["sup_ratio"] = ratio.sup_ratio;
    r["argmax_m"] = ratio.argmax_m;
    r["stabilized"] = ratio.stabilized;
    emit(o, r);
    return kOk;
}

// ---------------------------------------------------------------- norms

struct NormsArgs {
    std::string potential;
    std::string sft;
    std::string group;
    std::size_t kmax = 200;
    double threshold = 10.0;
    std::string semantics = "exact";
};

int run_norms(const CLI::App& sub, const NormsArgs& a, const Output& o)
{
    const auto src = load_source(a.potential);
    if (src.is_interaction()) {
        throw UsageError("--potential expects a potential file (with \"kind\"); convert interactions first");
    }
    if (!a.group.empty() && !(GroupSpec::parse(a.group) == src.group().spec())) {
        throw ValidationError("$.group: potential is over " + src.group().spec().to_string() + ", not " + a.group);
    }
    const auto& f = std::get<Potential>(src.model);
    json result;
    std::string semantics;
    if (const auto* local = std::get_if<LocalPotential>(&f)) {
        const auto x = load_sft(a.sft, local->group(), local->alphabet());
        const auto sem = parse_semantics(a.semantics);
        const auto shell = shell_norm(*local, x, sem);
        result["shell"] = io::to_json(shell);
        result["volume"] = io::to_json(volume_norm(*local, x, sem));
        semantics = shell.semantics;
    } else {
        const auto& s = std::get<SeriesPotential>(f);
        const auto shell = shell_norm(s, a.kmax, a.threshold);
        result["shell"] = io::to_json(shell);
        result["volume"] = io::to_json(volume_norm(s, a.kmax, a.threshold));
        semantics = shell.semantics;
    }
    auto r = envelope(sub, semantics, std::nullopt);
    r["result"] = std::move(result);
    emit(o, r);
    return kOk;
}

// ---------------------------------------------------------------- convert

struct ConvertArgs {
    std::string interaction;
    std::string scheme = "dictator";
};

int run_convert(const CLI::App&, const ConvertArgs& a, const Output& o)
{
    const auto src = load_source(a.interaction);
    if (!src.is_interaction()) {
        throw UsageError("--interaction expects an interaction file");
    }
    const auto& phi = std::get<Interaction>(src.model);
    const auto scheme = WeightScheme::parse(a.scheme);
    check_normalised(phi, scheme);
    emit(o, io::potential_to_json(Potential(translate_weight(phi, scheme))));
    return kOk;
}

// ---------------------------------------------------------------- windows

struct WindowArgs {
    std::string sft;
    std::string source;
    std::string window;
    std::string boundary;
    std::string semantics = "exact";
    std::optional<std::int64_t> tail_radius;
};

struct Window {
    Source source;
    SFT sft;
    CocycleSource cocycle;
    std::vector<Element> region;
    Pattern boundary;
    Admissibility semantics;
};

Window open_window(const WindowArgs& a)
{
    auto source = load_source(a.source);
    auto cocycle = source.cocycle(a.tail_radius);
    auto x = load_sft(a.sft, source.group(), source.alphabet());
    auto region = parse_window(a.window, source.group());
    auto boundary = parse_boundary(a.boundary, source.group(), source.alphabet(), region, default_reach(cocycle, x));
    const auto sem = parse_semantics(a.semantics);
    return Window{std::move(source), std::move(x), std::move(cocycle), std::move(region), std::move(boundary), sem};
}

void add_window_options(CLI::App* sub, WindowArgs& a, bool required)
{
    sub->add_option("--sft", a.sft, "Subshift file (default: full shift)");
    sub->add_option("--source", a.source, "Interaction or local potential file")->required(required);
    sub->add_option("--window", a.window, "ball:N, interval:A:B, box:R, or a JSON element array")->required(required);
    sub->add_option("--boundary", a.boundary, "const:SYM[:RADIUS] or a JSON pattern")->required(required);
    sub->add_option("--semantics", a.semantics, "exact or local")->capture_default_str();
    sub->add_option("--tail-radius", a.tail_radius, "Truncation radius for long-range tails");
}

// ---------------------------------------------------------------- kernel

int run_kernel(const CLI::App& sub, const WindowArgs& a, std::size_t reference, const Output& o)
{
    const auto w = open_window(a);
    const auto k = dlr_kernel(w.cocycle, w.sft, w.region, w.boundary, w.semantics, reference);
    auto r = envelope(sub, k.semantics, 1e-10);
    r["result"] = io::to_json(k, w.source.group(), w.source.alphabet());
    emit(o, r);
    return kOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    std::string mode;
    std::string sites = "ball:1";
    std::optional<double> tolerance;
    std::size_t pairs = 200;
    std::uint64_t seed = 1;
    std::string scheme_a = "uniform";
    std::string scheme_b = "dictator";
};

int run_verify(const CLI::App& sub, const WindowArgs& wa, const VerifyArgs& a, const Output& o)
{
    if (a.mode == "same-cocycle") {
        const auto src = load_source(wa.source);
        if (!src.is_interaction()) {
            throw UsageError("same-cocycle needs an interaction source");
        }
        const auto& phi = std::get<Interaction>(src.model);
        const auto x = load_sft(wa.sft, phi.group(), phi.alphabet());
        const double tol = a.tolerance.value_or(1e-9);
        const auto rep = check_same_cocycle(phi, x, WeightScheme::parse(a.scheme_a), WeightScheme::parse(a.scheme_b),
                                            a.pairs, a.seed);
        auto r = envelope(sub, x.is_full_shift() ? "full-shift" : "local", tol);
        r["result"] = {{"max_deviation", rep.max_discrepancy()},
                       {"max_vs_interaction", rep.max_vs_interaction},
                       {"max_between_schemes", rep.max_between_schemes},
                       {"pairs_tested", rep.pairs}};
        r["passed"] = rep.max_discrepancy() <= tol;
        emit(o, r);
        return rep.max_discrepancy() <= tol ? kOk : breach("same-cocycle", rep.max_discrepancy(), tol);
    }
    if (wa.source.empty() || wa.window.empty() || wa.boundary.empty()) {
        throw UsageError("--source, --window and --boundary are required for mode " + a.mode);
    }
    const auto w = open_window(wa);
    const double tol = a.tolerance.value_or(1e-10);
    const auto sites = parse_window(a.sites, w.source.group());
    for (const auto& g : sites) {
        if (std::find(w.region.begin(), w.region.end(), g) == w.region.end()) {
            throw UsageError("--sites leaves the window at " + w.source.group().format(g));
        }
    }
    json result;
    double deviation = 0.0;
    std::string semantics;
    std::string invariant;
    if (a.mode == "conformal") {
        const auto mu = exact_gibbs(w.cocycle, w.sft, w.region, w.boundary, w.semantics);
        const auto rn = verify_conformal(w.cocycle, w.sft, sites, mu, w.semantics);
        result = io::to_json(rn, w.source.group());
        deviation = rn.max_deviation;
        semantics = rn.semantics;
        invariant = "conformal Radon-Nikodym identity";
    } else if (a.mode == "dlr") {
        const auto mu = exact_gibbs(w.cocycle, w.sft, w.region, w.boundary, w.semantics);
        const auto d = verify_dlr_from_conformal(w.cocycle, w.sft, sites, mu, w.semantics);
        result["conformal"] = io::to_json(d.conformal, w.source.group());
        result["dlr"] = io::to_json(d.dlr);
        deviation = std::max(d.conformal.max_deviation, d.dlr.max_deviation);
        result["max_deviation"] = deviation;
        result["pairs_tested"] = d.conformal.pairs_tested;
        semantics = d.conformal.semantics;
        invariant = "DLR equations from conformality";
    } else if (a.mode == "tower") {
        const auto mu = exact_gibbs(w.cocycle, w.sft, w.region, w.boundary, w.semantics);
        const auto t = tower_check(mu, w.cocycle, w.sft, sites, w.semantics);
        const auto n = kernel_normalisation(w.cocycle, w.sft, w.region, w.boundary, w.semantics);
        result = io::to_json(t);
        result["normalisation"] = {{"max_sum_error", n.max_sum_error},
                                   {"max_reference_spread", n.max_reference_spread},
                                   {"max_direct_gap", n.max_direct_gap}};
        deviation = std::max({t.max_deviation, n.max_sum_error, n.max_reference_spread, n.max_direct_gap});
        result["max_deviation"] = deviation;
        result["pairs_tested"] = t.conditions_tested;
        semantics = mu.table.semantics;
        invariant = "tower consistency and kernel normalisation";
    } else if (a.mode == "kimura") {
        if (!w.source.is_interaction()) {
            throw UsageError("kimura mode needs an interaction source");
        }
        const auto f = translate_weight(std::get<Interaction>(w.source.model), WeightScheme::parse(a.scheme_b));
        const auto kk = kimura_kernel(f, w.sft, w.region, w.boundary, w.semantics);
        const auto ki = dlr_kernel(w.cocycle, w.sft, w.region, w.boundary, w.semantics);
        deviation = max_kernel_gap(kk, ki);
        result = {{"max_deviation", deviation},
                  {"pairs_tested", ki.fillings.size()},
                  {"kimura_radius", kimura_radius(f, w.region)},
                  {"truncation_error", ki.truncation_error}};
        semantics = kk.semantics;
        invariant = "Kimura partial-sum kernel equals the interaction kernel";
    } else {
        throw UsageError("unknown verify mode '" + a.mode + "'");
    }
    auto r = envelope(sub, semantics, tol);
    r["result"] = std::move(result);
    r["passed"] = deviation <= tol;
    emit(o, r);
    return deviation <= tol ? kOk : breach(invariant, deviation, tol);
}

// ---------------------------------------------------------------- sample

struct SampleArgs {
    std::uint64_t steps = 100000;
    std::uint64_t seed = 1;
    std::uint64_t burn_in = 0;
    std::uint64_t record_every = 0;
    std::optional<double> tv_tolerance;
};

int run_sample(const CLI::App& sub, const WindowArgs& wa, const SampleArgs& a, const Output& o)
{
    const auto w = open_window(wa);
    const auto g = glauber_chain(w.cocycle, w.sft, w.region, w.boundary, a.steps, a.seed, a.burn_in, a.record_every,
                                 w.semantics);
    const auto& group = w.source.group();
    const auto& alphabet = w.source.alphabet();
    if (!o.csv.empty()) {
        std::ostringstream csv;
        csv << "step";
        for (const auto& s : w.region) {
            csv << ",\"" << group.format(s) << "\"";
        }
        csv << "\n";
        for (std::size_t i = 0; i < g.trace.size(); ++i) {
            csv << (i + 1) * a.record_every;
            for (auto s : g.trace[i]) {
                csv << "," << alphabet.name(s);
            }
            csv << "\n";
        }
        emit_csv(o, csv.str());
    }
    auto r = envelope(sub, to_string(w.sft.effective(w.semantics)), a.tv_tolerance);
    json states = json::array();
    for (std::size_t i = 0; i < g.states.size(); ++i) {
        states.push_back({{"configuration", io::pattern_to_json(group, alphabet, g.states[i])},
                          {"exact", g.exact[i]},
                          {"empirical", g.empirical[i]}});
    }
    r["result"] = {{"steps", g.steps},
                   {"seed", g.seed},
                   {"tv_distance", g.tv_distance},
                   {"final_state", io::pattern_to_json(group, alphabet, g.final_state)},
                   {"states", std::move(states)}};
    const bool ok = !a.tv_tolerance || g.tv_distance < *a.tv_tolerance;
    r["passed"] = ok;
    emit(o, r);
    return ok ? kOk : breach("Glauber total variation", g.tv_distance, *a.tv_tolerance);
}

// ---------------------------------------------------------------- counterexample

struct CounterArgs {
    std::int64_t radius = 10000;
    double threshold = 10.0;
};

int run_counterexample(const CLI::App& sub, const CounterArgs& a, const Output& o)
{
    const auto ce = counterexample_interaction(a.radius, a.threshold);
    const double pi2 = std::numbers::pi * std::numbers::pi;
    auto r = envelope(sub, "full-shift", ce.b_norm_partial.tail_bound);
    const auto fd = is_full_dimensional(ce.full, a.radius);
    r["result"] = {
        {"radius", ce.radius},
        {"b_norm_partial", io::to_json(ce.b_norm_partial)},
        {"b_norm_limit", pi2 / 3.0},
        {"v1", ce.v1},
        {"v1_limit", pi2 / 6.0},
        {"shell_norm", io::to_json(ce.shell)},
        {"full_dimensional", {{"holds", fd.holds}, {"warning", fd.warning}}},
    };
    const bool certified = ce.shell.divergence.has_value();
    r["passed"] = certified;
    emit(o, r);
    return certified ? kOk : breach("divergence certificate", ce.shell.partial_sums.empty() ? 0.0 : ce.shell.partial_sums.back(), a.threshold);
}

} // namespace

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv, argv + argc);
    try {
        args = expand_config(args);
    } catch (const Error& e) {
        std::cerr << error_json("validation", e.what()).dump() << "\n";
        return kInvalid;
    }

    CLI::App app{"Certified computations for Gibbs relations on finite windows"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "gibbscert 0.1.0");
    Output out;
    std::function<int()> action;

    auto add_output = [&](CLI::App* sub, bool csv) {
        sub->add_option("--out", out.out, "Write the JSON report here instead of stdout");
        if (csv) {
            sub->add_option("--csv", out.csv, "Write the CSV table here ('-' for stdout)");
        }
    };

    GrowthArgs growth;
    auto* g = app.add_subcommand("growth", "Ball and shell sizes, sphere ratio");
    g->add_option("--group", growth.group, "Z, Z^d, Z^d:box, F<r>, H3")->required();
    g->add_option("--kmax", growth.kmax)->capture_default_str();
    g->add_option("--offset", growth.offset)->capture_default_str();
    g->add_option("--first-m", growth.first_m)->capture_default_str();
    add_output(g, true);
    g->callback([&] { action = [&] { return run_growth(*g, growth, out); }; });

    NormsArgs norms;
    auto* n = app.add_subcommand("norms", "Shell and volume norms of a potential");
    n->add_option("--potential", norms.potential)->required();
    n->add_option("--sft", norms.sft);
    n->add_option("--group", norms.group, "Checked against the potential's group");
    n->add_option("--kmax", norms.kmax, "Series potentials only")->capture_default_str();
    n->add_option("--threshold", norms.threshold)->capture_default_str();
    n->add_option("--semantics", norms.semantics)->capture_default_str();
    add_output(n, false);
    n->callback([&] { action = [&] { return run_norms(*n, norms, out); }; });

    ConvertArgs convert;
    auto* c = app.add_subcommand("convert", "Interaction to potential A_Phi");
    c->add_option("--interaction", convert.interaction)->required();
    c->add_option("--scheme", convert.scheme, "uniform or dictator[:shortlex-min|lex-min|lex-middle]")
        ->capture_default_str();
    add_output(c, false);
    c->callback([&] { action = [&] { return run_convert(*c, convert, out); }; });

    WindowArgs kernel_window;
    std::size_t reference = 0;
    auto* k = app.add_subcommand("kernel", "Specification kernel on a window");
    add_window_options(k, kernel_window, true);
    k->add_option("--reference", reference, "Index of the base-point filling")->capture_default_str();
    add_output(k, false);
    k->callback([&] { action = [&] { return run_kernel(*k, kernel_window, reference, out); }; });

    WindowArgs verify_window;
    VerifyArgs verify;
    auto* v = app.add_subcommand("verify", "Check an identity against a tolerance");
    v->add_option("--mode", verify.mode)
        ->required()
        ->check(CLI::IsMember({"conformal", "dlr", "tower", "same-cocycle", "kimura"}));
    add_window_options(v, verify_window, false);
    v->add_option("--sites", verify.sites, "Sites for conformal, dlr and tower checks")->capture_default_str();
    v->add_option("--tolerance", verify.tolerance);
    v->add_option("--pairs", verify.pairs)->capture_default_str();
    v->add_option("--seed", verify.seed)->capture_default_str();
    v->add_option("--scheme-a", verify.scheme_a)->capture_default_str();
    v->add_option("--scheme-b", verify.scheme_b)->capture_default_str();
    add_output(v, false);
    v->callback([&] { action = [&] { return run_verify(*v, verify_window, verify, out); }; });

    WindowArgs sample_window;
    SampleArgs sample;
    auto* s = app.add_subcommand("sample", "Glauber chain on a window");
    add_window_options(s, sample_window, true);
    s->add_option("--steps", sample.steps)->capture_default_str();
    s->add_option("--seed", sample.seed)->capture_default_str();
    s->add_option("--burn-in", sample.burn_in)->capture_default_str();
    s->add_option("--record-every", sample.record_every)->capture_default_str();
    s->add_option("--tv-tolerance", sample.tv_tolerance);
    add_output(s, true);
    s->callback([&] { action = [&] { return run_sample(*s, sample_window, sample, out); }; });

    CounterArgs counter;
    auto* ce = app.add_subcommand("counterexample", "Inverse-square pair interaction");
    ce->add_option("-R,--R,--radius", counter.radius)->capture_default_str();
    ce->add_option("--threshold", counter.threshold)->capture_default_str();
    add_output(ce, false);
    ce->callback([&] { action = [&] { return run_counterexample(*ce, counter, out); }; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << error_json("usage", e.what()).dump() << "\n";
        return kInvalid;
    }

    try {
        if (out.csv == "-" && (out.out.empty() || out.out == "-")) {
            throw UsageError("--csv - writes to stdout; send the JSON report elsewhere with --out");
        }
        return action();
    } catch (const ValidationError& e) {
        std::cerr << error_json("validation", e.what()).dump() << "\n";
    } catch (const UsageError& e) {
        std::cerr << error_json("usage", e.what()).dump() << "\n";
    } catch (const DomainError& e) {
        std::cerr << error_json("domain", e.what()).dump() << "\n";
    } catch (const ResourceError& e) {
        std::cerr << error_json("resource", e.what()).dump() << "\n";
    } catch (const Error& e) {
        std::cerr << error_json("error", e.what()).dump() << "\n";
    }
    return kInvalid;
}
