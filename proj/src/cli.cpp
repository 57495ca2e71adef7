#include "swarmkit/cli.hpp"

#include "swarmkit/render.hpp"
#include "swarmkit/runspec.hpp"
#include "swarmkit/symmetry.hpp"
#include "swarmkit/trace_io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

namespace swarmkit {

namespace {

struct Overrides {
    std::optional<long> seed;
    std::optional<long> horizon;
    std::optional<long> stability;
    std::optional<std::string> eps;
    std::optional<int> sqrt_bits;
    std::string scenario;
    std::vector<std::string> params;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::optional<long> env_seed()
{
    const char* s = std::getenv("SWARMKIT_SEED");
    if (!s || !*s)
        return std::nullopt;
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (*end)
        throw ParseError("SWARMKIT_SEED is not an integer");
    return v;
}

void apply_tolerance(const Overrides& o, ToleranceConfig& cfg)
{
    if (o.eps) {
        cfg.rel_eps = parse_scalar(*o.eps);
        if (cfg.rel_eps < 0)
            throw ParseError("--eps must be non-negative");
    }
    if (o.sqrt_bits) {
        if (*o.sqrt_bits < 1)
            throw ParseError("--sqrt-bits must be positive");
        cfg.sqrt_precision = *o.sqrt_bits;
    }
}

void write_trace_file(const std::string& path, const ExecutionTrace& trace)
{
    if (path.empty())
        return;
    std::ofstream f(path);
    if (!f)
        throw ParseError("cannot write '" + path + "'");
    write_trace(f, trace);
}

std::string outcome(const ExecutionTrace& t)
{
    std::string s = verdict_name(t.verdict.kind) + " t=" + std::to_string(t.verdict.time);
    if (t.verdict.kind == VerdictKind::Reached)
        s += t.verdict.stable ? " stable" : " unstable";
    return s;
}

int run_spec(const std::string& spec_path, const std::string& trace_path, const Overrides& o, std::ostream& out)
{
    auto spec = parse_runspec_text(read_file(spec_path));
    if (o.seed)
        spec.seed = static_cast<std::uint64_t>(*o.seed);
    else if (!spec.seed_given)
        if (auto e = env_seed())
            spec.seed = static_cast<std::uint64_t>(*e);
    spec.scheduler.seed = spec.seed;
    if (o.horizon) {
        if (*o.horizon < 1)
            throw ParseError("--horizon must be >= 1");
        if (spec.expect.kind != ExpectKind::MustChangeWithin)
            spec.expect.horizon = *o.horizon;
    }
    if (o.stability)
        spec.stability = *o.stability;
    apply_tolerance(o, spec.tol);

    auto cases = instantiate(spec);
    auto opts = run_options(spec);
    int failures = 0;
    std::optional<ExecutionTrace> keep;
    for (const auto& c : cases) {
        auto sched = make_scheduler(c.scheduler);
        auto trace = run(c.world, *sched, spec.goal, opts, spec.tol);
        std::string why;
        bool ok = check_expectation(spec.expect, spec.goal, trace, spec.tol, &why);
        out << (ok ? "PASS " : "FAIL ") << c.label << ": " << outcome(trace);
        if (!ok)
            out << " (" << why << ")";
        out << "\n";
        if (!ok && !failures)
            keep = trace;
        failures += ok ? 0 : 1;
        if (!failures)
            keep = std::move(trace);
    }
    out << (cases.size() - static_cast<std::size_t>(failures)) << "/" << cases.size() << " runs satisfied '"
        << spec.expect.describe() << "'\n";
    write_trace_file(trace_path, *keep);
    return failures ? kExitFail : kExitPass;
}

int run_named_scenario(const std::string& trace_path, const Overrides& o, std::ostream& out)
{
    const Scenario& sc = find_scenario(o.scenario);
    Params p;
    for (const auto& kv : o.params) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ParseError("--param expects k=v, got '" + kv + "'");
        char* end = nullptr;
        auto val = kv.substr(eq + 1);
        long v = std::strtol(val.c_str(), &end, 10);
        if (val.empty() || *end)
            throw ParseError("--param " + kv.substr(0, eq) + ": not an integer");
        p[kv.substr(0, eq)] = v;
    }
    auto seed = o.seed ? o.seed : env_seed();
    if (seed && sc.defaults.count("seed") && !p.count("seed"))
        p["seed"] = *seed;
    if (o.horizon && sc.defaults.count("horizon"))
        p["horizon"] = *o.horizon;
    ToleranceConfig cfg;
    apply_tolerance(o, cfg);
    auto results = run_scenario(sc, p, cfg);
    int failures = 0;
    std::optional<ExecutionTrace> keep;
    for (auto& r : results) {
        out << (r.pass ? "PASS " : "FAIL ") << sc.name << " [" << r.label << "]: " << r.detail << "\n";
        if (!r.pass && !failures)
            keep = r.trace;
        failures += r.pass ? 0 : 1;
        if (!failures)
            keep = std::move(r.trace);
    }
    if (keep)
        write_trace_file(trace_path, *keep);
    return failures ? kExitFail : kExitPass;
}

} // namespace

bool glob_match(const std::string& pattern, const std::string& name)
{
    std::size_t p = 0, s = 0, star = std::string::npos, mark = 0;
    while (s < name.size()) {
        if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = s;
        } else if (p < pattern.size() && (pattern[p] == name[s] || pattern[p] == '?')) {
            ++p;
            ++s;
        } else if (star != std::string::npos) {
            p = star + 1;
            s = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*')
        ++p;
    return p == pattern.size();
}

std::vector<Point> read_config_file(const std::string& path)
{
    std::istringstream in(read_file(path));
    std::string line, body;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        body += line + " ";
    }
    auto pts = parse_point_list(body);
    if (pts.empty())
        throw ParseError("empty configuration");
    return pts;
}

int cmd_run(const std::string& spec_path, const std::string& trace_path, std::ostream& out, std::ostream& err)
{
    try {
        return run_spec(spec_path, trace_path, {}, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

int cmd_analyze(const std::string& config_path, const std::string& query, const ToleranceConfig& cfg,
                std::ostream& out, std::ostream& err)
{
    try {
        Configuration p(read_config_file(config_path));
        auto part = orbits(p, cfg);
        out << "n " << p.size() << "\n";
        out << "m " << p.support_size() << "\n";
        out << "k " << part.k << "\n";
        out << "sigma " << symmetricity(p, cfg) << "\n";
        out << "center " << format_point(part.sec.center) << "\n";
        out << "sq_radius " << format_scalar(part.sec.sq_radius) << "\n";
        out << "orbits " << part.orbits.size() << "\n";
        for (std::size_t i = 0; i < part.orbits.size(); ++i) {
            out << "  orbit " << i << " mult=" << p.multiplicity(part.orbits[i].front()) << ":";
            for (const auto& q : part.orbits[i])
                out << " " << format_point(q);
            out << "\n";
        }
        if (part.k == 1) {
            out << "chain";
            auto chain = order_chain(p, cfg);
            for (std::size_t i = 0; i < chain.size(); ++i)
                out << (i ? " > " : " ") << format_point(chain[i]);
            out << "\n";
            out << "largest " << format_point(largest_point(p, part, cfg)) << "\n";
        }
        if (!query.empty()) {
            auto q = parse_point(query);
            auto v = view(p, q, cfg);
            out << "view " << format_point(q) << ":";
            for (const auto& x : v.coords)
                out << " " << format_point(x);
            out << "\n";
        }
        return kExitPass;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

int cmd_suite(const std::string& filter, std::ostream& out, std::ostream& err)
{
    std::vector<const Scenario*> chosen;
    for (const auto& s : scenario_registry())
        if (glob_match(filter, s.name))
            chosen.push_back(&s);
    if (chosen.empty()) {
        err << "error: no scenario matches '" << filter << "'\n";
        return kExitUsage;
    }
    int pass = 0, total = 0;
    for (const auto* s : chosen) {
        try {
            for (const auto& r : run_scenario(*s)) {
                ++total;
                pass += r.pass ? 1 : 0;
                out << (r.pass ? "PASS " : "FAIL ") << s->name << " [" << r.label << "]: " << r.detail << "\n";
            }
        } catch (const std::exception& e) {
            ++total;
            out << "FAIL " << s->name << ": " << e.what() << "\n";
        }
    }
    out << pass << "/" << total << " scenario instances passed\n";
    return pass == total ? kExitPass : kExitFail;
}

int cmd_render(const std::string& trace_path, const std::string& svg_path, std::ostream& err)
{
    try {
        std::ifstream in(trace_path);
        if (!in)
            throw ParseError("cannot read '" + trace_path + "'");
        auto trace = read_trace(in);
        std::ofstream f(svg_path);
        if (!f)
            throw ParseError("cannot write '" + svg_path + "'");
        render_svg(f, trace);
        return kExitPass;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"swarmkit: oblivious robot swarm simulator"};
    app.require_subcommand(1);
    Overrides o;

    std::string spec_path, trace_path;
    auto* run_cmd = app.add_subcommand("run", "execute a run spec or a named scenario");
    run_cmd->add_option("spec", spec_path, "run spec file");
    run_cmd->add_option("-o,--out", trace_path, "trace output path");
    run_cmd->add_option("--seed", o.seed, "seed (falls back to SWARMKIT_SEED)");
    run_cmd->add_option("--horizon", o.horizon);
    run_cmd->add_option("--stability", o.stability);
    run_cmd->add_option("--eps", o.eps, "relative tolerance, rational");
    run_cmd->add_option("--sqrt-bits", o.sqrt_bits);
    run_cmd->add_option("--scenario", o.scenario);
    run_cmd->add_option("--param", o.params, "scenario parameter k=v")->allow_extra_args(false);

    std::string config_path, query;
    Overrides ao;
    auto* an = app.add_subcommand("analyze", "symmetry report for a configuration file");
    an->add_option("config", config_path)->required();
    an->add_option("--query", query, "point whose view to print, [x,y]");
    an->add_option("--eps", ao.eps);
    an->add_option("--sqrt-bits", ao.sqrt_bits);

    std::string filter = "*";
    auto* su = app.add_subcommand("suite", "run registered scenarios");
    su->add_option("filter", filter, "scenario name, '*' wildcards");

    std::string tpath, svg;
    auto* re = app.add_subcommand("render", "trace to SVG");
    re->add_option("trace", tpath)->required();
    re->add_option("svg", svg)->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    if (*run_cmd) {
        try {
            if (!o.scenario.empty()) {
                if (!spec_path.empty())
                    throw ParseError("give either a spec file or --scenario, not both");
                return run_named_scenario(trace_path, o, out);
            }
            if (spec_path.empty())
                throw ParseError("run needs a spec file or --scenario");
            if (!o.params.empty())
                throw ParseError("--param only applies to --scenario");
            return run_spec(spec_path, trace_path, o, out);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return kExitUsage;
        }
    }
    if (*an) {
        ToleranceConfig cfg;
        try {
            apply_tolerance(ao, cfg);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return kExitUsage;
        }
        return cmd_analyze(config_path, query, cfg, out, err);
    }
    if (*su)
        return cmd_suite(filter, out, err);
    return cmd_render(tpath, svg, err);
}

} // namespace swarmkit
