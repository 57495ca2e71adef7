#include "swarmkit/runspec.hpp"

#include "swarmkit/trace_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <iterator>
#include <map>
#include <sstream>

namespace swarmkit {

namespace {

std::string trim(std::string s)
{
    auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
    s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
    s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
    return s;
}

std::vector<std::string> words(const std::string& s)
{
    std::istringstream in(s);
    return {std::istream_iterator<std::string>(in), std::istream_iterator<std::string>()};
}

long to_long(const std::string& s, const std::string& key)
{
    long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw ParseError(key + ": bad integer '" + s + "'");
    return v;
}

// "name=value" options after the first word
std::map<std::string, std::string> options(const std::vector<std::string>& w, std::size_t from, const std::string& key)
{
    std::map<std::string, std::string> out;
    for (std::size_t i = from; i < w.size(); ++i) {
        auto eq = w[i].find('=');
        if (eq == std::string::npos)
            throw ParseError(key + ": expected name=value, got '" + w[i] + "'");
        out[w[i].substr(0, eq)] = w[i].substr(eq + 1);
    }
    return out;
}

std::vector<TargetFunctionId> algorithm_by_name(const std::string& name, std::shared_ptr<const Configuration> g)
{
    if (name == "2GATA")
        return {TargetFunctionId::two_gat()};
    if (name == "GATA")
        return {TargetFunctionId::gat(1), TargetFunctionId::gat(2)};
    if (name == "SGTA")
        return {TargetFunctionId::sgat(1), TargetFunctionId::sgat(2), TargetFunctionId::sgat(3)};
    if (name == "PFA") {
        if (!g)
            throw ParseError("algorithm PFA needs a pattern");
        return pf_algorithm(g);
    }
    if (name.size() > 4 && name.substr(name.size() - 4) == "SCTA") {
        long c = to_long(name.substr(0, name.size() - 4), "algorithm");
        if (c < 1)
            throw ParseError("algorithm: c must be positive");
        return sct_algorithm(static_cast<int>(c));
    }
    // explicit tag list
    std::vector<TargetFunctionId> out;
    for (const auto& t : words(name))
        out.push_back(TargetFunctionId::parse(t, g));
    if (out.empty())
        throw ParseError("empty algorithm");
    return out;
}

GoalPredicate parse_goal(const std::string& v, std::shared_ptr<const Configuration> g)
{
    auto num = [&](std::size_t at) { return static_cast<int>(to_long(trim(v.substr(at)), "goal")); };
    if (v.rfind("scatter>=", 0) == 0)
        return {GoalKind::ScatterAtLeast, num(9), nullptr};
    if (v.rfind("gather-all<=", 0) == 0)
        return {GoalKind::GatherAllAtMost, num(12), nullptr};
    if (v.rfind("gather<=", 0) == 0)
        return {GoalKind::GatherAtMost, num(8), nullptr};
    if (v == "gather-nonfaulty")
        return {GoalKind::GatherNonFaulty, 1, nullptr};
    if (v == "pattern") {
        if (!g)
            throw ParseError("goal pattern needs a pattern");
        return {GoalKind::PatternSimilar, 1, g};
    }
    if (v == "none")
        return {};
    throw ParseError("unknown goal '" + v + "'");
}

Expectation parse_expect(const std::string& v, long horizon)
{
    auto w = words(v);
    if (w.empty())
        throw ParseError("empty expect");
    Expectation e;
    e.horizon = horizon;
    if (w[0] == "reach" && w.size() == 1)
        e.kind = ExpectKind::MustReach;
    else if (w[0] == "not-change" && w.size() == 1)
        e.kind = ExpectKind::MustNotChange;
    else if (w[0] == "not-reach" && w.size() == 1)
        e.kind = ExpectKind::MustNotReach;
    else if (w[0] == "stay-below" && w.size() == 2) {
        e.kind = ExpectKind::MustStayBelow;
        e.bound = static_cast<int>(to_long(w[1], "expect"));
    } else if (w[0] == "change-within" && w.size() == 2) {
        e.kind = ExpectKind::MustChangeWithin;
        e.horizon = to_long(w[1], "expect");
    } else
        throw ParseError("unknown expect '" + v + "'");
    return e;
}

SchedulerSpec parse_scheduler(const std::string& v)
{
    auto w = words(v);
    if (w.empty())
        throw ParseError("empty scheduler");
    SchedulerSpec s;
    if (w[0] == "fsync" && w.size() == 1) {
        s.kind = SchedulerKind::Fsync;
    } else if (w[0] == "fair") {
        s.kind = SchedulerKind::FairRandom;
        for (const auto& [k, x] : options(w, 1, "scheduler")) {
            if (k == "p")
                s.p = parse_scalar(x);
            else if (k == "bound")
                s.bound = static_cast<int>(to_long(x, "scheduler"));
            else
                throw ParseError("scheduler: unknown option '" + k + "'");
        }
        if (s.p <= 0 || s.p > 1 || s.bound < 1)
            throw ParseError("scheduler: need 0 < p <= 1 and bound >= 1");
    } else if (w[0] == "roundrobin" && w.size() == 1) {
        s.kind = SchedulerKind::CentralRoundRobin;
    } else if (w[0] == "script") {
        s.kind = SchedulerKind::Scripted;
        std::string rest;
        for (std::size_t i = 1; i < w.size(); ++i)
            rest += w[i];
        std::stringstream slots(rest);
        std::string slot;
        while (std::getline(slots, slot, ';')) {
            std::vector<int> ids;
            std::stringstream is(slot);
            std::string id;
            while (std::getline(is, id, ','))
                if (!id.empty() && id != "-")
                    ids.push_back(static_cast<int>(to_long(id, "scheduler")));
            s.script.push_back(ids);
        }
        if (s.script.empty())
            throw ParseError("scheduler: empty script");
    } else {
        throw ParseError("unknown scheduler '" + v + "'");
    }
    return s;
}

std::map<std::string, std::string> read_pairs(const std::string& text)
{
    std::map<std::string, std::string> kv;
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("json: ") + e.what());
        }
        if (!j.is_object())
            throw ParseError("json spec must be an object");
        for (auto& [k, v] : j.items()) {
            if (v.is_string())
                kv[k] = v.get<std::string>();
            else if (v.is_number_integer())
                kv[k] = std::to_string(v.get<long>());
            else
                throw ParseError("json key '" + k + "' must be a string or integer");
        }
        return kv;
    }
    std::istringstream in(text);
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("spec line " + std::to_string(lineno) + ": expected key = value");
        auto key = trim(line.substr(0, eq));
        if (kv.count(key))
            throw ParseError("spec line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        kv[key] = trim(line.substr(eq + 1));
    }
    return kv;
}

} // namespace

RunSpec parse_runspec_text(const std::string& text)
{
    auto kv = read_pairs(text);
    auto take = [&](const std::string& k) -> std::optional<std::string> {
        auto it = kv.find(k);
        if (it == kv.end())
            return std::nullopt;
        auto v = it->second;
        kv.erase(it);
        return v;
    };
    RunSpec s;
    if (auto v = take("pattern")) {
        auto pts = parse_point_list(*v);
        if (pts.empty())
            throw ParseError("empty pattern");
        s.pattern = std::make_shared<const Configuration>(pts);
    }
    auto alg = take("algorithm");
    if (!alg)
        throw ParseError("spec needs 'algorithm'");
    s.algorithm = *alg;
    s.phi = algorithm_by_name(*alg, s.pattern);
    for (const auto& tf : s.phi)
        tf.validate();

    if (auto v = take("seed")) {
        s.seed = static_cast<std::uint64_t>(to_long(*v, "seed"));
        s.seed_given = true;
    }
    if (auto v = take("eps"))
        s.tol.rel_eps = parse_scalar(*v);
    if (auto v = take("sqrt-bits"))
        s.tol.sqrt_precision = static_cast<int>(to_long(*v, "sqrt-bits"));

    auto points = take("points");
    if (!points)
        throw ParseError("spec needs 'points'");
    auto pw = words(*points);
    if (!pw.empty() && pw[0] == "random") {
        auto o = options(pw, 1, "points");
        if (auto n = take("n"))
            s.n = static_cast<int>(to_long(*n, "n"));
        for (const auto& [k, x] : o) {
            if (k == "box")
                s.box = to_long(x, "points");
            else if (k == "support")
                s.support_min = s.support_max = static_cast<int>(to_long(x, "points"));
            else if (k == "min-support")
                s.support_min = static_cast<int>(to_long(x, "points"));
            else if (k == "max-support")
                s.support_max = static_cast<int>(to_long(x, "points"));
            else
                throw ParseError("points: unknown option '" + k + "'");
        }
        if (s.n < 1)
            throw ParseError("random points need n >= 1");
    } else {
        s.points = parse_point_list(*points);
        if (auto n = take("n"); n && to_long(*n, "n") != static_cast<long>(s.points.size()))
            throw ParseError("n does not match the number of points");
        s.n = static_cast<int>(s.points.size());
        if (s.n < 1)
            throw ParseError("empty configuration");
    }

    if (auto v = take("frames")) {
        auto w = words(*v);
        if (w.size() == 1 && w[0] == "identity")
            s.frames_mode = RunSpec::Frames::Identity;
        else if (w.size() == 1 && w[0] == "random")
            s.frames_mode = RunSpec::Frames::Random;
        else {
            s.frames_mode = RunSpec::Frames::Explicit;
            for (const auto& f : w) {
                std::stringstream fs(f);
                std::string part;
                std::vector<std::string> parts;
                while (std::getline(fs, part, ','))
                    parts.push_back(part);
                if (parts.size() != 3)
                    throw ParseError("frame '" + f + "' needs cos,sin,scale");
                LocalFrame fr;
                fr.cos = parse_scalar(parts[0]);
                fr.sin = parse_scalar(parts[1]);
                fr.scale = parse_scalar(parts[2]);
                try {
                    fr.validate();
                } catch (const std::exception& e) {
                    throw ParseError(e.what());
                }
                s.frames.push_back(fr);
            }
            if (static_cast<int>(s.frames.size()) != s.n)
                throw ParseError("frames: expected " + std::to_string(s.n) + " entries");
        }
    }

    if (auto v = take("assignment")) {
        auto w = words(*v);
        if (w.size() == 1 && w[0] == "all-surjections")
            s.assign_mode = RunSpec::Assign::AllSurjections;
        else if (w.size() == 1 && w[0] == "sample")
            s.assign_mode = RunSpec::Assign::Sample;
        else {
            s.assign_mode = RunSpec::Assign::Explicit;
            for (const auto& x : w) {
                long i = to_long(x, "assignment");
                if (i < 1 || i > static_cast<long>(s.phi.size()))
                    throw ParseError("assignment index " + x + " out of range");
                s.assignment.push_back(static_cast<int>(i - 1));
            }
            if (static_cast<int>(s.assignment.size()) != s.n)
                throw ParseError("assignment: expected " + std::to_string(s.n) + " entries");
            std::vector<bool> used(s.phi.size());
            for (int i : s.assignment)
                used[static_cast<std::size_t>(i)] = true;
            if (std::count(used.begin(), used.end(), false))
                throw ParseError("assignment is not surjective");
        }
    }
    if (static_cast<std::size_t>(s.n) < s.phi.size())
        throw ParseError("n is smaller than the algorithm size; no surjective assignment exists");
    if (auto v = take("cap"))
        s.cap = static_cast<std::size_t>(to_long(*v, "cap"));

    if (auto v = take("scheduler"))
        s.scheduler = parse_scheduler(*v);
    s.scheduler.seed = s.seed;

    if (auto v = take("faults")) {
        auto w = words(*v);
        if (!w.empty() && w[0] == "random") {
            for (const auto& [k, x] : options(w, 1, "faults")) {
                if (k == "max")
                    s.random_faults = static_cast<int>(to_long(x, "faults"));
                else if (k == "within")
                    s.fault_window = to_long(x, "faults");
                else
                    throw ParseError("faults: unknown option '" + k + "'");
            }
            if (s.random_faults < 0 || s.random_faults > s.n || s.fault_window < 0)
                throw ParseError("faults: bad random fault range");
        } else if (!(w.size() == 1 && w[0] == "none")) {
            for (const auto& f : w) {
                auto at = f.find('@');
                if (at == std::string::npos)
                    throw ParseError("fault '" + f + "' must be id@time");
                long id = to_long(f.substr(0, at), "faults");
                long t = to_long(f.substr(at + 1), "faults");
                if (id < 1 || id > s.n || t < 0)
                    throw ParseError("fault '" + f + "' out of range");
                s.faults.push_back({static_cast<int>(id), t});
            }
        }
    }

    if (auto v = take("goal"))
        s.goal = parse_goal(*v, s.pattern);
    long horizon = 200;
    if (auto v = take("horizon"))
        horizon = to_long(*v, "horizon");
    if (horizon < 1)
        throw ParseError("horizon must be >= 1");
    if (auto v = take("stability"))
        s.stability = to_long(*v, "stability");
    s.expect.horizon = horizon;
    if (auto v = take("expect"))
        s.expect = parse_expect(*v, horizon);
    if (s.goal.kind == GoalKind::None &&
        (s.expect.kind == ExpectKind::MustReach || s.expect.kind == ExpectKind::MustNotReach))
        throw ParseError("expectation needs a goal");

    if (!kv.empty())
        throw ParseError("unknown key '" + kv.begin()->first + "'");
    return s;
}

RunSpec parse_runspec(std::istream& in)
{
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_runspec_text(ss.str());
}

RunOptions run_options(const RunSpec& spec)
{
    RunOptions o;
    bool negative = spec.expect.kind != ExpectKind::MustReach && spec.expect.kind != ExpectKind::MustChangeWithin;
    o.horizon = spec.expect.horizon;
    o.stability_window = spec.stability;
    o.stop_on_goal = !negative;
    o.stop_on_stasis = true;
    return o;
}

std::vector<RunCase> instantiate(const RunSpec& spec)
{
    Rng rng(spec.seed);
    auto pts = spec.points.empty() ? random_points(spec.n, spec.box, spec.support_min, spec.support_max, rng) : spec.points;
    std::vector<LocalFrame> frames;
    switch (spec.frames_mode) {
    case RunSpec::Frames::Identity:
        frames.assign(static_cast<std::size_t>(spec.n), LocalFrame{});
        break;
    case RunSpec::Frames::Random:
        frames = random_frames(spec.n, rng);
        break;
    case RunSpec::Frames::Explicit:
        frames = spec.frames;
        break;
    }
    std::vector<std::vector<int>> idx;
    switch (spec.assign_mode) {
    case RunSpec::Assign::AllSurjections: {
        EnumerateOptions eo;
        eo.cap = spec.cap;
        eo.seed = spec.seed;
        idx = enumerate_assignments(static_cast<int>(spec.phi.size()), spec.n, eo);
        break;
    }
    case RunSpec::Assign::Sample:
        idx.push_back(sample_assignment(static_cast<int>(spec.phi.size()), spec.n, rng));
        break;
    case RunSpec::Assign::Explicit:
        idx.push_back(spec.assignment);
        break;
    }
    FaultPlan faults = spec.faults;
    if (spec.random_faults > 0) {
        long f = rng.uniform(0, spec.random_faults);
        std::vector<int> ids(static_cast<std::size_t>(spec.n));
        for (int i = 0; i < spec.n; ++i)
            ids[static_cast<std::size_t>(i)] = i + 1;
        for (long i = 0; i < f; ++i) {
            auto j = static_cast<std::size_t>(rng.uniform(i, spec.n - 1));
            std::swap(ids[static_cast<std::size_t>(i)], ids[j]);
            faults.push_back({ids[static_cast<std::size_t>(i)], rng.uniform(0, spec.fault_window)});
        }
    }
    std::vector<RunCase> out;
    for (const auto& a : idx) {
        RunCase rc;
        Assignment as;
        rc.label = "assignment";
        for (int i : a) {
            as.push_back(spec.phi[static_cast<std::size_t>(i)]);
            rc.label += " " + std::to_string(i + 1);
        }
        rc.world = make_world(pts, frames, as, faults);
        rc.scheduler = spec.scheduler;
        out.push_back(std::move(rc));
    }
    return out;
}

} // namespace swarmkit
