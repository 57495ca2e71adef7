#include "swarmkit/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace swarmkit {

namespace {

const Point kP{0, 0};
const Point kQ{1, 0};

std::vector<LocalFrame> identity_frames(int n) { return std::vector<LocalFrame>(static_cast<std::size_t>(n)); }

SchedulerSpec fsync() { return {}; }

SchedulerSpec fair(std::uint64_t seed)
{
    SchedulerSpec s;
    s.kind = SchedulerKind::FairRandom;
    s.seed = seed;
    return s;
}

RunOptions negative_run(long horizon)
{
    RunOptions o;
    o.horizon = horizon;
    o.stop_on_goal = false;
    o.stop_on_stasis = false;
    return o;
}

RunOptions positive_run(long horizon)
{
    RunOptions o;
    o.horizon = horizon;
    return o;
}

void require(bool ok, const std::string& why)
{
    if (!ok)
        throw std::invalid_argument(why);
}

Scalar rational_from(long double v)
{
    // exact binary value of v
    int exp = 0;
    long double mant = std::frexp(v, &exp);
    auto m = static_cast<long long>(std::ldexp(mant, 62));
    Scalar s{mpz_class(std::to_string(m))};
    exp -= 62;
    mpz_class p = 1;
    if (exp >= 0) {
        p <<= static_cast<mp_bitcnt_t>(exp);
        return s * Scalar(p);
    }
    p <<= static_cast<mp_bitcnt_t>(-exp);
    return s / Scalar(p);
}

} // namespace

std::string Expectation::describe() const
{
    switch (kind) {
    case ExpectKind::MustReach:
        return "reach within " + std::to_string(horizon);
    case ExpectKind::MustNotChange:
        return "unchanged for " + std::to_string(horizon);
    case ExpectKind::MustStayBelow:
        return "support <= " + std::to_string(bound) + " for " + std::to_string(horizon);
    case ExpectKind::MustNotReach:
        return "goal never holds for " + std::to_string(horizon);
    case ExpectKind::MustChangeWithin:
        return "changes within " + std::to_string(horizon);
    }
    return "?";
}

bool goal_holds(const GoalPredicate& goal, const TraceStep& step, const ToleranceConfig& cfg)
{
    Configuration c(step.positions);
    switch (goal.kind) {
    case GoalKind::None:
        return false;
    case GoalKind::ScatterAtLeast:
        return static_cast<int>(c.support_size()) >= goal.c;
    case GoalKind::GatherAtMost:
    case GoalKind::GatherAllAtMost:
        return static_cast<int>(c.support_size()) <= goal.c;
    case GoalKind::GatherNonFaulty: {
        std::set<int> crashed(step.crashed.begin(), step.crashed.end());
        const Point* at = nullptr;
        for (std::size_t i = 0; i < step.positions.size(); ++i) {
            if (crashed.count(static_cast<int>(i) + 1))
                continue;
            if (at && *at != step.positions[i])
                return false;
            at = &step.positions[i];
        }
        return true;
    }
    case GoalKind::PatternSimilar:
        return is_similar(c, *goal.pattern, cfg).has_value();
    }
    return false;
}

bool check_expectation(const Expectation& e, const GoalPredicate& goal, const ExecutionTrace& trace,
                       const ToleranceConfig& cfg, std::string* why)
{
    auto fail = [&](const std::string& msg) {
        if (why)
            *why = msg;
        return false;
    };
    if (trace.steps.empty())
        return fail("empty trace");
    const auto& steps = trace.steps;
    auto covered = [&] {
        // a stasis verdict is conclusive for every later time as well
        return static_cast<long>(steps.size()) - 1 >= e.horizon || trace.verdict.kind == VerdictKind::StasisDetected;
    };
    switch (e.kind) {
    case ExpectKind::MustReach: {
        for (const auto& s : steps) {
            if (s.time - steps.front().time > e.horizon)
                break;
            if (goal_holds(goal, s, cfg)) {
                if (trace.verdict.kind == VerdictKind::Reached && !trace.verdict.stable)
                    return fail("goal reached at t=" + std::to_string(s.time) + " but not stable");
                return true;
            }
        }
        return fail("goal '" + goal.describe() + "' not reached within " + std::to_string(e.horizon) + " steps (verdict " +
                    std::to_string(static_cast<int>(trace.verdict.kind)) + ")");
    }
    case ExpectKind::MustNotChange: {
        Configuration first(steps.front().positions);
        for (const auto& s : steps)
            if (!(Configuration(s.positions) == first))
                return fail("configuration changed at t=" + std::to_string(s.time));
        return covered() ? true : fail("trace shorter than the horizon");
    }
    case ExpectKind::MustStayBelow:
        for (const auto& s : steps) {
            auto m = Configuration(s.positions).support_size();
            if (static_cast<int>(m) > e.bound)
                return fail("support " + std::to_string(m) + " at t=" + std::to_string(s.time));
        }
        return covered() ? true : fail("trace shorter than the horizon");
    case ExpectKind::MustNotReach:
        for (const auto& s : steps)
            if (goal_holds(goal, s, cfg))
                return fail("goal '" + goal.describe() + "' holds at t=" + std::to_string(s.time));
        return covered() ? true : fail("trace shorter than the horizon");
    case ExpectKind::MustChangeWithin: {
        Configuration first(steps.front().positions);
        for (const auto& s : steps) {
            if (s.time - steps.front().time > e.horizon)
                break;
            if (!(Configuration(s.positions) == first))
                return true;
        }
        return fail("configuration unchanged through t=" + std::to_string(e.horizon));
    }
    }
    return fail("unknown expectation");
}

ScenarioResult run_instance(const ScenarioInstance& inst, const ToleranceConfig& cfg)
{
    ScenarioResult r;
    r.label = inst.label;
    auto sched = make_scheduler(inst.scheduler);
    r.trace = run(inst.world, *sched, inst.goal, inst.options, cfg);
    r.pass = true;
    for (const auto& e : inst.expect) {
        std::string why;
        if (!check_expectation(e, inst.goal, r.trace, cfg, &why)) {
            r.pass = false;
            r.detail += (r.detail.empty() ? "" : "; ") + e.describe() + ": " + why;
        }
    }
    if (r.pass) {
        const auto& v = r.trace.verdict;
        r.detail = "verdict " + std::string(v.kind == VerdictKind::Reached ? "reached" : v.kind == VerdictKind::StasisDetected ? "stasis" : "horizon") +
                   " t=" + std::to_string(v.time);
    }
    return r;
}

std::vector<ScenarioResult> run_scenario(const Scenario& s, const Params& overrides, const ToleranceConfig& cfg)
{
    std::vector<ScenarioResult> out;
    for (const auto& inst : s.build(resolve_params(s, overrides)))
        out.push_back(run_instance(inst, cfg));
    return out;
}

std::vector<ScenarioInstance> scatter_lower_bound(int c, int m, int n, long horizon)
{
    require(c >= 2, "scatter_lower_bound: c must be at least 2 (1-scattering is trivial)");
    require(m >= 1 && m < c && c <= n, "scatter_lower_bound: need 1 <= m < c <= n");
    ScenarioInstance inst;
    inst.label = "c=" + std::to_string(c) + " m=" + std::to_string(m) + " n=" + std::to_string(n);
    // an algorithm of size m built from the first m functions of cSCTA
    for (int i = 1; i <= m; ++i)
        inst.phi.push_back(TargetFunctionId::sct(i, c));
    Assignment a;
    for (int r = 1; r <= n; ++r)
        a.push_back(inst.phi[static_cast<std::size_t>(std::min(r, m) - 1)]);
    inst.world = make_world(std::vector<Point>(static_cast<std::size_t>(n), kP), identity_frames(n), a);
    inst.scheduler = fsync();
    inst.goal = {GoalKind::ScatterAtLeast, c, nullptr};
    inst.expect = {{ExpectKind::MustStayBelow, horizon, m}};
    inst.options = negative_run(horizon);
    return {inst};
}

std::vector<ScenarioInstance> bivalent_stasis(int n, bool gata, std::uint64_t seed, long horizon)
{
    require(n >= 4 && n % 2 == 0, "bivalent_stasis: n must be even and at least 4");
    ScenarioInstance inst;
    inst.label = std::string(gata ? "GATA" : "2GATA") + " n=" + std::to_string(n);
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i)
        pts.push_back(i < n / 2 ? kP : kQ);
    Rng rng(seed);
    auto frames = seed ? random_frames(n, rng) : identity_frames(n);
    Assignment a;
    if (gata) {
        inst.phi = {TargetFunctionId::gat(1), TargetFunctionId::gat(2)};
        // each side holds one robot of each function
        for (int i = 0; i < n; ++i)
            a.push_back(inst.phi[static_cast<std::size_t>(i % 2)]);
        inst.goal = {GoalKind::GatherAtMost, 1, nullptr};
        inst.expect = {{ExpectKind::MustReach, horizon, 0}};
        inst.options = positive_run(horizon);
    } else {
        inst.phi = {TargetFunctionId::two_gat()};
        a.assign(static_cast<std::size_t>(n), inst.phi[0]);
        inst.goal = {GoalKind::GatherAtMost, 1, nullptr};
        inst.expect = {{ExpectKind::MustNotChange, horizon, 0}, {ExpectKind::MustNotReach, horizon, 0}};
        inst.options = negative_run(horizon);
    }
    inst.world = make_world(pts, frames, a);
    inst.scheduler = fsync();
    return {inst};
}

namespace {

// Clone pairs: robots 1,2 share frame z and function phi[0]; robots 3,4 share
// z rotated by pi and phi[1].
ScenarioInstance clone_world(const std::string& label, std::vector<TargetFunctionId> phi, bool mirrored)
{
    ScenarioInstance inst;
    inst.label = label;
    LocalFrame z = LocalFrame::from_t(Scalar(1, 3), Scalar(2));
    LocalFrame zr = z;
    zr.cos = -z.cos;
    zr.sin = -z.sin;
    inst.phi = std::move(phi);
    Assignment a = {inst.phi[0], inst.phi[0], inst.phi[1], inst.phi[1]};
    // mirrored: the proof's Q_0 with one robot of each pair at each point
    std::vector<Point> pts = mirrored ? std::vector<Point>{kP, kQ, kP, kQ} : std::vector<Point>{kP, kP, kQ, kQ};
    inst.world = make_world(pts, {z, z, zr, zr}, a);
    inst.scheduler.kind = SchedulerKind::Scripted;
    inst.scheduler.script = {{1, 2, 3, 4}};
    inst.goal = {GoalKind::GatherAtMost, 1, nullptr};
    return inst;
}

} // namespace

std::vector<ScenarioInstance> clone_symmetric_failure(long horizon)
{
    auto inst = clone_world("2gat+hop from mirrored Q0", {TargetFunctionId::two_gat(), TargetFunctionId::hop()}, true);
    inst.expect = {{ExpectKind::MustNotChange, horizon, 0}, {ExpectKind::MustNotReach, horizon, 0}};
    inst.options = negative_run(horizon);
    return {inst};
}

std::vector<ScenarioInstance> clone_sgat_pair(long horizon)
{
    auto inst = clone_world("sgat1+sgat2 clone pairs", {TargetFunctionId::sgat(1), TargetFunctionId::sgat(2)}, false);
    inst.expect = {{ExpectKind::MustNotReach, horizon, 0}, {ExpectKind::MustStayBelow, horizon, 2}};
    inst.options = negative_run(horizon);
    return {inst};
}

std::vector<ScenarioInstance> clone_gat2_breaks()
{
    auto inst = clone_world("2gat+gat2 from mirrored Q0", {TargetFunctionId::two_gat(), TargetFunctionId::gat(2)}, true);
    inst.expect = {{ExpectKind::MustChangeWithin, 1, 0}};
    inst.options = negative_run(1);
    return {inst};
}

std::vector<ScenarioInstance> sgta_bivalent_escape(std::uint64_t seed)
{
    std::vector<TargetFunctionId> phi = {TargetFunctionId::sgat(1), TargetFunctionId::sgat(2), TargetFunctionId::sgat(3)};
    Rng rng(seed);
    std::vector<ScenarioInstance> out;
    for (const auto& idx : enumerate_assignments(3, 4)) {
        ScenarioInstance inst;
        inst.label = "assignment";
        Assignment a;
        for (int v : idx) {
            a.push_back(phi[static_cast<std::size_t>(v)]);
            inst.label += " " + std::to_string(v + 1);
        }
        inst.phi = phi;
        auto frames = seed ? random_frames(4, rng) : identity_frames(4);
        inst.world = make_world({kP, kP, kQ, kQ}, frames, a);
        inst.scheduler = fsync();
        inst.goal = {GoalKind::ScatterAtLeast, 3, nullptr};
        inst.expect = {{ExpectKind::MustReach, 1, 0}};
        inst.options = positive_run(1);
        out.push_back(std::move(inst));
    }
    return out;
}

std::vector<ScenarioInstance> crash_scatter_lower_bound(int f, int n, bool tight, long horizon)
{
    require(f >= 1, "crash_scatter_lower_bound: the construction needs f >= 1 crashes");
    require(f <= n - 1, "crash_scatter_lower_bound: need f <= n - 1");
    if (tight)
        require(f <= n - 2, "crash_scatter_lower_bound: the tight variant needs f <= n - 2");
    int c = tight ? f + 2 : f + 1;
    ScenarioInstance inst;
    inst.label = std::string(tight ? "(f+2)SCTA" : "(f+1)SCTA") + " f=" + std::to_string(f) + " n=" + std::to_string(n);
    inst.phi = sct_algorithm(c);
    Assignment a;
    FaultPlan faults;
    // the crashed robots hold sct_2..sct_{f+1}; sct_1 fixes (0,0) and
    // fills the tail
    for (int r = 1; r <= f; ++r) {
        a.push_back(TargetFunctionId::sct(r + 1, c));
        faults.push_back({r, 0});
    }
    if (tight)
        a.push_back(TargetFunctionId::sct(f + 2, c));
    while (static_cast<int>(a.size()) < n)
        a.push_back(TargetFunctionId::sct(1, c));
    inst.world = make_world(std::vector<Point>(static_cast<std::size_t>(n), kP), identity_frames(n), a, faults);
    inst.scheduler = fsync();
    inst.goal = {GoalKind::ScatterAtLeast, 2, nullptr};
    if (tight) {
        inst.expect = {{ExpectKind::MustReach, horizon, 0}};
        inst.options = positive_run(horizon);
    } else {
        inst.expect = {{ExpectKind::MustStayBelow, horizon, 1}};
        inst.options = negative_run(horizon);
    }
    return {inst};
}

namespace {

ScenarioInstance fgp_world(int n, bool crash)
{
    require(n >= 3, "fgp_crash_stuck: need n >= 3");
    ScenarioInstance inst;
    inst.phi = {TargetFunctionId::two_gat()};
    std::vector<Point> pts(static_cast<std::size_t>(n - 1), kP);
    pts.push_back(kQ);
    FaultPlan faults;
    if (crash)
        faults.push_back({n, 0});
    inst.world = make_world(pts, identity_frames(n), Assignment(static_cast<std::size_t>(n), inst.phi[0]), faults);
    inst.scheduler = fsync();
    return inst;
}

} // namespace

std::vector<ScenarioInstance> fgp_crash_stuck(int n, long horizon)
{
    auto inst = fgp_world(n, true);
    inst.label = "crash at q2, n=" + std::to_string(n);
    inst.goal = {GoalKind::GatherAllAtMost, 1, nullptr};
    inst.expect = {{ExpectKind::MustNotChange, horizon, 0}, {ExpectKind::MustNotReach, horizon, 0}};
    inst.options = negative_run(horizon);
    return {inst};
}

std::vector<ScenarioInstance> fgp_nonfaulty(int n)
{
    auto inst = fgp_world(n, true);
    inst.label = "non-faulty gathering, n=" + std::to_string(n);
    inst.goal = {GoalKind::GatherNonFaulty, 1, nullptr};
    inst.expect = {{ExpectKind::MustReach, 0, 0}};
    inst.options = positive_run(10);
    return {inst};
}

std::vector<ScenarioInstance> fgp_no_crash(int n, std::uint64_t seed, long horizon)
{
    auto inst = fgp_world(n, false);
    inst.label = "no crash, n=" + std::to_string(n);
    inst.scheduler = fair(seed);
    inst.goal = {GoalKind::GatherAtMost, 1, nullptr};
    inst.expect = {{ExpectKind::MustReach, horizon, 0}};
    inst.options = positive_run(horizon);
    return {inst};
}

const std::vector<Scenario>& scenario_registry()
{
    static const std::vector<Scenario> reg = [] {
        auto I = [](const Params& p, const char* k) { return static_cast<int>(p.at(k)); };
        std::vector<Scenario> r;
        r.push_back({"scatter_lower_bound", "m < c functions of cSCTA from one point never reach c points",
                     {{"c", 3}, {"m", 2}, {"n", 4}, {"horizon", 200}},
                     [=](const Params& p) { return scatter_lower_bound(I(p, "c"), I(p, "m"), I(p, "n"), p.at("horizon")); }});
        r.push_back({"scatter_lower_bound_top", "same construction with c = n, m = n - 1",
                     {{"n", 5}, {"horizon", 200}},
                     [=](const Params& p) { return scatter_lower_bound(I(p, "n"), I(p, "n") - 1, I(p, "n"), p.at("horizon")); }});
        r.push_back({"bivalent_stasis", "2GATA leaves a bivalent configuration unchanged",
                     {{"n", 4}, {"seed", 0}, {"horizon", 100}},
                     [=](const Params& p) { return bivalent_stasis(I(p, "n"), false, static_cast<std::uint64_t>(p.at("seed")), p.at("horizon")); }});
        r.push_back({"bivalent_stasis_6", "2GATA bivalent stasis with six robots",
                     {{"seed", 0}, {"horizon", 100}},
                     [=](const Params& p) { return bivalent_stasis(6, false, static_cast<std::uint64_t>(p.at("seed")), p.at("horizon")); }});
        r.push_back({"gata_bivalent_escape", "GATA gathers from a bivalent start",
                     {{"n", 4}, {"seed", 0}, {"horizon", 200}},
                     [=](const Params& p) { return bivalent_stasis(I(p, "n"), true, static_cast<std::uint64_t>(p.at("seed")), p.at("horizon")); }});
        r.push_back({"clone_symmetric_failure", "symmetric size-2 algorithm stays put on the mirrored clone start",
                     {{"horizon", 100}},
                     [](const Params& p) { return clone_symmetric_failure(p.at("horizon")); }});
        r.push_back({"clone_sgat_pair", "sgat1/sgat2 clone pairs stay bivalent forever",
                     {{"horizon", 100}},
                     [](const Params& p) { return clone_sgat_pair(p.at("horizon")); }});
        r.push_back({"clone_gat2_breaks", "non-symmetric gat2 moves the mirrored clone start at once",
                     {},
                     [](const Params&) { return clone_gat2_breaks(); }});
        r.push_back({"sgta_bivalent_escape", "every SGTA assignment leaves the bivalent start in one FSYNC round",
                     {{"seed", 0}},
                     [](const Params& p) { return sgta_bivalent_escape(static_cast<std::uint64_t>(p.at("seed"))); }});
        r.push_back({"crash_scatter_lower_bound", "f+1 functions with f crashed robots never leave the start point",
                     {{"f", 2}, {"n", 5}, {"horizon", 200}},
                     [=](const Params& p) { return crash_scatter_lower_bound(I(p, "f"), I(p, "n"), false, p.at("horizon")); }});
        r.push_back({"crash_scatter_tight", "f+2 functions do scatter despite f crashes",
                     {{"f", 2}, {"n", 5}, {"horizon", 200}},
                     [=](const Params& p) { return crash_scatter_lower_bound(I(p, "f"), I(p, "n"), true, p.at("horizon")); }});
        r.push_back({"fgp_crash_stuck", "a crash at the lone point freezes 2GATA short of full gathering",
                     {{"n", 4}, {"horizon", 200}},
                     [=](const Params& p) { return fgp_crash_stuck(I(p, "n"), p.at("horizon")); }});
        r.push_back({"fgp_nonfaulty", "the same world already gathers all non-faulty robots",
                     {{"n", 4}},
                     [=](const Params& p) { return fgp_nonfaulty(I(p, "n")); }});
        r.push_back({"fgp_no_crash", "without the crash 2GATA gathers",
                     {{"n", 4}, {"seed", 1}, {"horizon", 500}},
                     [=](const Params& p) { return fgp_no_crash(I(p, "n"), static_cast<std::uint64_t>(p.at("seed")), p.at("horizon")); }});
        return r;
    }();
    return reg;
}

const Scenario& find_scenario(const std::string& name)
{
    for (const auto& s : scenario_registry())
        if (s.name == name)
            return s;
    throw std::invalid_argument("unknown scenario '" + name + "'");
}

Params resolve_params(const Scenario& s, const Params& overrides)
{
    Params p = s.defaults;
    for (const auto& [k, v] : overrides) {
        if (!p.count(k))
            throw std::invalid_argument("scenario '" + s.name + "' has no parameter '" + k + "'");
        p[k] = v;
    }
    return p;
}

std::vector<Point> random_points(int n, long box, int min_support, int max_support, Rng& rng)
{
    long side = 2 * box + 1;
    int cap = max_support > 0 ? std::min(max_support, n) : n;
    if (static_cast<double>(side) * static_cast<double>(side) < cap)
        cap = static_cast<int>(side * side);
    int lo = std::clamp(min_support, 1, cap);
    int s = static_cast<int>(rng.uniform(lo, cap));
    std::vector<Point> distinct;
    std::set<std::pair<long, long>> seen;
    while (static_cast<int>(distinct.size()) < s) {
        long x = rng.uniform(-box, box), y = rng.uniform(-box, box);
        if (seen.insert({x, y}).second)
            distinct.push_back(Point{x, y});
    }
    std::vector<Point> pts = distinct;
    while (static_cast<int>(pts.size()) < n)
        pts.push_back(distinct[static_cast<std::size_t>(rng.uniform(0, s - 1))]);
    // Fisher-Yates with the portable draw
    for (std::size_t i = pts.size(); i > 1; --i)
        std::swap(pts[i - 1], pts[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(i) - 1))]);
    return pts;
}

LocalFrame random_frame(Rng& rng)
{
    Scalar scale(rng.uniform(1, 100), rng.uniform(1, 10));
    scale.canonicalize();
    if (scale > 10)
        scale = Scalar(rng.uniform(1, 10));
    if (rng.uniform(0, 15) == 0)
        return LocalFrame::half_turn(scale);
    Scalar t(rng.uniform(-20, 20), rng.uniform(1, 10));
    t.canonicalize();
    return LocalFrame::from_t(t, scale);
}

std::vector<LocalFrame> random_frames(int n, Rng& rng)
{
    std::vector<LocalFrame> out;
    for (int i = 0; i < n; ++i)
        out.push_back(random_frame(rng));
    return out;
}

std::vector<Point> rational_polygon(int n)
{
    require(n >= 1, "rational_polygon: n >= 1");
    std::vector<Point> out;
    const long double pi = 3.141592653589793238462643383279502884L;
    for (int j = 0; j < n; ++j) {
        // exact quarter turns, otherwise the rational point with t = tan(theta/2)
        if ((4 * j) % n == 0) {
            static const Point quarter[4] = {Point{1, 0}, Point{0, 1}, Point{-1, 0}, Point{0, -1}};
            out.push_back(quarter[(4 * j / n) % 4]);
            continue;
        }
        Scalar t = rational_from(std::tan(pi * j / n));
        Scalar d = 1 + t * t;
        out.push_back({(1 - t * t) / d, 2 * t / d});
    }
    return out;
}

} // namespace swarmkit
