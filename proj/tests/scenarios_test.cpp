#include "swarmkit/scenarios.hpp"
#include "swarmkit/symmetry.hpp"
#include "swarmkit/trace_io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

using namespace swarmkit;

namespace {

std::string trace_text(const ExecutionTrace& t)
{
    std::ostringstream s;
    write_trace(s, t);
    return s.str();
}

bool all_pass(const std::vector<ScenarioInstance>& insts)
{
    for (const auto& i : insts) {
        auto r = run_instance(i);
        if (!r.pass) {
            ADD_FAILURE() << i.label << ": " << r.detail;
            return false;
        }
    }
    return true;
}

} // namespace

TEST(Registry, EveryScenarioPassesWithDefaults)
{
    std::set<std::string> names;
    for (const auto& s : scenario_registry()) {
        EXPECT_TRUE(names.insert(s.name).second) << "duplicate " << s.name;
        for (const auto& r : run_scenario(s))
            EXPECT_TRUE(r.pass) << s.name << " [" << r.label << "]: " << r.detail;
    }
    EXPECT_THROW(find_scenario("nope"), std::invalid_argument);
    EXPECT_THROW(resolve_params(find_scenario("scatter_lower_bound"), {{"q", 1}}), std::invalid_argument);
    EXPECT_EQ(resolve_params(find_scenario("scatter_lower_bound"), {{"n", 6}}).at("n"), 6);
}

TEST(ScatterLowerBound, SupportStaysAtM)
{
    EXPECT_TRUE(all_pass(scatter_lower_bound(3, 2, 4)));
    EXPECT_TRUE(all_pass(scatter_lower_bound(5, 4, 5)));
    EXPECT_TRUE(all_pass(scatter_lower_bound(4, 1, 6, 50)));
    EXPECT_THROW(scatter_lower_bound(1, 0, 3), std::invalid_argument);
    EXPECT_THROW(scatter_lower_bound(3, 3, 4), std::invalid_argument);
    EXPECT_THROW(scatter_lower_bound(5, 2, 4), std::invalid_argument);

    auto inst = scatter_lower_bound(3, 2, 4).front();
    auto r = run_instance(inst);
    std::size_t top = 0;
    for (std::size_t i = 0; i < r.trace.steps.size(); ++i)
        top = std::max(top, r.trace.config_at(i).support_size());
    EXPECT_EQ(top, 2u);
    EXPECT_EQ(r.trace.steps.size(), 201u);
}

TEST(BivalentStasis, TwoGatFreezesGataEscapes)
{
    EXPECT_TRUE(all_pass(bivalent_stasis(4)));
    EXPECT_TRUE(all_pass(bivalent_stasis(6)));
    EXPECT_TRUE(all_pass(bivalent_stasis(8, false, 3)));
    EXPECT_TRUE(all_pass(bivalent_stasis(4, true)));
    EXPECT_TRUE(all_pass(bivalent_stasis(4, true, 5)));
    EXPECT_THROW(bivalent_stasis(5), std::invalid_argument);
    EXPECT_THROW(bivalent_stasis(2), std::invalid_argument);

    // the GATA run must not satisfy the 2GATA expectation
    auto inst = bivalent_stasis(4, true).front();
    inst.expect = {{ExpectKind::MustNotChange, 100, 0}};
    EXPECT_FALSE(run_instance(inst).pass);
}

TEST(Clones, SymmetricPairStaysAndGat2Breaks)
{
    EXPECT_TRUE(all_pass(clone_symmetric_failure()));
    EXPECT_TRUE(all_pass(clone_sgat_pair()));
    EXPECT_TRUE(all_pass(clone_gat2_breaks()));
    auto inst = clone_symmetric_failure().front();
    // the pair shares frames within each side: robots 1,2 and 3,4
    EXPECT_EQ(inst.world.robot(1).frame.cos, inst.world.robot(2).frame.cos);
    EXPECT_EQ(inst.world.robot(3).frame.cos, -inst.world.robot(1).frame.cos);
    EXPECT_EQ(inst.world.robot(3).frame.sin, -inst.world.robot(1).frame.sin);
    EXPECT_TRUE(is_symmetric_tf(inst.phi[0], {inst.world.config()}));
}

TEST(Clones, SgtaEscapesInOneRound)
{
    auto insts = sgta_bivalent_escape();
    EXPECT_EQ(insts.size(), 36u);
    EXPECT_TRUE(all_pass(insts));
    EXPECT_TRUE(all_pass(sgta_bivalent_escape(7)));
}

TEST(CrashScatter, LowerBoundAndTightness)
{
    EXPECT_TRUE(all_pass(crash_scatter_lower_bound(2, 5)));
    EXPECT_TRUE(all_pass(crash_scatter_lower_bound(1, 3)));
    EXPECT_TRUE(all_pass(crash_scatter_lower_bound(2, 5, true)));
    EXPECT_TRUE(all_pass(crash_scatter_lower_bound(3, 6, true)));
    EXPECT_THROW(crash_scatter_lower_bound(0, 4), std::invalid_argument);
    EXPECT_THROW(crash_scatter_lower_bound(4, 4), std::invalid_argument);
    auto inst = crash_scatter_lower_bound(2, 5).front();
    EXPECT_EQ(inst.phi.size(), 3u);
    EXPECT_EQ(inst.world.crashed_ids(), (std::vector<int>{1, 2}));
}

TEST(Fgp, CrashSeparatesTheTwoGoals)
{
    EXPECT_TRUE(all_pass(fgp_crash_stuck(4)));
    EXPECT_TRUE(all_pass(fgp_crash_stuck(7)));
    EXPECT_TRUE(all_pass(fgp_nonfaulty(4)));
    EXPECT_TRUE(all_pass(fgp_no_crash(5, 9)));
    EXPECT_THROW(fgp_crash_stuck(2), std::invalid_argument);
}

TEST(Expectations, CheckedFromTraceAlone)
{
    auto inst = fgp_no_crash(4, 1).front();
    auto r = run_instance(inst);
    ASSERT_TRUE(r.pass);
    std::istringstream in(trace_text(r.trace));
    auto back = read_trace(in);
    GoalPredicate gather{GoalKind::GatherAtMost, 1, nullptr};
    EXPECT_TRUE(check_expectation({ExpectKind::MustReach, 500, 0}, gather, back));
    EXPECT_TRUE(check_expectation({ExpectKind::MustChangeWithin, 5, 0}, gather, back));
    std::string why;
    EXPECT_FALSE(check_expectation({ExpectKind::MustNotChange, 1, 0}, gather, back, {}, &why));
    EXPECT_NE(why.find("changed"), std::string::npos);
    EXPECT_FALSE(check_expectation({ExpectKind::MustNotReach, 1, 0}, gather, back));
    EXPECT_FALSE(check_expectation({ExpectKind::MustStayBelow, 500, 0}, gather, back));
    // a trace cut short of the horizon is inconclusive for negative claims
    ExecutionTrace shortened = back;
    shortened.steps.resize(1);
    shortened.verdict = {VerdictKind::HorizonExceeded, 0, false};
    EXPECT_FALSE(check_expectation({ExpectKind::MustStayBelow, 50, 2}, gather, shortened));
}

TEST(Builders, Deterministic)
{
    for (const auto& s : scenario_registry()) {
        auto p = resolve_params(s, {});
        auto a = s.build(p), b = s.build(p);
        ASSERT_EQ(a.size(), b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            EXPECT_EQ(a[i].world.config(), b[i].world.config());
            EXPECT_EQ(trace_text(run_instance(a[i]).trace), trace_text(run_instance(b[i]).trace)) << s.name;
        }
    }
}

TEST(Generators, RandomPointsRespectBounds)
{
    Rng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        int n = static_cast<int>(rng.uniform(1, 8));
        int lo = static_cast<int>(rng.uniform(1, n)), hi = static_cast<int>(rng.uniform(lo, n));
        auto pts = random_points(n, 4, lo, hi, rng);
        ASSERT_EQ(static_cast<int>(pts.size()), n);
        Configuration c(pts);
        EXPECT_GE(static_cast<int>(c.support_size()), lo);
        EXPECT_LE(static_cast<int>(c.support_size()), hi);
        for (const auto& p : pts) {
            EXPECT_LE(abs(p.x), 4);
            EXPECT_LE(abs(p.y), 4);
        }
    }
    Rng a(5), b(5);
    EXPECT_EQ(random_points(6, 10, 1, 0, a), random_points(6, 10, 1, 0, b));
}

TEST(Generators, RationalPolygon)
{
    for (int n : {3, 4, 5, 6, 8}) {
        auto pts = rational_polygon(n);
        ASSERT_EQ(static_cast<int>(pts.size()), n);
        for (const auto& p : pts)
            EXPECT_EQ(sq_norm(p), 1);
        EXPECT_EQ(Configuration(pts).support_size(), static_cast<std::size_t>(n));
    }
    EXPECT_EQ(rotation_order(Configuration(rational_polygon(4))), 4);
    // other orders have irrational vertices: only close to regular
    for (int n : {5, 6, 8}) {
        auto pts = rational_polygon(n);
        for (int j = 0; j < n; ++j) {
            const Point& a = pts[static_cast<std::size_t>(j)];
            const Point& b = pts[static_cast<std::size_t>((j + 1) % n)];
            EXPECT_NEAR(Scalar(dot(a, b)).get_d(), std::cos(2 * M_PI / n), 1e-15);
            EXPECT_GT(cross(a, b), 0);
        }
    }
}
