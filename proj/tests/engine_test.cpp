#include "swarmkit/engine.hpp"
#include "swarmkit/scenarios.hpp"
#include "swarmkit/trace_io.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <set>
#include <sstream>

using namespace swarmkit;
using namespace oracle;

namespace {

std::vector<LocalFrame> ids_frames(int n) { return std::vector<LocalFrame>(static_cast<std::size_t>(n)); }

Assignment all(int n, const TargetFunctionId& tf) { return Assignment(static_cast<std::size_t>(n), tf); }

long surjections(int n, int m)
{
    // inclusion-exclusion
    long total = 0, binom = 1;
    for (int j = 0; j <= m; ++j) {
        long pw = 1;
        for (int i = 0; i < n; ++i)
            pw *= m - j;
        total += (j % 2 ? -1 : 1) * binom * pw;
        binom = binom * (m - j) / (j + 1);
    }
    return total;
}

} // namespace

TEST(Rng, UniformAndDeterministic)
{
    Rng a(9), b(9);
    std::set<long> seen;
    for (int i = 0; i < 1000; ++i) {
        long x = a.uniform(-3, 3);
        EXPECT_EQ(x, b.uniform(-3, 3));
        EXPECT_GE(x, -3);
        EXPECT_LE(x, 3);
        seen.insert(x);
    }
    EXPECT_EQ(seen.size(), 7u);
    EXPECT_THROW(a.uniform(2, 1), std::invalid_argument);
    int hits = 0;
    for (int i = 0; i < 4000; ++i)
        hits += a.bernoulli(Scalar(1, 4));
    EXPECT_NEAR(hits / 4000.0, 0.25, 0.03);
    EXPECT_TRUE(a.bernoulli(1));
    EXPECT_FALSE(a.bernoulli(0));
}

TEST(LocalFrame, RoundTripAndOrientation)
{
    auto f = LocalFrame::from_t(1, 2, {5, 5});
    // t = 1 is a quarter turn
    EXPECT_EQ(f.cos, 0);
    EXPECT_EQ(f.sin, 1);
    EXPECT_EQ(f.to_local({5, 5}), Point(0, 0));
    // global +y is the local +x axis, at half the length
    EXPECT_EQ(f.to_local({5, 7}), Point(1, 0));
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        auto fr = random_frame(rng);
        fr.position = Point(rng.uniform(-9, 9), rng.uniform(-9, 9));
        fr.validate();
        Point g(rng.uniform(-20, 20), rng.uniform(-20, 20));
        EXPECT_EQ(fr.to_global(fr.to_local(g)), g);
    }
    auto h = LocalFrame::half_turn(1);
    EXPECT_EQ(h.to_local({1, 2}), Point(-1, -2));
    LocalFrame bad;
    bad.cos = 2;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = LocalFrame{};
    bad.scale = 0;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(World, ObserveIsSelfCentric)
{
    Rng rng(5);
    auto pts = random_pts(rng, 5, 6);
    auto w = make_world(pts, random_frames(5, rng), all(5, TargetFunctionId::two_gat()));
    for (const auto& r : w.robots) {
        auto obs = observe(w, r);
        EXPECT_TRUE(obs.contains({0, 0}));
        EXPECT_EQ(obs.size(), 5u);
    }
    EXPECT_THROW(make_world(pts, ids_frames(4), all(5, TargetFunctionId::two_gat())), std::invalid_argument);
    EXPECT_THROW(make_world(pts, ids_frames(5), all(5, TargetFunctionId::two_gat()), {{6, 0}}), std::invalid_argument);
    EXPECT_THROW(w.robot(0), std::out_of_range);
}

TEST(World, GatheringDestinationsIgnoreFrames)
{
    // 2gat only selects points of P or its SEC center, which every frame agrees on
    Rng rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        int n = static_cast<int>(rng.uniform(3, 6));
        auto pts = random_pts(rng, n, 5);
        auto a = make_world(pts, ids_frames(n), all(n, TargetFunctionId::two_gat()));
        auto b = make_world(pts, random_frames(n, rng), all(n, TargetFunctionId::two_gat()));
        EXPECT_EQ(destinations(a), destinations(b));
    }
}

TEST(Step, ActivationAndCrashes)
{
    auto tf = TargetFunctionId::two_gat();
    auto w = make_world({{0, 0}, {0, 0}, {4, 0}}, ids_frames(3), all(3, tf), {{2, 0}});
    auto w1 = step(w, {3});
    EXPECT_EQ(w1.time, 1);
    EXPECT_EQ(w1.robot(3).frame.position, Point(0, 0));
    // robot 2 crashed at 0: activated but frozen
    auto w2 = make_world({{0, 0}, {4, 0}, {4, 0}}, ids_frames(3), all(3, tf), {{3, 0}});
    auto s = step(w2, {1, 2, 3});
    EXPECT_EQ(s.robot(1).frame.position, Point(4, 0));
    EXPECT_EQ(s.robot(3).frame.position, Point(4, 0));
    EXPECT_THROW(step(w, {4}), std::out_of_range);

    // a crash at t suppresses the activation at t, not before
    auto w3 = make_world({{0, 0}, {0, 0}, {4, 0}}, ids_frames(3), all(3, tf), {{3, 1}});
    EXPECT_EQ(w3.crashed_ids(), std::vector<int>{});
    auto moved = step(w3, {});
    EXPECT_EQ(moved.crashed_ids(), std::vector<int>{3});
    EXPECT_EQ(step(moved, {3}).robot(3).frame.position, Point(4, 0));
    EXPECT_EQ(step(w3, {3}).robot(3).frame.position, Point(0, 0));
}

TEST(Scheduler, Kinds)
{
    auto w = make_world({{0, 0}, {1, 0}, {2, 0}}, ids_frames(3), all(3, TargetFunctionId::two_gat()));
    auto fs = make_scheduler({});
    EXPECT_EQ(fs->next(w), (std::vector<int>{1, 2, 3}));

    SchedulerSpec rr;
    rr.kind = SchedulerKind::CentralRoundRobin;
    auto r = make_scheduler(rr);
    EXPECT_EQ(r->next(w), std::vector<int>{1});
    EXPECT_EQ(r->next(w), std::vector<int>{2});
    EXPECT_EQ(r->next(w), std::vector<int>{3});
    EXPECT_EQ(r->next(w), std::vector<int>{1});

    SchedulerSpec sc;
    sc.kind = SchedulerKind::Scripted;
    sc.script = {{1, 2}, {}};
    auto s = make_scheduler(sc);
    EXPECT_EQ(s->next(w), (std::vector<int>{1, 2}));
    EXPECT_TRUE(s->next(w).empty());
    EXPECT_EQ(s->next(w), (std::vector<int>{1, 2}));
    sc.script.clear();
    EXPECT_THROW(make_scheduler(sc), std::invalid_argument);
    SchedulerSpec bad;
    bad.kind = SchedulerKind::FairRandom;
    bad.p = 0;
    EXPECT_THROW(make_scheduler(bad), std::invalid_argument);
}

TEST(Scheduler, FairRandomBoundsIdleTime)
{
    Rng pts_rng(1);
    auto w = make_world(random_pts(pts_rng, 6, 5), ids_frames(6), all(6, TargetFunctionId::two_gat()));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SchedulerSpec spec;
        spec.kind = SchedulerKind::FairRandom;
        spec.seed = seed;
        spec.p = Scalar(1, 10);
        spec.bound = 4;
        auto a = make_scheduler(spec), b = make_scheduler(spec);
        std::vector<int> idle(6, 0);
        for (int t = 0; t < 300; ++t) {
            auto act = a->next(w);
            EXPECT_EQ(act, b->next(w));
            std::vector<bool> on(6, false);
            for (int id : act)
                on[static_cast<std::size_t>(id - 1)] = true;
            for (std::size_t i = 0; i < 6; ++i) {
                idle[i] = on[i] ? 0 : idle[i] + 1;
                EXPECT_LE(idle[i], spec.bound);
            }
        }
    }
}

TEST(Assignments, EnumerationCounts)
{
    EXPECT_EQ(static_cast<long>(enumerate_assignments(2, 4).size()), surjections(4, 2));
    EXPECT_EQ(static_cast<long>(enumerate_assignments(3, 4).size()), surjections(4, 3));
    EXPECT_EQ(static_cast<long>(enumerate_assignments(3, 6).size()), surjections(6, 3));
    for (const auto& a : enumerate_assignments(3, 5)) {
        std::set<int> used(a.begin(), a.end());
        EXPECT_EQ(used.size(), 3u);
    }
    // two interchangeable pairs: multisets per class
    EnumerateOptions eo;
    eo.class_of = {0, 0, 1, 1};
    EXPECT_EQ(enumerate_assignments(2, 4, eo).size(), 7u);
    eo = {};
    eo.cap = 5;
    auto capped = enumerate_assignments(3, 6, eo);
    EXPECT_EQ(capped.size(), 5u);
    EXPECT_THROW(enumerate_assignments(3, 2), std::invalid_argument);
    Rng rng(2);
    for (int i = 0; i < 50; ++i) {
        auto s = sample_assignment(4, 5, rng);
        EXPECT_EQ(std::set<int>(s.begin(), s.end()).size(), 4u);
    }
    auto phi = sct_algorithm(2);
    EXPECT_TRUE(validate_assignment({phi[0], phi[1], phi[1]}, phi));
    EXPECT_FALSE(validate_assignment({phi[0], phi[0], phi[0]}, phi));
    EXPECT_FALSE(validate_assignment({phi[0], TargetFunctionId::two_gat()}, phi));
}

TEST(Goals, Predicates)
{
    auto tf = TargetFunctionId::two_gat();
    auto w = make_world({{0, 0}, {0, 0}, {3, 0}}, ids_frames(3), all(3, tf), {{3, 0}});
    EXPECT_TRUE(check_goal({GoalKind::ScatterAtLeast, 2, nullptr}, w));
    EXPECT_FALSE(check_goal({GoalKind::ScatterAtLeast, 3, nullptr}, w));
    EXPECT_TRUE(check_goal({GoalKind::GatherAtMost, 2, nullptr}, w));
    EXPECT_FALSE(check_goal({GoalKind::GatherAtMost, 1, nullptr}, w));
    EXPECT_TRUE(check_goal({GoalKind::GatherNonFaulty, 1, nullptr}, w));
    EXPECT_FALSE(check_goal({GoalKind::GatherAllAtMost, 1, nullptr}, w));
    auto g = std::make_shared<const Configuration>(Configuration{{5, 5}, {5, 5}, {5, 11}});
    EXPECT_TRUE(check_goal({GoalKind::PatternSimilar, 1, g}, w));
    EXPECT_FALSE(check_goal({}, w));
}

TEST(Lambda, Values)
{
    EXPECT_EQ(lambda_triple(Configuration{{1, 1}, {1, 1}, {1, 1}}), (Lambda{0, 1, -3}));
    EXPECT_EQ(lambda_triple(Configuration{{0, 0}, {0, 0}, {1, 0}, {1, 0}}), (Lambda{2, 2, 0}));
    EXPECT_EQ(lambda_triple(Configuration{{0, 0}, {0, 0}, {4, 0}}), (Lambda{1, 2, -2}));
    EXPECT_EQ(lambda_triple(Configuration{{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {0, 0}, {0, 0}}), (Lambda{4, 5, -2}));
}

TEST(Run, Verdicts)
{
    auto tf = TargetFunctionId::two_gat();
    GoalPredicate gather{GoalKind::GatherAtMost, 1, nullptr};
    auto fs = make_scheduler({});
    auto reach = run(make_world({{0, 0}, {0, 0}, {3, 0}}, ids_frames(3), all(3, tf)), *fs, gather, {});
    EXPECT_EQ(reach.verdict.kind, VerdictKind::Reached);
    EXPECT_EQ(reach.verdict.time, 1);
    EXPECT_EQ(reach.steps.size(), 2u);

    auto stuck = run(make_world({{0, 0}, {0, 0}, {3, 0}, {3, 0}}, ids_frames(4), all(4, tf)), *fs, gather, {});
    EXPECT_EQ(stuck.verdict.kind, VerdictKind::StasisDetected);
    EXPECT_EQ(stuck.verdict.time, 0);

    RunOptions o;
    o.horizon = 7;
    o.stop_on_stasis = false;
    auto full = run(make_world({{0, 0}, {0, 0}, {3, 0}, {3, 0}}, ids_frames(4), all(4, tf)), *fs, gather, o);
    EXPECT_EQ(full.verdict.kind, VerdictKind::HorizonExceeded);
    EXPECT_EQ(full.steps.size(), 8u);

    o = {};
    o.stability_window = 5;
    auto stable = run(make_world({{0, 0}, {0, 0}, {3, 0}}, ids_frames(3), all(3, tf)), *fs, gather, o);
    EXPECT_EQ(stable.verdict.kind, VerdictKind::Reached);
    EXPECT_TRUE(stable.verdict.stable);
    o.horizon = 0;
    EXPECT_THROW(run(make_world({{0, 0}}, ids_frames(1), all(1, tf)), *fs, gather, o), std::invalid_argument);
}

TEST(Run, StepsAreConsistent)
{
    // each recorded step follows from the previous by moving exactly the
    // activated, non-crashed robots to their destinations
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 5;
        auto w = make_world(random_pts(rng, n, 6), random_frames(n, rng), all(n, TargetFunctionId::two_gat()),
                            {{static_cast<int>(rng.uniform(1, n)), rng.uniform(0, 5)}});
        SchedulerSpec sp;
        sp.kind = SchedulerKind::FairRandom;
        sp.seed = static_cast<std::uint64_t>(trial);
        auto sch = make_scheduler(sp);
        RunOptions o;
        o.horizon = 40;
        auto tr = run(w, *sch, {GoalKind::GatherAtMost, 1, nullptr}, o);
        World cur = w;
        for (std::size_t i = 0; i + 1 < tr.steps.size(); ++i) {
            ASSERT_EQ(tr.steps[i].positions, [&] {
                std::vector<Point> v;
                for (const auto& r : cur.robots)
                    v.push_back(r.frame.position);
                return v;
            }());
            EXPECT_EQ(tr.steps[i].crashed, cur.crashed_ids());
            cur = step(cur, tr.steps[i].activated);
        }
    }
}

TEST(Trace, RoundTripIsLossless)
{
    Rng rng(17);
    auto w = make_world(random_pts(rng, 4, 5), random_frames(4, rng), all(4, TargetFunctionId::sct(1, 3)), {{2, 3}});
    w.robots[2].tf = TargetFunctionId::sct(3, 3);
    SchedulerSpec sp;
    sp.kind = SchedulerKind::FairRandom;
    sp.seed = 4;
    auto sch = make_scheduler(sp);
    auto tr = run(w, *sch, {GoalKind::ScatterAtLeast, 4, nullptr}, {});
    tr.pattern = Configuration{{0, 0}, {Scalar(1, 3), Scalar(-7, 2)}};
    std::ostringstream a;
    write_trace(a, tr);
    std::istringstream in(a.str());
    auto back = read_trace(in);
    std::ostringstream b;
    write_trace(b, back);
    EXPECT_EQ(a.str(), b.str());
    ASSERT_EQ(back.steps.size(), tr.steps.size());
    EXPECT_EQ(back.steps.back().positions, tr.steps.back().positions);
    EXPECT_EQ(back.robots[1].crashed_at, std::optional<long>(3));
    EXPECT_EQ(back.robots[0].cos, tr.robots[0].cos);
}

TEST(Trace, RejectsMalformedInput)
{
    auto bad = [](const std::string& s) {
        std::istringstream in(s);
        return read_trace(in);
    };
    EXPECT_THROW(bad(""), ParseError);
    EXPECT_THROW(bad("swarmkit-trace 2\n"), ParseError);
    EXPECT_THROW(bad("swarmkit-trace 1\nn 1\nrobot 1 tf=2gat frame=1/1,0/1,1/1 crash=-\nverdict reached t=0 stable=1\n"
                     "step 0 act=- crashed=- lambda=0,1,-1 pos=[1/0,0/1]\n"),
                 ParseError);
    EXPECT_THROW(bad("swarmkit-trace 1\nn 2\nrobot 1 tf=2gat frame=1/1,0/1,1/1 crash=-\nverdict reached t=0 stable=1\n"),
                 ParseError);
    EXPECT_THROW(bad("swarmkit-trace 1\nn 1\nrobot 1 tf=2gat frame=1/1,0/1,1/1 crash=-\n"), ParseError);
    EXPECT_NO_THROW(bad("swarmkit-trace 1\nn 1\nrobot 1 tf=2gat frame=1/1,0/1,1/1 crash=-\n"
                        "step 0 act=- crashed=- lambda=0,1,-1 pos=[1/1,0/1]\nverdict reached t=0 stable=1\n"));
}
