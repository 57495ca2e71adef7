#pragma once

// Named, parameterized reconstructions of the lower-bound and impossibility
// constructions, plus the seeded generators shared with the CLI.

#include "swarmkit/engine.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace swarmkit {

enum class ExpectKind { MustReach, MustNotChange, MustStayBelow, MustNotReach, MustChangeWithin };

struct Expectation {
    ExpectKind kind = ExpectKind::MustReach;
    long horizon = 200;
    int bound = 0; // MustStayBelow: support size never exceeds bound

    std::string describe() const;
};

struct ScenarioInstance {
    std::string label;
    World world;
    std::vector<TargetFunctionId> phi;
    SchedulerSpec scheduler;
    GoalPredicate goal;
    std::vector<Expectation> expect;
    RunOptions options;
};

using Params = std::map<std::string, long>;

struct Scenario {
    std::string name;
    std::string summary;
    Params defaults;
    std::function<std::vector<ScenarioInstance>(const Params&)> build;
};

struct ScenarioResult {
    std::string label;
    bool pass = false;
    std::string detail;
    ExecutionTrace trace;
};

const std::vector<Scenario>& scenario_registry();
const Scenario& find_scenario(const std::string& name);

/// Merges overrides into the defaults; unknown keys are rejected.
Params resolve_params(const Scenario& s, const Params& overrides);

/// Goal test on a recorded step.
bool goal_holds(const GoalPredicate& goal, const TraceStep& step, const ToleranceConfig& cfg = {});

/// Checks one expectation from the trace alone; explains failures in *why.
bool check_expectation(const Expectation& e, const GoalPredicate& goal, const ExecutionTrace& trace,
                       const ToleranceConfig& cfg = {}, std::string* why = nullptr);

ScenarioResult run_instance(const ScenarioInstance& inst, const ToleranceConfig& cfg = {});
std::vector<ScenarioResult> run_scenario(const Scenario& s, const Params& overrides = {}, const ToleranceConfig& cfg = {});

// Builders, also callable directly.
std::vector<ScenarioInstance> scatter_lower_bound(int c, int m, int n, long horizon = 200);
std::vector<ScenarioInstance> bivalent_stasis(int n, bool gata = false, std::uint64_t seed = 0, long horizon = 100);
std::vector<ScenarioInstance> clone_symmetric_failure(long horizon = 100);
std::vector<ScenarioInstance> clone_sgat_pair(long horizon = 100);
std::vector<ScenarioInstance> clone_gat2_breaks();
std::vector<ScenarioInstance> sgta_bivalent_escape(std::uint64_t seed = 0);
std::vector<ScenarioInstance> crash_scatter_lower_bound(int f, int n, bool tight = false, long horizon = 200);
std::vector<ScenarioInstance> fgp_crash_stuck(int n, long horizon = 200);
std::vector<ScenarioInstance> fgp_nonfaulty(int n);
std::vector<ScenarioInstance> fgp_no_crash(int n, std::uint64_t seed = 0, long horizon = 500);

// Seeded generators.

/// n integer points in [-box, box]^2 with at most max_support distinct
/// positions (0 = no cap) and at least min_support.
std::vector<Point> random_points(int n, long box, int min_support, int max_support, Rng& rng);

/// Rotation from a rational parameter t = a/b, |a| <= 20, 1 <= b <= 10 (or
/// the half turn with small probability) and scale in [1/10, 10].
LocalFrame random_frame(Rng& rng);
std::vector<LocalFrame> random_frames(int n, Rng& rng);

/// Points on the unit circle at angles close to 2 pi j / n, exact rationals.
std::vector<Point> rational_polygon(int n);

} // namespace swarmkit
