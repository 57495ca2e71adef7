#pragma once

// SSYNC execution engine: robots with private similarity frames, atomic
// Look-Compute-Move steps, schedulers, crash faults, goals and traces.

#include "swarmkit/geom.hpp"
#include "swarmkit/targets.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace swarmkit {

/// Deterministic RNG with portable draws (std distributions are not
/// bit-stable across standard libraries).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }
    /// Uniform in [lo, hi].
    long uniform(long lo, long hi);
    /// True with probability p, 0 <= p <= 1.
    bool bernoulli(const Scalar& p);

private:
    std::mt19937_64 gen_;
};

struct LocalFrame {
    Scalar cos = 1;
    Scalar sin = 0;
    Scalar scale = 1; // global length of the local unit
    Point position;

    /// (cos, sin) = ((1-t^2)/(1+t^2), 2t/(1+t^2)).
    static LocalFrame from_t(const Scalar& t, const Scalar& scale, Point position = {});
    /// The frame rotated by pi (not reachable through finite t).
    static LocalFrame half_turn(const Scalar& scale, Point position = {});

    Point to_local(const Point& global) const;
    Point to_global(const Point& local) const;
    void validate() const;
};

struct Robot {
    int id = 0; // bookkeeping only; never shown to target functions
    LocalFrame frame;
    TargetFunctionId tf;
    std::optional<long> crashed_at;

    bool crashed(long t) const { return crashed_at && *crashed_at <= t; }
};

struct World {
    std::vector<Robot> robots;
    long time = 0;

    Configuration config() const;
    std::vector<int> crashed_ids() const;
    const Robot& robot(int id) const;
};

using Assignment = std::vector<TargetFunctionId>; // index = robot id - 1
using FaultPlan = std::vector<std::pair<int, long>>; // robot id, crash time

/// Builds a world; frame positions are overwritten by the points.
World make_world(const std::vector<Point>& points, const std::vector<LocalFrame>& frames, const Assignment& assignment,
                 const FaultPlan& faults = {});

Configuration observe(const World& world, const Robot& robot);

/// Global destination of every robot at the current time; crashed robots
/// stay put.
std::vector<Point> destinations(const World& world, const ToleranceConfig& cfg = {});

/// One SSYNC time slot. Unknown ids are rejected.
World step(const World& world, const std::vector<int>& activated, const ToleranceConfig& cfg = {});

enum class SchedulerKind { Fsync, FairRandom, CentralRoundRobin, Scripted };

struct SchedulerSpec {
    SchedulerKind kind = SchedulerKind::Fsync;
    std::uint64_t seed = 0;
    Scalar p = Scalar(1, 2);
    int bound = 10;
    std::vector<std::vector<int>> script;
};

class Scheduler {
public:
    virtual ~Scheduler() = default;
    /// Robot ids activated at world.time.
    virtual std::vector<int> next(const World& world) = 0;
};

std::unique_ptr<Scheduler> make_scheduler(const SchedulerSpec& spec);

bool validate_assignment(const Assignment& a, const std::vector<TargetFunctionId>& phi);

struct EnumerateOptions {
    // class_of[i]: robots with equal labels are interchangeable (same frame
    // and position); empty means all distinct.
    std::vector<int> class_of;
    std::size_t cap = 100000;
    std::uint64_t seed = 0;
};

/// Surjections {robots} -> phi as index vectors, up to renaming within
/// classes; a seeded sample of `cap` when there are more.
std::vector<std::vector<int>> enumerate_assignments(int phi_size, int n, const EnumerateOptions& opts = {});

/// Uniform random surjection by rejection.
std::vector<int> sample_assignment(int phi_size, int n, Rng& rng);

enum class GoalKind { None, ScatterAtLeast, GatherAtMost, GatherNonFaulty, PatternSimilar, GatherAllAtMost };

struct GoalPredicate {
    GoalKind kind = GoalKind::None;
    int c = 1;
    std::shared_ptr<const Configuration> pattern;

    std::string describe() const;
};

bool check_goal(const GoalPredicate& goal, const World& world, const ToleranceConfig& cfg = {});

using Lambda = std::array<long, 3>;

/// (k, m, -mu): mu is the center multiplicity when k >= 2, the multiplicity
/// of the largest point when k = 1, and n when k = 0.
Lambda lambda_triple(const Configuration& p, const ToleranceConfig& cfg = {});

struct TraceRobot {
    int id = 0;
    std::string tf;
    Scalar cos = 1, sin = 0, scale = 1;
    std::optional<long> crashed_at;
};

struct TraceStep {
    long time = 0;
    std::vector<int> activated;
    std::vector<int> crashed;
    Lambda lambda{};
    std::vector<Point> positions; // by robot id - 1
};

enum class VerdictKind { Reached, HorizonExceeded, StasisDetected };

struct Verdict {
    VerdictKind kind = VerdictKind::HorizonExceeded;
    long time = 0;       // time of reaching the goal, of stasis, or the horizon
    bool stable = false; // Reached: goal held through the stability window
};

struct ExecutionTrace {
    std::vector<TraceRobot> robots;
    std::optional<Configuration> pattern;
    std::vector<TraceStep> steps;
    Verdict verdict;

    Configuration config_at(std::size_t i) const { return Configuration(steps[i].positions); }
};

struct RunOptions {
    long horizon = 200;
    long stability_window = 0;
    bool stop_on_goal = true;
    bool stop_on_stasis = true;
};

ExecutionTrace run(World world, Scheduler& scheduler, const GoalPredicate& goal, const RunOptions& opts,
                   const ToleranceConfig& cfg = {});

} // namespace swarmkit
