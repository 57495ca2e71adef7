#pragma once

// Run specification files. Line format, one "key = value" per line, '#'
// comments; a file starting with '{' is read as a JSON object with the same
// keys (string or number values).

#include "swarmkit/scenarios.hpp"

#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace swarmkit {

struct RunSpec {
    std::string algorithm;
    std::vector<TargetFunctionId> phi;
    int n = 0;

    std::vector<Point> points; // explicit start, else random
    long box = 10;
    int support_min = 1;
    int support_max = 0;

    enum class Frames { Identity, Random, Explicit } frames_mode = Frames::Identity;
    std::vector<LocalFrame> frames;

    enum class Assign { AllSurjections, Sample, Explicit } assign_mode = Assign::Sample;
    std::vector<int> assignment; // 0-based indices into phi
    std::size_t cap = 100000;

    SchedulerSpec scheduler;
    FaultPlan faults;
    int random_faults = 0; // crash up to this many robots at random times
    long fault_window = 0;

    GoalPredicate goal;
    std::shared_ptr<const Configuration> pattern;
    Expectation expect;
    long stability = 0;
    std::uint64_t seed = 0;
    bool seed_given = false;
    ToleranceConfig tol;
};

RunSpec parse_runspec(std::istream& in);
RunSpec parse_runspec_text(const std::string& text);

struct RunCase {
    std::string label;
    World world;
    SchedulerSpec scheduler;
};

/// Materializes the spec: one case per assignment (a single case unless
/// all-surjections). Deterministic in spec.seed.
std::vector<RunCase> instantiate(const RunSpec& spec);

RunOptions run_options(const RunSpec& spec);

} // namespace swarmkit
