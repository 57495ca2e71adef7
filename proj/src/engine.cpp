#include "swarmkit/engine.hpp"

#include "swarmkit/symmetry.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace swarmkit {

long Rng::uniform(long lo, long hi)
{
    if (hi < lo)
        throw std::invalid_argument("Rng::uniform: empty range");
    auto range = static_cast<std::uint64_t>(hi - lo) + 1;
    if (range == 0) // full 64-bit span
        return static_cast<long>(next());
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t v;
    do {
        v = next();
    } while (v >= limit);
    return lo + static_cast<long>(v % range);
}

bool Rng::bernoulli(const Scalar& p)
{
    if (p >= 1)
        return true;
    if (sgn(p) <= 0)
        return false;
    mpz_class scaled = p.get_num();
    scaled <<= 64;
    scaled /= p.get_den();
    // p < 1, so scaled fits in 64 bits
    std::uint64_t threshold = 0;
    mpz_export(&threshold, nullptr, -1, sizeof threshold, 0, 0, scaled.get_mpz_t());
    return next() < threshold;
}

LocalFrame LocalFrame::from_t(const Scalar& t, const Scalar& scale, Point position)
{
    Scalar d = 1 + t * t;
    return {(1 - t * t) / d, 2 * t / d, scale, std::move(position)};
}

LocalFrame LocalFrame::half_turn(const Scalar& scale, Point position) { return {-1, 0, scale, std::move(position)}; }

Point LocalFrame::to_local(const Point& global) const
{
    Point d = global - position;
    return Point{cos * d.x + sin * d.y, cos * d.y - sin * d.x} / scale;
}

Point LocalFrame::to_global(const Point& local) const
{
    return position + scale * Point{cos * local.x - sin * local.y, sin * local.x + cos * local.y};
}

void LocalFrame::validate() const
{
    if (sgn(scale) <= 0)
        throw std::invalid_argument("frame scale must be positive");
    if (cos * cos + sin * sin != 1)
        throw std::invalid_argument("frame rotation must be a unit (cos, sin) pair");
}

Configuration World::config() const
{
    std::vector<Point> pts;
    pts.reserve(robots.size());
    for (const auto& r : robots)
        pts.push_back(r.frame.position);
    return Configuration(std::move(pts));
}

std::vector<int> World::crashed_ids() const
{
    std::vector<int> out;
    for (const auto& r : robots)
        if (r.crashed(time))
            out.push_back(r.id);
    return out;
}

const Robot& World::robot(int id) const
{
    if (id < 1 || id > static_cast<int>(robots.size()))
        throw std::out_of_range("no robot with id " + std::to_string(id));
    return robots[static_cast<std::size_t>(id - 1)];
}

World make_world(const std::vector<Point>& points, const std::vector<LocalFrame>& frames, const Assignment& assignment,
                 const FaultPlan& faults)
{
    if (points.size() != frames.size() || points.size() != assignment.size())
        throw std::invalid_argument("make_world: points, frames and assignment differ in size");
    World w;
    for (std::size_t i = 0; i < points.size(); ++i) {
        Robot r;
        r.id = static_cast<int>(i) + 1;
        r.frame = frames[i];
        r.frame.position = points[i];
        r.frame.validate();
        r.tf = assignment[i];
        r.tf.validate();
        w.robots.push_back(std::move(r));
    }
    for (const auto& [id, t] : faults) {
        if (id < 1 || id > static_cast<int>(w.robots.size()) || t < 0)
            throw std::invalid_argument("bad fault entry for robot " + std::to_string(id));
        w.robots[static_cast<std::size_t>(id - 1)].crashed_at = t;
    }
    return w;
}

Configuration observe(const World& world, const Robot& robot)
{
    std::vector<Point> pts;
    pts.reserve(world.robots.size());
    for (const auto& r : world.robots)
        pts.push_back(robot.frame.to_local(r.frame.position));
    return Configuration(std::move(pts));
}

std::vector<Point> destinations(const World& world, const ToleranceConfig& cfg)
{
    std::vector<Point> out;
    out.reserve(world.robots.size());
    for (const auto& r : world.robots) {
        if (r.crashed(world.time)) {
            out.push_back(r.frame.position);
            continue;
        }
        auto dest = evaluate(r.tf, observe(world, r), cfg);
        if (!dest)
            throw std::logic_error("target function returned bottom: observation lacks the origin");
        out.push_back(r.frame.to_global(*dest));
    }
    return out;
}

namespace {

World apply_moves(const World& world, const std::vector<int>& activated, const std::vector<Point>& dest)
{
    World next = world;
    for (int id : activated) {
        const Robot& r = world.robot(id);
        if (!r.crashed(world.time))
            next.robots[static_cast<std::size_t>(id - 1)].frame.position = dest[static_cast<std::size_t>(id - 1)];
    }
    ++next.time;
    return next;
}

class FsyncScheduler : public Scheduler {
public:
    std::vector<int> next(const World& w) override
    {
        std::vector<int> ids;
        for (const auto& r : w.robots)
            ids.push_back(r.id);
        return ids;
    }
};

class FairRandomScheduler : public Scheduler {
public:
    FairRandomScheduler(std::uint64_t seed, Scalar p, int bound) : rng_(seed), p_(std::move(p)), bound_(bound) {}

    std::vector<int> next(const World& w) override
    {
        idle_.resize(w.robots.size(), 0);
        std::vector<int> ids;
        for (std::size_t i = 0; i < w.robots.size(); ++i) {
            // always draw so the random stream does not depend on forcing
            bool pick = rng_.bernoulli(p_);
            if (pick || idle_[i] >= bound_) {
                ids.push_back(w.robots[i].id);
                idle_[i] = 0;
            } else {
                ++idle_[i];
            }
        }
        return ids;
    }

private:
    Rng rng_;
    Scalar p_;
    int bound_;
    std::vector<int> idle_;
};

class RoundRobinScheduler : public Scheduler {
public:
    std::vector<int> next(const World& w) override
    {
        if (w.robots.empty())
            return {};
        int id = static_cast<int>(counter_++ % w.robots.size()) + 1;
        return {id};
    }

private:
    std::size_t counter_ = 0;
};

class ScriptedScheduler : public Scheduler {
public:
    explicit ScriptedScheduler(std::vector<std::vector<int>> script) : script_(std::move(script)) {}

    std::vector<int> next(const World&) override { return script_[counter_++ % script_.size()]; }

private:
    std::vector<std::vector<int>> script_;
    std::size_t counter_ = 0;
};

} // namespace

World step(const World& world, const std::vector<int>& activated, const ToleranceConfig& cfg)
{
    for (int id : activated)
        world.robot(id);
    return apply_moves(world, activated, destinations(world, cfg));
}

std::unique_ptr<Scheduler> make_scheduler(const SchedulerSpec& spec)
{
    switch (spec.kind) {
    case SchedulerKind::Fsync:
        return std::make_unique<FsyncScheduler>();
    case SchedulerKind::FairRandom:
        if (sgn(spec.p) <= 0 || spec.p > 1)
            throw std::invalid_argument("FairRandom needs 0 < p <= 1");
        if (spec.bound < 1)
            throw std::invalid_argument("FairRandom needs bound >= 1");
        return std::make_unique<FairRandomScheduler>(spec.seed, spec.p, spec.bound);
    case SchedulerKind::CentralRoundRobin:
        return std::make_unique<RoundRobinScheduler>();
    case SchedulerKind::Scripted:
        if (spec.script.empty())
            throw std::invalid_argument("scripted scheduler needs a non-empty script");
        return std::make_unique<ScriptedScheduler>(spec.script);
    }
    throw std::invalid_argument("unknown scheduler kind");
}

bool validate_assignment(const Assignment& a, const std::vector<TargetFunctionId>& phi)
{
    if (phi.size() > a.size())
        return false;
    std::vector<bool> hit(phi.size(), false);
    for (const auto& tf : a) {
        auto it = std::find(phi.begin(), phi.end(), tf);
        if (it == phi.end())
            return false;
        hit[static_cast<std::size_t>(it - phi.begin())] = true;
    }
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

std::vector<int> sample_assignment(int phi_size, int n, Rng& rng)
{
    if (phi_size < 1 || phi_size > n)
        throw std::invalid_argument("no surjection from " + std::to_string(n) + " robots onto " + std::to_string(phi_size) +
                                    " functions");
    std::vector<int> a(static_cast<std::size_t>(n));
    for (;;) {
        std::vector<bool> hit(static_cast<std::size_t>(phi_size), false);
        int covered = 0;
        for (auto& v : a) {
            v = static_cast<int>(rng.uniform(0, phi_size - 1));
            if (!hit[static_cast<std::size_t>(v)]) {
                hit[static_cast<std::size_t>(v)] = true;
                ++covered;
            }
        }
        if (covered == phi_size)
            return a;
    }
}

std::vector<std::vector<int>> enumerate_assignments(int phi_size, int n, const EnumerateOptions& opts)
{
    if (phi_size < 1 || phi_size > n)
        throw std::invalid_argument("no surjection from " + std::to_string(n) + " robots onto " + std::to_string(phi_size) +
                                    " functions");
    std::vector<int> prev_same(static_cast<std::size_t>(n), -1);
    if (!opts.class_of.empty()) {
        if (opts.class_of.size() != static_cast<std::size_t>(n))
            throw std::invalid_argument("class_of must label every robot");
        for (int i = 0; i < n; ++i)
            for (int j = i - 1; j >= 0; --j)
                if (opts.class_of[static_cast<std::size_t>(j)] == opts.class_of[static_cast<std::size_t>(i)]) {
                    prev_same[static_cast<std::size_t>(i)] = j;
                    break;
                }
    }

    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(n));
    std::vector<int> uses(static_cast<std::size_t>(phi_size), 0);
    bool overflow = false;
    auto rec = [&](auto&& self, int i, int missing) -> void {
        if (overflow)
            return;
        if (i == n) {
            if (missing == 0) {
                if (out.size() >= opts.cap) {
                    overflow = true;
                    return;
                }
                out.push_back(cur);
            }
            return;
        }
        if (n - i < missing)
            return;
        int lo = prev_same[static_cast<std::size_t>(i)] >= 0 ? cur[static_cast<std::size_t>(prev_same[static_cast<std::size_t>(i)])] : 0;
        for (int v = lo; v < phi_size; ++v) {
            cur[static_cast<std::size_t>(i)] = v;
            bool fresh = uses[static_cast<std::size_t>(v)]++ == 0;
            self(self, i + 1, missing - (fresh ? 1 : 0));
            --uses[static_cast<std::size_t>(v)];
        }
    };
    rec(rec, 0, phi_size);
    if (!overflow)
        return out;

    Rng rng(opts.seed);
    out.clear();
    for (std::size_t k = 0; k < opts.cap; ++k)
        out.push_back(sample_assignment(phi_size, n, rng));
    return out;
}

std::string GoalPredicate::describe() const
{
    switch (kind) {
    case GoalKind::None:
        return "none";
    case GoalKind::ScatterAtLeast:
        return "scatter>=" + std::to_string(c);
    case GoalKind::GatherAtMost:
        return "gather<=" + std::to_string(c);
    case GoalKind::GatherNonFaulty:
        return "gather-nonfaulty";
    case GoalKind::PatternSimilar:
        return "pattern";
    case GoalKind::GatherAllAtMost:
        return "gather-all<=" + std::to_string(c);
    }
    return "?";
}

bool check_goal(const GoalPredicate& goal, const World& world, const ToleranceConfig& cfg)
{
    switch (goal.kind) {
    case GoalKind::None:
        return false;
    case GoalKind::ScatterAtLeast:
        return static_cast<int>(world.config().support_size()) >= goal.c;
    case GoalKind::GatherAtMost:
    case GoalKind::GatherAllAtMost:
        return static_cast<int>(world.config().support_size()) <= goal.c;
    case GoalKind::GatherNonFaulty: {
        const Point* at = nullptr;
        for (const auto& r : world.robots) {
            if (r.crashed(world.time))
                continue;
            if (at && *at != r.frame.position)
                return false;
            at = &r.frame.position;
        }
        return true;
    }
    case GoalKind::PatternSimilar:
        if (!goal.pattern)
            throw std::invalid_argument("pattern goal without a pattern");
        return is_similar(world.config(), *goal.pattern, cfg).has_value();
    }
    return false;
}

Lambda lambda_triple(const Configuration& p, const ToleranceConfig& cfg)
{
    auto part = orbits(p, cfg);
    long mu;
    if (part.k == 0)
        mu = static_cast<long>(p.size());
    else if (part.k >= 2)
        mu = p.multiplicity(part.sec.center);
    else
        mu = p.multiplicity(largest_point(p, part, cfg));
    return {part.k, static_cast<long>(p.support_size()), -mu};
}

ExecutionTrace run(World world, Scheduler& scheduler, const GoalPredicate& goal, const RunOptions& opts,
                   const ToleranceConfig& cfg)
{
    if (opts.horizon < 1)
        throw std::invalid_argument("horizon must be >= 1");
    ExecutionTrace trace;
    for (const auto& r : world.robots) {
        trace.robots.push_back({r.id, r.tf.tag(), r.frame.cos, r.frame.sin, r.frame.scale, r.crashed_at});
        if (r.tf.pattern && !trace.pattern)
            trace.pattern = *r.tf.pattern;
    }

    const long start = world.time;
    std::optional<long> reached_at;
    bool stable = true;
    for (;;) {
        const long t = world.time;
        Configuration cur = world.config();
        TraceStep rec;
        rec.time = t;
        rec.crashed = world.crashed_ids();
        rec.lambda = lambda_triple(cur, cfg);
        for (const auto& r : world.robots)
            rec.positions.push_back(r.frame.position);
        trace.steps.push_back(std::move(rec));

        bool ok = check_goal(goal, world, cfg);
        if (ok && !reached_at) {
            reached_at = t;
            stable = true;
        } else if (!ok && reached_at) {
            stable = false;
        }
        if (reached_at && opts.stop_on_goal && t - *reached_at >= opts.stability_window) {
            trace.verdict = {VerdictKind::Reached, *reached_at, stable};
            return trace;
        }
        if (t - start >= opts.horizon) {
            if (reached_at)
                trace.verdict = {VerdictKind::Reached, *reached_at, stable && ok};
            else
                trace.verdict = {VerdictKind::HorizonExceeded, t, false};
            return trace;
        }

        auto dest = destinations(world, cfg);
        bool frozen = true;
        for (std::size_t i = 0; i < dest.size() && frozen; ++i)
            frozen = dest[i] == world.robots[i].frame.position;
        if (frozen && opts.stop_on_stasis) {
            // nothing can ever move again, so the current verdict is final
            if (reached_at && ok)
                trace.verdict = {VerdictKind::Reached, *reached_at, stable};
            else
                trace.verdict = {VerdictKind::StasisDetected, t, false};
            return trace;
        }

        auto act = scheduler.next(world);
        std::sort(act.begin(), act.end());
        act.erase(std::unique(act.begin(), act.end()), act.end());
        for (int id : act)
            world.robot(id);
        trace.steps.back().activated = act;
        world = apply_moves(world, act, dest);
    }
}

} // namespace swarmkit
