#include "swarmkit/symmetry.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace swarmkit {

namespace {

struct Element {
    Point pos;
    Scalar sq_dist;
    int mult;
    Point gap; // (dot, cross) of this and the next offset vector
};

bool same_element(const Element& a, const Element& b, const Scalar& sq_radius, const ToleranceConfig& cfg)
{
    if (a.mult != b.mult)
        return false;
    if (!approx_equal(a.sq_dist, b.sq_dist, sq_radius, cfg))
        return false;
    if (a.gap == b.gap)
        return true;
    return same_direction(a.gap, b.gap, cfg);
}

// Normalized view of q: exact and invariant under every proper similarity.
std::vector<Point> view_key(const Configuration& p, const Point& o, const Point& q)
{
    Point axis = o - q;
    Scalar n = sq_norm(axis);
    std::vector<Point> out;
    out.reserve(p.size());
    for (const auto& x : p.points()) {
        Point d = x - q;
        out.push_back({dot(d, axis) / n, cross(axis, d) / n});
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

int OrbitPartition::orbit_index(const Configuration& p, const Point& q) const
{
    const auto& s = p.support();
    auto it = std::lower_bound(s.begin(), s.end(), q);
    if (it == s.end() || *it != q)
        throw std::invalid_argument("point not in support");
    return orbit_of[static_cast<std::size_t>(it - s.begin())];
}

OrbitPartition orbits(const Configuration& p, const ToleranceConfig& cfg)
{
    if (p.empty())
        throw std::invalid_argument("orbits: empty configuration");
    OrbitPartition out;
    out.sec = smallest_enclosing_circle(p);
    const Point& o = out.sec.center;

    std::vector<Element> seq;
    for (std::size_t i = 0; i < p.support_size(); ++i) {
        const Point& q = p.support()[i];
        if (q == o)
            continue;
        seq.push_back({q, sq_dist(q, o), p.multiplicities()[i], {}});
    }
    std::sort(seq.begin(), seq.end(), [&](const Element& a, const Element& b) {
        auto c = angle_cmp(o, a.pos, b.pos);
        if (c != 0)
            return c < 0;
        return a.sq_dist < b.sq_dist;
    });
    const std::size_t m = seq.size();
    for (std::size_t i = 0; i < m; ++i) {
        Point a = seq[i].pos - o, b = seq[(i + 1) % m].pos - o;
        seq[i].gap = {dot(a, b), cross(a, b)};
    }

    std::size_t shift = m;
    if (m >= 2) {
        for (std::size_t s = 1; s < m; ++s) {
            if (m % s != 0)
                continue;
            bool ok = true;
            for (std::size_t i = 0; i < m && ok; ++i)
                ok = same_element(seq[i], seq[(i + s) % m], out.sec.sq_radius, cfg);
            if (ok) {
                shift = s;
                break;
            }
        }
    }
    out.k = m == 0 ? 0 : static_cast<int>(m / shift);

    for (std::size_t r = 0; r < shift && r < m; ++r) {
        std::vector<Point> orbit;
        for (std::size_t j = r; j < m; j += shift)
            orbit.push_back(seq[j].pos);
        out.orbits.push_back(std::move(orbit));
    }
    if (p.contains(o))
        out.orbits.push_back({o});

    out.orbit_of.assign(p.support_size(), -1);
    for (std::size_t oi = 0; oi < out.orbits.size(); ++oi)
        for (const auto& q : out.orbits[oi]) {
            auto it = std::lower_bound(p.support().begin(), p.support().end(), q);
            out.orbit_of[static_cast<std::size_t>(it - p.support().begin())] = static_cast<int>(oi);
        }
    return out;
}

int rotation_order(const Configuration& p, const ToleranceConfig& cfg) { return orbits(p, cfg).k; }

int symmetricity(const Configuration& p, const ToleranceConfig& cfg)
{
    auto part = orbits(p, cfg);
    return std::gcd(part.k, p.multiplicity(part.sec.center));
}

View view(const Configuration& p, const Point& q, const ToleranceConfig& cfg)
{
    if (!p.contains(q))
        throw std::invalid_argument("view: point not in support");
    Circle sec = smallest_enclosing_circle(p);
    if (q == sec.center)
        throw std::invalid_argument("view: undefined at the SEC center");
    Point axis = sec.center - q;
    Scalar unit = sqrt_approx(sq_norm(axis) * sec.sq_radius, cfg);
    View v{q, {}};
    for (const auto& x : p.points()) {
        Point d = x - q;
        v.coords.push_back({dot(d, axis) / unit, cross(axis, d) / unit});
    }
    std::sort(v.coords.begin(), v.coords.end());
    return v;
}

std::weak_ordering compare_points(const Configuration& p, const OrbitPartition& part, const Point& q, const Point& q2,
                                  const ToleranceConfig& cfg)
{
    int oq = part.orbit_index(p, q), oq2 = part.orbit_index(p, q2);
    if (oq == oq2)
        return std::weak_ordering::equivalent;
    int mq = p.multiplicity(q), mq2 = p.multiplicity(q2);
    if (mq != mq2)
        return mq <=> mq2;
    const Point& o = part.sec.center;
    Scalar dq = sq_dist(q, o), dq2 = sq_dist(q2, o);
    if (!approx_equal(dq, dq2, part.sec.sq_radius, cfg) || q == o || q2 == o)
        return dq < dq2 ? std::weak_ordering::greater : std::weak_ordering::less;
    auto vq = view_key(p, o, q), vq2 = view_key(p, o, q2);
    for (std::size_t i = 0; i < vq.size(); ++i) {
        if (vq[i] == vq2[i])
            continue;
        return vq[i] < vq2[i] ? std::weak_ordering::less : std::weak_ordering::greater;
    }
    return std::weak_ordering::equivalent;
}

std::weak_ordering compare_points(const Configuration& p, const Point& q, const Point& q2, const ToleranceConfig& cfg)
{
    return compare_points(p, orbits(p, cfg), q, q2, cfg);
}

Point largest_point(const Configuration& p, const OrbitPartition& part, const ToleranceConfig& cfg)
{
    if (part.k != 1)
        throw std::invalid_argument("largest_point: requires k = 1");
    Point best = p.support().front();
    for (const auto& q : p.support())
        if (compare_points(p, part, q, best, cfg) > 0)
            best = q;
    return best;
}

Point largest_point(const Configuration& p, const ToleranceConfig& cfg) { return largest_point(p, orbits(p, cfg), cfg); }

std::vector<Point> order_chain(const Configuration& p, const ToleranceConfig& cfg)
{
    auto part = orbits(p, cfg);
    std::vector<Point> reps;
    for (const auto& orbit : part.orbits)
        reps.push_back(orbit.front());
    std::stable_sort(reps.begin(), reps.end(),
                     [&](const Point& a, const Point& b) { return compare_points(p, part, a, b, cfg) > 0; });
    return reps;
}

} // namespace swarmkit
