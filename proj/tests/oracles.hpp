#pragma once

// Brute-force reference implementations and fixtures shared by the unit
// tests and the acceptance binary. Deliberately naive; exact inputs only.

#include "swarmkit/engine.hpp"
#include "swarmkit/geom.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

namespace oracle {

using namespace swarmkit;

inline Scalar frac(long a, long b)
{
    Scalar s(a, b);
    s.canonicalize();
    return s;
}

inline Scalar sqrt_bisect(const Scalar& s, unsigned bits)
{
    Scalar lo = 0, hi = s > 1 ? s : Scalar(1);
    for (unsigned i = 0; i < bits + 8; ++i) {
        Scalar mid = (lo + hi) / 2;
        (mid * mid <= s ? lo : hi) = mid;
    }
    return lo;
}

/// Minimum over all pair-diameter and triple-circumcircle candidates.
inline Circle sec_brute(const std::vector<Point>& pts)
{
    Configuration c(pts);
    const auto& s = c.support();
    if (s.size() == 1)
        return {s[0], 0};
    auto covers = [&](const Circle& cc) {
        return std::all_of(s.begin(), s.end(), [&](const Point& p) { return sq_dist(p, cc.center) <= cc.sq_radius; });
    };
    std::optional<Circle> best;
    auto offer = [&](const Circle& cc) {
        if (covers(cc) && (!best || cc.sq_radius < best->sq_radius))
            best = cc;
    };
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            Point m = Scalar(1, 2) * (s[i] + s[j]);
            offer({m, sq_dist(m, s[i])});
            for (std::size_t k = j + 1; k < s.size(); ++k) {
                Point b = s[j] - s[i], d = s[k] - s[i];
                Scalar det = 2 * cross(b, d);
                if (det == 0)
                    continue;
                Scalar ux = (d.y * sq_norm(b) - b.y * sq_norm(d)) / det;
                Scalar uy = (b.x * sq_norm(d) - d.x * sq_norm(b)) / det;
                Point o = s[i] + Point(ux, uy);
                offer({o, sq_dist(o, s[i])});
            }
        }
    return *best;
}

/// Every proper similarity T with T(G) = P: each ordered pair of P is tried
/// as the image of the first two support points of G.
inline std::vector<SimilarityTransform> similar_brute(const Configuration& p, const Configuration& g)
{
    std::vector<SimilarityTransform> out;
    if (p.size() != g.size())
        return out;
    if (g.support_size() == 1) {
        if (p.support_size() == 1)
            out.push_back({{1, 0}, p.support()[0] - g.support()[0]});
        return out;
    }
    const Point g0 = g.support()[0], g1 = g.support()[1];
    for (const auto& a : p.support())
        for (const auto& b : p.support()) {
            if (a == b)
                continue;
            SimilarityTransform t;
            t.multiplier = cdiv(b - a, g1 - g0);
            t.translation = a - cmul(t.multiplier, g0);
            if (t.apply(g) == p)
                out.push_back(t);
        }
    return out;
}

/// Like similar_brute, but image points only need to land within
/// rel * diam(P) of a distinct point of P (greedy multiset matching).
inline std::vector<SimilarityTransform> similar_brute_near(const Configuration& p, const Configuration& g,
                                                           const Scalar& rel)
{
    std::vector<SimilarityTransform> out;
    if (p.size() != g.size() || g.support_size() < 2)
        return similar_brute(p, g);
    Scalar diam2 = 0;
    for (const auto& a : p.support())
        for (const auto& b : p.support())
            diam2 = std::max(diam2, Scalar(sq_dist(a, b)));
    const Scalar tol2 = rel * rel * diam2;
    const Point g0 = g.support()[0], g1 = g.support()[1];
    for (const auto& a : p.support())
        for (const auto& b : p.support()) {
            if (a == b)
                continue;
            SimilarityTransform t;
            t.multiplier = cdiv(b - a, g1 - g0);
            t.translation = a - cmul(t.multiplier, g0);
            std::vector<bool> used(p.size(), false);
            bool ok = true;
            for (const auto& x : g.points()) {
                Point y = t.apply(x);
                bool hit = false;
                for (std::size_t i = 0; i < p.size() && !hit; ++i)
                    if (!used[i] && sq_dist(p.points()[i], y) <= tol2)
                        used[i] = hit = true;
                if (!(ok = hit))
                    break;
            }
            if (ok)
                out.push_back(t);
        }
    return out;
}

/// Number of rotations about the brute-force SEC center mapping P onto
/// itself with multiplicities: each same-radius, same-multiplicity point is
/// tried as the image of a fixed farthest point.
inline int rotation_order_brute(const Configuration& p)
{
    Point o = sec_brute(p.support()).center;
    std::vector<Point> off;
    for (const auto& q : p.support())
        if (q != o)
            off.push_back(q);
    if (off.empty())
        return 0;
    Point b = *std::max_element(off.begin(), off.end(),
                                [&](const Point& x, const Point& y) { return sq_dist(x, o) < sq_dist(y, o); });
    int k = 0;
    for (const auto& q : off) {
        if (sq_dist(q, o) != sq_dist(b, o) || p.multiplicity(q) != p.multiplicity(b))
            continue;
        Point m = cdiv(q - o, b - o);
        std::vector<Point> img;
        for (const auto& x : p.points())
            img.push_back(o + cmul(m, x - o));
        if (Configuration(img) == p)
            ++k;
    }
    return k;
}

inline std::vector<Point> random_pts(Rng& rng, int n, long box)
{
    std::vector<Point> v;
    for (int i = 0; i < n; ++i)
        v.push_back({rng.uniform(-box, box), rng.uniform(-box, box)});
    return v;
}

inline SimilarityTransform random_similarity(Rng& rng)
{
    SimilarityTransform t;
    do
        t.multiplier = Point(frac(rng.uniform(-9, 9), rng.uniform(1, 5)), frac(rng.uniform(-9, 9), rng.uniform(1, 5)));
    while (t.multiplier.is_origin());
    t.translation = Point(frac(rng.uniform(-50, 50), rng.uniform(1, 7)), frac(rng.uniform(-50, 50), 3));
    return t;
}

/// Vertices a, b, c of a triangle inscribed in the unit circle about the
/// origin, b and c within ~2^-bits of the exact 120 degree positions.
inline std::vector<Point> near_equilateral(unsigned bits = 200)
{
    ToleranceConfig cfg;
    cfg.sqrt_precision = bits;
    Scalar t = sqrt_approx(3, cfg);
    Scalar d = 1 + t * t;
    Point b{(1 - t * t) / d, 2 * t / d};
    return {{1, 0}, b, conj(b)};
}

/// Random set with k in {2, 4} about an integer center, o itself excluded:
/// orbits of 2 or 4 points of base vectors rotated by the group. When
/// nonlinear is set, at least two orbits on different lines.
inline std::vector<Point> random_symmetric_set(Rng& rng, int k, bool nonlinear)
{
    for (;;) {
        Point c(rng.uniform(-5, 5), rng.uniform(-5, 5));
        int orbits = static_cast<int>(rng.uniform(1, k == 4 ? 2 : 3));
        if (nonlinear && k == 2)
            orbits = std::max(orbits, 2);
        std::vector<Point> pts;
        for (int i = 0; i < orbits; ++i) {
            Point v(rng.uniform(-6, 6), rng.uniform(-6, 6));
            if (v.is_origin())
                continue;
            Point r = v;
            for (int j = 0; j < k; ++j) {
                pts.push_back(c + r);
                r = k == 4 ? Point(-r.y, r.x) : -r;
            }
        }
        Configuration conf(pts);
        if (pts.empty() || !conf.is_set())
            continue;
        if (nonlinear && is_linear(conf))
            continue;
        if (rotation_order_brute(conf) != k)
            continue;
        return pts;
    }
}

} // namespace oracle
