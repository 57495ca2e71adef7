#include "swarmkit/targets.hpp"

#include "swarmkit/symmetry.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace swarmkit {

namespace {

const Point kOrigin{0, 0};

bool has_origin(const Configuration& obs) { return obs.contains(kOrigin); }

// The support point other than the origin in a two-point observation.
Point other_point(const Configuration& obs)
{
    return obs.support()[0] == kOrigin ? obs.support()[1] : obs.support()[0];
}

int parse_int(std::string_view s)
{
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError("bad integer '" + std::string(s) + "' in target function tag");
    return v;
}

bool lex_less(const Configuration& a, const Configuration& b)
{
    return std::lexicographical_compare(a.points().begin(), a.points().end(), b.points().begin(), b.points().end());
}

// Multiset inclusion of sorted point lists.
bool includes(const Configuration& big, const Configuration& small)
{
    return std::includes(big.points().begin(), big.points().end(), small.points().begin(), small.points().end());
}

Configuration difference(const Configuration& big, const Configuration& small)
{
    std::vector<Point> out;
    std::set_difference(big.points().begin(), big.points().end(), small.points().begin(), small.points().end(),
                        std::back_inserter(out));
    return Configuration(std::move(out));
}

// Images of G placed into the unit circle at (30,0) with a boundary point of
// its SEC sent to (31,0), one per boundary support point.
std::vector<Configuration> canonical_embeddings(const Configuration& g)
{
    Circle c = smallest_enclosing_circle(g);
    std::vector<Configuration> out;
    for (const auto& b : g.support()) {
        if (!c.on_boundary(b))
            continue;
        Point w = b - c.center;
        std::vector<Point> img;
        for (const auto& x : g.points())
            img.push_back(Point{30, 0} + cdiv(x - c.center, w));
        out.emplace_back(std::move(img));
    }
    return out;
}

std::optional<GoodDecomposition> try_cond1(const Configuration& p)
{
    if (!p.is_set())
        return std::nullopt;
    for (const auto& cand : p.support()) {
        Configuration rest = p.without_one(cand);
        Circle c2 = smallest_enclosing_circle(rest);
        if (sq_dist(cand, c2.center) >= 100 * c2.sq_radius) {
            GoodDecomposition d;
            d.kind = GoodKind::Cond1;
            d.p1 = cand;
            d.part2 = std::move(rest);
            d.o2 = c2.center;
            d.sq_delta2 = c2.sq_radius;
            d.p3 = d.p1 + Scalar(31, 10) * (d.o2 - d.p1);
            return d;
        }
    }
    return std::nullopt;
}

std::optional<GoodDecomposition> try_cond2(const Configuration& p, const Configuration& g, const Point& p1, const Point& p3)
{
    if (p.multiplicity(p1) != 1)
        return std::nullopt;
    Point mul = cdiv(Point{31, 0}, p3 - p1);
    SimilarityTransform to_z{mul, -cmul(mul, p1)};
    const Point c1{0, 0}, c2{10, 0}, c3{30, 0};
    std::vector<Point> part2, part3, part3_z;
    int in_c1 = 0;
    for (const auto& x : p.points()) {
        Point z = to_z.apply(x);
        if (sq_dist(z, c1) <= 1) {
            ++in_c1;
        } else if (sq_dist(z, c2) <= 1) {
            part2.push_back(x);
        } else if (sq_dist(z, c3) <= 1) {
            part3.push_back(x);
            part3_z.push_back(z);
        } else {
            return std::nullopt;
        }
    }
    if (in_c1 != 1)
        return std::nullopt;
    Configuration p2(std::move(part2));
    if (!p2.is_set())
        return std::nullopt;
    Configuration p3z(std::move(part3_z));
    std::optional<Configuration> best;
    for (auto& emb : canonical_embeddings(g)) {
        if (!includes(emb, p3z))
            continue;
        if (!best || lex_less(emb, *best))
            best = std::move(emb);
    }
    if (!best)
        return std::nullopt;
    GoodDecomposition d;
    d.kind = GoodKind::Cond2;
    d.p1 = p1;
    d.p3 = p3;
    d.part2 = std::move(p2);
    d.part3 = Configuration(std::move(part3));
    d.to_z = to_z;
    d.target_z = std::move(*best);
    return d;
}

// Is the origin the largest P2 point under the order of P1 + P2?
bool origin_is_designated(const GoodDecomposition& d, const ToleranceConfig& cfg)
{
    if (!d.part2.contains(kOrigin))
        return false;
    if (d.part2.size() == 1)
        return true;
    Configuration p12 = d.part2.with(d.p1);
    auto part = orbits(p12, cfg);
    for (const auto& q : d.part2.support())
        if (q != kOrigin && compare_points(p12, part, q, kOrigin, cfg) >= 0)
            return false;
    return true;
}

} // namespace

TargetFunctionId TargetFunctionId::sct_star(int i, std::shared_ptr<const Configuration> g)
{
    int n = static_cast<int>(g->size());
    return {Family::SctStar, i, n, std::move(g)};
}

TargetFunctionId TargetFunctionId::pf(int i, std::shared_ptr<const Configuration> g)
{
    int n = static_cast<int>(g->size());
    return {Family::Pf, i, n, std::move(g)};
}

std::string TargetFunctionId::tag() const
{
    switch (family) {
    case Family::Sct:
        return "sct:" + std::to_string(index) + "/" + std::to_string(param);
    case Family::SctStar:
        return "sctstar:" + std::to_string(index);
    case Family::TwoGat:
        return "2gat";
    case Family::Gat:
        return "gat:" + std::to_string(index);
    case Family::Sgat:
        return "sgat:" + std::to_string(index);
    case Family::Pf:
        return "pf:" + std::to_string(index);
    case Family::Hop:
        return "hop";
    }
    return "?";
}

TargetFunctionId TargetFunctionId::parse(std::string_view tag, std::shared_ptr<const Configuration> pattern)
{
    if (tag == "2gat")
        return two_gat();
    if (tag == "hop")
        return hop();
    auto colon = tag.find(':');
    if (colon == std::string_view::npos)
        throw ParseError("unknown target function '" + std::string(tag) + "'");
    auto name = tag.substr(0, colon);
    auto rest = tag.substr(colon + 1);
    TargetFunctionId id;
    if (name == "sct") {
        auto slash = rest.find('/');
        if (slash == std::string_view::npos)
            throw ParseError("sct tag needs i/c: '" + std::string(tag) + "'");
        id = sct(parse_int(rest.substr(0, slash)), parse_int(rest.substr(slash + 1)));
    } else if (name == "gat") {
        id = gat(parse_int(rest));
    } else if (name == "sgat") {
        id = sgat(parse_int(rest));
    } else if (name == "sctstar" || name == "pf") {
        if (!pattern)
            throw ParseError("'" + std::string(tag) + "' needs a goal pattern");
        id = name == "pf" ? pf(parse_int(rest), pattern) : sct_star(parse_int(rest), pattern);
    } else {
        throw ParseError("unknown target function '" + std::string(tag) + "'");
    }
    try {
        id.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return id;
}

void TargetFunctionId::validate() const
{
    auto bad = [&](const char* why) { throw std::invalid_argument(tag() + ": " + why); };
    switch (family) {
    case Family::Sct:
        if (param < 1 || index < 1 || index > param)
            bad("index out of range 1..c");
        break;
    case Family::Gat:
        if (index < 1 || index > 2)
            bad("index out of range 1..2");
        break;
    case Family::Sgat:
        if (index < 1 || index > 3)
            bad("index out of range 1..3");
        break;
    case Family::SctStar:
    case Family::Pf:
        if (!pattern)
            bad("missing goal pattern");
        if (pattern->size() < 4)
            bad("pattern formation needs n >= 4");
        if (pattern->support_size() < 2)
            bad("goal pattern needs two distinct points");
        if (index < 1 || index > param)
            bad("index out of range 1..n");
        break;
    case Family::TwoGat:
    case Family::Hop:
        break;
    }
}

bool operator==(const TargetFunctionId& a, const TargetFunctionId& b)
{
    if (a.family != b.family || a.index != b.index || a.param != b.param)
        return false;
    if (a.pattern == b.pattern)
        return true;
    return a.pattern && b.pattern && *a.pattern == *b.pattern;
}

std::vector<TargetFunctionId> sct_algorithm(int c)
{
    std::vector<TargetFunctionId> out;
    for (int i = 1; i <= c; ++i)
        out.push_back(TargetFunctionId::sct(i, c));
    return out;
}

std::vector<TargetFunctionId> pf_algorithm(std::shared_ptr<const Configuration> g)
{
    std::vector<TargetFunctionId> out;
    for (int i = 1; i <= static_cast<int>(g->size()); ++i)
        out.push_back(TargetFunctionId::pf(i, g));
    return out;
}

bool is_unfavorable(const Configuration& p, const ToleranceConfig&)
{
    // Two support points are swapped by the half-turn about their midpoint,
    // so k = 2 exactly when the multiplicities agree.
    return p.support_size() == 2 && p.multiplicities()[0] == p.multiplicities()[1];
}

std::optional<Point> sct(int i, int c, const Configuration& obs, const ToleranceConfig& cfg)
{
    if (!has_origin(obs))
        return std::nullopt;
    auto m = static_cast<int>(obs.support_size());
    if (m >= c)
        return kOrigin;
    if (m == 1)
        return i == 1 ? kOrigin : Point{1, 0};
    Scalar delta = sqrt_approx(min_pairwise_sq_distance(obs), cfg);
    return Point{delta / (2 * (i + 1)), Scalar(0)};
}

std::optional<Point> two_gat(const Configuration& obs, const ToleranceConfig& cfg)
{
    if (!has_origin(obs))
        return std::nullopt;
    if (obs.support_size() == 1 || is_unfavorable(obs, cfg))
        return kOrigin;
    auto part = orbits(obs, cfg);
    if (part.k == 1)
        return largest_point(obs, part, cfg);
    return part.sec.center;
}

std::optional<Point> gat(int i, const Configuration& obs, const ToleranceConfig& cfg)
{
    if (!has_origin(obs))
        return std::nullopt;
    if (!is_unfavorable(obs, cfg))
        return two_gat(obs, cfg);
    if (i == 1)
        return kOrigin;
    Point q = other_point(obs);
    if (q > kOrigin)
        return q;
    return Scalar(2) * q;
}

std::optional<Point> sgat(int i, const Configuration& obs, const ToleranceConfig& cfg)
{
    if (!has_origin(obs))
        return std::nullopt;
    if (!is_unfavorable(obs, cfg))
        return two_gat(obs, cfg);
    return Scalar(-i) * other_point(obs);
}

std::optional<Point> hop(const Configuration& obs, const ToleranceConfig& cfg)
{
    if (!has_origin(obs))
        return std::nullopt;
    if (!is_unfavorable(obs, cfg))
        return two_gat(obs, cfg);
    return other_point(obs);
}

std::optional<GoodDecomposition> is_good(const Configuration& p, const Configuration& g, const ToleranceConfig&)
{
    if (p.size() != g.size() || p.size() < 4)
        return std::nullopt;
    if (auto d = try_cond1(p))
        return d;
    Circle c = smallest_enclosing_circle(p);
    std::vector<Point> boundary;
    for (const auto& q : p.support())
        if (c.on_boundary(q))
            boundary.push_back(q);
    if (boundary.size() != 2)
        return std::nullopt;
    if (auto d = try_cond2(p, g, boundary[0], boundary[1]))
        return d;
    return try_cond2(p, g, boundary[1], boundary[0]);
}

std::vector<Point> cond1_completions(const Configuration& part2, const Configuration& g, const ToleranceConfig& cfg)
{
    std::vector<Point> out;
    if (part2.size() + 1 != g.size())
        return out;
    for (const auto& missing : g.support()) {
        Configuration rest = g.without_one(missing);
        for (const auto& t : all_similarities(part2, rest, cfg))
            out.push_back(t.apply(missing));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Point choose_completion(const Configuration& g, const GoodDecomposition& d, const ToleranceConfig& cfg)
{
    if (d.kind == GoodKind::Cond1) {
        auto qs = cond1_completions(d.part2, g, cfg);
        return qs.empty() ? d.p3 : qs.front();
    }
    Configuration p3z = d.to_z.apply(d.part3);
    Configuration free = difference(d.target_z, p3z);
    if (free.empty())
        throw std::logic_error("choose_completion: canonical target has no free point");
    return d.to_z.inverse().apply(free.points().front());
}

std::optional<Point> sct_star(int i, int n, const Configuration& obs, const Configuration& g, const ToleranceConfig& cfg)
{
    if (!has_origin(obs))
        return std::nullopt;
    if (is_good(obs, g, cfg))
        return kOrigin;
    if (!obs.is_set())
        return sct(i, n, obs, cfg);
    if (i >= 2)
        return kOrigin;
    Circle c = smallest_enclosing_circle(obs.without_one(kOrigin));
    Scalar sq_o = sq_norm(c.center);
    if (sq_o >= 100 * c.sq_radius)
        return kOrigin;
    // Land exactly 10 radii beyond the center, rounded outward so the
    // resulting configuration passes the exact Cond1 test.
    if (sgn(sq_o) == 0)
        return Point{10 * sqrt_approx_upper(c.sq_radius, cfg), Scalar(0)};
    Scalar ratio = sqrt_approx_upper(100 * c.sq_radius / sq_o, cfg);
    return Scalar(1 - ratio) * c.center;
}

std::optional<Point> pf(int i, const Configuration& g, const Configuration& obs, const ToleranceConfig& cfg)
{
    if (!has_origin(obs))
        return std::nullopt;
    auto d = is_good(obs, g, cfg);
    if (!d)
        return sct_star(i, static_cast<int>(g.size()), obs, g, cfg);
    if (d->kind == GoodKind::Cond1) {
        auto qs = cond1_completions(d->part2, g, cfg);
        if (!qs.empty())
            return d->p1 == kOrigin ? qs.front() : kOrigin;
        return origin_is_designated(*d, cfg) ? d->p3 : kOrigin;
    }
    if (d->part2.empty())
        return d->p1 == kOrigin ? choose_completion(g, *d, cfg) : kOrigin;
    return origin_is_designated(*d, cfg) ? choose_completion(g, *d, cfg) : kOrigin;
}

std::optional<Point> evaluate(const TargetFunctionId& tf, const Configuration& obs, const ToleranceConfig& cfg)
{
    switch (tf.family) {
    case Family::Sct:
        return sct(tf.index, tf.param, obs, cfg);
    case Family::SctStar:
        return sct_star(tf.index, tf.param, obs, *tf.pattern, cfg);
    case Family::TwoGat:
        return two_gat(obs, cfg);
    case Family::Gat:
        return gat(tf.index, obs, cfg);
    case Family::Sgat:
        return sgat(tf.index, obs, cfg);
    case Family::Pf:
        return pf(tf.index, *tf.pattern, obs, cfg);
    case Family::Hop:
        return hop(obs, cfg);
    }
    return std::nullopt;
}

bool is_symmetric_tf(const TargetFunctionId& tf, const std::vector<Configuration>& samples, const ToleranceConfig& cfg)
{
    for (const auto& s : samples) {
        auto a = evaluate(tf, s, cfg);
        auto b = evaluate(tf, s.negated(), cfg);
        if (a.has_value() != b.has_value())
            return false;
        if (a && *a != -*b)
            return false;
    }
    return true;
}

} // namespace swarmkit
