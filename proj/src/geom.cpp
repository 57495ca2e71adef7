#include "swarmkit/geom.hpp"

#include <algorithm>
#include <cctype>

namespace swarmkit {

namespace {

bool all_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

// floor(log2 s) for s > 0, exact.
long floor_log2(const Scalar& s)
{
    const mpz_class& num = s.get_num();
    const mpz_class& den = s.get_den();
    long l = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) - static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
    // 2^l <= s ?
    mpz_class lhs = num;
    mpz_class rhs = den;
    if (l >= 0)
        rhs <<= static_cast<mp_bitcnt_t>(l);
    else
        lhs <<= static_cast<mp_bitcnt_t>(-l);
    if (lhs < rhs)
        --l;
    return l;
}

long floor_div2(long v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }

// Truncated sqrt on a grid of 2^-k, plus the k used.
std::pair<Scalar, long> sqrt_trunc(const Scalar& s, unsigned prec)
{
    if (sgn(s) < 0)
        throw std::domain_error("sqrt_approx: negative input");
    if (sgn(s) == 0)
        return {Scalar(0), 0};
    long e = floor_div2(floor_log2(s));
    long k = std::max<long>(0, static_cast<long>(prec) + 2 - e);
    mpz_class num = s.get_num();
    num <<= static_cast<mp_bitcnt_t>(2 * k);
    mpz_class scaled = num / s.get_den();
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    mpz_class den = 1;
    den <<= static_cast<mp_bitcnt_t>(k);
    Scalar r(root, den);
    r.canonicalize();
    return {r, k};
}

Point circumcenter(const Point& a, const Point& b, const Point& c)
{
    Scalar d = 2 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    Scalar sa = sq_norm(a), sb = sq_norm(b), sc = sq_norm(c);
    Scalar ux = (sa * (b.y - c.y) + sb * (c.y - a.y) + sc * (a.y - b.y)) / d;
    Scalar uy = (sa * (c.x - b.x) + sb * (a.x - c.x) + sc * (b.x - a.x)) / d;
    return {ux, uy};
}

Circle diameter_circle(const Point& a, const Point& b)
{
    Point c{(a.x + b.x) / 2, (a.y + b.y) / 2};
    return {c, sq_dist(c, a)};
}

Circle circle_through(const Point& a, const Point& b, const Point& c)
{
    if (sgn(cross(b - a, c - a)) == 0) {
        Circle best = diameter_circle(a, b);
        for (const auto& cand : {diameter_circle(a, c), diameter_circle(b, c)})
            if (cand.sq_radius > best.sq_radius)
                best = cand;
        return best;
    }
    Point o = circumcenter(a, b, c);
    return {o, sq_dist(o, a)};
}

} // namespace

Scalar ToleranceConfig::default_eps()
{
    mpz_class den = 1;
    den <<= 64;
    return Scalar(mpz_class(1), den);
}

Scalar parse_scalar(std::string_view text)
{
    std::string_view t = text;
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front())))
        t.remove_prefix(1);
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back())))
        t.remove_suffix(1);
    if (t.empty())
        throw ParseError("empty number");
    bool neg = false;
    std::string_view body = t;
    if (body.front() == '-' || body.front() == '+') {
        neg = body.front() == '-';
        body.remove_prefix(1);
    }
    Scalar out;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto n = body.substr(0, slash), d = body.substr(slash + 1);
        if (!all_digits(n) || !all_digits(d))
            throw ParseError("malformed rational '" + std::string(text) + "'");
        mpz_class den{std::string(d)};
        if (den == 0)
            throw ParseError("zero denominator in '" + std::string(text) + "'");
        out = Scalar(mpz_class{std::string(n)}, den);
        out.canonicalize();
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        auto ip = body.substr(0, dot), fp = body.substr(dot + 1);
        if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
            throw ParseError("malformed decimal '" + std::string(text) + "'");
        mpz_class whole(ip.empty() ? std::string("0") : std::string(ip));
        mpz_class frac(fp.empty() ? std::string("0") : std::string(fp));
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
        out = Scalar(whole * scale + frac, scale);
        out.canonicalize();
    } else {
        if (!all_digits(body))
            throw ParseError("malformed number '" + std::string(text) + "'");
        out = Scalar(mpz_class(std::string(body)));
    }
    return neg ? Scalar(-out) : out;
}

std::string format_scalar(const Scalar& s)
{
    return s.get_num().get_str() + "/" + s.get_den().get_str();
}

Scalar sqrt_approx(const Scalar& s, const ToleranceConfig& cfg)
{
    return sqrt_trunc(s, cfg.sqrt_precision).first;
}

Scalar sqrt_approx_upper(const Scalar& s, const ToleranceConfig& cfg)
{
    auto [r, k] = sqrt_trunc(s, cfg.sqrt_precision);
    if (r * r < s) {
        mpz_class den = 1;
        den <<= static_cast<mp_bitcnt_t>(k);
        r += Scalar(mpz_class(1), den);
    }
    return r;
}

Scalar abs(const Scalar& s) { return sgn(s) < 0 ? Scalar(-s) : s; }

Scalar dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
Scalar cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
Scalar sq_norm(const Point& a) { return a.x * a.x + a.y * a.y; }

Point cmul(const Point& a, const Point& b) { return {a.x * b.x - a.y * b.y, a.x * b.y + a.y * b.x}; }

Point cdiv(const Point& a, const Point& b)
{
    Scalar n = sq_norm(b);
    if (sgn(n) == 0)
        throw std::domain_error("cdiv: division by zero");
    return cmul(a, conj(b)) / n;
}

Point conj(const Point& a) { return {a.x, -a.y}; }

std::string format_point(const Point& p) { return "[" + format_scalar(p.x) + "," + format_scalar(p.y) + "]"; }

Configuration::Configuration(std::vector<Point> points) : points_(std::move(points))
{
    std::sort(points_.begin(), points_.end());
    for (const auto& p : points_) {
        if (!support_.empty() && support_.back() == p) {
            ++mult_.back();
        } else {
            support_.push_back(p);
            mult_.push_back(1);
        }
    }
}

Configuration::Configuration(std::initializer_list<Point> points) : Configuration(std::vector<Point>(points)) {}

int Configuration::multiplicity(const Point& p) const
{
    auto it = std::lower_bound(support_.begin(), support_.end(), p);
    if (it == support_.end() || *it != p)
        return 0;
    return mult_[static_cast<std::size_t>(it - support_.begin())];
}

Configuration Configuration::without_one(const Point& p) const
{
    std::vector<Point> pts = points_;
    auto it = std::find(pts.begin(), pts.end(), p);
    if (it == pts.end())
        throw std::invalid_argument("without_one: point not in configuration");
    pts.erase(it);
    return Configuration(std::move(pts));
}

Configuration Configuration::with(const Point& p) const
{
    std::vector<Point> pts = points_;
    pts.push_back(p);
    return Configuration(std::move(pts));
}

Configuration Configuration::negated() const
{
    std::vector<Point> pts;
    pts.reserve(points_.size());
    for (const auto& p : points_)
        pts.push_back(-p);
    return Configuration(std::move(pts));
}

bool Circle::contains(const Point& p) const { return sq_dist(center, p) <= sq_radius; }
bool Circle::on_boundary(const Point& p) const { return sq_dist(center, p) == sq_radius; }

Point SimilarityTransform::apply(const Point& z) const { return cmul(multiplier, z) + translation; }

Configuration SimilarityTransform::apply(const Configuration& c) const
{
    std::vector<Point> pts;
    pts.reserve(c.size());
    for (const auto& p : c.points())
        pts.push_back(apply(p));
    return Configuration(std::move(pts));
}

SimilarityTransform SimilarityTransform::inverse() const
{
    // z = a w + b  =>  w = a^-1 z - a^-1 b
    Point inv = cdiv(Point{1, 0}, multiplier);
    return {inv, -cmul(inv, translation)};
}

Scalar SimilarityTransform::scale(const ToleranceConfig& cfg) const { return sqrt_approx(sq_norm(multiplier), cfg); }

std::pair<Scalar, Scalar> SimilarityTransform::rotation(const ToleranceConfig& cfg) const
{
    Scalar s = scale(cfg);
    return {multiplier.x / s, multiplier.y / s};
}

Scalar sq_dist(const Point& p, const Point& q) { return sq_norm(p - q); }

Circle smallest_enclosing_circle(std::span<const Point> input)
{
    if (input.empty())
        throw std::invalid_argument("smallest_enclosing_circle: empty input");
    std::vector<Point> pts(input.begin(), input.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    Circle c{pts[0], Scalar(0)};
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (c.contains(pts[i]))
            continue;
        c = {pts[i], Scalar(0)};
        for (std::size_t j = 0; j < i; ++j) {
            if (c.contains(pts[j]))
                continue;
            c = diameter_circle(pts[i], pts[j]);
            for (std::size_t k = 0; k < j; ++k) {
                if (!c.contains(pts[k]))
                    c = circle_through(pts[i], pts[j], pts[k]);
            }
        }
    }
    return c;
}

Circle smallest_enclosing_circle(const Configuration& c) { return smallest_enclosing_circle(std::span<const Point>(c.support())); }

bool is_linear(const Configuration& c)
{
    const auto& s = c.support();
    if (s.size() <= 2)
        return true;
    Point d = s[1] - s[0];
    for (std::size_t i = 2; i < s.size(); ++i)
        if (sgn(cross(d, s[i] - s[0])) != 0)
            return false;
    return true;
}

Scalar min_pairwise_sq_distance(const Configuration& c)
{
    const auto& s = c.support();
    if (s.size() < 2)
        throw std::invalid_argument("min_pairwise_sq_distance: fewer than two distinct points");
    Scalar best = sq_dist(s[0], s[1]);
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            Scalar d = sq_dist(s[i], s[j]);
            if (d < best)
                best = d;
        }
    return best;
}

Scalar diameter_sq(const Configuration& c)
{
    const auto& s = c.support();
    Scalar best = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            Scalar d = sq_dist(s[i], s[j]);
            if (d > best)
                best = d;
        }
    return best;
}

std::weak_ordering angle_cmp(const Point& center, const Point& u, const Point& v)
{
    Point a = u - center, b = v - center;
    if (a.is_origin() || b.is_origin())
        throw std::invalid_argument("angle_cmp: point coincides with center");
    auto half = [](const Point& p) { return (sgn(p.y) > 0 || (sgn(p.y) == 0 && sgn(p.x) > 0)) ? 0 : 1; };
    int ha = half(a), hb = half(b);
    if (ha != hb)
        return ha < hb ? std::weak_ordering::less : std::weak_ordering::greater;
    int c = sgn(cross(a, b));
    if (c > 0)
        return std::weak_ordering::less;
    if (c < 0)
        return std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
}

bool same_direction(const Point& a, const Point& b, const ToleranceConfig& cfg)
{
    if (sgn(dot(a, b)) <= 0)
        return false;
    Scalar c = cross(a, b);
    return c * c <= cfg.rel_eps * cfg.rel_eps * sq_norm(a) * sq_norm(b);
}

bool approx_equal(const Scalar& a, const Scalar& b, const Scalar& scale, const ToleranceConfig& cfg)
{
    return abs(a - b) <= cfg.rel_eps * scale;
}

namespace {

// Tolerant multiset match of T(G) against P, both given by support+mult.
bool matches(const SimilarityTransform& t, const Configuration& p, const Configuration& g, const Scalar& tol_sq)
{
    const auto& ps = p.support();
    const auto& pm = p.multiplicities();
    std::vector<bool> used(ps.size(), false);
    for (std::size_t i = 0; i < g.support().size(); ++i) {
        Point img = t.apply(g.support()[i]);
        int m = g.multiplicities()[i];
        bool found = false;
        // exact hit first, then nearest within tolerance
        auto it = std::lower_bound(ps.begin(), ps.end(), img);
        if (it != ps.end() && *it == img) {
            auto j = static_cast<std::size_t>(it - ps.begin());
            if (!used[j] && pm[j] == m) {
                used[j] = true;
                found = true;
            }
        }
        if (!found) {
            for (std::size_t j = 0; j < ps.size(); ++j) {
                if (used[j] || pm[j] != m)
                    continue;
                if (sq_dist(ps[j], img) <= tol_sq) {
                    used[j] = true;
                    found = true;
                    break;
                }
            }
        }
        if (!found)
            return false;
    }
    return true;
}

} // namespace

std::vector<SimilarityTransform> all_similarities(const Configuration& p, const Configuration& g, const ToleranceConfig& cfg)
{
    if (p.size() != g.size())
        throw std::invalid_argument("is_similar: size mismatch");
    std::vector<SimilarityTransform> out;
    if (p.empty())
        return {SimilarityTransform::identity()};
    if (g.support_size() != p.support_size())
        return out;
    if (g.support_size() == 1) {
        out.push_back({Point{1, 0}, p.support()[0] - g.support()[0]});
        return out;
    }
    const auto& gs = g.support();
    std::size_t a = 0, b = 1;
    Scalar dg = sq_dist(gs[0], gs[1]);
    for (std::size_t i = 0; i < gs.size(); ++i)
        for (std::size_t j = i + 1; j < gs.size(); ++j)
            if (Scalar d = sq_dist(gs[i], gs[j]); d > dg) {
                dg = d;
                a = i;
                b = j;
            }
    int ma = g.multiplicities()[a], mb = g.multiplicities()[b];

    const auto& ps = p.support();
    Scalar dp = diameter_sq(p);
    Scalar tol_sq = cfg.rel_eps * cfg.rel_eps * dp;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (p.multiplicities()[i] != ma)
            continue;
        for (std::size_t j = 0; j < ps.size(); ++j) {
            if (i == j || p.multiplicities()[j] != mb)
                continue;
            if (!approx_equal(sq_dist(ps[i], ps[j]), dp, dp, cfg))
                continue;
            Point mul = cdiv(ps[j] - ps[i], gs[b] - gs[a]);
            SimilarityTransform t{mul, ps[i] - cmul(mul, gs[a])};
            if (matches(t, p, g, tol_sq))
                out.push_back(t);
        }
    }
    return out;
}

std::optional<SimilarityTransform> is_similar(const Configuration& p, const Configuration& g, const ToleranceConfig& cfg)
{
    auto all = all_similarities(p, g, cfg);
    if (all.empty())
        return std::nullopt;
    return all.front();
}

} // namespace swarmkit
