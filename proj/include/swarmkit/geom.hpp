#pragma once

// Exactness-aware 2-D kernel. Every coordinate is an arbitrary-precision
// rational; square roots only enter through sqrt_approx.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace swarmkit {

using Scalar = mpq_class;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses "n", "n/d" or a plain decimal ("-1.25"). Zero denominators are
/// rejected.
Scalar parse_scalar(std::string_view text);

/// Canonical "numerator/denominator" form; integers keep the "/1".
std::string format_scalar(const Scalar& s);

struct ToleranceConfig {
    Scalar rel_eps = default_eps();
    unsigned sqrt_precision = 128;

    static Scalar default_eps();
};

/// Deterministic rational r >= 0 with r*r <= s and |r*r - s| <= s * 2^-prec.
Scalar sqrt_approx(const Scalar& s, const ToleranceConfig& cfg = {});

/// Same precision as sqrt_approx but rounded up: r*r >= s.
Scalar sqrt_approx_upper(const Scalar& s, const ToleranceConfig& cfg = {});

Scalar abs(const Scalar& s);

struct Point {
    Scalar x;
    Scalar y;

    Point() = default;
    Point(Scalar px, Scalar py) : x(std::move(px)), y(std::move(py)) {}
    Point(long px, long py) : x(px), y(py) {}

    friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
    // Lexicographic order on R^2.
    friend bool operator<(const Point& a, const Point& b)
    {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    }
    friend bool operator>(const Point& a, const Point& b) { return b < a; }
    friend bool operator<=(const Point& a, const Point& b) { return !(b < a); }

    friend Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator-(const Point& a) { return {-a.x, -a.y}; }
    friend Point operator*(const Scalar& s, const Point& a) { return {s * a.x, s * a.y}; }
    friend Point operator/(const Point& a, const Scalar& s) { return {a.x / s, a.y / s}; }

    bool is_origin() const { return sgn(x) == 0 && sgn(y) == 0; }
};

Scalar dot(const Point& a, const Point& b);
Scalar cross(const Point& a, const Point& b);
Scalar sq_norm(const Point& a);
// Complex arithmetic on points, z = x + iy.
Point cmul(const Point& a, const Point& b);
Point cdiv(const Point& a, const Point& b);
Point conj(const Point& a);

std::string format_point(const Point& p);

/// Multiset of points with its support and multiplicities. Points are kept
/// sorted by <, so two equal multisets compare equal member-wise.
class Configuration {
public:
    Configuration() = default;
    explicit Configuration(std::vector<Point> points);
    Configuration(std::initializer_list<Point> points);

    const std::vector<Point>& points() const { return points_; }
    const std::vector<Point>& support() const { return support_; }
    const std::vector<int>& multiplicities() const { return mult_; }

    std::size_t size() const { return points_.size(); }
    std::size_t support_size() const { return support_.size(); }
    bool empty() const { return points_.empty(); }
    bool is_set() const { return support_.size() == points_.size(); }

    int multiplicity(const Point& p) const;
    bool contains(const Point& p) const { return multiplicity(p) > 0; }

    /// Removes one copy of p. Throws if p is absent.
    Configuration without_one(const Point& p) const;
    Configuration with(const Point& p) const;
    Configuration negated() const;

    friend bool operator==(const Configuration& a, const Configuration& b)
    {
        return a.points_ == b.points_;
    }

private:
    std::vector<Point> points_;
    std::vector<Point> support_;
    std::vector<int> mult_;
};

struct Circle {
    Point center;
    Scalar sq_radius;

    bool contains(const Point& p) const;
    bool on_boundary(const Point& p) const;
};

/// z -> multiplier * z + translation over C. Proper similarities only.
struct SimilarityTransform {
    Point multiplier{1, 0};
    Point translation{0, 0};

    Point apply(const Point& z) const;
    Configuration apply(const Configuration& c) const;
    SimilarityTransform inverse() const;

    Scalar scale(const ToleranceConfig& cfg = {}) const;
    /// (cos, sin) of the rotation angle, unit within rel_eps.
    std::pair<Scalar, Scalar> rotation(const ToleranceConfig& cfg = {}) const;

    static SimilarityTransform identity() { return {}; }
};

Scalar sq_dist(const Point& p, const Point& q);

Circle smallest_enclosing_circle(std::span<const Point> points);
Circle smallest_enclosing_circle(const Configuration& c);

bool is_linear(const Configuration& c);

/// Smallest squared distance between two distinct support points.
Scalar min_pairwise_sq_distance(const Configuration& c);

/// Largest squared distance between two support points.
Scalar diameter_sq(const Configuration& c);

/// Counterclockwise angle of u-center vs v-center in [0, 2pi).
std::weak_ordering angle_cmp(const Point& center, const Point& u, const Point& v);

/// True when a and b have the same direction (up to rel_eps on the sine of
/// the angle between them). Both must be nonzero.
bool same_direction(const Point& a, const Point& b, const ToleranceConfig& cfg);

/// |a - b| <= rel_eps * scale.
bool approx_equal(const Scalar& a, const Scalar& b, const Scalar& scale, const ToleranceConfig& cfg);

/// Returns T with T(G) = P as multisets, or nothing. Anchors on a farthest
/// pair of G.
std::optional<SimilarityTransform> is_similar(const Configuration& p, const Configuration& g,
                                              const ToleranceConfig& cfg = {});

/// Every proper similarity T with T(G) = P, one per matching anchor image.
std::vector<SimilarityTransform> all_similarities(const Configuration& p, const Configuration& g,
                                                  const ToleranceConfig& cfg = {});

} // namespace swarmkit
