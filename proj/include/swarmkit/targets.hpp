#pragma once

// Target functions. Each maps a self-centric observation (a configuration
// in the observer's frame, containing the origin) to a destination in the
// same frame; nullopt stands for the error symbol returned when the origin
// is missing.

#include "swarmkit/geom.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace swarmkit {

enum class Family { Sct, SctStar, TwoGat, Gat, Sgat, Pf, Hop };

struct TargetFunctionId {
    Family family = Family::TwoGat;
    int index = 1;
    int param = 0; // c for Sct; n for SctStar and Pf
    std::shared_ptr<const Configuration> pattern; // SctStar and Pf only

    static TargetFunctionId sct(int i, int c) { return {Family::Sct, i, c, nullptr}; }
    static TargetFunctionId two_gat() { return {Family::TwoGat, 1, 0, nullptr}; }
    static TargetFunctionId gat(int i) { return {Family::Gat, i, 0, nullptr}; }
    static TargetFunctionId sgat(int i) { return {Family::Sgat, i, 0, nullptr}; }
    static TargetFunctionId hop() { return {Family::Hop, 1, 0, nullptr}; }
    static TargetFunctionId sct_star(int i, std::shared_ptr<const Configuration> g);
    static TargetFunctionId pf(int i, std::shared_ptr<const Configuration> g);

    /// "sct:2/4", "sctstar:1", "2gat", "gat:1", "sgat:3", "pf:5", "hop".
    std::string tag() const;
    /// Inverse of tag(). Pattern-based families take the pattern argument.
    static TargetFunctionId parse(std::string_view tag, std::shared_ptr<const Configuration> pattern = nullptr);

    void validate() const;

    friend bool operator==(const TargetFunctionId& a, const TargetFunctionId& b);
};

/// Named algorithms: cSCTA, 2GATA, GATA, SGTA, PFA (pattern needed).
std::vector<TargetFunctionId> sct_algorithm(int c);
std::vector<TargetFunctionId> pf_algorithm(std::shared_ptr<const Configuration> g);

bool is_unfavorable(const Configuration& p, const ToleranceConfig& cfg = {});

std::optional<Point> sct(int i, int c, const Configuration& obs, const ToleranceConfig& cfg = {});
std::optional<Point> two_gat(const Configuration& obs, const ToleranceConfig& cfg = {});
std::optional<Point> gat(int i, const Configuration& obs, const ToleranceConfig& cfg = {});
std::optional<Point> sgat(int i, const Configuration& obs, const ToleranceConfig& cfg = {});
/// Symmetric companion of 2gat: on unfavorable input jump onto the other
/// point, otherwise behave as 2gat.
std::optional<Point> hop(const Configuration& obs, const ToleranceConfig& cfg = {});

enum class GoodKind { Cond1, Cond2 };

struct GoodDecomposition {
    GoodKind kind = GoodKind::Cond1;
    Point p1;
    Configuration part2; // P2
    Configuration part3; // Cond2 only
    // Cond1: center and squared radius of the SEC of P2.
    Point o2;
    Scalar sq_delta2;
    // Cond2: far end of the diameter, the frame z = to_z(p) with p1 -> (0,0)
    // and p3 -> (31,0), and the canonical completion target in that frame.
    Point p3;
    SimilarityTransform to_z;
    Configuration target_z;
};

std::optional<GoodDecomposition> is_good(const Configuration& p, const Configuration& g, const ToleranceConfig& cfg = {});

/// Points q with P2 + {q} similar to G (Cond1), sorted by <.
std::vector<Point> cond1_completions(const Configuration& part2, const Configuration& g, const ToleranceConfig& cfg = {});

/// Destination for the designated mover of a good configuration: the
/// completing q, else p3 (Cond1), or a free point of the canonical target
/// (Cond2). Throws when nothing is admissible.
Point choose_completion(const Configuration& g, const GoodDecomposition& d, const ToleranceConfig& cfg = {});

std::optional<Point> sct_star(int i, int n, const Configuration& obs, const Configuration& g, const ToleranceConfig& cfg = {});
std::optional<Point> pf(int i, const Configuration& g, const Configuration& obs, const ToleranceConfig& cfg = {});

std::optional<Point> evaluate(const TargetFunctionId& tf, const Configuration& obs, const ToleranceConfig& cfg = {});

/// phi(P) = -phi(-P) on every sample.
bool is_symmetric_tf(const TargetFunctionId& tf, const std::vector<Configuration>& samples, const ToleranceConfig& cfg = {});

} // namespace swarmkit
