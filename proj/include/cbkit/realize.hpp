#pragma once

// Explicit compact countable subsets of the rational line with a prescribed
// Cantor-Bendixson characteristic.
//
// A cluster of rank a around z inside B(z, r) is {z} together with an infinite
// family of sub-clusters K_n centred at x_n = z + r_n, where r_n strictly
// decreases to 0 below r. K_n lives in B(x_n, eps_n) with
//
//     eps_n = 1/2 * min(r_{n-1} - r_n, r_n - r_{n+1}),   r_{-1} = r,
//
// and has rank a-1 for successor a, or the n-th element of the fundamental
// sequence of a for limit a. Only a finite prefix of each family is stored;
// the rest is described by a TailSpec that can produce child n on demand.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cbkit/ordinal.hpp"

namespace cbkit {

using Rational = mpq_class;

/// Rule for the distances r_n = d(x_n, z) of a cluster with radius r.
class RadiusSchedule {
public:
    enum class Kind { geometric, harmonic };

    /// r_n = r * q^(n+1), 0 < q < 1.
    static RadiusSchedule geometric(Rational ratio);
    /// r_n = r / (n+2).
    static RadiusSchedule harmonic();

    Kind kind() const noexcept { return kind_; }
    const Rational& ratio() const noexcept { return ratio_; }

    /// r_n for n >= 0; `n = -1` yields r itself.
    Rational distance(const Rational& r, std::int64_t n) const;

    /// "geometric:1/2" or "harmonic".
    std::string to_string() const;
    static RadiusSchedule parse(const std::string& text);

    friend bool operator==(const RadiusSchedule& a, const RadiusSchedule& b) {
        return a.kind_ == b.kind_ && a.ratio_ == b.ratio_;
    }

private:
    RadiusSchedule(Kind kind, Rational ratio) : kind_(kind), ratio_(std::move(ratio)) {}

    Kind kind_;
    Rational ratio_;
};

/// Side of z on which x_n is placed.
enum class SideRule { right, left, alternate };

std::string to_string(SideRule s);
SideRule parse_side_rule(const std::string& text);

/// The perfect ambient space. Only the rational line ships.
enum class Ambient { rational_line };

struct RealizationConfig {
    /// Materialized children per node (the truncation m). At least 2.
    std::size_t children_per_node = 4;
    /// Nodes deeper than this are stored with their tail only.
    std::size_t depth = 6;
    RadiusSchedule radius_schedule = RadiusSchedule::geometric(Rational(1, 2));
    SideRule side_rule = SideRule::right;
    Ambient ambient = Ambient::rational_line;

    /// Throws Undefined on an unusable configuration.
    void validate() const;
};

enum class TailGenerator { successor, limit };

struct TailSpec {
    /// First child index not stored in `children`.
    std::uint64_t next_index = 0;
    TailGenerator generator = TailGenerator::successor;
    /// Number of derived-set steps already applied to generated children.
    /// Zero for realized trees.
    std::uint64_t stage = 0;
    RadiusSchedule radius_schedule = RadiusSchedule::geometric(Rational(1, 2));
    SideRule side_rule = SideRule::right;

    friend bool operator==(const TailSpec&, const TailSpec&) = default;
};

struct ClusterTree {
    Rational center;
    Rational radius;
    Ordinal rank;
    std::vector<ClusterTree> children;
    std::optional<TailSpec> tail;

    bool is_leaf() const noexcept { return children.empty() && !tail; }

    friend bool operator==(const ClusterTree&, const ClusterTree&) = default;
};

using ClusterForest = std::vector<ClusterTree>;

/// d(x_n, z) of the n-th child of `parent` as prescribed by its tail.
/// Requires a tail.
Rational child_distance(const ClusterTree& parent, std::int64_t n);

/// The unexpanded n-th child of `parent` produced by its tail generator: no
/// stored children, a fresh tail starting at index 0 (none for rank 0).
ClusterTree generate_child(const ClusterTree& parent, std::uint64_t n);

/// Rank of the n-th child under the parent's tail generator.
Ordinal child_rank(const ClusterTree& parent, std::uint64_t n);

/// Cluster K with K inside B(z, r) and K^(alpha) = {z}. Throws InvalidRadius
/// when r <= 0.
ClusterTree realize_cluster(const Rational& z, const Rational& r, const Ordinal& alpha,
                            const RealizationConfig& cfg = {});

/// p clusters of rank alpha centred at 0, 1, ..., p-1 with common radius half
/// the minimum pairwise distance (1/2). Their union has characteristic
/// (alpha, p). Throws Undefined when p = 0.
ClusterForest realize_multi(const Ordinal& alpha, std::uint64_t p, const RealizationConfig& cfg = {});

/// A subset of the line homeomorphic to w^alpha + 1 (a single point for
/// alpha = 0).
ClusterTree embed_ordinal(const Ordinal& alpha, const RealizationConfig& cfg = {});

/// Child indices from a root; for forests the first entry is the tree index.
using NodePath = std::vector<std::uint64_t>;

std::string format_path(const NodePath& path);

struct PointCloud {
    /// Sorted, pairwise distinct.
    std::vector<Rational> points;
    /// provenance[i] is the node whose center is points[i].
    std::vector<NodePath> provenance;
};

/// Centers of all nodes within `depth_budget` edges of a root, taking the
/// first `width_budget` children of every node. Children beyond the stored
/// prefix are produced from the tail of unpruned trees.
PointCloud materialize(const ClusterTree& t, std::size_t depth_budget, std::size_t width_budget);
PointCloud materialize(const ClusterForest& f, std::size_t depth_budget, std::size_t width_budget);

std::size_t node_count(const ClusterTree& t);
std::size_t node_count(const ClusterForest& f);

}  // namespace cbkit
