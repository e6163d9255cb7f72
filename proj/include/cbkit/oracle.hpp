#pragma once

// Verification paths that do not go through ordinal arithmetic on the
// characteristic: derived sets computed on the tree structure, exact
// geometric audits of the annulus separation, and instance checks of
// (K n F)^(b) = K^(b) n F.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cbkit/realize.hpp"
#include "cbkit/space.hpp"

namespace cbkit {

/// True iff the center of `node` lies in the `stages`-th derived set of the
/// set the node describes. A center is a limit point exactly when infinitely
/// many children are nonempty, which only the tail can supply; that is
/// decided by generating one probe child.
bool center_survives(const ClusterTree& node, std::uint64_t stages);

/// True iff the `stages`-th derived set of the node's set is nonempty.
bool nonempty_after(const ClusterTree& node, std::uint64_t stages);

/// One derived-set step. Isolated centers are removed; the surviving
/// children of a removed center are lifted into the result. Removing every
/// root yields the empty forest.
ClusterForest prune(const ClusterForest& f);
ClusterForest prune(ClusterForest&& f);
ClusterForest prune(const ClusterTree& t);

ClusterForest prune_steps(const ClusterForest& f, std::uint64_t k);
ClusterForest prune_steps(const ClusterTree& t, std::uint64_t k);

/// True iff the set described by the forest is finite.
bool is_finite_set(const ClusterForest& f);

struct PruneReport {
    std::uint64_t stage = 0;
    std::size_t removed = 0;
    /// Stored nodes still present.
    std::size_t survivors = 0;
    bool finite_reached = false;
};

struct PruneOptions {
    std::uint64_t stage_cap = 32;
};

/// Reports for stages 0, 1, ... up to the first finite stage.
/// Throws StageBudgetExceeded past `opts.stage_cap`.
std::vector<PruneReport> prune_trace(const ClusterForest& f, const PruneOptions& opts = {});

/// (m, p): m the least stage with finitely many points, p their number.
/// Throws InfiniteRank if a root is annotated with a rank >= w.
CbChar char_by_pruning(const ClusterForest& f, const PruneOptions& opts = {});
CbChar char_by_pruning(const ClusterTree& t, const PruneOptions& opts = {});

struct RankAudit {
    bool ok = true;
    /// Union of (root rank, 1) over the roots; meaningful when ok.
    CbChar characteristic;
    std::string problem;
    NodePath where;
};

/// Checks that rank annotations follow the construction rules (leaves have
/// rank 0, successor children have rank - 1, limit child n has the n-th
/// fundamental-sequence rank, tails match) and reports the characteristic
/// the annotations claim.
RankAudit audit_ranks(const ClusterForest& f);

struct Counterexample {
    std::string check;
    NodePath node;
    std::uint64_t annulus = 0;
    std::uint64_t child = 0;
    Rational point;
};

/// Separation of a node's children by F_n = complement of B(z, (r_n + r_{n+1})/2).
struct AnnulusResult {
    NodePath node;
    std::uint64_t n = 0;
    bool claim1_ok = true;  // children k <= n lie in F_n
    bool claim2_ok = true;  // children k > n miss F_n
    bool claim3_ok = true;  // no point on the sphere d = (r_n + r_{n+1})/2
    std::optional<Counterexample> counterexample;

    bool ok() const noexcept { return claim1_ok && claim2_ok && claim3_ok; }
};

struct GeometryReport {
    std::vector<AnnulusResult> annuli;
    bool radii_ok = true;        // r = r_{-1} > r_0 > r_1 > ... > 0, every eps_n > 0
    bool containment_ok = true;  // B(x_n, eps_n) inside B(z, r_{n-1}) minus B(z, r_{n+1}); points in B(z, r)
    bool disjoint_ok = true;     // sibling balls pairwise disjoint
    std::vector<Counterexample> structural;

    bool ok() const noexcept;
    /// First counterexample, if any.
    std::optional<Counterexample> first_counterexample() const;
};

GeometryReport geometry_check(const ClusterTree& t);
/// Also checks that the root balls of distinct trees are disjoint.
GeometryReport geometry_check(const ClusterForest& f);

/// Compares, as sets of stored centers, prune_steps(K_0 .. K_n, beta) with
/// prune_steps(t, beta) restricted to F_n. Throws IndexOutOfRange unless
/// child n is stored.
bool restriction_check(const ClusterTree& t, std::uint64_t n, std::uint64_t beta);

/// restriction_check for every stored n <= max_n and beta <= max_beta;
/// result[n][beta]. Prunes incrementally, so it is much cheaper than the
/// individual calls.
std::vector<std::vector<bool>> restriction_grid(const ClusterTree& t, std::uint64_t max_n,
                                                std::uint64_t max_beta);

}  // namespace cbkit
