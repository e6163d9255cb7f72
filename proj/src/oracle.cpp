#include "cbkit/oracle.hpp"

#include <algorithm>
#include <deque>
#include <iterator>

#include "cbkit/errors.hpp"

namespace cbkit {

namespace {

// The n-th tail child as far as survival is concerned: its rank and a fresh
// tail. Position and radius do not affect which centers are limit points.
ClusterTree probe_child(const ClusterTree& parent, std::uint64_t n) {
    ClusterTree child;
    child.rank = child_rank(parent, n);
    if (!child.rank.is_zero())
        child.tail = TailSpec{0, child.rank.is_limit() ? TailGenerator::limit : TailGenerator::successor, 0,
                              parent.tail->radius_schedule, parent.tail->side_rule};
    return child;
}

}  // namespace

bool center_survives(const ClusterTree& node, std::uint64_t stages) {
    if (stages == 0) return true;
    if (!node.tail) return false;
    const TailSpec& tail = *node.tail;
    const std::uint64_t needed = tail.stage + stages - 1;
    // Limit tails have strictly increasing child ranks, so child n has rank at
    // least n; any child at index >= needed is as alive as any later one.
    const std::uint64_t probe_index = tail.generator == TailGenerator::successor
                                          ? tail.next_index
                                          : std::max(tail.next_index, needed);
    return nonempty_after(probe_child(node, probe_index), needed);
}

bool nonempty_after(const ClusterTree& node, std::uint64_t stages) {
    if (center_survives(node, stages)) return true;
    return std::any_of(node.children.begin(), node.children.end(),
                       [&](const ClusterTree& c) { return nonempty_after(c, stages); });
}

namespace {

// mpq_class has no noexcept move, so a growing vector of trees would copy
// every element on reallocation; collect into a deque and move out once.
using Bucket = std::deque<ClusterTree>;

ClusterForest to_forest(Bucket&& b) {
    return ClusterForest(std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
}

void prune_into(const ClusterTree& node, Bucket& out) {
    Bucket kept;
    for (const auto& c : node.children) prune_into(c, kept);
    if (center_survives(node, 1)) {
        ClusterTree next{node.center, node.radius, node.rank, to_forest(std::move(kept)), node.tail};
        next.tail->stage += 1;
        out.push_back(std::move(next));
    } else {
        // No tail child is nonempty, so only stored children can remain.
        for (auto& c : kept) out.push_back(std::move(c));
    }
}

void prune_into(ClusterTree&& node, Bucket& out) {
    Bucket kept;
    for (auto& c : node.children) prune_into(std::move(c), kept);
    if (center_survives(node, 1)) {
        node.children = to_forest(std::move(kept));
        node.tail->stage += 1;
        out.push_back(std::move(node));
    } else {
        for (auto& c : kept) out.push_back(std::move(c));
    }
}

bool has_limit_point(const ClusterTree& node) {
    if (center_survives(node, 1)) return true;
    return std::any_of(node.children.begin(), node.children.end(), has_limit_point);
}

}  // namespace

ClusterForest prune(const ClusterForest& f) {
    Bucket out;
    for (const auto& t : f) prune_into(t, out);
    return to_forest(std::move(out));
}

ClusterForest prune(ClusterForest&& f) {
    Bucket out;
    for (auto& t : f) prune_into(std::move(t), out);
    return to_forest(std::move(out));
}

ClusterForest prune(const ClusterTree& t) { return prune(ClusterForest{t}); }

ClusterForest prune_steps(const ClusterForest& f, std::uint64_t k) {
    ClusterForest current = f;
    for (std::uint64_t i = 0; i < k && !current.empty(); ++i) current = prune(std::move(current));
    return current;
}

ClusterForest prune_steps(const ClusterTree& t, std::uint64_t k) {
    return prune_steps(ClusterForest{t}, k);
}

bool is_finite_set(const ClusterForest& f) { return std::none_of(f.begin(), f.end(), has_limit_point); }

std::vector<PruneReport> prune_trace(const ClusterForest& f, const PruneOptions& opts) {
    std::vector<PruneReport> trace;
    ClusterForest current = f;
    std::size_t previous = node_count(current);
    for (std::uint64_t stage = 0;; ++stage) {
        if (stage > opts.stage_cap)
            throw StageBudgetExceeded("no finite stage within " + std::to_string(opts.stage_cap) +
                                      " derived-set steps");
        const std::size_t survivors = node_count(current);
        const bool finite = is_finite_set(current);
        trace.push_back(PruneReport{stage, previous - survivors, survivors, finite});
        if (finite) return trace;
        previous = survivors;
        current = prune(std::move(current));
    }
}

CbChar char_by_pruning(const ClusterForest& f, const PruneOptions& opts) {
    for (const auto& t : f)
        if (!t.rank.is_finite())
            throw InfiniteRank("rank " + format_ordinal(t.rank) +
                               " is infinite; derived-set iteration cannot reach it");
    const auto trace = prune_trace(f, opts);
    const auto& last = trace.back();
    if (last.survivors == 0) return CbChar::empty();
    return CbChar{Ordinal::natural(last.stage), Natural(static_cast<unsigned long>(last.survivors))};
}

CbChar char_by_pruning(const ClusterTree& t, const PruneOptions& opts) {
    return char_by_pruning(ClusterForest{t}, opts);
}

namespace {

bool audit_node(const ClusterTree& node, NodePath& path, RankAudit& audit) {
    auto fail = [&](std::string what) {
        audit.ok = false;
        audit.problem = std::move(what);
        audit.where = path;
        return false;
    };
    if (node.radius <= 0) return fail("non-positive radius");
    if (node.rank.is_zero()) {
        if (!node.is_leaf()) return fail("rank 0 node has children or a tail");
        return true;
    }
    if (!node.tail) return fail("rank " + format_ordinal(node.rank) + " node has no tail");
    const TailSpec& tail = *node.tail;
    if (tail.stage != 0) return fail("tail has already been pruned");
    if (tail.next_index != node.children.size()) return fail("tail index does not follow stored children");
    const bool limit = node.rank.is_limit();
    if (limit != (tail.generator == TailGenerator::limit))
        return fail("tail generator does not match rank " + format_ordinal(node.rank));
    for (std::uint64_t n = 0; n < node.children.size(); ++n) {
        const Ordinal expected = limit ? fundamental_seq(node.rank, n) : node.rank.predecessor();
        if (node.children[n].rank != expected)
            return fail("child " + std::to_string(n) + " has rank " +
                        format_ordinal(node.children[n].rank) + ", expected " + format_ordinal(expected));
        path.push_back(n);
        const bool ok = audit_node(node.children[n], path, audit);
        path.pop_back();
        if (!ok) return false;
    }
    return true;
}

}  // namespace

RankAudit audit_ranks(const ClusterForest& f) {
    RankAudit audit;
    NodePath path;
    for (std::uint64_t k = 0; k < f.size(); ++k) {
        path.assign(1, k);
        if (!audit_node(f[k], path, audit)) return audit;
        audit.characteristic = union_char(audit.characteristic, CbChar{f[k].rank, 1});
    }
    return audit;
}

bool GeometryReport::ok() const noexcept {
    if (!radii_ok || !containment_ok || !disjoint_ok || !structural.empty()) return false;
    return std::all_of(annuli.begin(), annuli.end(), [](const AnnulusResult& a) { return a.ok(); });
}

std::optional<Counterexample> GeometryReport::first_counterexample() const {
    if (!structural.empty()) return structural.front();
    for (const auto& a : annuli)
        if (a.counterexample) return a.counterexample;
    return std::nullopt;
}

namespace {

class GeometryAuditor {
public:
    explicit GeometryAuditor(GeometryReport& report) : report_(report) {}

    /// Audits the subtree and returns all of its stored centers.
    std::vector<Rational> visit(const ClusterTree& node, NodePath& path) {
        std::vector<std::vector<Rational>> per_child;
        per_child.reserve(node.children.size());
        for (std::uint64_t k = 0; k < node.children.size(); ++k) {
            path.push_back(k);
            per_child.push_back(visit(node.children[k], path));
            path.pop_back();
        }
        if (!node.children.empty()) check_node(node, path, per_child);

        std::size_t total = 1;
        for (const auto& pts : per_child) total += pts.size();
        std::vector<Rational> points;
        points.reserve(total);
        points.push_back(node.center);
        for (auto& pts : per_child)
            for (auto& x : pts) points.push_back(std::move(x));
        for (const auto& x : points) {
            if (abs(x - node.center) >= node.radius)
                structural("point outside B(z, r)", path, 0, 0, x, report_.containment_ok);
        }
        return points;
    }

    void structural(std::string check, const NodePath& path, std::uint64_t annulus,
                    std::uint64_t child, const Rational& x, bool& flag) {
        flag = false;
        if (report_.structural.size() < kMaxStructural)
            report_.structural.push_back(Counterexample{std::move(check), path, annulus, child, x});
    }

private:
    static constexpr std::size_t kMaxStructural = 64;

    // r_n for n in [-1, size]: stored children give d(x_n, z) directly; the
    // one past the stored prefix comes from the tail's schedule.
    std::vector<Rational> distances(const ClusterTree& node) const {
        std::vector<Rational> r{node.radius};
        for (const auto& c : node.children) r.push_back(abs(c.center - node.center));
        if (node.tail && node.tail->stage == 0)
            r.push_back(child_distance(node, static_cast<std::int64_t>(node.children.size())));
        return r;
    }

    void check_node(const ClusterTree& node, const NodePath& path,
                    const std::vector<std::vector<Rational>>& per_child) {
        const std::vector<Rational> r = distances(node);  // r[i] is r_{i-1}
        const std::size_t m = node.children.size();

        for (std::size_t i = 1; i < r.size(); ++i) {
            if (!(r[i] < r[i - 1]) || r[i] <= 0)
                structural("radii not strictly decreasing", path, i - 1, i - 1, node.center, report_.radii_ok);
        }
        for (std::size_t k = 0; k < m; ++k) {
            const ClusterTree& c = node.children[k];
            if (c.radius <= 0) structural("eps_n not positive", path, k, k, c.center, report_.radii_ok);
            const Rational d = abs(c.center - node.center);
            if (d + c.radius > r[k])
                structural("B(x_n, eps_n) leaves B(z, r_{n-1})", path, k, k, c.center, report_.containment_ok);
            if (k + 2 < r.size() && d - c.radius < r[k + 2])
                structural("B(x_n, eps_n) meets B(z, r_{n+1})", path, k, k, c.center, report_.containment_ok);
            for (std::size_t j = k + 1; j < m; ++j) {
                const ClusterTree& o = node.children[j];
                if (abs(c.center - o.center) < c.radius + o.radius)
                    structural("sibling balls overlap", path, k, j, o.center, report_.disjoint_ok);
            }
        }

        std::vector<std::vector<Rational>> dist(m);
        for (std::size_t k = 0; k < m; ++k) {
            dist[k].reserve(per_child[k].size());
            for (const auto& x : per_child[k]) dist[k].emplace_back(abs(x - node.center));
        }

        // Annulus n needs r_n and r_{n+1}.
        for (std::size_t n = 0; n + 2 < r.size(); ++n) {
            AnnulusResult res;
            res.node = path;
            res.n = n;
            const Rational threshold = (r[n + 1] + r[n + 2]) / 2;
            for (std::size_t k = 0; k < m; ++k) {
                for (std::size_t i = 0; i < per_child[k].size(); ++i) {
                    const Rational& x = per_child[k][i];
                    const int c = cmp(dist[k][i], threshold);
                    if (k <= n && c < 0) record(res, res.claim1_ok, "claim1: K_k inside F_n", k, x);
                    if (k > n && c >= 0) record(res, res.claim2_ok, "claim2: K_k misses F_n", k, x);
                    if (c == 0) record(res, res.claim3_ok, "claim3: point on the boundary of F_n", k, x);
                }
            }
            report_.annuli.push_back(std::move(res));
        }
    }

    static void record(AnnulusResult& res, bool& flag, const char* check, std::uint64_t k,
                       const Rational& x) {
        flag = false;
        if (!res.counterexample) res.counterexample = Counterexample{check, res.node, res.n, k, x};
    }

    GeometryReport& report_;
};

}  // namespace

GeometryReport geometry_check(const ClusterForest& f) {
    GeometryReport report;
    GeometryAuditor auditor(report);
    NodePath path;
    for (std::uint64_t k = 0; k < f.size(); ++k) {
        path.assign(1, k);
        auditor.visit(f[k], path);
        for (std::uint64_t j = k + 1; j < f.size(); ++j) {
            if (abs(f[k].center - f[j].center) < f[k].radius + f[j].radius)
                auditor.structural("cluster balls overlap", NodePath{k}, 0, j, f[j].center,
                                   report.disjoint_ok);
        }
    }
    return report;
}

GeometryReport geometry_check(const ClusterTree& t) { return geometry_check(ClusterForest{t}); }

namespace {

void centers(const ClusterForest& f, std::vector<Rational>& out) {
    for (const auto& t : f) {
        out.push_back(t.center);
        centers(t.children, out);
    }
}

// (r_n + r_{n+1}) / 2, with r_n read off the stored child and r_{n+1} from
// the next stored child or the tail schedule.
Rational annulus_threshold(const ClusterTree& t, std::uint64_t n) {
    const Rational r_n = abs(t.children[n].center - t.center);
    Rational r_next;
    if (n + 1 < t.children.size()) {
        r_next = abs(t.children[n + 1].center - t.center);
    } else if (t.tail) {
        r_next = child_distance(t, static_cast<std::int64_t>(n + 1));
    }
    return (r_n + r_next) / 2;
}

// Both sides are collected in traversal order, which agrees whenever the
// sets do; sorting is only needed to confirm a mismatch.
bool same_set(const std::vector<Rational>& a, std::vector<Rational> b) {
    if (a == b) return true;
    std::vector<Rational> sa = a;
    std::sort(sa.begin(), sa.end());
    std::sort(b.begin(), b.end());
    return sa == b;
}

// Compares (K_0 u ... u K_n)^(beta) with K^(beta) n F_n, given both derived
// forests.
bool same_on_annulus(const ClusterTree& t, std::uint64_t n, const ClusterForest& sub_pruned,
                     const ClusterForest& whole_pruned) {
    const Rational threshold = annulus_threshold(t, n);
    std::vector<Rational> left;
    centers(sub_pruned, left);
    std::vector<Rational> whole;
    centers(whole_pruned, whole);
    std::vector<Rational> right;
    for (auto& x : whole)
        if (abs(x - t.center) >= threshold) right.push_back(std::move(x));
    return same_set(left, std::move(right));
}

ClusterForest prefix(const ClusterTree& t, std::uint64_t n) {
    return ClusterForest(t.children.begin(), t.children.begin() + static_cast<std::ptrdiff_t>(n + 1));
}

}  // namespace

bool restriction_check(const ClusterTree& t, std::uint64_t n, std::uint64_t beta) {
    if (n >= t.children.size())
        throw IndexOutOfRange("child " + std::to_string(n) + " is not stored (have " +
                              std::to_string(t.children.size()) + ")");
    return same_on_annulus(t, n, prune_steps(prefix(t, n), beta), prune_steps(t, beta));
}

std::vector<std::vector<bool>> restriction_grid(const ClusterTree& t, std::uint64_t max_n,
                                                std::uint64_t max_beta) {
    const std::uint64_t rows = std::min<std::uint64_t>(max_n + 1, t.children.size());
    std::vector<std::vector<bool>> result(rows, std::vector<bool>(max_beta + 1));
    // Derived sets of a forest are computed tree by tree, so K_0 .. K_n is
    // the concatenation of the separately pruned children. The whole cluster
    // is pruned on its own.
    std::vector<ClusterForest> kids;
    for (std::uint64_t k = 0; k < rows; ++k) kids.push_back(ClusterForest{t.children[k]});
    ClusterForest whole{t};
    for (std::uint64_t beta = 0; beta <= max_beta; ++beta) {
        if (beta > 0) {
            whole = prune(std::move(whole));
            for (auto& kid : kids) kid = prune(std::move(kid));
        }
        std::vector<Rational> all;
        centers(whole, all);
        std::vector<Rational> dist;
        dist.reserve(all.size());
        for (const auto& x : all) dist.emplace_back(abs(x - t.center));
        std::vector<Rational> left;
        for (std::uint64_t n = 0; n < rows; ++n) {
            centers(kids[n], left);
            const Rational threshold = annulus_threshold(t, n);
            std::vector<Rational> right;
            for (std::size_t i = 0; i < all.size(); ++i)
                if (dist[i] >= threshold) right.push_back(all[i]);
            result[n][beta] = same_set(left, std::move(right));
        }
    }
    return result;
}

}  // namespace cbkit
