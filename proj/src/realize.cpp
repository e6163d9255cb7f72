#include "cbkit/realize.hpp"

#include <algorithm>

#include "cbkit/errors.hpp"

namespace cbkit {

RadiusSchedule RadiusSchedule::geometric(Rational ratio) {
    ratio.canonicalize();
    if (ratio <= 0 || ratio >= 1) throw Undefined("geometric ratio must lie in (0, 1)");
    return RadiusSchedule(Kind::geometric, std::move(ratio));
}

RadiusSchedule RadiusSchedule::harmonic() { return RadiusSchedule(Kind::harmonic, Rational(0)); }

Rational RadiusSchedule::distance(const Rational& r, std::int64_t n) const {
    if (n < -1) throw Undefined("radius index below -1");
    if (n == -1) return r;
    if (kind_ == Kind::harmonic) return Rational(r / (n + 2));
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), ratio_.get_num_mpz_t(), static_cast<unsigned long>(n + 1));
    mpz_pow_ui(den.get_mpz_t(), ratio_.get_den_mpz_t(), static_cast<unsigned long>(n + 1));
    Rational q(num, den);
    q.canonicalize();
    return Rational(r * q);
}

std::string RadiusSchedule::to_string() const {
    if (kind_ == Kind::harmonic) return "harmonic";
    return "geometric:" + ratio_.get_str();
}

RadiusSchedule RadiusSchedule::parse(const std::string& text) {
    if (text == "harmonic") return harmonic();
    const std::string prefix = "geometric:";
    if (text.rfind(prefix, 0) == 0) {
        Rational q;
        if (q.set_str(text.substr(prefix.size()), 10) != 0)
            throw FormatError("bad geometric ratio in '" + text + "'");
        return geometric(q);
    }
    throw FormatError("unknown radius schedule '" + text + "'");
}

std::string to_string(SideRule s) {
    switch (s) {
        case SideRule::right: return "right";
        case SideRule::left: return "left";
        case SideRule::alternate: return "alternate";
    }
    return "right";
}

SideRule parse_side_rule(const std::string& text) {
    if (text == "right") return SideRule::right;
    if (text == "left") return SideRule::left;
    if (text == "alternate") return SideRule::alternate;
    throw FormatError("unknown side rule '" + text + "'");
}

void RealizationConfig::validate() const {
    if (children_per_node < 2) throw Undefined("children_per_node must be at least 2");
}

Rational child_distance(const ClusterTree& parent, std::int64_t n) {
    if (!parent.tail) throw Undefined("node has no child generator");
    return parent.tail->radius_schedule.distance(parent.radius, n);
}

ClusterTree generate_child(const ClusterTree& parent, std::uint64_t n) {
    if (!parent.tail) throw Undefined("node has no child generator");
    const TailSpec& tail = *parent.tail;
    const auto i = static_cast<std::int64_t>(n);
    const Rational prev = child_distance(parent, i - 1);
    const Rational here = child_distance(parent, i);
    const Rational next = child_distance(parent, i + 1);

    ClusterTree child;
    const bool left = tail.side_rule == SideRule::left ||
                      (tail.side_rule == SideRule::alternate && n % 2 == 1);
    child.center = left ? Rational(parent.center - here) : Rational(parent.center + here);
    child.radius = Rational(std::min(Rational(prev - here), Rational(here - next)) / 2);
    child.rank = child_rank(parent, n);
    if (!child.rank.is_zero()) {
        child.tail = TailSpec{0,
                              child.rank.is_limit() ? TailGenerator::limit : TailGenerator::successor,
                              0, tail.radius_schedule, tail.side_rule};
    }
    return child;
}

Ordinal child_rank(const ClusterTree& parent, std::uint64_t n) {
    if (!parent.tail) throw Undefined("node has no child generator");
    return parent.tail->generator == TailGenerator::successor ? parent.rank.predecessor()
                                                              : fundamental_seq(parent.rank, n);
}

namespace {

void expand(ClusterTree& node, std::size_t depth_left, std::size_t width) {
    if (depth_left == 0 || !node.tail) return;
    node.children.reserve(width);
    for (std::uint64_t n = 0; n < width; ++n) {
        ClusterTree child = generate_child(node, n);
        expand(child, depth_left - 1, width);
        node.children.push_back(std::move(child));
    }
    node.tail->next_index = width;
}

ClusterTree seed(const Rational& z, const Rational& r, const Ordinal& alpha,
                 const RealizationConfig& cfg) {
    ClusterTree root{z, r, alpha, {}, std::nullopt};
    if (!alpha.is_zero()) {
        root.tail = TailSpec{0, alpha.is_limit() ? TailGenerator::limit : TailGenerator::successor, 0,
                             cfg.radius_schedule, cfg.side_rule};
    }
    return root;
}

}  // namespace

ClusterTree realize_cluster(const Rational& z, const Rational& r, const Ordinal& alpha,
                            const RealizationConfig& cfg) {
    if (r <= 0) throw InvalidRadius("radius must be positive, got " + r.get_str());
    cfg.validate();
    ClusterTree root = seed(z, r, alpha, cfg);
    expand(root, cfg.depth, cfg.children_per_node);
    return root;
}

ClusterForest realize_multi(const Ordinal& alpha, std::uint64_t p, const RealizationConfig& cfg) {
    if (p == 0) throw Undefined("realize_multi needs at least one cluster");
    std::vector<Rational> centers;
    for (std::uint64_t k = 0; k < p; ++k) centers.emplace_back(static_cast<unsigned long>(k));
    // r = 1/2 * min pairwise distance; a lone cluster gets the same radius.
    Rational r(1, 2);
    if (p > 1) {
        Rational closest = abs(centers[1] - centers[0]);
        for (std::size_t i = 0; i < centers.size(); ++i)
            for (std::size_t j = i + 1; j < centers.size(); ++j)
                closest = std::min(closest, Rational(abs(centers[i] - centers[j])));
        r = closest / 2;
    }
    ClusterForest forest;
    forest.reserve(p);
    for (const auto& c : centers) forest.push_back(realize_cluster(c, r, alpha, cfg));
    return forest;
}

ClusterTree embed_ordinal(const Ordinal& alpha, const RealizationConfig& cfg) {
    return realize_multi(alpha, 1, cfg).front();
}

std::string format_path(const NodePath& path) {
    std::string out;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) out += '.';
        out += std::to_string(path[i]);
    }
    return out;
}

namespace {

void collect(const ClusterTree& node, NodePath& path, std::size_t depth_left, std::size_t width,
             std::vector<std::pair<Rational, NodePath>>& out) {
    out.emplace_back(node.center, path);
    if (depth_left == 0) return;
    const bool can_generate = node.tail && node.tail->stage == 0;
    for (std::uint64_t n = 0; n < width; ++n) {
        path.push_back(n);
        if (n < node.children.size()) {
            collect(node.children[n], path, depth_left - 1, width, out);
        } else if (can_generate && n >= node.tail->next_index) {
            collect(generate_child(node, n), path, depth_left - 1, width, out);
        } else {
            path.pop_back();
            break;
        }
        path.pop_back();
    }
}

}  // namespace

PointCloud materialize(const ClusterForest& f, std::size_t depth_budget, std::size_t width_budget) {
    std::vector<std::pair<Rational, NodePath>> found;
    NodePath path;
    for (std::uint64_t k = 0; k < f.size(); ++k) {
        path.assign(1, k);
        collect(f[k], path, depth_budget, width_budget, found);
    }
    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    PointCloud cloud;
    for (auto& [point, where] : found) {
        if (!cloud.points.empty() && cloud.points.back() == point) continue;
        cloud.points.push_back(point);
        cloud.provenance.push_back(std::move(where));
    }
    return cloud;
}

PointCloud materialize(const ClusterTree& t, std::size_t depth_budget, std::size_t width_budget) {
    return materialize(ClusterForest{t}, depth_budget, width_budget);
}

std::size_t node_count(const ClusterTree& t) {
    std::size_t n = 1;
    for (const auto& c : t.children) n += node_count(c);
    return n;
}

std::size_t node_count(const ClusterForest& f) {
    std::size_t n = 0;
    for (const auto& t : f) n += node_count(t);
    return n;
}

}  // namespace cbkit
