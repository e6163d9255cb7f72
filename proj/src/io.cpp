#include "cbkit/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "cbkit/errors.hpp"

namespace cbkit::io {

namespace {

const RadiusSchedule kDefaultSchedule = RadiusSchedule::geometric(Rational(1, 2));

Json natural_to_json(const Natural& n) {
    if (n.fits_ulong_p()) return Json(n.get_ui());
    return Json(n.get_str());
}

Natural natural_from_json(const Json& j, const char* field) {
    if (j.is_number_unsigned()) return Natural(j.get<unsigned long>());
    if (j.is_string()) {
        Natural n;
        if (n.set_str(j.get<std::string>(), 10) == 0 && n >= 0) return n;
    }
    throw FormatError(std::string("field '") + field + "' must be a natural number");
}

const Json& field(const Json& j, const char* name) {
    if (!j.is_object()) throw FormatError("expected a JSON object");
    auto it = j.find(name);
    if (it == j.end()) throw FormatError(std::string("missing field '") + name + "'");
    return *it;
}

std::string string_field(const Json& j, const char* name) {
    const Json& v = field(j, name);
    if (!v.is_string()) throw FormatError(std::string("field '") + name + "' must be a string");
    return v.get<std::string>();
}

Ordinal ordinal_field(const Json& j, const char* name, ParseMode mode) {
    try {
        return parse_ordinal(string_field(j, name), mode);
    } catch (const SyntaxError& e) {
        throw FormatError(std::string("field '") + name + "': " + e.what());
    }
}

Json path_to_json(const NodePath& p) { return Json(format_path(p)); }

Json counterexample_to_json(const Counterexample& c) {
    Json j;
    j["check"] = c.check;
    j["node"] = path_to_json(c.node);
    j["annulus"] = c.annulus;
    j["child"] = c.child;
    j["point"] = format_rational(c.point);
    return j;
}

}  // namespace

std::string format_rational(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

Rational parse_rational(const std::string& text) {
    Rational q;
    if (text.empty() || q.set_str(text, 10) != 0 || q.get_den() == 0)
        throw FormatError("bad rational '" + text + "'");
    q.canonicalize();
    return q;
}

Json to_json(const CbChar& s) {
    Json j;
    j["rank"] = format_ordinal(s.rank);
    j["count"] = natural_to_json(s.count);
    return j;
}

CbChar char_from_json(const Json& j, ParseMode mode) {
    Ordinal rank = ordinal_field(j, "rank", mode);
    Natural count = natural_from_json(field(j, "count"), "count");
    try {
        return CbChar::make(std::move(rank), std::move(count));
    } catch (const Undefined& e) {
        throw FormatError(e.what());
    }
}

Json to_json(const Cardinality& c) {
    Json j;
    if (const auto* f = std::get_if<Finite>(&c)) {
        j["kind"] = "finite";
        j["n"] = natural_to_json(f->n);
    } else if (std::holds_alternative<Aleph0>(c)) {
        j["kind"] = "aleph0";
    } else {
        j["kind"] = "aleph1";
    }
    return j;
}

Json to_json(const ClusterTree& t) {
    Json j;
    j["center"] = format_rational(t.center);
    j["radius"] = format_rational(t.radius);
    j["rank"] = format_ordinal(t.rank);
    Json children = Json::array();
    for (const auto& c : t.children) children.push_back(to_json(c));
    j["children"] = std::move(children);
    if (t.tail) {
        Json tail;
        tail["next_index"] = t.tail->next_index;
        tail["generator"] = t.tail->generator == TailGenerator::limit ? "limit" : "successor";
        if (t.tail->stage != 0) tail["stage"] = t.tail->stage;
        if (!(t.tail->radius_schedule == kDefaultSchedule))
            tail["radius_schedule"] = t.tail->radius_schedule.to_string();
        if (t.tail->side_rule != SideRule::right) tail["side_rule"] = to_string(t.tail->side_rule);
        j["tail"] = std::move(tail);
    }
    return j;
}

ClusterTree tree_from_json(const Json& j, ParseMode mode) {
    ClusterTree t;
    t.center = parse_rational(string_field(j, "center"));
    t.radius = parse_rational(string_field(j, "radius"));
    if (t.radius <= 0) throw FormatError("radius must be positive");
    t.rank = ordinal_field(j, "rank", mode);
    if (auto it = j.find("children"); it != j.end()) {
        if (!it->is_array()) throw FormatError("'children' must be an array");
        for (const auto& c : *it) t.children.push_back(tree_from_json(c, mode));
    }
    if (auto it = j.find("tail"); it != j.end() && !it->is_null()) {
        TailSpec tail;
        const Json& next = field(*it, "next_index");
        if (!next.is_number_unsigned()) throw FormatError("'next_index' must be a natural number");
        tail.next_index = next.get<std::uint64_t>();
        const std::string gen = string_field(*it, "generator");
        if (gen == "successor") tail.generator = TailGenerator::successor;
        else if (gen == "limit") tail.generator = TailGenerator::limit;
        else throw FormatError("unknown generator '" + gen + "'");
        if (auto s = it->find("stage"); s != it->end()) {
            if (!s->is_number_unsigned()) throw FormatError("'stage' must be a natural number");
            tail.stage = s->get<std::uint64_t>();
        }
        if (auto s = it->find("radius_schedule"); s != it->end())
            tail.radius_schedule = RadiusSchedule::parse(s->get<std::string>());
        if (auto s = it->find("side_rule"); s != it->end())
            tail.side_rule = parse_side_rule(s->get<std::string>());
        t.tail = tail;
    }
    if (t.rank.is_zero() != t.is_leaf())
        throw FormatError("node at " + format_rational(t.center) +
                          ": rank 0 exactly when there are no children and no tail");
    return t;
}

Json to_json(const ClusterForest& f) {
    if (f.size() == 1) return to_json(f.front());
    Json arr = Json::array();
    for (const auto& t : f) arr.push_back(to_json(t));
    return arr;
}

ClusterForest forest_from_json(const Json& j, ParseMode mode) {
    ClusterForest f;
    if (j.is_array()) {
        for (const auto& t : j) f.push_back(tree_from_json(t, mode));
    } else {
        f.push_back(tree_from_json(j, mode));
    }
    return f;
}

Json to_json(const GeometryReport& g) {
    Json j;
    std::size_t failing = 0;
    Json violations = Json::array();
    for (const auto& a : g.annuli) {
        if (a.ok()) continue;
        ++failing;
        if (violations.size() < 32) {
            Json v;
            v["node"] = path_to_json(a.node);
            v["n"] = a.n;
            v["claim1_ok"] = a.claim1_ok;
            v["claim2_ok"] = a.claim2_ok;
            v["claim3_ok"] = a.claim3_ok;
            if (a.counterexample) v["counterexample"] = counterexample_to_json(*a.counterexample);
            violations.push_back(std::move(v));
        }
    }
    j["annuli_checked"] = g.annuli.size();
    j["annuli_failing"] = failing;
    j["radii_ok"] = g.radii_ok;
    j["containment_ok"] = g.containment_ok;
    j["disjoint_ok"] = g.disjoint_ok;
    Json structural = Json::array();
    for (const auto& c : g.structural) structural.push_back(counterexample_to_json(c));
    j["structural"] = std::move(structural);
    j["annulus_violations"] = std::move(violations);
    if (auto c = g.first_counterexample()) j["counterexample"] = counterexample_to_json(*c);
    j["ok"] = g.ok();
    return j;
}

Json to_json(const RankAudit& a) {
    Json j;
    j["ok"] = a.ok;
    if (a.ok) {
        j["characteristic"] = to_json(a.characteristic);
    } else {
        j["problem"] = a.problem;
        j["node"] = path_to_json(a.where);
    }
    return j;
}

void write_csv(std::ostream& os, const PointCloud& cloud) {
    os << "point,den_path\n";
    for (std::size_t i = 0; i < cloud.points.size(); ++i)
        os << format_rational(cloud.points[i]) << ',' << format_path(cloud.provenance[i]) << '\n';
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::size_t parse_count(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw FormatError("'" + key + "' must be a natural number, got '" + value + "'");
    }
}

}  // namespace

RealizationConfig parse_config(std::istream& in, RealizationConfig cfg) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw FormatError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "children_per_node") cfg.children_per_node = parse_count(key, value);
        else if (key == "depth") cfg.depth = parse_count(key, value);
        else if (key == "radius_schedule") cfg.radius_schedule = RadiusSchedule::parse(value);
        else if (key == "side_rule") cfg.side_rule = parse_side_rule(value);
        else if (key == "ambient") {
            if (value != "rational_line") throw FormatError("unsupported ambient '" + value + "'");
        } else {
            throw FormatError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    try {
        cfg.validate();
    } catch (const Undefined& e) {
        throw FormatError(e.what());
    }
    return cfg;
}

std::string format_config(const RealizationConfig& cfg) {
    std::ostringstream os;
    os << "children_per_node = " << cfg.children_per_node << '\n'
       << "depth = " << cfg.depth << '\n'
       << "radius_schedule = " << cfg.radius_schedule.to_string() << '\n'
       << "side_rule = " << to_string(cfg.side_rule) << '\n'
       << "ambient = rational_line\n";
    return os.str();
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw FormatError("cannot write " + tmp.string());
        out << contents;
        if (!out.flush()) throw FormatError("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace cbkit::io
