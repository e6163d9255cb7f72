#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "cbkit/errors.hpp"
#include "cbkit/io.hpp"
#include "cbkit/oracle.hpp"
#include "cbkit/ordinal.hpp"
#include "cbkit/realize.hpp"
#include "cbkit/space.hpp"

namespace cbkit::cli {

namespace {

using io::Json;

struct Settings {
    bool strict = false;

    // ord
    std::string ord_op;
    std::vector<std::string> ord_args;

    // space
    std::string rank = "0";
    std::string count = "0";
    std::string beta = "0";
    std::vector<std::string> char_files;

    // realize
    std::string realize_rank;
    std::uint64_t realize_count = 1;
    std::string config_path;
    std::optional<std::size_t> children;
    std::optional<std::size_t> depth;
    std::optional<std::string> schedule;
    std::optional<std::string> side;
    std::string tree_out;
    std::string points_out;
    std::optional<std::size_t> points_depth;
    std::optional<std::size_t> points_width;

    // verify
    std::vector<std::string> verify_files;
    std::string report_path;
    std::uint64_t stage_cap = 32;
    std::uint64_t restriction_n = 3;
    std::uint64_t restriction_beta = 3;

    // census / classcount
    std::string rank_bound;
    std::string count_bound;
    std::size_t max_ranks = 50;
    std::size_t census_cap = 100000;
    std::string ambient_kind;
    std::string ambient_n = "0";
};

ParseMode parse_mode(const Settings& s) { return s.strict ? ParseMode::strict : ParseMode::normalizing; }

Natural parse_natural(const std::string& text, const char* what) {
    Natural n;
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos || n.set_str(text, 10) != 0)
        throw FormatError(std::string(what) + " must be a natural number, got '" + text + "'");
    return n;
}

const char* ordering_name(std::strong_ordering c) {
    if (c < 0) return "Less";
    if (c > 0) return "Greater";
    return "Equal";
}

int cmd_ord(const Settings& s, std::ostream& out) {
    const auto mode = parse_mode(s);
    const auto& a = s.ord_args;
    auto need = [&](std::size_t n) {
        if (a.size() != n)
            throw FormatError("ord " + s.ord_op + " takes " + std::to_string(n) + " argument(s)");
    };
    if (s.ord_op == "add" || s.ord_op == "mul" || s.ord_op == "cmp" || s.ord_op == "sub") {
        need(2);
        const Ordinal x = parse_ordinal(a[0], mode);
        const Ordinal y = parse_ordinal(a[1], mode);
        if (s.ord_op == "add") out << add(x, y) << '\n';
        else if (s.ord_op == "mul") out << mul(x, y) << '\n';
        else if (s.ord_op == "cmp") out << ordering_name(compare(x, y)) << '\n';
        else out << left_sub(x, y) << '\n';
    } else if (s.ord_op == "fs") {
        need(2);
        const Ordinal lambda = parse_ordinal(a[0], mode);
        const Natural n = parse_natural(a[1], "index");
        if (!n.fits_ulong_p()) throw FormatError("index too large");
        out << fundamental_seq(lambda, n.get_ui()) << '\n';
    } else if (s.ord_op == "pow") {
        need(1);
        out << omega_pow(parse_ordinal(a[0], mode)) << '\n';
    } else if (s.ord_op == "norm") {
        need(1);
        out << parse_ordinal(a[0], mode) << '\n';
    } else {
        throw FormatError("unknown ord operation '" + s.ord_op + "'");
    }
    return ok;
}

CbChar inline_char(const Settings& s) {
    try {
        return CbChar::make(parse_ordinal(s.rank, parse_mode(s)), parse_natural(s.count, "--count"));
    } catch (const Undefined& e) {
        throw FormatError(e.what());
    }
}

CbChar char_file(const Settings& s, const std::string& path) {
    return io::char_from_json(io::read_json_file(path), parse_mode(s));
}

int cmd_space(const Settings& s, const std::string& action, std::ostream& out) {
    if (action == "derive") {
        out << io::to_json(derivative(inline_char(s))).dump() << '\n';
    } else if (action == "steps") {
        out << io::to_json(derivative_steps(inline_char(s), parse_ordinal(s.beta, parse_mode(s)))).dump()
            << '\n';
    } else if (action == "union" || action == "homeo") {
        if (s.char_files.size() != 2) throw FormatError("space " + action + " takes two files");
        const CbChar a = char_file(s, s.char_files[0]);
        const CbChar b = char_file(s, s.char_files[1]);
        if (action == "union") out << io::to_json(union_char(a, b)).dump() << '\n';
        else out << (homeomorphic(a, b) ? "true" : "false") << '\n';
    }
    return ok;
}

RealizationConfig realization_config(const Settings& s) {
    RealizationConfig cfg;
    if (!s.config_path.empty()) {
        std::ifstream in(s.config_path);
        if (!in) throw FormatError("cannot open " + s.config_path);
        cfg = io::parse_config(in);
    }
    if (s.children) cfg.children_per_node = *s.children;
    if (s.depth) cfg.depth = *s.depth;
    if (s.schedule) cfg.radius_schedule = RadiusSchedule::parse(*s.schedule);
    if (s.side) cfg.side_rule = parse_side_rule(*s.side);
    if (cfg.children_per_node < 2) throw FormatError("children_per_node must be at least 2");
    return cfg;
}

int cmd_realize(const Settings& s, std::ostream& out) {
    const RealizationConfig cfg = realization_config(s);
    const Ordinal alpha = parse_ordinal(s.realize_rank, parse_mode(s));
    if (s.realize_count == 0) throw FormatError("--count must be at least 1");
    if (!s.tree_out.empty() && s.tree_out == s.points_out)
        throw FormatError("tree and point outputs must be different files");
    const ClusterForest forest = realize_multi(alpha, s.realize_count, cfg);
    const std::string tree_text = io::to_json(forest).dump(1) + "\n";
    const PointCloud cloud = materialize(forest, s.points_depth.value_or(cfg.depth),
                                         s.points_width.value_or(cfg.children_per_node));
    std::ostringstream csv;
    io::write_csv(csv, cloud);

    if (s.tree_out.empty()) {
        out << tree_text;
        return ok;
    }
    io::write_file_atomic(s.tree_out, tree_text);
    std::string points = s.points_out;
    if (points.empty()) points = std::filesystem::path(s.tree_out).replace_extension(".csv").string();
    io::write_file_atomic(points, csv.str());
    Json summary;
    summary["tree"] = s.tree_out;
    summary["points"] = points;
    summary["nodes"] = node_count(forest);
    summary["characteristic"] = io::to_json(CbChar{alpha, Natural(static_cast<unsigned long>(s.realize_count))});
    out << summary.dump() << '\n';
    return ok;
}

struct VerifyOutcome {
    Json report;
    int code = ok;
};

VerifyOutcome verify_one(const Settings& s, const std::string& path) {
    VerifyOutcome v;
    v.report["tree"] = path;
    ClusterForest forest;
    try {
        forest = io::forest_from_json(io::read_json_file(path), parse_mode(s));
    } catch (const Error& e) {
        v.report["error"] = e.what();
        v.report["ok"] = false;
        v.code = input_error;
        return v;
    }

    bool all_ok = true;
    const GeometryReport geometry = geometry_check(forest);
    v.report["geometry"] = io::to_json(geometry);
    all_ok = all_ok && geometry.ok();

    const RankAudit audit = audit_ranks(forest);
    v.report["rank_audit"] = io::to_json(audit);
    v.report["char_expected"] = audit.ok ? io::to_json(audit.characteristic) : Json(nullptr);
    all_ok = all_ok && audit.ok;

    const bool finite_ranks =
        std::all_of(forest.begin(), forest.end(), [](const ClusterTree& t) { return t.rank.is_finite(); });
    if (finite_ranks) {
        try {
            const CbChar pruned = char_by_pruning(forest, PruneOptions{s.stage_cap});
            v.report["char_pruned"] = io::to_json(pruned);
            all_ok = all_ok && audit.ok && pruned == audit.characteristic;
        } catch (const StageBudgetExceeded& e) {
            v.report["char_pruned"] = nullptr;
            v.report["char_pruned_error"] = e.what();
            all_ok = false;
        }
    } else {
        v.report["char_pruned"] = nullptr;
    }

    Json restriction;
    std::size_t checked = 0;
    Json failed = Json::array();
    for (std::uint64_t k = 0; k < forest.size(); ++k) {
        const ClusterTree& t = forest[k];
        const auto grid = restriction_grid(t, s.restriction_n, s.restriction_beta);
        for (std::uint64_t n = 0; n < grid.size(); ++n) {
            for (std::uint64_t beta = 0; beta < grid[n].size(); ++beta) {
                ++checked;
                if (!grid[n][beta]) {
                    Json f;
                    f["tree"] = k;
                    f["n"] = n;
                    f["beta"] = beta;
                    failed.push_back(std::move(f));
                }
            }
        }
    }
    restriction["checked"] = checked;
    restriction["failed"] = failed;
    all_ok = all_ok && failed.empty();
    v.report["restriction"] = std::move(restriction);

    v.report["ok"] = all_ok;
    v.code = all_ok ? ok : verification_failed;
    return v;
}

int cmd_verify(const Settings& s, std::ostream& out, std::ostream& err) {
    // Directories stand for the *.json files directly inside them.
    std::vector<std::string> files;
    for (const auto& arg : s.verify_files) {
        std::error_code ec;
        if (!std::filesystem::is_directory(arg, ec)) {
            files.push_back(arg);
            continue;
        }
        std::vector<std::string> found;
        for (const auto& entry : std::filesystem::directory_iterator(arg))
            if (entry.is_regular_file() && entry.path().extension() == ".json")
                found.push_back(entry.path().string());
        std::sort(found.begin(), found.end());
        files.insert(files.end(), found.begin(), found.end());
    }

    const std::size_t width = std::max(1u, std::thread::hardware_concurrency());
    std::vector<VerifyOutcome> results;
    for (std::size_t begin = 0; begin < files.size(); begin += width) {
        std::vector<std::future<VerifyOutcome>> jobs;
        for (std::size_t i = begin; i < std::min(files.size(), begin + width); ++i)
            jobs.push_back(std::async(std::launch::async, [&s, f = files[i]] { return verify_one(s, f); }));
        for (auto& j : jobs) results.push_back(j.get());
    }

    int code = files.empty() ? input_error : ok;
    if (files.empty()) err << "verify: no tree files found\n";
    for (const auto& r : results) code = std::max(code, r.code);
    Json doc;
    if (results.size() == 1 && s.verify_files.size() == 1 && files.size() == 1 &&
        files.front() == s.verify_files.front()) {
        doc = results.front().report;
    } else {
        doc = Json::array();
        for (auto& r : results) doc.push_back(std::move(r.report));
    }
    const std::string text = doc.dump(2) + "\n";
    if (!s.report_path.empty()) io::write_file_atomic(s.report_path, text);
    out << text;
    return code;
}

int cmd_census(const Settings& s, std::ostream& out) {
    const Ordinal bound = parse_ordinal(s.rank_bound, parse_mode(s));
    const Natural count = parse_natural(s.count_bound, "--count-bound");
    const auto classes = census(bound, count, CensusLimits{s.max_ranks, s.census_cap});
    Json arr = Json::array();
    for (const auto& c : classes) arr.push_back(io::to_json(c));
    out << arr.dump() << '\n';
    return ok;
}

int cmd_classcount(const Settings& s, std::ostream& out) {
    AmbientDescriptor e;
    if (s.ambient_kind == "finite") e = FinitePolish{parse_natural(s.ambient_n, "n")};
    else if (s.ambient_kind == "countable") e = CountablyInfinitePolish{};
    else if (s.ambient_kind == "uncountable") e = UncountablePolish{};
    else throw FormatError("ambient must be finite, countable or uncountable");
    out << io::to_json(class_count(e)).dump() << '\n';
    return ok;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    Settings s;
    if (const char* env = std::getenv("CBKIT_STRICT"); env && std::string(env) == "1") s.strict = true;

    CLI::App app{"Cantor-Bendixson toolkit: ordinals, characteristics, realizations, verification", "cbkit"};
    app.require_subcommand(1);
    app.add_flag("--strict", s.strict, "Reject non-canonical ordinal text");

    auto* ord = app.add_subcommand("ord", "Ordinal arithmetic: add, mul, cmp, sub, fs, pow, norm");
    ord->add_option("op", s.ord_op, "Operation")->required()
        ->check(CLI::IsMember({"add", "mul", "cmp", "sub", "fs", "pow", "norm"}));
    ord->add_option("args", s.ord_args, "Operands");

    auto* space = app.add_subcommand("space", "Characteristic calculus");
    space->require_subcommand(1);
    std::string space_action;
    auto add_inline = [&](CLI::App* c) {
        c->add_option("--rank", s.rank, "Rank (ordinal text)")->required();
        c->add_option("--count", s.count, "Count")->required();
    };
    auto* derive = space->add_subcommand("derive", "Derived-set characteristic");
    add_inline(derive);
    auto* steps = space->add_subcommand("steps", "beta-th derivative characteristic");
    add_inline(steps);
    steps->add_option("--beta", s.beta, "Number of steps (ordinal text)")->required();
    auto* uni = space->add_subcommand("union", "Characteristic of a disjoint union");
    uni->add_option("files", s.char_files, "Two characteristic JSON files")->required()->expected(2);
    auto* homeo = space->add_subcommand("homeo", "Homeomorphism test");
    homeo->add_option("files", s.char_files, "Two characteristic JSON files")->required()->expected(2);

    auto* realize = app.add_subcommand("realize", "Build a set with characteristic (rank, count)");
    realize->add_option("--rank", s.realize_rank, "Rank (ordinal text)")->required();
    realize->add_option("--count", s.realize_count, "Number of clusters p")->default_val(1);
    realize->add_option("--config", s.config_path, "key = value config file");
    realize->add_option("--children", s.children, "Stored children per node");
    realize->add_option("--depth", s.depth, "Stored depth");
    realize->add_option("--schedule", s.schedule, "Radius schedule: geometric:q | harmonic");
    realize->add_option("--side", s.side, "Side rule: right | left | alternate");
    realize->add_option("--out", s.tree_out, "Tree JSON output (stdout when omitted)");
    realize->add_option("--points", s.points_out, "Point CSV output (default: --out with .csv)");
    realize->add_option("--points-depth", s.points_depth, "Depth budget for the point dump");
    realize->add_option("--points-width", s.points_width, "Width budget for the point dump");

    auto* verify = app.add_subcommand("verify", "Check tree files; exit 1 on any failed check");
    verify->add_option("trees", s.verify_files, "Tree JSON files")->required();
    verify->add_option("--report", s.report_path, "Also write the report here");
    verify->add_option("--stage-cap", s.stage_cap, "Derived-set step cap")->default_val(32)
        ->check(CLI::PositiveNumber);
    verify->add_option("--restriction-n", s.restriction_n, "Largest annulus index checked")->default_val(3);
    verify->add_option("--restriction-beta", s.restriction_beta, "Largest derivative checked")->default_val(3);

    auto* cen = app.add_subcommand("census", "Classes with rank < bound and count <= bound");
    cen->add_option("--rank-bound", s.rank_bound, "Rank bound (ordinal text)")->required();
    cen->add_option("--count-bound", s.count_bound, "Count bound")->required();
    cen->add_option("--max-ranks", s.max_ranks, "Ranks listed under an infinite bound")->default_val(50)
        ->check(CLI::PositiveNumber);
    cen->add_option("--cap", s.census_cap, "Maximum number of classes")->default_val(100000)
        ->check(CLI::PositiveNumber);

    auto* cc = app.add_subcommand("classcount", "Number of compact countable classes in a Polish space");
    cc->add_option("kind", s.ambient_kind, "finite | countable | uncountable")->required();
    cc->add_option("n", s.ambient_n, "Cardinality of a finite space");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : input_error;
    }

    try {
        if (ord->parsed()) return cmd_ord(s, out);
        if (space->parsed()) {
            for (auto* c : {derive, steps, uni, homeo})
                if (c->parsed()) space_action = c->get_name();
            return cmd_space(s, space_action, out);
        }
        if (realize->parsed()) return cmd_realize(s, out);
        if (verify->parsed()) return cmd_verify(s, out, err);
        if (cen->parsed()) return cmd_census(s, out);
        if (cc->parsed()) return cmd_classcount(s, out);
    } catch (const SyntaxError& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    } catch (const NotCanonical& e) {
        err << "error: NotCanonical: " << e.what() << '\n';
        return input_error;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    } catch (const Undefined& e) {
        err << "error: Undefined: " << e.what() << '\n';
        return domain_error;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return domain_error;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    }
    return input_error;
}

}  // namespace cbkit::cli
