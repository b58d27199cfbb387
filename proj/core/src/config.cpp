#include "loopgas/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "loopgas/version.hpp"

namespace loopgas {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& allowed) {
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key))
            fail("unknown key '" + key + "' at " + (path.empty() ? "/" : path));
}

const json& require(const json& obj, const std::string& path, const std::string& key) {
    const auto it = obj.find(key);
    if (it == obj.end())
        fail("missing required key '" + key + "' at " + (path.empty() ? "/" : path));
    return *it;
}

Vec parse_vec(const json& a, int dim, const std::string& path) {
    if (!a.is_array() || static_cast<int>(a.size()) != dim)
        fail("expected a " + std::to_string(dim) + "-vector at " + path);
    Vec v;
    for (const auto& x : a) v.push_back(x.get<double>());
    return v;
}

BoxRegion parse_box(const json& b, int dim, const std::string& path) {
    check_keys(b, path, {"center", "half_side"});
    return BoxRegion::cube(parse_vec(require(b, path, "center"), dim, path + "/center"),
                           require(b, path, "half_side").get<double>());
}

json render_box(const BoxRegion& b) {
    return json{{"center", b.center}, {"half_side", b.half_side}};
}

ClassicalConfig parse_points(const json& a, int dim, const std::string& path) {
    ClassicalConfig cc;
    for (const auto& p : a) cc.points.push_back(parse_vec(p, dim, path));
    return cc;
}

PotentialModel parse_potential(const json& p, const std::string& path) {
    check_keys(p, path, {"family", "core_r", "range_R", "depth", "table", "table_file"});
    const std::string family = require(p, path, "family").get<std::string>();
    const double r = require(p, path, "core_r").get<double>();
    const double R = require(p, path, "range_R").get<double>();
    if (family == "hard_core") return PotentialModel::hard_core(r, R);
    if (family == "smooth_well")
        return PotentialModel::smooth_well(r, R, require(p, path, "depth").get<double>());
    if (family == "tabulated") {
        std::vector<double> s, v;
        if (p.contains("table_file")) {
            std::ifstream in(p["table_file"].get<std::string>());
            if (!in) fail("cannot open table_file at " + path);
            double a, b;
            while (in >> a >> b) {
                s.push_back(a);
                v.push_back(b);
            }
        } else {
            for (const auto& row : require(p, path, "table")) {
                if (!row.is_array() || row.size() != 2)
                    fail("table rows must be [distance, value] pairs at " + path);
                s.push_back(row[0].get<double>());
                v.push_back(row[1].get<double>());
            }
        }
        return PotentialModel::tabulated(r, R, std::move(s), std::move(v));
    }
    fail("unknown potential family '" + family + "' at " + path);
}

json render_potential(const PotentialModel& V) {
    json p{{"core_r", V.core_r()}, {"range_R", V.range_R()}};
    switch (V.family()) {
        case PotentialModel::Family::hard_core:
            p["family"] = "hard_core";
            break;
        case PotentialModel::Family::smooth_well:
            p["family"] = "smooth_well";
            p["depth"] = V.well_depth();
            break;
        case PotentialModel::Family::tabulated: {
            p["family"] = "tabulated";
            json table = json::array();
            for (std::size_t i = 0; i < V.table_s().size(); ++i)
                table.push_back(json::array({V.table_s()[i], V.table_v()[i]}));
            p["table"] = table;
            break;
        }
    }
    return p;
}

Loop parse_loop(const json& l, int dim, int M, const std::string& path) {
    check_keys(l, path, {"k", "positions"});
    const int k = require(l, path, "k").get<int>();
    const json& pos = require(l, path, "positions");
    if (static_cast<int>(pos.size()) != (k * M + 1) * dim)
        fail("loop positions must have (k*M+1)*dim entries at " + path);
    Loop loop;
    loop.k = k;
    loop.M = M;
    loop.dim = dim;
    for (const auto& x : pos) loop.pos.push_back(x.get<double>());
    if (!loop.closed()) fail("loop positions do not close at " + path);
    return loop;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        // Translate the byte offset into a line anchor.
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        fail("JSON syntax error at line " + std::to_string(line) + ", column " +
             std::to_string(col) + ": " + e.what());
    }
    if (!root.is_object()) fail("config root must be an object");
    check_keys(root, "",
               {"schema_version", "dim", "box", "inner_box", "z", "beta",
                "slices_per_period", "k_max", "potential", "boundary", "moves",
                "sweeps", "burn_in", "thinning", "seed", "chains",
                "checkpoint_interval", "output_dir", "report_format", "validators",
                "workers", "density_cell", "box1", "test_pairs", "n_z_draws",
                "n_bridge_draws", "test_loop_count", "oracle"});
    const int schema = require(root, "", "schema_version").get<int>();
    if (schema != kConfigSchemaVersion)
        fail("unsupported schema_version " + std::to_string(schema));

    RunConfig c;
    const int dim = require(root, "", "dim").get<int>();
    if (dim < 1) fail("dim must be >= 1");
    c.params.box = parse_box(require(root, "", "box"), dim, "/box");
    if (root.contains("inner_box"))
        c.params.inner_box = parse_box(root["inner_box"], dim, "/inner_box");
    c.params.z = require(root, "", "z").get<double>();
    c.params.beta = require(root, "", "beta").get<double>();
    c.params.M = require(root, "", "slices_per_period").get<int>();
    c.params.k_max = require(root, "", "k_max").get<int>();
    c.params.V = parse_potential(require(root, "", "potential"), "/potential");
    if (root.contains("boundary")) {
        const json& b = root["boundary"];
        check_keys(b, "/boundary", {"type", "points", "loops", "truncation_half_side"});
        const std::string type = require(b, "/boundary", "type").get<std::string>();
        if (type == "points") {
            c.params.boundary_cc =
                parse_points(require(b, "/boundary", "points"), dim, "/boundary/points");
        } else if (type == "loops") {
            for (const auto& l : require(b, "/boundary", "loops"))
                c.params.boundary_lc.loops.push_back(
                    parse_loop(l, dim, c.params.M, "/boundary/loops"));
            if (b.contains("truncation_half_side"))
                c.params.truncation_box = BoxRegion::cube(
                    Vec(static_cast<std::size_t>(dim), 0.0),
                    b["truncation_half_side"].get<double>());
        } else if (type != "none") {
            fail("unknown boundary type '" + type + "'");
        }
    }
    if (root.contains("moves")) {
        const json& m = root["moves"];
        check_keys(m, "/moves", {"insert", "remove", "wiggle", "rek"});
        if (m.contains("insert")) c.params.moves.insert = m["insert"].get<double>();
        if (m.contains("remove")) c.params.moves.remove = m["remove"].get<double>();
        if (m.contains("wiggle")) c.params.moves.wiggle = m["wiggle"].get<double>();
        if (m.contains("rek")) c.params.moves.rek = m["rek"].get<double>();
    }
    c.params.sweeps = require(root, "", "sweeps").get<std::int64_t>();
    if (root.contains("burn_in")) c.params.burn_in = root["burn_in"].get<std::int64_t>();
    if (root.contains("thinning")) c.params.thinning = root["thinning"].get<std::int64_t>();
    c.params.seed = require(root, "", "seed").get<std::uint64_t>();
    if (root.contains("chains")) c.params.n_chains = root["chains"].get<int>();
    if (root.contains("checkpoint_interval"))
        c.params.checkpoint_interval = root["checkpoint_interval"].get<std::int64_t>();
    if (root.contains("output_dir")) c.output_dir = root["output_dir"].get<std::string>();
    if (root.contains("report_format")) {
        c.report_format = root["report_format"].get<std::string>();
        if (c.report_format != "delimited" && c.report_format != "records" &&
            c.report_format != "both")
            fail("report_format must be delimited, records or both");
    }
    if (root.contains("validators")) {
        for (const auto& v : root["validators"]) {
            const std::string name = v.get<std::string>();
            static const std::set<std::string> known{
                "ruelle", "kernel_bounds", "trace", "compatibility", "legality"};
            if (!known.count(name)) fail("unknown validator name '" + name + "'");
            c.validators.push_back(name);
        }
    }
    if (root.contains("workers")) c.workers = root["workers"].get<int>();
    if (root.contains("density_cell")) c.density_cell = root["density_cell"].get<double>();
    if (root.contains("box1")) c.box1 = parse_box(root["box1"], dim, "/box1");
    if (root.contains("test_pairs")) {
        for (const auto& pr : root["test_pairs"]) {
            check_keys(pr, "/test_pairs[]", {"x", "y"});
            c.test_pairs.emplace_back(
                parse_points(require(pr, "/test_pairs[]", "x"), dim, "/test_pairs[]/x"),
                parse_points(require(pr, "/test_pairs[]", "y"), dim, "/test_pairs[]/y"));
        }
    }
    if (root.contains("n_z_draws")) c.n_z_draws = root["n_z_draws"].get<int>();
    if (root.contains("n_bridge_draws"))
        c.n_bridge_draws = root["n_bridge_draws"].get<int>();
    if (root.contains("test_loop_count"))
        c.test_loop_count = root["test_loop_count"].get<int>();
    if (root.contains("oracle")) {
        const json& o = root["oracle"];
        check_keys(o, "/oracle", {"n_max", "k_max", "M", "grid"});
        if (o.contains("n_max")) c.oracle.n_max = o["n_max"].get<int>();
        if (o.contains("k_max")) c.oracle.k_max = o["k_max"].get<int>();
        if (o.contains("M")) c.oracle.M = o["M"].get<int>();
        if (o.contains("grid")) c.oracle.grid = o["grid"].get<int>();
    } else {
        c.oracle.M = c.params.M;
    }

    try {
        c.params.validate();
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
    return c;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string render_config(const RunConfig& c) {
    json root;
    root["schema_version"] = kConfigSchemaVersion;
    root["dim"] = c.params.box.dim;
    root["box"] = render_box(c.params.box);
    if (c.params.inner_box) root["inner_box"] = render_box(*c.params.inner_box);
    root["z"] = c.params.z;
    root["beta"] = c.params.beta;
    root["slices_per_period"] = c.params.M;
    root["k_max"] = c.params.k_max;
    root["potential"] = render_potential(c.params.V);
    json boundary;
    if (!c.params.boundary_cc.empty()) {
        boundary["type"] = "points";
        json pts = json::array();
        for (const Vec& p : c.params.boundary_cc.points) pts.push_back(p);
        boundary["points"] = pts;
    } else if (!c.params.boundary_lc.empty()) {
        boundary["type"] = "loops";
        json loops = json::array();
        for (const Loop& l : c.params.boundary_lc.loops)
            loops.push_back(json{{"k", l.k}, {"positions", l.pos}});
        boundary["loops"] = loops;
        if (c.params.truncation_box)
            boundary["truncation_half_side"] = c.params.truncation_box->half_side;
    } else {
        boundary["type"] = "none";
    }
    root["boundary"] = boundary;
    root["moves"] = json{{"insert", c.params.moves.insert},
                         {"remove", c.params.moves.remove},
                         {"wiggle", c.params.moves.wiggle},
                         {"rek", c.params.moves.rek}};
    root["sweeps"] = c.params.sweeps;
    root["burn_in"] = c.params.burn_in;
    root["thinning"] = c.params.thinning;
    root["seed"] = c.params.seed;
    root["chains"] = c.params.n_chains;
    root["checkpoint_interval"] = c.params.checkpoint_interval;
    root["output_dir"] = c.output_dir;
    root["report_format"] = c.report_format;
    root["validators"] = c.validators;
    root["workers"] = c.workers;
    root["density_cell"] = c.density_cell;
    if (c.box1) root["box1"] = render_box(*c.box1);
    if (!c.test_pairs.empty()) {
        json pairs = json::array();
        for (const auto& [x, y] : c.test_pairs) {
            json xs = json::array(), ys = json::array();
            for (const Vec& p : x.points) xs.push_back(p);
            for (const Vec& p : y.points) ys.push_back(p);
            pairs.push_back(json{{"x", xs}, {"y", ys}});
        }
        root["test_pairs"] = pairs;
    }
    root["n_z_draws"] = c.n_z_draws;
    root["n_bridge_draws"] = c.n_bridge_draws;
    root["test_loop_count"] = c.test_loop_count;
    root["oracle"] = json{{"n_max", c.oracle.n_max},
                          {"k_max", c.oracle.k_max},
                          {"M", c.oracle.M},
                          {"grid", c.oracle.grid}};
    return root.dump(2) + "\n";
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string config_hash(const RunConfig& config) {
    std::ostringstream os;
    os << "fnv1a:" << std::hex << fnv1a64(render_config(config));
    return os.str();
}

}  // namespace loopgas
