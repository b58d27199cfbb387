#include "loopgas/checkpoint.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "loopgas/version.hpp"

namespace loopgas {

using nlohmann::json;

namespace {

json batch_to_json(const Accumulator::Batch& b) {
    return json{{"source", b.source},
                {"index", b.index},
                {"sum", b.sum},
                {"sumsq", b.sumsq},
                {"n", b.n}};
}

Accumulator::Batch batch_from_json(const json& j) {
    Accumulator::Batch b;
    b.source = j.at("source").get<std::uint64_t>();
    b.index = j.at("index").get<std::int64_t>();
    b.sum = j.at("sum").get<double>();
    b.sumsq = j.at("sumsq").get<double>();
    b.n = j.at("n").get<std::int64_t>();
    return b;
}

}  // namespace

std::string render_checkpoint(const ChainCheckpoint& cp, double beta) {
    json root;
    root["schema_version"] = kCheckpointSchemaVersion;
    root["params_hash"] = cp.params_hash;
    root["stream"] = cp.stream;
    root["step"] = cp.state.step;
    root["beta"] = beta;
    const auto rng = cp.state.rng.state();
    root["rng_state"] = json::array({rng[0], rng[1], rng[2], rng[3]});
    root["rng_seed"] = cp.state.rng.seed();
    root["rng_stream"] = cp.state.rng.stream();
    root["cached_energy"] = cp.state.cached_energy;
    root["cached_K"] = cp.state.cached_K;
    root["cached_logL"] = cp.state.cached_logL;
    json loops = json::array();
    for (const Loop& l : cp.state.config.loops)
        loops.push_back(json{{"k", l.k}, {"positions", l.pos}});
    root["config"] = json{{"loops", loops}};
    json accs = json::array();
    for (const Accumulator::State& s : cp.accumulators) {
        json done = json::array();
        for (const Accumulator::Batch& b : s.done) done.push_back(batch_to_json(b));
        accs.push_back(json{{"source", s.source},
                            {"base_batch", s.base_batch},
                            {"done", done},
                            {"cur", batch_to_json(s.cur)},
                            {"cur_comp", s.cur_comp},
                            {"cur_sq_comp", s.cur_sq_comp}});
    }
    root["accumulators"] = accs;
    return root.dump(2) + "\n";
}

ChainCheckpoint parse_checkpoint(const std::string& text, int dim, int M) {
    json root = json::parse(text);
    if (root.at("schema_version").get<int>() != kCheckpointSchemaVersion)
        throw std::runtime_error("checkpoint: unsupported schema version");
    ChainCheckpoint cp;
    cp.params_hash = root.at("params_hash").get<std::string>();
    cp.stream = root.at("stream").get<std::uint64_t>();
    cp.state.step = root.at("step").get<std::int64_t>();
    cp.state.rng = RandomStream(root.at("rng_seed").get<std::uint64_t>(),
                                root.at("rng_stream").get<std::uint64_t>());
    const auto& rs = root.at("rng_state");
    cp.state.rng.set_state({rs[0].get<std::uint64_t>(), rs[1].get<std::uint64_t>(),
                            rs[2].get<std::uint64_t>(), rs[3].get<std::uint64_t>()});
    cp.state.cached_energy = root.at("cached_energy").get<double>();
    cp.state.cached_K = root.at("cached_K").get<long>();
    cp.state.cached_logL = root.at("cached_logL").get<double>();
    for (const auto& lj : root.at("config").at("loops")) {
        Loop l;
        l.k = lj.at("k").get<int>();
        l.M = M;
        l.dim = dim;
        for (const auto& x : lj.at("positions")) l.pos.push_back(x.get<double>());
        if (static_cast<int>(l.pos.size()) != (l.k * M + 1) * dim)
            throw std::runtime_error("checkpoint: loop position count mismatch");
        cp.state.config.loops.push_back(std::move(l));
    }
    for (const auto& aj : root.at("accumulators")) {
        Accumulator::State s;
        s.source = aj.at("source").get<std::uint64_t>();
        s.base_batch = aj.at("base_batch").get<int>();
        for (const auto& bj : aj.at("done")) s.done.push_back(batch_from_json(bj));
        s.cur = batch_from_json(aj.at("cur"));
        s.cur_comp = aj.at("cur_comp").get<double>();
        s.cur_sq_comp = aj.at("cur_sq_comp").get<double>();
        cp.accumulators.push_back(std::move(s));
    }
    return cp;
}

void save_checkpoint(const std::string& path, const ChainCheckpoint& cp, double beta) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("checkpoint: cannot write " + path);
    out << render_checkpoint(cp, beta);
    if (!out) throw std::runtime_error("checkpoint: write failed for " + path);
}

ChainCheckpoint load_checkpoint(const std::string& path, int dim, int M) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("checkpoint: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_checkpoint(ss.str(), dim, M);
}

}  // namespace loopgas
