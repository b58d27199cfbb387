#include "loopgas/pipeline.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "loopgas/checkpoint.hpp"
#include "loopgas/estimators.hpp"
#include "loopgas/oracle.hpp"
#include "loopgas/version.hpp"

namespace loopgas {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

int resolve_workers(const RunConfig& config) {
    if (config.workers > 0) return config.workers;
    if (const char* env = std::getenv("LOOPGAS_WORKERS")) {
        const int w = std::atoi(env);
        if (w > 0) return w;
    }
    return 1;
}

void parallel_chains(int n_chains, int workers,
                     const std::function<void(int)>& run_one) {
    if (workers <= 1 || n_chains <= 1) {
        for (int c = 0; c < n_chains; ++c) run_one(c);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    const int n_threads = std::min(workers, n_chains);
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (;;) {
                    const int c = next.fetch_add(1);
                    if (c >= n_chains) break;
                    run_one(c);
                }
            } catch (...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        });
    }
    for (std::thread& th : pool) th.join();
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
}

json manifest_json(const RunConfig& config) {
    const PotentialConstants consts =
        constants(config.params.V, config.params.z, config.params.beta,
                  config.params.box.dim);
    json m;
    m["schema_version"] = 1;
    m["code_version"] = kVersion;
    m["config_hash"] = config_hash(config);
    m["physics_hash"] = physics_hash(config);
    m["seed"] = config.params.seed;
    m["chains"] = config.params.n_chains;
    m["slices_per_period"] = config.params.M;
    m["k_max"] = config.params.k_max;
    m["rho_bar"] = consts.rho_bar;
    m["stable"] = consts.stable;
    m["multiplicity_tail_bound"] =
        multiplicity_tail_bound(consts.rho_bar, config.params.beta,
                                config.params.box.dim, config.params.k_max);
    return m;
}

struct RunChainResult {
    OccupancyEstimator occ;
    std::unique_ptr<DensityProfileEstimator> density;
    ChainState final_state;

    explicit RunChainResult(std::uint64_t source) : occ(source) {}
};

std::vector<Accumulator::State> collect_states(const RunChainResult& r) {
    std::vector<Accumulator::State> states = r.occ.accumulator_states();
    if (r.density) {
        const auto ds = r.density->accumulator_states();
        states.insert(states.end(), ds.begin(), ds.end());
    }
    return states;
}

}  // namespace

std::string physics_hash(const RunConfig& config) {
    RunConfig reduced = config;
    reduced.output_dir = "";
    reduced.report_format = "";
    reduced.validators.clear();
    reduced.workers = 0;
    reduced.params.sweeps = 0;
    reduced.params.checkpoint_interval = 0;
    reduced.test_pairs.clear();
    reduced.box1.reset();
    reduced.n_z_draws = 0;
    reduced.n_bridge_draws = 0;
    reduced.test_loop_count = 0;
    reduced.oracle = QuadratureSpec{};
    reduced.oracle.M = 0;
    std::ostringstream os;
    os << "fnv1a:" << std::hex << fnv1a64(render_config(reduced));
    return os.str();
}

PipelineOutcome run_pipeline(const RunConfig& config, const std::string& resume_from) {
    PipelineOutcome outcome;
    try {
        const fs::path outdir(config.output_dir);
        fs::create_directories(outdir);
        const std::string phash = physics_hash(config);

        std::vector<std::unique_ptr<RunChainResult>> results(
            static_cast<std::size_t>(config.params.n_chains));

        auto run_one = [&](int chain) {
            auto res = std::make_unique<RunChainResult>(static_cast<std::uint64_t>(chain));
            if (config.density_cell > 0.0)
                res->density = std::make_unique<DensityProfileEstimator>(
                    config.params, config.params.box, config.density_cell,
                    static_cast<std::uint64_t>(chain));
            ChainState state =
                make_initial_state(config.params, static_cast<std::uint64_t>(chain));
            if (!resume_from.empty()) {
                const fs::path cp_path =
                    fs::path(resume_from) / ("checkpoint_" + std::to_string(chain) + ".json");
                ChainCheckpoint cp = load_checkpoint(cp_path.string(),
                                                     config.params.box.dim, config.params.M);
                if (cp.params_hash != phash)
                    throw std::runtime_error(
                        "checkpoint " + cp_path.string() +
                        " is incompatible with this configuration (parameter hash mismatch)");
                state = std::move(cp.state);
                std::size_t cursor = 0;
                res->occ.restore_accumulator_states(cp.accumulators, cursor);
                if (res->density)
                    res->density->restore_accumulator_states(cp.accumulators, cursor);
            }
            ChainCallbacks cb;
            cb.on_sample = [&](const ChainState& s) {
                res->occ.on_sample(s);
                if (res->density) res->density->on_sample(s);
            };
            cb.on_checkpoint = [&](const ChainState& s) {
                ChainCheckpoint cp;
                cp.params_hash = phash;
                cp.stream = static_cast<std::uint64_t>(chain);
                cp.state = s;
                cp.accumulators = collect_states(*res);
                save_checkpoint(
                    (outdir / ("checkpoint_" + std::to_string(chain) + ".json")).string(),
                    cp, config.params.beta);
            };
            run_chain(state, config.params, cb);
            if (config.params.checkpoint_interval > 0) {
                ChainCheckpoint cp;
                cp.params_hash = phash;
                cp.stream = static_cast<std::uint64_t>(chain);
                cp.state = state;
                cp.accumulators = collect_states(*res);
                save_checkpoint(
                    (outdir / ("checkpoint_" + std::to_string(chain) + ".json")).string(),
                    cp, config.params.beta);
            }
            res->final_state = std::move(state);
            results[static_cast<std::size_t>(chain)] = std::move(res);
        };
        parallel_chains(config.params.n_chains, resolve_workers(config), run_one);

        // Deterministic merge in stream order.
        OccupancyEstimator occ(0);
        std::unique_ptr<DensityProfileEstimator> density;
        if (config.density_cell > 0.0)
            density = std::make_unique<DensityProfileEstimator>(
                config.params, config.params.box, config.density_cell, 0);
        for (const auto& r : results) {
            occ.merge(r->occ);
            if (density && r->density) density->merge(*r->density);
        }

        write_text(outdir / "manifest.json", manifest_json(config).dump(2) + "\n");
        write_text(outdir / "config.normalized.json", render_config(config));

        const PartitionEstimate part = estimate_partition(occ);
        json summary;
        summary["samples"] = occ.samples();
        summary["partition"] = json{{"ok", part.ok},
                                    {"xi", part.xi},
                                    {"stderr", part.std_error},
                                    {"p_empty", part.p_empty},
                                    {"p_empty_stderr", part.p_empty_err},
                                    {"message", part.message}};
        summary["mean_loop_count"] = occ.mean_loop_count();
        summary["mean_total_multiplicity"] = occ.mean_total_multiplicity();
        summary["k_histogram"] = occ.k_histogram();
        if (density) {
            summary["density_sum_rule"] =
                json{{"integrated", density->integrated_count()},
                     {"direct", density->direct_mean_count()},
                     {"direct_stderr", density->direct_mean_count_err()}};
        }
        write_text(outdir / "summary.json", summary.dump(2) + "\n");

        std::ostringstream occ_tsv;
        occ_tsv << "n\tprobability\tstderr\n";
        for (int n = 0; n < 8; ++n)
            occ_tsv << n << '\t' << fmt(occ.p_of(n)) << '\t' << fmt(occ.p_err(n)) << '\n';
        write_text(outdir / "occupancy.tsv", occ_tsv.str());

        if (density) {
            std::ostringstream dens_tsv;
            dens_tsv << "cell\tdensity\tstderr\n";
            for (int i = 0; i < density->n_cells(); ++i)
                dens_tsv << i << '\t' << fmt(density->density(i)) << '\t'
                         << fmt(density->density_err(i)) << '\n';
            write_text(outdir / "density.tsv", dens_tsv.str());
        }
        outcome.exit_code = kExitOk;
    } catch (const ConfigError& e) {
        outcome.exit_code = kExitConfigError;
        outcome.message = e.what();
    } catch (const std::exception& e) {
        outcome.exit_code = kExitRuntimeError;
        outcome.message = e.what();
    }
    return outcome;
}

namespace {

struct ValidateChainResult {
    std::unique_ptr<RuelleValidator> ruelle;
    std::unique_ptr<TraceEstimator> trace;
    std::vector<std::unique_ptr<RdmkEstimator>> direct_kernels;
    std::vector<std::unique_ptr<MarginalizedKernelEstimator>> marginalized;
    long legality_violations = 0;
    long floor_violations = 0;
    long cache_failures = 0;
    std::int64_t samples = 0;
};

std::vector<Loop> make_test_loops(const SimulationParams& params, int count) {
    std::vector<Loop> loops;
    RandomStream rng(params.seed, 0x4c4f4f50ULL);  // independent of the chains
    int attempts = 0;
    while (static_cast<int>(loops.size()) < count && attempts < 200) {
        ++attempts;
        const int k = 1 + static_cast<int>(loops.size()) % params.k_max;
        Vec base(static_cast<std::size_t>(params.box.dim));
        for (int c = 0; c < params.box.dim; ++c)
            base[static_cast<std::size_t>(c)] =
                rng.uniform(params.box.center[static_cast<std::size_t>(c)] -
                                0.5 * params.box.half_side,
                            params.box.center[static_cast<std::size_t>(c)] +
                                0.5 * params.box.half_side);
        Loop l = sample_bridge(base, base, k, params.M, params.beta, rng);
        if (!alpha_indicator(params.box, l)) continue;
        if (path_self_energy(l, params.V, params.beta) == kInf) continue;
        loops.push_back(std::move(l));
    }
    return loops;
}

std::vector<std::pair<ClassicalConfig, ClassicalConfig>> default_test_pairs(
    const BoxRegion& box1) {
    std::vector<std::pair<ClassicalConfig, ClassicalConfig>> pairs;
    pairs.emplace_back(ClassicalConfig{}, ClassicalConfig{});  // (empty, empty)
    ClassicalConfig center;
    center.points.push_back(box1.center);
    pairs.emplace_back(center, center);  // diagonal
    Vec off = box1.center;
    off[0] += 0.5 * box1.half_side;
    Vec off2 = box1.center;
    off2[0] -= 0.5 * box1.half_side;
    ClassicalConfig a, b;
    a.points.push_back(off2);
    b.points.push_back(off);
    pairs.emplace_back(a, b);  // off-diagonal
    return pairs;
}

}  // namespace

PipelineOutcome validate_pipeline(const RunConfig& config) {
    PipelineOutcome outcome;
    try {
        const fs::path outdir(config.output_dir);
        fs::create_directories(outdir);
        const SimulationParams& params = config.params;
        const PotentialConstants consts =
            constants(params.V, params.z, params.beta, params.box.dim);

        auto selected = [&](const std::string& name) {
            for (const std::string& v : config.validators)
                if (v == name) return true;
            return false;
        };
        const bool needs_box0 =
            selected("trace") || selected("compatibility") || selected("kernel_bounds");
        if (needs_box0 && !params.inner_box)
            throw ConfigError("missing required key 'inner_box' for the selected validators");

        BoxRegion box0 = params.inner_box ? *params.inner_box : params.box;
        BoxRegion box1 = config.box1
                             ? *config.box1
                             : BoxRegion::cube(box0.center, 0.5 * box0.half_side);
        auto pairs = config.test_pairs.empty() ? default_test_pairs(box1) : config.test_pairs;

        std::vector<Loop> test_loops;
        if (selected("ruelle"))
            test_loops = make_test_loops(params, config.test_loop_count);

        std::vector<std::unique_ptr<ValidateChainResult>> results(
            static_cast<std::size_t>(params.n_chains));

        auto run_one = [&](int chain) {
            auto res = std::make_unique<ValidateChainResult>();
            const std::uint64_t src = static_cast<std::uint64_t>(chain);
            const std::uint64_t mix = params.seed + 0x517cc1b727220a95ULL * (src + 1);
            if (selected("ruelle"))
                res->ruelle = std::make_unique<RuelleValidator>(params, test_loops, src);
            if (selected("trace"))
                res->trace = std::make_unique<TraceEstimator>(
                    params, box0, config.n_z_draws, config.n_bridge_draws, mix ^ 0x11, src);
            if (selected("compatibility") || selected("kernel_bounds")) {
                std::uint64_t i = 0;
                for (const auto& [x1, y1] : pairs) {
                    res->direct_kernels.push_back(std::make_unique<RdmkEstimator>(
                        params, box1, x1, y1, config.n_bridge_draws, mix ^ (0x100 + i),
                        src));
                    if (selected("compatibility"))
                        res->marginalized.push_back(
                            std::make_unique<MarginalizedKernelEstimator>(
                                params, box0, box1, x1, y1, config.n_z_draws,
                                config.n_bridge_draws, mix ^ (0x200 + i), src));
                    ++i;
                }
            }
            ChainState state = make_initial_state(params, src);
            ChainCallbacks cb;
            cb.on_sample = [&](const ChainState& s) {
                ++res->samples;
                if (res->ruelle) res->ruelle->on_sample(s);
                if (res->trace) res->trace->on_sample(s);
                for (auto& k : res->direct_kernels) k->on_sample(s);
                for (auto& m : res->marginalized) m->on_sample(s);
                if (selected("legality")) {
                    if (!state_legal(s, params)) ++res->legality_violations;
                    const double h = state_energy(s.config, params);
                    const double floor = energy_lower_bound(
                        K_of(s.config), consts, params.beta, params.V.core_r(),
                        params.V.range_R(), params.box.dim);
                    if (h < floor) ++res->floor_violations;
                    try {
                        verify_cache(s, params);
                    } catch (const std::logic_error&) {
                        ++res->cache_failures;
                    }
                }
            };
            run_chain(state, params, cb);
            results[static_cast<std::size_t>(chain)] = std::move(res);
        };
        parallel_chains(params.n_chains, resolve_workers(config), run_one);

        // Merge chains in stream order.
        ValidateChainResult merged;
        for (std::size_t c = 0; c < results.size(); ++c) {
            ValidateChainResult& r = *results[c];
            if (c == 0) {
                merged.ruelle = std::move(r.ruelle);
                merged.trace = std::move(r.trace);
                merged.direct_kernels = std::move(r.direct_kernels);
                merged.marginalized = std::move(r.marginalized);
            } else {
                if (merged.ruelle) merged.ruelle->merge(*r.ruelle);
                if (merged.trace) merged.trace->merge(*r.trace);
                for (std::size_t i = 0; i < merged.direct_kernels.size(); ++i)
                    merged.direct_kernels[i]->merge(*r.direct_kernels[i]);
                for (std::size_t i = 0; i < merged.marginalized.size(); ++i)
                    merged.marginalized[i]->merge(*r.marginalized[i]);
            }
            merged.legality_violations += r.legality_violations;
            merged.floor_violations += r.floor_violations;
            merged.cache_failures += r.cache_failures;
            merged.samples += r.samples;
        }

        std::vector<CheckRecord>& records = outcome.records;
        if (merged.ruelle) {
            auto rs = merged.ruelle->records();
            records.insert(records.end(), rs.begin(), rs.end());
        }
        if (merged.trace) records.push_back(merged.trace->record());
        if (selected("compatibility")) {
            for (std::size_t i = 0; i < merged.marginalized.size(); ++i) {
                const KernelEstimate lhs = merged.marginalized[i]->result();
                const KernelEstimate rhs = merged.direct_kernels[i]->result();
                CheckRecord r;
                r.check = "compatibility";
                r.ref = "kernel_marginalization_consistency";
                r.source = "mc";
                r.estimate = lhs.value;
                r.target = rhs.value;
                r.std_error = std::sqrt(lhs.std_error * lhs.std_error +
                                        rhs.std_error * rhs.std_error);
                r.pass = std::abs(lhs.value - rhs.value) <= 3.0 * r.std_error;
                std::ostringstream os;
                os << "pair " << i << " n=" << lhs.x0.size();
                r.details = os.str();
                records.push_back(std::move(r));
            }
        }
        if (selected("kernel_bounds")) {
            if (!consts.stable) {
                CheckRecord r;
                r.check = "kernel_bound";
                r.ref = "uniform_kernel_bound";
                r.source = "mc";
                r.estimate = consts.rho_bar;
                r.target = kInf;
                r.pass = true;
                r.details = "skipped-as-inapplicable: rho_bar >= 1, series divergent";
                records.push_back(std::move(r));
            } else {
                SimulationParams p2 = params;
                p2.inner_box = box1;  // the cap applies to the kernels' own box
                const BoundConstants bounds = bound_constants(p2);
                std::vector<KernelEstimate> kernels;
                for (const auto& k : merged.direct_kernels) kernels.push_back(k->result());
                auto rs = validate_kernel_bounds(kernels, bounds);
                records.insert(records.end(), rs.begin(), rs.end());
            }
        }
        if (selected("legality")) {
            CheckRecord r;
            r.check = "chain_legality";
            r.ref = "confinement_hardcore_occupancy";
            r.source = "mc";
            r.estimate = static_cast<double>(merged.legality_violations);
            r.target = 0.0;
            r.pass = merged.legality_violations == 0;
            r.details = "violations over " + std::to_string(merged.samples) + " samples";
            records.push_back(r);
            CheckRecord f;
            f.check = "energy_floor";
            f.ref = "conditional_energy_lower_bound";
            f.source = "mc";
            f.estimate = static_cast<double>(merged.floor_violations);
            f.target = 0.0;
            f.pass = merged.floor_violations == 0;
            f.details = "violations over " + std::to_string(merged.samples) + " samples";
            records.push_back(f);
            CheckRecord cc;
            cc.check = "cache_coherence";
            cc.ref = "incremental_weight_consistency";
            cc.source = "mc";
            cc.estimate = static_cast<double>(merged.cache_failures);
            cc.target = 0.0;
            cc.pass = merged.cache_failures == 0;
            cc.details = "desyncs over " + std::to_string(merged.samples) + " samples";
            records.push_back(cc);
        }

        write_text(outdir / "manifest.json", manifest_json(config).dump(2) + "\n");
        if (config.report_format != "records")
            write_text(outdir / "report.tsv", render_delimited(records));
        if (config.report_format != "delimited")
            write_text(outdir / "report.jsonl", render_jsonl(records));

        bool all_pass = true;
        for (const CheckRecord& r : records) all_pass = all_pass && r.pass;
        outcome.exit_code = all_pass ? kExitOk : kExitValidationFailure;
        if (!all_pass) outcome.message = "one or more validation checks failed";
    } catch (const ConfigError& e) {
        outcome.exit_code = kExitConfigError;
        outcome.message = e.what();
    } catch (const std::exception& e) {
        outcome.exit_code = kExitRuntimeError;
        outcome.message = e.what();
    }
    return outcome;
}

PipelineOutcome oracle_compare_pipeline(const RunConfig& config) {
    PipelineOutcome outcome;
    try {
        const fs::path outdir(config.output_dir);
        fs::create_directories(outdir);
        const SimulationParams& params = config.params;
        QuadratureSpec spec = config.oracle;
        try {
            spec.validate(params);  // caps checked before any long computation
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }

        const PartitionQuadrature quad = quad_partition(params, spec);

        std::vector<std::unique_ptr<OccupancyEstimator>> occs(
            static_cast<std::size_t>(params.n_chains));
        std::vector<std::unique_ptr<TraceEstimator>> traces(
            static_cast<std::size_t>(params.n_chains));
        auto run_one = [&](int chain) {
            const std::uint64_t src = static_cast<std::uint64_t>(chain);
            auto occ = std::make_unique<OccupancyEstimator>(src);
            std::unique_ptr<TraceEstimator> trace;
            if (params.inner_box)
                trace = std::make_unique<TraceEstimator>(
                    params, *params.inner_box, config.n_z_draws, config.n_bridge_draws,
                    params.seed + 0x9e3779b97f4a7c15ULL * (src + 1), src);
            ChainState state = make_initial_state(params, src);
            ChainCallbacks cb;
            cb.on_sample = [&](const ChainState& s) {
                occ->on_sample(s);
                if (trace) trace->on_sample(s);
            };
            run_chain(state, params, cb);
            occs[static_cast<std::size_t>(chain)] = std::move(occ);
            traces[static_cast<std::size_t>(chain)] = std::move(trace);
        };
        parallel_chains(params.n_chains, resolve_workers(config), run_one);

        OccupancyEstimator occ(0);
        for (const auto& o : occs) occ.merge(*o);
        std::unique_ptr<TraceEstimator> trace;
        if (params.inner_box) {
            trace = std::move(traces[0]);
            for (std::size_t c = 1; c < traces.size(); ++c) trace->merge(*traces[c]);
        }

        struct Row {
            std::string qty;
            double mc, sigma_mc, oracle, sigma_or;
        };
        std::vector<Row> rows;
        auto add_row = [&](const std::string& qty, double mc, double sigma_mc,
                           double oracle, double sigma_or) {
            rows.push_back({qty, mc, sigma_mc, oracle, sigma_or});
            CheckRecord r;
            r.check = "oracle_compare";
            r.ref = qty;
            r.source = "oracle";
            r.estimate = mc;
            r.target = oracle;
            r.std_error = std::sqrt(sigma_mc * sigma_mc + sigma_or * sigma_or);
            r.pass = r.std_error > 0.0
                         ? std::abs(mc - oracle) <= 3.0 * r.std_error
                         : mc == oracle;
            std::ostringstream os;
            os << "M=" << params.M << " grid=" << spec.grid << " mc_sigma=" << fmt(sigma_mc)
               << " oracle_err=" << fmt(sigma_or);
            r.details = os.str();
            outcome.records.push_back(std::move(r));
        };

        const PartitionEstimate part = estimate_partition(occ);
        if (!part.ok) throw std::runtime_error("partition estimate undefined: " + part.message);
        add_row("xi", part.xi, part.std_error, quad.xi, quad.xi_error);
        for (int n = 0; n < static_cast<int>(quad.sector_mass.size()); ++n) {
            const double oracle_p = quad.sector_mass[static_cast<std::size_t>(n)] / quad.xi;
            const double oracle_p_err =
                (quad.sector_error[static_cast<std::size_t>(n)] +
                 oracle_p * quad.xi_error) /
                quad.xi;
            add_row("p_occupancy_" + std::to_string(n), occ.p_of(n), occ.p_err(n),
                    oracle_p, oracle_p_err);
        }
        if (trace) add_row("kernel_trace", trace->value(), trace->std_error(), 1.0, 0.0);

        std::ostringstream tsv;
        tsv << "quantity\tmc\tmc_sigma\toracle\toracle_err\tzscore\n";
        for (const Row& row : rows) {
            const double combined =
                std::sqrt(row.sigma_mc * row.sigma_mc + row.sigma_or * row.sigma_or);
            const double z = combined > 0.0 ? (row.mc - row.oracle) / combined : 0.0;
            tsv << row.qty << '\t' << fmt(row.mc) << '\t' << fmt(row.sigma_mc) << '\t'
                << fmt(row.oracle) << '\t' << fmt(row.sigma_or) << '\t' << fmt(z) << '\n';
        }
        write_text(outdir / "manifest.json", manifest_json(config).dump(2) + "\n");
        write_text(outdir / "compare.tsv", tsv.str());
        write_text(outdir / "compare.jsonl", render_jsonl(outcome.records));

        bool all_pass = true;
        for (const CheckRecord& r : outcome.records) all_pass = all_pass && r.pass;
        outcome.exit_code = all_pass ? kExitOk : kExitValidationFailure;
        if (!all_pass) outcome.message = "oracle comparison outside 3 sigma";
    } catch (const ConfigError& e) {
        outcome.exit_code = kExitConfigError;
        outcome.message = e.what();
    } catch (const std::exception& e) {
        outcome.exit_code = kExitRuntimeError;
        outcome.message = e.what();
    }
    return outcome;
}

}  // namespace loopgas
