#include "loopgas/mcmc.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace loopgas {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void SimulationParams::validate() const {
    if (box.dim < 1 || box.half_side <= 0.0)
        throw std::invalid_argument("params: box must have dim >= 1 and half_side > 0");
    if (!(z > 0.0)) throw std::invalid_argument("params: z must be positive");
    if (!(beta > 0.0)) throw std::invalid_argument("params: beta must be positive");
    if (M < 1) throw std::invalid_argument("params: M must be >= 1");
    if (k_max < 1) throw std::invalid_argument("params: k_max must be >= 1");
    if (V.core_r() <= 0.0 || V.range_R() <= V.core_r())
        throw std::invalid_argument("params: potential radii invalid");
    if (inner_box && !box_inside(*inner_box, box))
        throw std::invalid_argument("params: inner box must lie inside the box");
    if (!hardcore_admissible(boundary_cc, V.core_r()))
        throw std::invalid_argument("params: boundary CC violates the hard core");
    for (const Vec& p : boundary_cc.points)
        if (box.contains(p))
            throw std::invalid_argument("params: boundary CC point inside the box");
    for (const Loop& l : boundary_lc.loops) {
        if (!l.closed()) throw std::invalid_argument("params: boundary loop not closed");
        if (l.M != M) throw std::invalid_argument("params: boundary loop M mismatch");
        if (box.contains(l.start()))
            throw std::invalid_argument("params: boundary loop based inside the box");
    }
    if (moves.total() <= 0.0)
        throw std::invalid_argument("params: move weights must have positive total");
    if (sweeps < 0 || burn_in < 0 || thinning < 1)
        throw std::invalid_argument("params: bad sweep/burn-in/thinning counts");
    if (n_chains < 1) throw std::invalid_argument("params: n_chains must be >= 1");
}

ChainState make_initial_state(const SimulationParams& params, std::uint64_t stream_id) {
    ChainState s;
    s.rng = RandomStream(params.seed, stream_id);
    return s;
}

double state_energy(const LoopConfiguration& config, const SimulationParams& params) {
    const std::span<const Path> members(config.loops);
    const double internal = collection_energy(members, params.V, params.beta);
    if (internal == kInf) return kInf;
    const double ext_cc =
        external_cc_energy(members, params.boundary_cc, params.V, params.beta);
    if (ext_cc == kInf) return kInf;
    const double ext_lc =
        external_lc_energy(members, params.boundary_lc, params.V, params.beta);
    if (ext_lc == kInf) return kInf;
    return internal + ext_cc + ext_lc;
}

double log_weight(const ChainState& state, const SimulationParams& params) {
    if (!alpha_indicator(params.box, state.config)) return -kInf;
    const double h = state_energy(state.config, params);
    if (h == kInf) return -kInf;
    double logw = -h;
    for (const Loop& l : state.config.loops)
        logw += l.k * std::log(params.z) - std::log(static_cast<double>(l.k));
    return logw;
}

double loop_conditional_energy(const Loop& l, const LoopConfiguration& config,
                               int exclude_index, const SimulationParams& params) {
    double h = path_self_energy(l, params.V, params.beta);
    if (h == kInf) return kInf;
    for (int i = 0; i < static_cast<int>(config.loops.size()); ++i) {
        if (i == exclude_index) continue;
        const double c = path_pair_energy(l, config.loops[static_cast<std::size_t>(i)],
                                          params.V, params.beta);
        if (c == kInf) return kInf;
        h += c;
    }
    const std::span<const Path> one(&l, 1);
    const double ecc = external_cc_energy(one, params.boundary_cc, params.V, params.beta);
    if (ecc == kInf) return kInf;
    const double elc = external_lc_energy(one, params.boundary_lc, params.V, params.beta);
    if (elc == kInf) return kInf;
    return h + ecc + elc;
}

double log_acceptance(const MoveProposal& p, const SimulationParams& params) {
    if (!p.valid || p.hard_reject) return -kInf;
    return p.log_T_ratio + p.delta_K * std::log(params.z) - p.delta_logL -
           p.delta_energy;
}

MoveProposal eval_insert(const ChainState& s, const SimulationParams& params,
                         Loop proposed) {
    MoveProposal p;
    p.kind = MoveKind::insert;
    p.valid = true;
    const int k = proposed.k;
    const int n = static_cast<int>(s.config.size());
    const double S = multiplicity_normalizer(params.z, params.beta, params.box.dim,
                                             params.k_max);
    // forward density w.r.t. the reference loop measure: P_ins z^k / (|L| S);
    // reverse: P_rem / (n + 1).
    p.log_T_ratio = std::log(params.moves.remove / params.moves.insert) +
                    std::log(params.box.volume()) + std::log(S) -
                    std::log(static_cast<double>(n + 1)) - k * std::log(params.z);
    p.delta_K = k;
    p.delta_logL = std::log(static_cast<double>(k));
    if (!alpha_indicator(params.box, proposed)) {
        p.hard_reject = true;
    } else {
        const double h = loop_conditional_energy(proposed, s.config, -1, params);
        if (h == kInf)
            p.hard_reject = true;
        else
            p.delta_energy = h;
    }
    p.new_loop = std::move(proposed);
    return p;
}

MoveProposal eval_remove(const ChainState& s, const SimulationParams& params,
                         int index) {
    MoveProposal p;
    p.kind = MoveKind::remove;
    if (s.config.empty()) return p;  // no-op rejection
    p.valid = true;
    p.target_index = index;
    const Loop& l = s.config.loops[static_cast<std::size_t>(index)];
    const int k = l.k;
    const int n = static_cast<int>(s.config.size());
    const double S = multiplicity_normalizer(params.z, params.beta, params.box.dim,
                                             params.k_max);
    p.log_T_ratio = std::log(params.moves.insert / params.moves.remove) -
                    std::log(params.box.volume()) - std::log(S) +
                    std::log(static_cast<double>(n)) + k * std::log(params.z);
    p.delta_K = -k;
    p.delta_logL = -std::log(static_cast<double>(k));
    const double h = loop_conditional_energy(l, s.config, index, params);
    // The current state is legal, so h is finite.
    p.delta_energy = -h;
    return p;
}

MoveProposal eval_wiggle(const ChainState& s, const SimulationParams& params,
                         int index, Loop replacement, int a, int b) {
    MoveProposal p;
    p.kind = MoveKind::wiggle;
    p.valid = true;
    p.target_index = index;
    p.window_a = a;
    p.window_b = b;
    p.log_T_ratio = 0.0;  // bridge-law window proposal: Gaussian factors cancel
    if (!alpha_indicator(params.box, replacement)) {
        p.hard_reject = true;
    } else {
        const double h_new = loop_conditional_energy(replacement, s.config, index, params);
        if (h_new == kInf) {
            p.hard_reject = true;
        } else {
            const double h_old = loop_conditional_energy(
                s.config.loops[static_cast<std::size_t>(index)], s.config, index, params);
            p.delta_energy = h_new - h_old;
        }
    }
    p.new_loop = std::move(replacement);
    return p;
}

MoveProposal eval_rek(const ChainState& s, const SimulationParams& params, int index,
                      Loop replacement) {
    MoveProposal p;
    p.kind = MoveKind::rek;
    p.valid = true;
    p.target_index = index;
    const Loop& old = s.config.loops[static_cast<std::size_t>(index)];
    const int k_old = old.k;
    const int k_new = replacement.k;
    // q(k)/g_k = z^k / S on both sides, so the ratio is z^{k_old - k_new};
    // combined with the target it reduces to log(k_old/k_new) - delta h.
    p.log_T_ratio = (k_old - k_new) * std::log(params.z);
    p.delta_K = k_new - k_old;
    p.delta_logL = std::log(static_cast<double>(k_new)) -
                   std::log(static_cast<double>(k_old));
    if (!alpha_indicator(params.box, replacement)) {
        p.hard_reject = true;
    } else {
        const double h_new = loop_conditional_energy(replacement, s.config, index, params);
        if (h_new == kInf) {
            p.hard_reject = true;
        } else {
            const double h_old = loop_conditional_energy(old, s.config, index, params);
            p.delta_energy = h_new - h_old;
        }
    }
    p.new_loop = std::move(replacement);
    return p;
}

MoveProposal propose_insert(const ChainState& s, const SimulationParams& params,
                            RandomStream& rng) {
    Vec x(static_cast<std::size_t>(params.box.dim));
    for (int c = 0; c < params.box.dim; ++c)
        x[static_cast<std::size_t>(c)] =
            rng.uniform(params.box.center[static_cast<std::size_t>(c)] - params.box.half_side,
                        params.box.center[static_cast<std::size_t>(c)] + params.box.half_side);
    const MultiplicityDraw d =
        sample_multiplicity(params.z, params.beta, params.box.dim, params.k_max, rng);
    Loop l = sample_bridge(x, x, d.k, params.M, params.beta, rng);
    return eval_insert(s, params, std::move(l));
}

MoveProposal propose_remove(const ChainState& s, const SimulationParams& params,
                            RandomStream& rng) {
    if (s.config.empty()) {
        MoveProposal p;
        p.kind = MoveKind::remove;
        return p;
    }
    const int index = rng.uniform_int(static_cast<int>(s.config.size()));
    return eval_remove(s, params, index);
}

MoveProposal propose_wiggle(const ChainState& s, const SimulationParams& params,
                            RandomStream& rng) {
    MoveProposal invalid;
    invalid.kind = MoveKind::wiggle;
    if (s.config.empty()) return invalid;
    const int index = rng.uniform_int(static_cast<int>(s.config.size()));
    const Loop& l = s.config.loops[static_cast<std::size_t>(index)];
    const int N = l.n_slices();
    if (N < 2) return invalid;  // k = M = 1: no interior slice to move
    const int w_max = std::min(N, std::max(2, params.M));
    const int w = 2 + (w_max > 2 ? rng.uniform_int(w_max - 1) : 0);
    const int a = rng.uniform_int(N - w + 1);
    Loop replacement = l;
    resample_bridge_window(replacement, a, a + w, params.beta, rng);
    return eval_wiggle(s, params, index, std::move(replacement), a, a + w);
}

MoveProposal propose_rek(const ChainState& s, const SimulationParams& params,
                         RandomStream& rng) {
    if (s.config.empty()) {
        MoveProposal p;
        p.kind = MoveKind::rek;
        return p;
    }
    const int index = rng.uniform_int(static_cast<int>(s.config.size()));
    const Loop& old = s.config.loops[static_cast<std::size_t>(index)];
    const Vec x(old.start().begin(), old.start().end());
    const MultiplicityDraw d =
        sample_multiplicity(params.z, params.beta, params.box.dim, params.k_max, rng);
    Loop replacement = sample_bridge(x, x, d.k, params.M, params.beta, rng);
    return eval_rek(s, params, index, std::move(replacement));
}

bool mh_step(ChainState& s, const SimulationParams& params) {
    const double u = s.rng.uniform() * params.moves.total();
    MoveProposal p;
    if (u < params.moves.insert) {
        p = propose_insert(s, params, s.rng);
    } else if (u < params.moves.insert + params.moves.remove) {
        p = propose_remove(s, params, s.rng);
    } else if (u < params.moves.insert + params.moves.remove + params.moves.wiggle) {
        p = propose_wiggle(s, params, s.rng);
    } else {
        p = propose_rek(s, params, s.rng);
    }
    ++s.step;
    if (!p.valid || p.hard_reject) return false;
    const double log_acc = log_acceptance(p, params);
    if (log_acc < 0.0) {
        const double v = s.rng.uniform();
        if (!(std::log(v) < log_acc)) return false;
    }
    switch (p.kind) {
        case MoveKind::insert:
            s.config.loops.push_back(std::move(p.new_loop));
            break;
        case MoveKind::remove:
            s.config.loops.erase(s.config.loops.begin() + p.target_index);
            break;
        case MoveKind::wiggle:
        case MoveKind::rek:
            s.config.loops[static_cast<std::size_t>(p.target_index)] =
                std::move(p.new_loop);
            break;
    }
    s.cached_energy += p.delta_energy;
    s.cached_K += p.delta_K;
    s.cached_logL += p.delta_logL;
    return true;
}

void verify_cache(const ChainState& s, const SimulationParams& params, double tol) {
    const double h = state_energy(s.config, params);
    if (h == kInf) throw std::logic_error("verify_cache: state energy is infinite");
    if (std::abs(h - s.cached_energy) > tol * std::max(1.0, std::abs(h)))
        throw std::logic_error("verify_cache: cached energy desync");
    if (K_of(s.config) != s.cached_K)
        throw std::logic_error("verify_cache: cached K desync");
    const double logL = std::log(static_cast<double>(L_of(s.config)));
    if (std::abs(logL - s.cached_logL) > 1e-9 * std::max(1.0, std::abs(logL)))
        throw std::logic_error("verify_cache: cached log L desync");
}

bool state_legal(const ChainState& s, const SimulationParams& params) {
    if (!alpha_indicator(params.box, s.config)) return false;
    if (static_cast<long>(s.config.size()) > max_occupancy(params.box, params.V.core_r()))
        return false;
    // Direct pairwise check of all sections, including boundary data.
    const double r2 = params.V.core_r() * params.V.core_r();
    std::vector<std::span<const double>> pts;
    for (int j = 0; j <= params.M; ++j) {
        pts.clear();
        for (const Loop& l : s.config.loops)
            for (int lcopy = 0; lcopy < l.k; ++lcopy) pts.push_back(l.at(lcopy * l.M + j));
        for (const Loop& l : params.boundary_lc.loops)
            for (int lcopy = 0; lcopy < l.k; ++lcopy) pts.push_back(l.at(lcopy * l.M + j));
        for (const Vec& x : params.boundary_cc.points) pts.push_back(x);
        for (std::size_t a = 0; a + 1 < pts.size(); ++a)
            for (std::size_t b = a + 1; b < pts.size(); ++b)
                if (sq_distance(pts[a], pts[b]) < r2) return false;
    }
    return true;
}

void run_chain(ChainState& s, const SimulationParams& params,
               const ChainCallbacks& callbacks) {
    const std::int64_t total = params.burn_in + params.sweeps;
    while (s.step < total) {
        mh_step(s, params);
        const std::int64_t done = s.step;
        if (done > params.burn_in && (done - params.burn_in) % params.thinning == 0 &&
            callbacks.on_sample)
            callbacks.on_sample(s);
        if (params.checkpoint_interval > 0 && done % params.checkpoint_interval == 0 &&
            done < total && callbacks.on_checkpoint)
            callbacks.on_checkpoint(s);
    }
}

}  // namespace loopgas
