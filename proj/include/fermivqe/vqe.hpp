#pragma once

#include <fermivqe/bfgs.hpp>
#include <fermivqe/circuits.hpp>
#include <fermivqe/exactsolver.hpp>
#include <fermivqe/fock.hpp>
#include <fermivqe/hamiltonian.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace fermivqe {

enum class GradientMode { finite_difference, adjoint };

inline GradientMode gradient_mode_from_string(const std::string& s) {
    if (s == "finite_difference" || s == "fd") return GradientMode::finite_difference;
    if (s == "adjoint") return GradientMode::adjoint;
    throw std::invalid_argument("unknown gradient mode: " + s);
}

struct VqeConfig {
    int max_iterations = 150;
    int restarts = 100;
    double init_scale = 0.01;
    std::uint64_t seed = 1;
    double fd_step = 1e-5;
    double grad_tolerance = 1e-8;
    double fidelity_threshold = 0.95;
    GradientMode gradient_mode = GradientMode::finite_difference;
    int threads = 1;
};

struct IterationRecord {
    int iteration = 0;
    double energy = 0.0;
    double fidelity = 0.0;
};

struct RunTrace {
    std::vector<IterationRecord> records;  // starts with the iteration-0 point
    std::vector<double> final_params;
    double final_energy = 0.0;
    double final_fidelity = 0.0;
    int iterations = 0;
    int evaluations = 0;
    int iterations_to_threshold = -1;  // -1 = threshold never reached
    bool line_search_failed = false;
    double max_sector_leak = 0.0;
};

struct RunSummary {
    double mean_energy = 0.0;
    double std_energy = 0.0;
    double energy_p10 = 0.0;
    double energy_p90 = 0.0;
    double mean_fidelity = 0.0;
    double std_fidelity = 0.0;
    double fidelity_p10 = 0.0;
    double fidelity_p90 = 0.0;
    double mean_iterations = 0.0;  // l_I: unreached restarts count as max_iterations
    double reach_fraction = 0.0;
    double r_c = 0.0;  // l_p * l_I
    int l_p = 0;
    int r_q = 0;
};

struct VqeResult {
    RunSummary summary;
    std::vector<RunTrace> traces;
};

inline double energy_of(std::span<const double> params, const Ansatz& a,
                        const FermionHamiltonian& h, const StateVector& reference) {
    return expectation(h, apply_ansatz(a, params, reference));
}

inline std::vector<double> finite_difference_gradient(std::span<const double> params,
                                                      const Ansatz& a,
                                                      const FermionHamiltonian& h,
                                                      const StateVector& reference,
                                                      double step) {
    std::vector<double> shifted(params.begin(), params.end());
    std::vector<double> grad(shifted.size());
    for (std::size_t i = 0; i < shifted.size(); ++i) {
        const double saved = shifted[i];
        shifted[i] = saved + step;
        const double up = energy_of(shifted, a, h, reference);
        shifted[i] = saved - step;
        const double down = energy_of(shifted, a, h, reference);
        shifted[i] = saved;
        grad[i] = (up - down) / (2.0 * step);
    }
    return grad;
}

/// Exact gradient via one reverse sweep: after the forward pass, walk the
/// circuit backwards keeping lambda = (remaining circuit)^dagger H psi_final
/// and psi rewound to just before the current gate, so each parameter costs
/// one derivative overlap instead of two full circuit applications.
inline std::vector<double> adjoint_gradient(std::span<const double> params, const Ansatz& a,
                                            const FermionHamiltonian& h,
                                            const StateVector& reference) {
    StateVector psi = apply_ansatz(a, params, reference);
    StateVector lambda = apply(h, psi);
    std::vector<double> grad(params.size(), 0.0);
    for (auto it = a.gates.rbegin(); it != a.gates.rend(); ++it) {
        const Gate& g = *it;
        const double* th = params.data() + g.param_offset;
        apply_gate(psi, g, th, true);
        for (int slot = 0; slot < slot_count(g.kind); ++slot)
            grad[g.param_offset + slot] = 2.0 * gate_derivative_overlap(lambda, psi, g, th, slot).real();
        apply_gate(lambda, g, th, true);
    }
    return grad;
}

inline std::vector<double> gradient(std::span<const double> params, const Ansatz& a,
                                    const FermionHamiltonian& h, const StateVector& reference,
                                    const VqeConfig& cfg) {
    if (static_cast<int>(params.size()) != a.l_p)
        throw std::invalid_argument("gradient: parameter count mismatch");
    if (cfg.gradient_mode == GradientMode::adjoint)
        return adjoint_gradient(params, a, h, reference);
    return finite_difference_gradient(params, a, h, reference, cfg.fd_step);
}

namespace detail {

inline double percentile(std::vector<double> values, double p) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const double rank = p * double(values.size() - 1);
    const auto lo = static_cast<std::size_t>(rank);
    const auto hi = std::min(lo + 1, values.size() - 1);
    const double frac = rank - double(lo);
    return values[lo] * (1.0 - frac) + values[hi] * frac;
}

inline void mean_std(const std::vector<double>& values, double& mean, double& sd) {
    mean = 0.0;
    for (double v : values) mean += v;
    mean /= double(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    sd = std::sqrt(var / double(values.size()));
}

}  // namespace detail

/// One optimization run from the given start parameters. n_f names the
/// particle-number sector the circuit must stay inside.
inline RunTrace single_run(const FermionHamiltonian& h, const Ansatz& a,
                           const GroundSolution& ground, const StateVector& reference, int n_f,
                           std::vector<double> start, const VqeConfig& cfg) {
    RunTrace trace;

    const auto record = [&](int iter, std::span<const double> params, double energy) {
        StateVector psi = apply_ansatz(a, params, reference);
        const double leak = psi.sector_leak(n_f);
        trace.max_sector_leak = std::max(trace.max_sector_leak, leak);
        if (leak > 1e-12)
            throw std::runtime_error("vqe: state leaked out of its particle-number sector");
        const double f = fidelity(psi, ground);
        trace.records.push_back({iter, energy, f});
        if (trace.iterations_to_threshold < 0 && f >= cfg.fidelity_threshold)
            trace.iterations_to_threshold = iter;
    };

    std::vector<double> scratch(a.l_p);
    const ObjectiveFn fg = [&](const Eigen::VectorXd& x, Eigen::VectorXd& gout) {
        std::copy(x.data(), x.data() + x.size(), scratch.begin());
        const double e = energy_of(scratch, a, h, reference);
        const auto gr = gradient(scratch, a, h, reference, cfg);
        for (Eigen::Index i = 0; i < gout.size(); ++i) gout[i] = gr[i];
        return e;
    };

    const double start_energy = energy_of(start, a, h, reference);
    record(0, start, start_energy);

    BfgsOptions opts;
    opts.max_iterations = cfg.max_iterations;
    opts.grad_tolerance = cfg.grad_tolerance;
    const IterationCallback on_iteration = [&](int iter, const Eigen::VectorXd& x, double value,
                                               const Eigen::VectorXd&) {
        std::copy(x.data(), x.data() + x.size(), scratch.begin());
        record(iter, scratch, value);
    };

    const auto result = bfgs_minimize(
        Eigen::Map<const Eigen::VectorXd>(start.data(), a.l_p), fg, opts, on_iteration);

    trace.final_params.assign(result.x.data(), result.x.data() + result.x.size());
    trace.final_energy = result.value;
    trace.final_fidelity = trace.records.back().fidelity;
    trace.iterations = result.iterations;
    trace.evaluations = result.evaluations;
    trace.line_search_failed = result.status == BfgsStatus::line_search_failure;
    return trace;
}

/// Start parameters for one restart, drawn from a stream derived from the
/// base seed and the restart index so runs are independent of scheduling.
inline std::vector<double> initial_parameters(int l_p, const VqeConfig& cfg, int restart) {
    std::seed_seq seq{std::uint32_t(cfg.seed), std::uint32_t(cfg.seed >> 32),
                      std::uint32_t(restart)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> dist(-cfg.init_scale, cfg.init_scale);
    std::vector<double> params(l_p);
    for (auto& p : params) p = dist(rng);
    return params;
}

inline VqeResult run_vqe(const FermionHamiltonian& h, const Ansatz& a,
                         const GroundSolution& ground, const VqeConfig& cfg,
                         ReferencePattern pattern = ReferencePattern::spread,
                         int sector_override = -1) {
    if (cfg.restarts < 1) throw std::invalid_argument("run_vqe: needs at least one restart");
    if (cfg.init_scale <= 0) throw std::invalid_argument("run_vqe: init_scale must be positive");
    if (cfg.fidelity_threshold <= 0 || cfg.fidelity_threshold > 1)
        throw std::invalid_argument("run_vqe: fidelity threshold outside (0, 1]");
    if (a.M != h.M) throw std::invalid_argument("run_vqe: ansatz and Hamiltonian mode counts differ");

    const int n_f = sector_override >= 0 ? sector_override : ground.n_f;
    const StateVector reference = reference_state(a.M, n_f, pattern);

    VqeResult out;
    out.traces.resize(cfg.restarts);
    const int threads = std::max(1, std::min(cfg.threads, cfg.restarts));
    if (threads == 1) {
        for (int r = 0; r < cfg.restarts; ++r)
            out.traces[r] =
                single_run(h, a, ground, reference, n_f, initial_parameters(a.l_p, cfg, r), cfg);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(threads);
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                try {
                    for (int r = next.fetch_add(1); r < cfg.restarts; r = next.fetch_add(1))
                        out.traces[r] = single_run(h, a, ground, reference, n_f,
                                                   initial_parameters(a.l_p, cfg, r), cfg);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& err : errors)
            if (err) std::rethrow_exception(err);
    }

    std::vector<double> energies, fidelities;
    energies.reserve(cfg.restarts);
    fidelities.reserve(cfg.restarts);
    double iter_sum = 0.0;
    int reached = 0;
    for (const RunTrace& t : out.traces) {
        energies.push_back(t.final_energy);
        fidelities.push_back(t.final_fidelity);
        if (t.iterations_to_threshold >= 0) {
            iter_sum += t.iterations_to_threshold;
            ++reached;
        } else {
            iter_sum += cfg.max_iterations;
        }
    }
    RunSummary& s = out.summary;
    detail::mean_std(energies, s.mean_energy, s.std_energy);
    detail::mean_std(fidelities, s.mean_fidelity, s.std_fidelity);
    s.energy_p10 = detail::percentile(energies, 0.10);
    s.energy_p90 = detail::percentile(energies, 0.90);
    s.fidelity_p10 = detail::percentile(fidelities, 0.10);
    s.fidelity_p90 = detail::percentile(fidelities, 0.90);
    s.mean_iterations = iter_sum / double(cfg.restarts);
    s.reach_fraction = double(reached) / double(cfg.restarts);
    s.l_p = a.l_p;
    s.r_q = a.r_q;
    s.r_c = double(a.l_p) * s.mean_iterations;
    return out;
}

}  // namespace fermivqe
