#pragma once

#include <fermivqe/circuits.hpp>
#include <fermivqe/exactsolver.hpp>
#include <fermivqe/hamiltonian.hpp>
#include <fermivqe/jw.hpp>
#include <fermivqe/lattice.hpp>
#include <fermivqe/molecular.hpp>
#include <fermivqe/vqe.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fermivqe {

// ---------------------------------------------------------------------------
// Log-log power-law fits

struct ScalingFit {
    double exponent = 0.0;
    double std_error = 0.0;
    std::vector<std::pair<double, double>> points;
    std::string resource_kind;
};

/// Ordinary least squares on (log x, log y); reports the slope and its
/// standard error, discarding the intercept.
inline ScalingFit loglog_fit(std::vector<std::pair<double, double>> points,
                             std::string resource_kind = "") {
    if (points.size() < 3) throw std::invalid_argument("loglog_fit: need at least three points");
    for (const auto& [x, y] : points)
        if (!(x > 0.0) || !(y > 0.0))
            throw std::invalid_argument("loglog_fit: points must be strictly positive");
    const std::size_t n = points.size();
    std::vector<double> lx(n), ly(n);
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        lx[i] = std::log(points[i].first);
        ly[i] = std::log(points[i].second);
        mx += lx[i];
        my += ly[i];
    }
    mx /= double(n);
    my /= double(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("loglog_fit: degenerate abscissae");
    ScalingFit fit;
    fit.exponent = sxy / sxx;
    const double intercept = my - fit.exponent * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (intercept + fit.exponent * lx[i]);
        sse += r * r;
    }
    fit.std_error = std::sqrt(sse / double(n - 2) / sxx);
    fit.points = std::move(points);
    fit.resource_kind = std::move(resource_kind);
    return fit;
}

// ---------------------------------------------------------------------------
// Benchmark tables

struct TableRowSpec {
    GeometryKind kind = GeometryKind::chain;
    int rows = 1;
    int cols = 2;
    int fermionic_layers = 1;
    int qubit_layers = 1;
};

/// The built-in spinless benchmark set: chain 1x12, ladder 2x6, rectangle 3x4
/// with the layer counts each paradigm needs to converge there.
inline std::vector<TableRowSpec> default_spinless_rows() {
    return {{GeometryKind::chain, 1, 12, 4, 6},
            {GeometryKind::ladder, 2, 6, 3, 3},
            {GeometryKind::rectangle, 3, 4, 3, 6}};
}

/// The built-in spinful benchmark set: chain 1x6 and ladder 2x3.
inline std::vector<TableRowSpec> default_spinful_rows() {
    return {{GeometryKind::chain, 1, 6, 5, 7}, {GeometryKind::ladder, 2, 3, 5, 6}};
}

inline ReferencePattern default_reference_pattern(bool spinful) {
    return spinful ? ReferencePattern::neel : ReferencePattern::spread;
}

struct TableCell {
    std::string geometry;
    Paradigm paradigm = Paradigm::fermionic;
    int layers = 0;
    int sites = 0;
    int r_q = 0;
    int l_p = 0;
    int depth = 0;
    bool vqe_ran = false;
    bool failed = false;
    std::string error;
    double e0 = 0.0;
    int n_f = 0;
    RunSummary summary;
};

struct TableOptions {
    bool spinful = false;
    double t = 1.0;
    double u = 0.0;
    double v = 0.0;
    double mu = 0.0;
    ModeOrdering ordering = ModeOrdering::row_major;
    bool run_optimization = true;
    std::optional<ReferencePattern> pattern;
    VqeConfig vqe;
};

inline std::string geometry_label(GeometryKind kind, int rows, int cols) {
    std::string label = kind == GeometryKind::chain    ? "chain"
                        : kind == GeometryKind::ladder ? "ladder"
                        : kind == GeometryKind::rectangle ? "rectangle"
                                                          : "custom";
    return label + " " + std::to_string(rows) + "x" + std::to_string(cols);
}

/// Resource and (optionally) convergence figures for every (geometry,
/// paradigm) pair in the row set. VQE failures are recorded per cell so a
/// partial table still comes back.
inline std::vector<TableCell> run_table(const std::vector<TableRowSpec>& rows,
                                        const TableOptions& opt) {
    const ReferencePattern pattern = opt.pattern.value_or(default_reference_pattern(opt.spinful));
    std::vector<TableCell> cells;
    for (const TableRowSpec& row : rows) {
        const Geometry g = build_geometry(row.kind, row.rows, row.cols);
        const RegisterMap map = register_map(g, opt.spinful, opt.ordering);
        FermionHamiltonian h;
        GroundSolution ground;
        if (opt.run_optimization) {
            h = opt.spinful ? build_spinful_hubbard(g, opt.t, opt.u, opt.v, opt.mu, map)
                            : build_spinless_hubbard(g, opt.t, opt.v, opt.mu, map);
            ground = global_ground(h);
        }
        for (Paradigm p : {Paradigm::fermionic, Paradigm::qubit}) {
            TableCell cell;
            cell.geometry = geometry_label(row.kind, row.rows, row.cols);
            cell.paradigm = p;
            cell.layers = p == Paradigm::fermionic ? row.fermionic_layers : row.qubit_layers;
            cell.sites = g.num_sites();
            const Ansatz a = build_ansatz(g, p, opt.spinful, cell.layers, map);
            const Resources r = count_resources(a);
            cell.r_q = r.r_q;
            cell.l_p = r.l_p;
            cell.depth = r.depth_total;
            if (opt.run_optimization) {
                cell.e0 = ground.energy;
                cell.n_f = ground.n_f;
                try {
                    cell.summary = run_vqe(h, a, ground, opt.vqe, pattern).summary;
                    cell.vqe_ran = true;
                } catch (const std::exception& e) {
                    cell.failed = true;
                    cell.error = e.what();
                }
            }
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

// ---------------------------------------------------------------------------
// Scaling sweeps

struct ScalingPoint {
    int sites = 0;
    int layers = 0;
    int r_q = 0;
    double l_i = 0.0;
    double r_c = 0.0;
    double mean_fidelity = 0.0;
    bool converged = false;
};

struct ScalingResult {
    Paradigm paradigm = Paradigm::fermionic;
    std::vector<ScalingPoint> points;
    bool fit_ok = false;
    ScalingFit fit_rq, fit_rc;
};

struct ScalingOptions {
    std::vector<int> sizes = {6, 8, 10, 12};
    double t = 1.0;
    double v = 2.0;
    double mu = 0.0;
    int max_layers = 8;
    std::optional<ReferencePattern> pattern;
    VqeConfig vqe;
};

/// Chain sweep over system sizes. Per size, the smallest layer count whose
/// mean final fidelity clears the threshold is kept; sizes that never
/// converge within the layer budget are flagged and left out of the fits.
inline ScalingResult run_scaling(Paradigm paradigm, const ScalingOptions& opt) {
    if (opt.sizes.size() < 3)
        throw std::invalid_argument("run_scaling: need at least three system sizes");
    const ReferencePattern pattern = opt.pattern.value_or(default_reference_pattern(false));
    ScalingResult result;
    result.paradigm = paradigm;
    for (int sites : opt.sizes) {
        const Geometry g = build_geometry(GeometryKind::chain, 1, sites);
        const RegisterMap map = register_map(g, false);
        const FermionHamiltonian h = build_spinless_hubbard(g, opt.t, opt.v, opt.mu, map);
        const GroundSolution ground = global_ground(h);
        ScalingPoint point;
        point.sites = sites;
        for (int layers = 1; layers <= opt.max_layers; ++layers) {
            const Ansatz a = build_ansatz(g, paradigm, false, layers, map);
            const RunSummary s = run_vqe(h, a, ground, opt.vqe, pattern).summary;
            point.layers = layers;
            point.r_q = a.r_q;
            point.l_i = s.mean_iterations;
            point.r_c = s.r_c;
            point.mean_fidelity = s.mean_fidelity;
            if (s.mean_fidelity >= opt.vqe.fidelity_threshold) {
                point.converged = true;
                break;
            }
        }
        result.points.push_back(point);
    }
    std::vector<std::pair<double, double>> rq_points, rc_points;
    for (const ScalingPoint& p : result.points) {
        if (!p.converged) continue;
        rq_points.emplace_back(double(p.sites), double(p.r_q));
        rc_points.emplace_back(double(p.sites), p.r_c);
    }
    if (rq_points.size() >= 3) {
        result.fit_rq = loglog_fit(rq_points, "R_Q");
        result.fit_rc = loglog_fit(rc_points, "R_C");
        result.fit_ok = true;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Molecular case study

struct MoleculeOptions {
    int fermionic_layers = 4;
    int qubit_layers = 4;
    int sector = -1;  // -1 scans all particle-number sectors
    std::optional<ReferencePattern> pattern;  // defaults to lowest-orbital filling
    VqeConfig vqe;
};

struct MoleculeResult {
    GroundSolution ground;
    Resources fermionic_resources, qubit_resources;
    VqeResult fermionic, qubit;
};

/// Runs both paradigms on an ingested Hamiltonian against one shared exact
/// diagonalization, using the orbital-chain ansatz layout.
inline MoleculeResult run_molecule(const FermionHamiltonian& h, const MoleculeOptions& opt) {
    if (h.M % 2 != 0)
        throw std::invalid_argument("run_molecule: expected an even number of spin modes");
    const ReferencePattern pattern = opt.pattern.value_or(ReferencePattern::first);
    MoleculeResult result;
    if (opt.sector >= 0) {
        auto [energy, subspace] = ground_in_sector(h, opt.sector);
        result.ground.energy = energy;
        result.ground.n_f = opt.sector;
        result.ground.subspace = std::move(subspace);
    } else {
        result.ground = global_ground(h);
    }
    const Ansatz fa = build_orbital_chain_ansatz(h.M / 2, Paradigm::fermionic, opt.fermionic_layers);
    const Ansatz qa = build_orbital_chain_ansatz(h.M / 2, Paradigm::qubit, opt.qubit_layers);
    result.fermionic_resources = count_resources(fa);
    result.qubit_resources = count_resources(qa);
    result.fermionic = run_vqe(h, fa, result.ground, opt.vqe, pattern);
    result.qubit = run_vqe(h, qa, result.ground, opt.vqe, pattern);
    return result;
}

// ---------------------------------------------------------------------------
// Output files

namespace io {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

inline std::string trace_csv(const std::vector<RunTrace>& traces) {
    std::string text = "restart,iter,energy,fidelity\n";
    for (std::size_t r = 0; r < traces.size(); ++r)
        for (const IterationRecord& rec : traces[r].records)
            text += std::to_string(r) + "," + std::to_string(rec.iteration) + "," +
                    fmt(rec.energy) + "," + fmt(rec.fidelity) + "\n";
    return text;
}

inline std::string staircase_csv(const std::vector<StaircasePoint>& points) {
    std::string text = "coupling,E0,Nf\n";
    for (const StaircasePoint& p : points)
        text += fmt(p.coupling) + "," + fmt(p.energy) + "," + std::to_string(p.n_f) + "\n";
    return text;
}

inline std::string table_csv(const std::vector<TableCell>& cells) {
    std::string text =
        "geometry,paradigm,layers,sites,R_Q,l_p,depth,E0,Nf,mean_lI,reach_fraction,R_C,"
        "mean_energy,std_energy,mean_fidelity,std_fidelity,failed\n";
    for (const TableCell& c : cells) {
        text += c.geometry + "," + to_string(c.paradigm) + "," + std::to_string(c.layers) + "," +
                std::to_string(c.sites) + "," + std::to_string(c.r_q) + "," +
                std::to_string(c.l_p) + "," + std::to_string(c.depth) + ",";
        if (c.vqe_ran) {
            text += fmt(c.e0) + "," + std::to_string(c.n_f) + "," + fmt(c.summary.mean_iterations) +
                    "," + fmt(c.summary.reach_fraction) + "," + fmt(c.summary.r_c) + "," +
                    fmt(c.summary.mean_energy) + "," + fmt(c.summary.std_energy) + "," +
                    fmt(c.summary.mean_fidelity) + "," + fmt(c.summary.std_fidelity);
        } else {
            text += ",,,,,,,,";
        }
        text += c.failed ? ",1\n" : ",0\n";
    }
    return text;
}

inline std::string scaling_csv(const std::vector<ScalingResult>& results) {
    std::string text = "paradigm,sites,layers,R_Q,mean_lI,R_C,mean_fidelity,converged\n";
    for (const ScalingResult& res : results)
        for (const ScalingPoint& p : res.points)
            text += std::string(to_string(res.paradigm)) + "," + std::to_string(p.sites) + "," +
                    std::to_string(p.layers) + "," + std::to_string(p.r_q) + "," + fmt(p.l_i) +
                    "," + fmt(p.r_c) + "," + fmt(p.mean_fidelity) + "," +
                    (p.converged ? "1\n" : "0\n");
    return text;
}

struct JwStatsRow {
    int term_index = 0;
    int weight = 0;
    double coefficient = 0.0;
};

inline std::string jw_stats_csv(const PauliSum& p) {
    std::string text = "term_index,weight,coefficient\n";
    for (std::size_t i = 0; i < p.strings.size(); ++i)
        text += std::to_string(i) + "," + std::to_string(p.strings[i].weight()) + "," +
                fmt(p.strings[i].coefficient) + "\n";
    return text;
}

inline nlohmann::ordered_json summary_json(const RunSummary& s) {
    nlohmann::ordered_json j;
    j["R_Q"] = s.r_q;
    j["l_p"] = s.l_p;
    j["mean_lI"] = s.mean_iterations;
    j["reach_fraction"] = s.reach_fraction;
    j["R_C"] = s.r_c;
    j["mean_energy"] = s.mean_energy;
    j["std_energy"] = s.std_energy;
    j["energy_p10"] = s.energy_p10;
    j["energy_p90"] = s.energy_p90;
    j["mean_fidelity"] = s.mean_fidelity;
    j["std_fidelity"] = s.std_fidelity;
    j["fidelity_p10"] = s.fidelity_p10;
    j["fidelity_p90"] = s.fidelity_p90;
    return j;
}

inline nlohmann::ordered_json fit_json(const ScalingFit& fit) {
    nlohmann::ordered_json j;
    j["resource"] = fit.resource_kind;
    j["exponent"] = fit.exponent;
    j["std_error"] = fit.std_error;
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (const auto& [x, y] : fit.points) pts.push_back({x, y});
    j["points"] = pts;
    return j;
}

}  // namespace io

// ---------------------------------------------------------------------------
// Experiment configuration files

enum class ExperimentKind {
    table_spinless,
    table_spinful,
    staircase,
    scaling,
    molecule,
    jw_stats,
    resources
};

inline ExperimentKind experiment_kind_from_string(const std::string& s) {
    if (s == "table_spinless") return ExperimentKind::table_spinless;
    if (s == "table_spinful") return ExperimentKind::table_spinful;
    if (s == "staircase") return ExperimentKind::staircase;
    if (s == "scaling") return ExperimentKind::scaling;
    if (s == "molecule") return ExperimentKind::molecule;
    if (s == "jw_stats") return ExperimentKind::jw_stats;
    if (s == "resources") return ExperimentKind::resources;
    throw std::invalid_argument("unknown experiment kind: " + s);
}

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::resources;
    GeometryKind geometry = GeometryKind::chain;
    int rows = 1;
    int cols = 12;
    bool spinful = false;
    ModeOrdering ordering = ModeOrdering::row_major;
    double t = 1.0;
    double u = 0.0;
    double v = 0.0;
    double mu = 0.0;
    int fermionic_layers = 0;  // 0 = built-in default for the geometry
    int qubit_layers = 0;
    std::vector<int> scaling_sizes = {6, 8, 10, 12};
    int max_layers = 8;
    double stair_from = 0.0;
    double stair_to = 2.0;
    int stair_points = 21;
    std::string molecule_path;
    int sector = -1;
    std::string reference;  // empty = paradigm-appropriate default
    VqeConfig vqe;
    std::string out_dir = ".";
};

inline ExperimentConfig parse_experiment_config(const nlohmann::json& j) {
    ExperimentConfig c;
    for (const auto& [key, value] : j.items()) {
        if (key == "kind") c.kind = experiment_kind_from_string(value.get<std::string>());
        else if (key == "geometry") c.geometry = geometry_kind_from_string(value.get<std::string>());
        else if (key == "rows") c.rows = value.get<int>();
        else if (key == "cols") c.cols = value.get<int>();
        else if (key == "spinful") c.spinful = value.get<bool>();
        else if (key == "ordering") c.ordering = mode_ordering_from_string(value.get<std::string>());
        else if (key == "t") c.t = value.get<double>();
        else if (key == "U") c.u = value.get<double>();
        else if (key == "V") c.v = value.get<double>();
        else if (key == "mu") c.mu = value.get<double>();
        else if (key == "fermionic_layers") c.fermionic_layers = value.get<int>();
        else if (key == "qubit_layers") c.qubit_layers = value.get<int>();
        else if (key == "scaling_sizes") c.scaling_sizes = value.get<std::vector<int>>();
        else if (key == "max_layers") c.max_layers = value.get<int>();
        else if (key == "stair_from") c.stair_from = value.get<double>();
        else if (key == "stair_to") c.stair_to = value.get<double>();
        else if (key == "stair_points") c.stair_points = value.get<int>();
        else if (key == "molecule") c.molecule_path = value.get<std::string>();
        else if (key == "sector") c.sector = value.get<int>();
        else if (key == "reference") c.reference = value.get<std::string>();
        else if (key == "out") c.out_dir = value.get<std::string>();
        else if (key == "vqe") {
            for (const auto& [vk, vv] : value.items()) {
                if (vk == "max_iterations") c.vqe.max_iterations = vv.get<int>();
                else if (vk == "restarts") c.vqe.restarts = vv.get<int>();
                else if (vk == "init_scale") c.vqe.init_scale = vv.get<double>();
                else if (vk == "seed") c.vqe.seed = vv.get<std::uint64_t>();
                else if (vk == "fd_step") c.vqe.fd_step = vv.get<double>();
                else if (vk == "grad_tolerance") c.vqe.grad_tolerance = vv.get<double>();
                else if (vk == "fidelity_threshold") c.vqe.fidelity_threshold = vv.get<double>();
                else if (vk == "gradient_mode")
                    c.vqe.gradient_mode = gradient_mode_from_string(vv.get<std::string>());
                else if (vk == "threads") c.vqe.threads = vv.get<int>();
                else throw std::invalid_argument("unknown vqe config key: " + vk);
            }
        } else {
            throw std::invalid_argument("unknown config key: " + key);
        }
    }
    if ((c.fermionic_layers < 0) || (c.qubit_layers < 0))
        throw std::invalid_argument("layer counts must not be negative");
    return c;
}

inline ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("malformed config file: " + std::string(e.what()));
    }
    return parse_experiment_config(j);
}

}  // namespace fermivqe
