#include <fermivqe/experiments.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

using namespace fermivqe;

namespace {

struct CliState {
    ExperimentConfig cfg;
    std::string config_path;
    std::string paradigm = "fermionic";
    std::string file;
    int layers = 0;  // 0 = built-in default for the geometry
    bool scan_sectors = false;
};

const std::map<std::string, GeometryKind> kGeometries{
    {"chain", GeometryKind::chain},
    {"ladder", GeometryKind::ladder},
    {"rectangle", GeometryKind::rectangle}};
const std::map<std::string, ModeOrdering> kOrderings{
    {"row_major", ModeOrdering::row_major},
    {"snake", ModeOrdering::snake},
    {"spin_blocked", ModeOrdering::spin_blocked}};
const std::map<std::string, GradientMode> kGradients{
    {"finite_difference", GradientMode::finite_difference},
    {"fd", GradientMode::finite_difference},
    {"adjoint", GradientMode::adjoint}};

void add_common(CLI::App* cmd, CliState& st) {
    cmd->add_option("--config", st.config_path, "JSON experiment configuration file");
    cmd->add_option("--seed", st.cfg.vqe.seed, "base RNG seed");
    cmd->add_option("--restarts", st.cfg.vqe.restarts, "independent optimizer restarts");
    cmd->add_option("--out", st.cfg.out_dir, "output directory for CSV/JSON files");
    cmd->add_option("--threads", st.cfg.vqe.threads, "worker threads for restarts");
}

void add_model(CLI::App* cmd, CliState& st) {
    cmd->add_option("--geometry", st.cfg.geometry, "lattice: chain, ladder, rectangle")
        ->transform(CLI::CheckedTransformer(kGeometries, CLI::ignore_case));
    cmd->add_option("--rows", st.cfg.rows, "lattice rows");
    cmd->add_option("--cols", st.cfg.cols, "lattice columns");
    cmd->add_flag("--spinful", st.cfg.spinful, "two spin species per site");
    cmd->add_option("--ordering", st.cfg.ordering, "mode ordering: row_major, snake, spin_blocked")
        ->transform(CLI::CheckedTransformer(kOrderings, CLI::ignore_case));
    cmd->add_option("-t", st.cfg.t, "hopping amplitude");
    cmd->add_option("-U", st.cfg.u, "on-site interaction (spinful)");
    cmd->add_option("-V", st.cfg.v, "neighbor interaction");
    cmd->add_option("--mu", st.cfg.mu, "chemical potential");
}

void add_vqe_knobs(CLI::App* cmd, CliState& st) {
    cmd->add_option("--max-iterations", st.cfg.vqe.max_iterations, "optimizer iteration cap");
    cmd->add_option("--init-scale", st.cfg.vqe.init_scale, "start-parameter radius (radians)");
    cmd->add_option("--threshold", st.cfg.vqe.fidelity_threshold, "fidelity threshold");
    cmd->add_option("--gradient", st.cfg.vqe.gradient_mode,
                    "gradient mode: finite_difference, adjoint")
        ->transform(CLI::CheckedTransformer(kGradients, CLI::ignore_case));
    cmd->add_option("--reference", st.cfg.reference, "reference pattern: spread, neel, first");
}

FermionHamiltonian model_of(const ExperimentConfig& c, const Geometry& g, const RegisterMap& map) {
    return c.spinful ? build_spinful_hubbard(g, c.t, c.u, c.v, c.mu, map)
                     : build_spinless_hubbard(g, c.t, c.v, c.mu, map);
}

int resolve_layers(const ExperimentConfig& c, Paradigm p, int requested) {
    if (requested > 0) return requested;
    const auto rows = c.spinful ? default_spinful_rows() : default_spinless_rows();
    for (const TableRowSpec& r : rows)
        if (r.kind == c.geometry && r.rows == c.rows && r.cols == c.cols)
            return p == Paradigm::fermionic ? r.fermionic_layers : r.qubit_layers;
    throw std::invalid_argument(
        "no built-in layer count for this geometry; pass a layer count explicitly");
}

ReferencePattern pattern_of(const ExperimentConfig& c) {
    if (!c.reference.empty()) return reference_pattern_from_string(c.reference);
    return default_reference_pattern(c.spinful);
}

std::vector<double> linspace(double from, double to, int n) {
    if (n < 1) throw std::invalid_argument("need at least one grid point");
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i)
        grid[i] = n == 1 ? from : from + (to - from) * double(i) / double(n - 1);
    return grid;
}

std::filesystem::path out_path(const CliState& st, const char* name) {
    return std::filesystem::path(st.cfg.out_dir) / name;
}

nlohmann::ordered_json vqe_summary_json(const GroundSolution& ground, const Ansatz& a,
                                        const VqeResult& result) {
    nlohmann::ordered_json j;
    j["E0_exact"] = ground.energy;
    j["Nf"] = ground.n_f;
    j["R_Q"] = a.r_q;
    j["l_p"] = a.l_p;
    j["depth"] = a.depth_total();
    const RunSummary& s = result.summary;
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
    int evals = 0, failures = 0;
    for (const RunTrace& t : result.traces) {
        evals += t.evaluations;
        failures += t.line_search_failed ? 1 : 0;
    }
    j["mean_evaluations"] = double(evals) / double(result.traces.size());
    j["line_search_failures"] = failures;
    return j;
}

nlohmann::ordered_json config_echo(const CliState& st) {
    nlohmann::ordered_json j;
    j["seed"] = st.cfg.vqe.seed;
    j["restarts"] = st.cfg.vqe.restarts;
    j["max_iterations"] = st.cfg.vqe.max_iterations;
    j["init_scale"] = st.cfg.vqe.init_scale;
    j["fidelity_threshold"] = st.cfg.vqe.fidelity_threshold;
    j["gradient_mode"] =
        st.cfg.vqe.gradient_mode == GradientMode::adjoint ? "adjoint" : "finite_difference";
    return j;
}

void run_ed(const CliState& st) {
    const ExperimentConfig& c = st.cfg;
    const Geometry g = build_geometry(c.geometry, c.rows, c.cols);
    const RegisterMap map = register_map(g, c.spinful, c.ordering);
    const GroundSolution ground = global_ground(model_of(c, g, map));
    std::printf("E0 = %.12f\nNf = %d\ndegeneracy = %zu\n", ground.energy, ground.n_f,
                ground.subspace.size());
}

void run_staircase(const CliState& st) {
    const ExperimentConfig& c = st.cfg;
    const Geometry g = build_geometry(c.geometry, c.rows, c.cols);
    const RegisterMap map = register_map(g, c.spinful, c.ordering);
    const auto builder = [&](double v) {
        return c.spinful ? build_spinful_hubbard(g, c.t, c.u, v, c.mu, map)
                         : build_spinless_hubbard(g, c.t, v, c.mu, map);
    };
    const auto points = staircase(builder, linspace(c.stair_from, c.stair_to, c.stair_points));
    io::write_file(out_path(st, "staircase.csv"), io::staircase_csv(points));
    std::printf("coupling %.6g -> %.6g: Nf %d -> %d (%zu points)\n", points.front().coupling,
                points.back().coupling, points.front().n_f, points.back().n_f, points.size());
    std::printf("wrote %s\n", out_path(st, "staircase.csv").string().c_str());
}

void run_single_vqe(const CliState& st) {
    const ExperimentConfig& c = st.cfg;
    const Geometry g = build_geometry(c.geometry, c.rows, c.cols);
    const RegisterMap map = register_map(g, c.spinful, c.ordering);
    const FermionHamiltonian h = model_of(c, g, map);
    const Paradigm p = paradigm_from_string(st.paradigm);
    const Ansatz a = build_ansatz(g, p, c.spinful, resolve_layers(c, p, st.layers), map);
    const GroundSolution ground = global_ground(h);
    const ReferencePattern pattern = pattern_of(c);

    VqeResult result;
    nlohmann::ordered_json extra;
    if (st.scan_sectors) {
        // Pick the sector variationally instead of trusting the exact solver.
        double best = std::numeric_limits<double>::infinity();
        int best_nf = -1;
        nlohmann::ordered_json scanned = nlohmann::ordered_json::array();
        for (int nf = 0; nf <= h.M; ++nf) {
            const VqeResult r = run_vqe(h, a, ground, c.vqe, pattern, nf);
            scanned.push_back({{"Nf", nf}, {"mean_energy", r.summary.mean_energy}});
            if (r.summary.mean_energy < best) {
                best = r.summary.mean_energy;
                best_nf = nf;
                result = r;
            }
        }
        extra["scanned_sectors"] = scanned;
        extra["selected_Nf"] = best_nf;
        std::printf("sector scan selected Nf = %d\n", best_nf);
    } else {
        result = run_vqe(h, a, ground, c.vqe, pattern);
    }

    nlohmann::ordered_json j = vqe_summary_json(ground, a, result);
    for (auto& [k, v] : extra.items()) j[k] = v;
    j["config"] = config_echo(st);
    io::write_file(out_path(st, "summary.json"), j.dump(2) + "\n");
    io::write_file(out_path(st, "trace.csv"), io::trace_csv(result.traces));
    std::printf("E0 = %.9f, mean energy = %.9f, mean fidelity = %.4f\n", ground.energy,
                result.summary.mean_energy, result.summary.mean_fidelity);
    std::printf("mean l_I = %.2f, reach fraction = %.2f, R_C = %.1f\n",
                result.summary.mean_iterations, result.summary.reach_fraction,
                result.summary.r_c);
    std::printf("wrote %s and %s\n", out_path(st, "summary.json").string().c_str(),
                out_path(st, "trace.csv").string().c_str());
}

void run_table_cmd(const CliState& st, bool optimize, bool custom_geometry) {
    const ExperimentConfig& c = st.cfg;
    TableOptions opt;
    opt.spinful = c.spinful;
    opt.t = c.t;
    opt.u = c.u;
    opt.v = c.v;
    opt.mu = c.mu;
    opt.ordering = c.ordering;
    opt.run_optimization = optimize;
    opt.vqe = c.vqe;
    if (!c.reference.empty()) opt.pattern = reference_pattern_from_string(c.reference);

    std::vector<TableRowSpec> rows;
    if (custom_geometry) {
        TableRowSpec row{c.geometry, c.rows, c.cols, 1, 1};
        row.fermionic_layers = c.fermionic_layers > 0
                                   ? c.fermionic_layers
                                   : resolve_layers(c, Paradigm::fermionic, 0);
        row.qubit_layers =
            c.qubit_layers > 0 ? c.qubit_layers : resolve_layers(c, Paradigm::qubit, 0);
        rows.push_back(row);
    } else {
        rows = c.spinful ? default_spinful_rows() : default_spinless_rows();
        for (TableRowSpec& row : rows) {
            if (c.fermionic_layers > 0) row.fermionic_layers = c.fermionic_layers;
            if (c.qubit_layers > 0) row.qubit_layers = c.qubit_layers;
        }
    }

    const auto cells = run_table(rows, opt);
    io::write_file(out_path(st, "table.csv"), io::table_csv(cells));
    std::printf("%-16s %-10s %3s %5s %5s %6s", "geometry", "paradigm", "L", "R_Q", "l_p", "depth");
    if (optimize) std::printf(" %9s %7s %9s", "mean_lI", "fid", "R_C");
    std::printf("\n");
    for (const TableCell& cell : cells) {
        std::printf("%-16s %-10s %3d %5d %5d %6d", cell.geometry.c_str(),
                    to_string(cell.paradigm), cell.layers, cell.r_q, cell.l_p, cell.depth);
        if (cell.failed)
            std::printf("  FAILED: %s", cell.error.c_str());
        else if (cell.vqe_ran)
            std::printf(" %9.2f %7.4f %9.1f", cell.summary.mean_iterations,
                        cell.summary.mean_fidelity, cell.summary.r_c);
        std::printf("\n");
    }
    if (optimize) {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (const TableCell& cell : cells) {
            nlohmann::ordered_json cj;
            cj["geometry"] = cell.geometry;
            cj["paradigm"] = to_string(cell.paradigm);
            cj["layers"] = cell.layers;
            cj["R_Q"] = cell.r_q;
            cj["l_p"] = cell.l_p;
            cj["depth"] = cell.depth;
            cj["failed"] = cell.failed;
            if (cell.vqe_ran) {
                cj["E0_exact"] = cell.e0;
                cj["Nf"] = cell.n_f;
                cj["summary"] = io::summary_json(cell.summary);
            }
            j.push_back(cj);
        }
        nlohmann::ordered_json root;
        root["cells"] = j;
        root["config"] = config_echo(st);
        io::write_file(out_path(st, "summary.json"), root.dump(2) + "\n");
    }
    std::printf("wrote %s\n", out_path(st, "table.csv").string().c_str());
}

void run_scale_cmd(const CliState& st) {
    const ExperimentConfig& c = st.cfg;
    ScalingOptions opt;
    opt.sizes = c.scaling_sizes;
    opt.t = c.t;
    opt.v = c.v;
    opt.mu = c.mu;
    opt.max_layers = c.max_layers;
    opt.vqe = c.vqe;
    if (!c.reference.empty()) opt.pattern = reference_pattern_from_string(c.reference);

    std::vector<Paradigm> paradigms;
    if (st.paradigm == "both") paradigms = {Paradigm::fermionic, Paradigm::qubit};
    else paradigms = {paradigm_from_string(st.paradigm)};

    std::vector<ScalingResult> results;
    nlohmann::ordered_json fits = nlohmann::ordered_json::array();
    for (Paradigm p : paradigms) {
        results.push_back(run_scaling(p, opt));
        const ScalingResult& r = results.back();
        nlohmann::ordered_json j;
        j["paradigm"] = to_string(p);
        j["fit_ok"] = r.fit_ok;
        if (r.fit_ok) {
            j["beta_Q"] = io::fit_json(r.fit_rq);
            j["beta_C"] = io::fit_json(r.fit_rc);
            std::printf("%s: beta_Q = %.3f +- %.3f, beta_C = %.3f +- %.3f\n", to_string(p),
                        r.fit_rq.exponent, r.fit_rq.std_error, r.fit_rc.exponent,
                        r.fit_rc.std_error);
        } else {
            std::printf("%s: too few converged sizes for a fit\n", to_string(p));
        }
        for (const ScalingPoint& pt : r.points)
            if (!pt.converged)
                std::printf("%s: N=%d excluded (no convergence within %d layers)\n", to_string(p),
                            pt.sites, opt.max_layers);
        fits.push_back(j);
    }
    io::write_file(out_path(st, "scaling.csv"), io::scaling_csv(results));
    nlohmann::ordered_json root;
    root["fits"] = fits;
    root["config"] = config_echo(st);
    io::write_file(out_path(st, "summary.json"), root.dump(2) + "\n");
    std::printf("wrote %s and %s\n", out_path(st, "scaling.csv").string().c_str(),
                out_path(st, "summary.json").string().c_str());
}

void run_molecule_cmd(const CliState& st) {
    const ExperimentConfig& c = st.cfg;
    const std::string path = !st.file.empty()       ? st.file
                             : !c.molecule_path.empty() ? c.molecule_path
                                                        : "data/water_4orbital.json";
    const FermionHamiltonian h = load_molecular_hamiltonian(path);
    MoleculeOptions opt;
    if (c.fermionic_layers > 0) opt.fermionic_layers = c.fermionic_layers;
    if (c.qubit_layers > 0) opt.qubit_layers = c.qubit_layers;
    opt.sector = c.sector;
    opt.vqe = c.vqe;
    if (!c.reference.empty()) opt.pattern = reference_pattern_from_string(c.reference);

    const MoleculeResult result = run_molecule(h, opt);
    std::printf("E0 = %.9f in Nf = %d\n", result.ground.energy, result.ground.n_f);
    std::printf("fermionic: R_Q = %d, mean l_I = %.2f, mean fidelity = %.4f\n",
                result.fermionic_resources.r_q, result.fermionic.summary.mean_iterations,
                result.fermionic.summary.mean_fidelity);
    std::printf("qubit:     R_Q = %d, mean l_I = %.2f, mean fidelity = %.4f\n",
                result.qubit_resources.r_q, result.qubit.summary.mean_iterations,
                result.qubit.summary.mean_fidelity);

    nlohmann::ordered_json root;
    root["file"] = path;
    root["E0_exact"] = result.ground.energy;
    root["Nf"] = result.ground.n_f;
    nlohmann::ordered_json fj = io::summary_json(result.fermionic.summary);
    fj["depth"] = result.fermionic_resources.depth_total;
    nlohmann::ordered_json qj = io::summary_json(result.qubit.summary);
    qj["depth"] = result.qubit_resources.depth_total;
    root["fermionic"] = fj;
    root["qubit"] = qj;
    root["config"] = config_echo(st);
    io::write_file(out_path(st, "summary.json"), root.dump(2) + "\n");
    io::write_file(out_path(st, "trace_fermionic.csv"), io::trace_csv(result.fermionic.traces));
    io::write_file(out_path(st, "trace_qubit.csv"), io::trace_csv(result.qubit.traces));
    std::printf("wrote %s\n", out_path(st, "summary.json").string().c_str());
}

void run_jw_stats(const CliState& st) {
    const ExperimentConfig& c = st.cfg;
    FermionHamiltonian h;
    if (!st.file.empty()) {
        h = load_molecular_hamiltonian(st.file);
    } else {
        const Geometry g = build_geometry(c.geometry, c.rows, c.cols);
        const RegisterMap map = register_map(g, c.spinful, c.ordering);
        h = model_of(c, g, map);
    }
    const PauliSum pauli = jw_transform(h);
    const PauliStats stats = pauli_stats(pauli);
    io::write_file(out_path(st, "jw_stats.csv"), io::jw_stats_csv(pauli));
    std::printf("terms = %d, max weight = %d\n", stats.term_count, stats.max_weight);
    for (std::size_t w = 0; w < stats.weight_histogram.size(); ++w)
        if (stats.weight_histogram[w] > 0)
            std::printf("weight %zu: %d\n", w, stats.weight_histogram[w]);
    std::printf("wrote %s\n", out_path(st, "jw_stats.csv").string().c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Statevector benchmarks of fermionic-gate versus qubit-gate variational "
                 "ground-state searches on Hubbard-type and molecular Hamiltonians"};
    app.require_subcommand(1);
    CliState st;

    // A config file forms the baseline; explicit flags override it.
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") st.cfg = load_experiment_config(argv[i + 1]);

    auto* ed = app.add_subcommand("ed", "exact ground state of a built-in model");
    add_common(ed, st);
    add_model(ed, st);
    ed->callback([&] { run_ed(st); });

    auto* stair = app.add_subcommand("staircase", "ground sector versus neighbor coupling");
    add_common(stair, st);
    add_model(stair, st);
    stair->add_option("--from", st.cfg.stair_from, "first coupling value");
    stair->add_option("--to", st.cfg.stair_to, "last coupling value");
    stair->add_option("--points", st.cfg.stair_points, "grid size");
    stair->callback([&] { run_staircase(st); });

    auto* vqe = app.add_subcommand("vqe", "variational optimization on one configuration");
    add_common(vqe, st);
    add_model(vqe, st);
    add_vqe_knobs(vqe, st);
    vqe->add_option("--paradigm", st.paradigm, "fermionic or qubit");
    vqe->add_option("--layers", st.layers, "ansatz layers (0 = built-in default)");
    vqe->add_flag("--scan-sectors", st.scan_sectors,
                  "optimize in every particle-number sector and keep the best");
    vqe->callback([&] { run_single_vqe(st); });

    auto* resources = app.add_subcommand("resources", "gate and parameter counts only");
    add_common(resources, st);
    add_model(resources, st);
    resources->add_option("--fermionic-layers", st.cfg.fermionic_layers, "override fermionic L");
    resources->add_option("--qubit-layers", st.cfg.qubit_layers, "override qubit L");
    auto* res_geo = resources->get_option("--geometry");
    resources->callback([&] { run_table_cmd(st, false, res_geo->count() > 0); });

    auto* table = app.add_subcommand("table", "benchmark table with optimization runs");
    add_common(table, st);
    add_model(table, st);
    add_vqe_knobs(table, st);
    table->add_option("--fermionic-layers", st.cfg.fermionic_layers, "override fermionic L");
    table->add_option("--qubit-layers", st.cfg.qubit_layers, "override qubit L");
    auto* table_geo = table->get_option("--geometry");
    table->callback([&] { run_table_cmd(st, true, table_geo->count() > 0); });

    auto* scale = app.add_subcommand("scale", "resource scaling exponents over chain sizes");
    add_common(scale, st);
    add_model(scale, st);
    add_vqe_knobs(scale, st);
    st.paradigm = "fermionic";
    scale->add_option("--paradigm", st.paradigm, "fermionic, qubit, or both");
    scale->add_option("--sizes", st.cfg.scaling_sizes, "chain lengths to sweep");
    scale->add_option("--max-layers", st.cfg.max_layers, "layer budget per size");
    scale->callback([&] {
        if (scale->get_option("--paradigm")->count() == 0) st.paradigm = "both";
        run_scale_cmd(st);
    });

    auto* molecule = app.add_subcommand("molecule", "ingest a molecular Hamiltonian and run both paradigms");
    add_common(molecule, st);
    add_vqe_knobs(molecule, st);
    molecule->add_option("--file", st.file, "Hamiltonian JSON file");
    molecule->add_option("--fermionic-layers", st.cfg.fermionic_layers, "fermionic ansatz layers");
    molecule->add_option("--qubit-layers", st.cfg.qubit_layers, "qubit ansatz layers");
    molecule->add_option("--sector", st.cfg.sector, "electron count (-1 = scan)");
    molecule->callback([&] { run_molecule_cmd(st); });

    auto* jw = app.add_subcommand("jw-stats", "Pauli weight statistics of the encoded model");
    add_common(jw, st);
    add_model(jw, st);
    jw->add_option("--file", st.file, "molecular Hamiltonian JSON file");
    jw->callback([&] { run_jw_stats(st); });

    try {
        CLI11_PARSE(app, argc, argv);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
