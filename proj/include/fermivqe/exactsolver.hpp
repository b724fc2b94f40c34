#pragma once

#include <fermivqe/fock.hpp>
#include <fermivqe/hamiltonian.hpp>

#include <Eigen/Dense>

#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

namespace fermivqe {

struct SolverOptions {
    int dense_cutoff = 1024;       // largest sector dimension handled by dense eig
    double degeneracy_tol = 1e-9;  // absolute window for grouping ground states
    int max_krylov = 200;
    int max_restarts = 40;
    double residual_tol = 1e-10;
    std::uint64_t seed = 12345;
};

/// Ground energy, its particle-number sector, and an orthonormal basis of the
/// (possibly degenerate) ground eigenspace embedded in the full 2^M space.
struct GroundSolution {
    double energy = 0.0;
    int n_f = 0;
    std::vector<StateVector> subspace;
    double degeneracy_tol = 1e-9;
};

/// Squared projection of the state onto the ground subspace.
inline double fidelity(const StateVector& psi, const GroundSolution& ground) {
    double f = 0.0;
    for (const StateVector& v : ground.subspace) f += std::norm(inner_product(v, psi));
    return f;
}

namespace detail {

/// H restricted to a fixed particle-number sector, applied in packed
/// coordinates through a mask -> sector-index table.
struct SectorOperator {
    const FermionHamiltonian* H = nullptr;
    std::vector<mask_t> basis;
    std::vector<std::int32_t> index_of;

    SectorOperator(const FermionHamiltonian& h, int n_f) : H(&h) {
        basis = sector_basis(h.M, n_f);
        index_of.assign(std::size_t(1) << h.M, -1);
        for (std::size_t i = 0; i < basis.size(); ++i) index_of[basis[i]] = std::int32_t(i);
    }

    int dim() const { return static_cast<int>(basis.size()); }

    void matvec(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const {
        y.setZero(dim());
        for (int i = 0; i < dim(); ++i) {
            const cplx amp = x[i];
            if (amp == cplx(0)) continue;
            const mask_t m = basis[i];
            for (const FermionTerm& term : H->terms) {
                mask_t cur = m;
                int sign = 1;
                bool alive = true;
                for (auto it = term.ops.rbegin(); it != term.ops.rend(); ++it) {
                    const mask_t bit = mask_t(1) << it->mode;
                    if (it->dagger == bool(cur & bit)) {
                        alive = false;
                        break;
                    }
                    sign *= parity_below(cur, it->mode);
                    cur ^= bit;
                }
                if (alive) y[index_of[cur]] += term.coefficient * double(sign) * amp;
            }
        }
    }

    Eigen::MatrixXcd dense() const {
        Eigen::MatrixXcd mat(dim(), dim());
        Eigen::VectorXcd col(dim()), out(dim());
        for (int j = 0; j < dim(); ++j) {
            col.setZero();
            col[j] = cplx(1);
            matvec(col, out);
            mat.col(j) = out;
        }
        return mat;
    }
};

inline bool all_real(const FermionHamiltonian& h) {
    for (const FermionTerm& t : h.terms)
        if (t.coefficient.imag() != 0.0) return false;
    return true;
}

inline StateVector embed(int M, const std::vector<mask_t>& basis, const Eigen::VectorXcd& v) {
    StateVector psi(M);
    for (std::size_t i = 0; i < basis.size(); ++i) psi[basis[i]] = v[i];
    return psi;
}

struct LanczosResult {
    double energy = 0.0;
    Eigen::VectorXcd vector;
};

/// Lanczos with full reorthogonalization and Ritz restarts. `deflate` holds
/// unit vectors whose span is projected out (used to dig out degenerate ground
/// states one at a time). Throws if the restart budget is exhausted.
inline LanczosResult lanczos_ground(const SectorOperator& op,
                                    const std::vector<Eigen::VectorXcd>& deflate,
                                    const SolverOptions& opts, std::uint64_t salt = 0) {
    const int n = op.dim();
    if (n == 0) throw std::invalid_argument("lanczos_ground: empty sector");

    const auto project_out = [&](Eigen::VectorXcd& v) {
        for (const auto& d : deflate) v -= d * d.dot(v);
    };

    // The start vector must differ between deflation passes: a Lanczos ground
    // vector is the projection of its start onto the ground subspace, so
    // reusing the start would leave exactly zero overlap with the remaining
    // degenerate partners.
    std::seed_seq seq{opts.seed, salt};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> gauss;
    Eigen::VectorXcd start(n);
    for (int i = 0; i < n; ++i) start[i] = cplx(gauss(rng), gauss(rng));
    project_out(start);
    if (start.norm() < 1e-12) throw std::runtime_error("lanczos_ground: deflated space exhausted");
    start.normalize();

    const int kmax = std::min(opts.max_krylov, n);
    for (int restart = 0; restart < opts.max_restarts; ++restart) {
        std::vector<Eigen::VectorXcd> V{start};
        Eigen::VectorXd alpha(kmax), beta(kmax);
        Eigen::VectorXcd w(n);

        for (int k = 0; k < kmax; ++k) {
            op.matvec(V[k], w);
            project_out(w);
            if (k > 0) w -= beta[k - 1] * V[k - 1];
            alpha[k] = w.dot(V[k]).real();
            w -= alpha[k] * V[k];
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& v : V) w -= v * v.dot(w);
            beta[k] = w.norm();

            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
            tri.computeFromTridiagonal(alpha.head(k + 1), beta.head(k), Eigen::ComputeEigenvectors);
            const double theta = tri.eigenvalues()[0];
            const Eigen::VectorXd s = tri.eigenvectors().col(0);
            const double resid = std::abs(beta[k] * s[k]);

            const bool breakdown = beta[k] < 1e-13;
            if (resid < opts.residual_tol * std::max(1.0, std::abs(theta)) || breakdown ||
                k == kmax - 1) {
                Eigen::VectorXcd ritz = Eigen::VectorXcd::Zero(n);
                for (int i = 0; i <= k; ++i) ritz += s[i] * V[i];
                project_out(ritz);
                ritz.normalize();
                if (resid < opts.residual_tol * std::max(1.0, std::abs(theta)) || breakdown)
                    return {theta, ritz};
                start = ritz; // restart from the best Ritz vector
                break;
            }
            V.push_back(w / beta[k]);
        }
    }
    throw std::runtime_error("lanczos_ground: no convergence within the restart budget");
}

} // namespace detail

/// Lowest eigenvalue and eigenvectors of H restricted to the N_f sector,
/// embedded back into the full representation. Dense for sector dimensions up
/// to opts.dense_cutoff, Lanczos above.
inline std::pair<double, std::vector<StateVector>> ground_in_sector(const FermionHamiltonian& h,
                                                                    int n_f,
                                                                    const SolverOptions& opts = {}) {
    if (!is_number_conserving(h))
        throw std::invalid_argument("ground_in_sector: Hamiltonian does not conserve particle number");
    const detail::SectorOperator op(h, n_f);
    const int n = op.dim();
    std::vector<StateVector> vectors;

    if (n <= opts.dense_cutoff) {
        double e0;
        Eigen::VectorXd evals;
        Eigen::MatrixXcd evecs;
        if (detail::all_real(h)) {
            const Eigen::MatrixXd mat = op.dense().real();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(mat);
            evals = eig.eigenvalues();
            evecs = eig.eigenvectors().cast<cplx>();
        } else {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(op.dense());
            evals = eig.eigenvalues();
            evecs = eig.eigenvectors();
        }
        e0 = evals[0];
        for (int i = 0; i < n && evals[i] <= e0 + opts.degeneracy_tol; ++i)
            vectors.push_back(detail::embed(h.M, op.basis, evecs.col(i)));
        return {e0, vectors};
    }

    std::vector<Eigen::VectorXcd> found;
    auto first = detail::lanczos_ground(op, found, opts);
    const double e0 = first.energy;
    found.push_back(first.vector);
    vectors.push_back(detail::embed(h.M, op.basis, first.vector));
    constexpr int max_degeneracy = 16;
    int misses = 0;
    while (static_cast<int>(found.size()) < std::min(n, max_degeneracy)) {
        detail::LanczosResult next;
        try {
            next = detail::lanczos_ground(op, found, opts, found.size() + 977 * misses);
        } catch (const std::runtime_error&) {
            break; // deflated space exhausted
        }
        if (next.energy > e0 + opts.degeneracy_tol) {
            // Retry once with a different start before concluding the
            // degenerate subspace is exhausted.
            if (++misses >= 2) break;
            continue;
        }
        misses = 0;
        found.push_back(next.vector);
        vectors.push_back(detail::embed(h.M, op.basis, next.vector));
    }
    return {e0, vectors};
}

namespace detail {

/// Cheap per-sector ground-energy estimate used to shortlist sectors before
/// the exact solve: tiny sectors are solved densely, the rest by Lanczos.
inline double sector_energy_estimate(const FermionHamiltonian& h, int n_f,
                                     const SolverOptions& opts) {
    const SectorOperator op(h, n_f);
    if (op.dim() <= 64) {
        if (all_real(h)) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(op.dense().real());
            return eig.eigenvalues()[0];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(op.dense());
        return eig.eigenvalues()[0];
    }
    return lanczos_ground(op, {}, opts).energy;
}

} // namespace detail

/// Minimum over all particle-number sectors. Sectors are scanned with a fast
/// energy estimate first; only those within the degeneracy window of the
/// minimum are solved exactly. Ties across sectors resolve toward smaller N_f.
inline GroundSolution global_ground(const FermionHamiltonian& h, const SolverOptions& opts = {}) {
    if (!is_number_conserving(h))
        throw std::invalid_argument("global_ground: Hamiltonian does not conserve particle number");

    std::vector<double> estimate(h.M + 1);
    double best = std::numeric_limits<double>::infinity();
    for (int nf = 0; nf <= h.M; ++nf) {
        estimate[nf] = detail::sector_energy_estimate(h, nf, opts);
        best = std::min(best, estimate[nf]);
    }

    const double margin = 10 * opts.degeneracy_tol + 1e-12;
    GroundSolution sol;
    sol.degeneracy_tol = opts.degeneracy_tol;
    sol.energy = std::numeric_limits<double>::infinity();
    for (int nf = 0; nf <= h.M; ++nf) {
        if (estimate[nf] > best + margin) continue;
        auto [e, vecs] = ground_in_sector(h, nf, opts);
        if (e < sol.energy - opts.degeneracy_tol) {
            sol.energy = e;
            sol.n_f = nf;
            sol.subspace = std::move(vecs);
        }
        // ascending scan: an equal-energy later sector never replaces n_f
    }
    return sol;
}

struct StaircasePoint {
    double coupling = 0.0;
    double energy = 0.0;
    int n_f = 0;
};

/// Ground sector versus a monotone coupling grid; `builder` maps a grid value
/// to the model Hamiltonian at that coupling.
inline std::vector<StaircasePoint> staircase(
    const std::function<FermionHamiltonian(double)>& builder, const std::vector<double>& grid,
    const SolverOptions& opts = {}) {
    if (!std::is_sorted(grid.begin(), grid.end()) &&
        !std::is_sorted(grid.rbegin(), grid.rend()))
        throw std::invalid_argument("staircase: coupling grid must be monotone");
    std::vector<StaircasePoint> points;
    for (double g : grid) {
        const auto sol = global_ground(builder(g), opts);
        points.push_back({g, sol.energy, sol.n_f});
    }
    return points;
}

} // namespace fermivqe
