#pragma once

#include <fermivqe/fock.hpp>
#include <fermivqe/lattice.hpp>

#include <complex>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fermivqe {

struct FermionOp {
    int mode = 0;
    bool dagger = false;

    friend bool operator==(const FermionOp&, const FermionOp&) = default;
    friend auto operator<=>(const FermionOp&, const FermionOp&) = default;
};

/// coefficient * op[0] op[1] ... op[k-1], applied right to left: op[k-1] hits
/// the state first. An empty op list is a constant (identity) term.
struct FermionTerm {
    cplx coefficient{0.0, 0.0};
    std::vector<FermionOp> ops;
};

struct FermionHamiltonian {
    int M = 0;
    std::vector<FermionTerm> terms;
};

namespace detail {

inline std::vector<FermionOp> adjoint_ops(const std::vector<FermionOp>& ops) {
    std::vector<FermionOp> adj(ops.rbegin(), ops.rend());
    for (FermionOp& op : adj) op.dagger = !op.dagger;
    return adj;
}

} // namespace detail

/// Checks that the term list equals its adjoint term list: coefficients are
/// aggregated by exact operator sequence and every sequence must carry the
/// conjugate of its adjoint sequence's coefficient.
inline bool is_hermitian(const FermionHamiltonian& h, double tol = 1e-10) {
    std::map<std::vector<FermionOp>, cplx> agg;
    for (const FermionTerm& t : h.terms) agg[t.ops] += t.coefficient;
    for (const auto& [ops, c] : agg) {
        const auto adj = detail::adjoint_ops(ops);
        const auto it = agg.find(adj);
        const cplx partner = (it == agg.end()) ? cplx(0) : it->second;
        if (std::abs(c - std::conj(partner)) > tol * std::max(1.0, std::abs(c))) return false;
    }
    return true;
}

/// True when every term has as many creations as annihilations.
inline bool is_number_conserving(const FermionHamiltonian& h) {
    for (const FermionTerm& t : h.terms) {
        int balance = 0;
        for (const FermionOp& op : t.ops) balance += op.dagger ? 1 : -1;
        if (balance != 0) return false;
    }
    return true;
}

namespace detail {

inline void check_built(const FermionHamiltonian& h) {
    for (const FermionTerm& t : h.terms)
        for (const FermionOp& op : t.ops)
            if (op.mode < 0 || op.mode >= h.M)
                throw std::invalid_argument("hamiltonian: mode index out of range");
    if (!is_hermitian(h)) throw std::invalid_argument("hamiltonian: term list is not Hermitian");
}

inline void add_hopping(FermionHamiltonian& h, double t, int m1, int m2) {
    if (t == 0.0) return;
    h.terms.push_back({cplx(-t), {{m1, true}, {m2, false}}});
    h.terms.push_back({cplx(-t), {{m2, true}, {m1, false}}});
}

inline void add_density_density(FermionHamiltonian& h, double v, int m1, int m2) {
    if (v == 0.0) return;
    // n_m1 n_m2 written as c†_m1 c†_m2 c_m2 c_m1 so the op sequence is its own
    // adjoint (m1 != m2 always holds for bond and on-site spin pairs).
    h.terms.push_back({cplx(v), {{m1, true}, {m2, true}, {m2, false}, {m1, false}}});
}

inline void add_number(FermionHamiltonian& h, double c, int m) {
    if (c == 0.0) return;
    h.terms.push_back({cplx(c), {{m, true}, {m, false}}});
}

} // namespace detail

/// H = -t sum_<jj'> (c†_j c_j' + h.c.) + V sum_<jj'> n_j n_j' - mu sum_j n_j
/// over M = N spinless modes, mode index = row-major site index.
inline FermionHamiltonian build_spinless_hubbard(const Geometry& g, double t, double V,
                                                 double mu = 0.0) {
    FermionHamiltonian h;
    h.M = g.num_sites();
    for (const Bond& b : g.bonds) {
        detail::add_hopping(h, t, b.a, b.b);
        detail::add_density_density(h, V, b.a, b.b);
    }
    for (int s = 0; s < g.num_sites(); ++s) detail::add_number(h, -mu, s);
    detail::check_built(h);
    return h;
}

/// Spinless model with sites relabeled through a register map, so Hamiltonian
/// modes line up with circuits built from the same map under any ordering.
inline FermionHamiltonian build_spinless_hubbard(const Geometry& g, double t, double V, double mu,
                                                 const RegisterMap& map) {
    if (map.spinful)
        throw std::invalid_argument("build_spinless_hubbard: register map must be spinless");
    FermionHamiltonian h;
    h.M = g.num_sites();
    for (const Bond& b : g.bonds) {
        detail::add_hopping(h, t, map.mode_of(b.a), map.mode_of(b.b));
        detail::add_density_density(h, V, map.mode_of(b.a), map.mode_of(b.b));
    }
    for (int s = 0; s < g.num_sites(); ++s) detail::add_number(h, -mu, map.mode_of(s));
    detail::check_built(h);
    return h;
}

/// Spinful Hubbard model over M = 2N modes laid out by the register map:
/// hopping per bond per spin, U n_up n_down per site, V expanded into the four
/// spin-resolved density products per bond, and a -mu density term per mode.
inline FermionHamiltonian build_spinful_hubbard(const Geometry& g, double t, double U, double V,
                                                double mu, const RegisterMap& map) {
    if (!map.spinful) throw std::invalid_argument("build_spinful_hubbard: need a spinful register map");
    FermionHamiltonian h;
    h.M = map.num_modes();
    for (const Bond& b : g.bonds)
        for (Spin s : {Spin::up, Spin::down})
            detail::add_hopping(h, t, map.mode_of(b.a, s), map.mode_of(b.b, s));
    for (int j = 0; j < g.num_sites(); ++j)
        detail::add_density_density(h, U, map.mode_of(j, Spin::up), map.mode_of(j, Spin::down));
    for (const Bond& b : g.bonds)
        for (Spin sa : {Spin::up, Spin::down})
            for (Spin sb : {Spin::up, Spin::down})
                detail::add_density_density(h, V, map.mode_of(b.a, sa), map.mode_of(b.b, sb));
    for (int j = 0; j < g.num_sites(); ++j)
        for (Spin s : {Spin::up, Spin::down}) detail::add_number(h, -mu, map.mode_of(j, s));
    detail::check_built(h);
    return h;
}

/// H|psi>, term by term. Each creation/annihilation on a basis state carries
/// the canonical-ordering sign (-1)^(occupied modes below it) and annihilates
/// the component when the occupancy conflicts.
inline StateVector apply(const FermionHamiltonian& h, const StateVector& psi) {
    if (h.M != psi.M) throw std::invalid_argument("apply: dimension mismatch");
    StateVector out(psi.M);
    for (mask_t m = 0; m < psi.dim(); ++m) {
        const cplx amp = psi[m];
        if (amp == cplx(0)) continue;
        for (const FermionTerm& term : h.terms) {
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
            if (alive) out[cur] += term.coefficient * double(sign) * amp;
        }
    }
    return out;
}

inline double expectation(const FermionHamiltonian& h, const StateVector& psi) {
    const cplx val = inner_product(psi, apply(h, psi));
    if (std::abs(val.imag()) > 1e-10)
        throw std::runtime_error("expectation: non-real value, Hamiltonian not Hermitian?");
    return val.real();
}

} // namespace fermivqe
