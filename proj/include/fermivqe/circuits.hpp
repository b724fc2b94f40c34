#pragma once

#include <fermivqe/fock.hpp>
#include <fermivqe/lattice.hpp>

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace fermivqe {

enum class Paradigm { fermionic, qubit };

inline Paradigm paradigm_from_string(const std::string& s) {
    if (s == "fermionic") return Paradigm::fermionic;
    if (s == "qubit") return Paradigm::qubit;
    throw std::invalid_argument("unknown paradigm: " + s);
}

inline const char* to_string(Paradigm p) {
    return p == Paradigm::fermionic ? "fermionic" : "qubit";
}

namespace detail {

struct Block {
    cplx u11, u12, u21, u22;
};

/// 2x2 unitary of the tunneling gate on the ordered pair basis
/// {|n_j=1, n_j'=0>, |n_j=0, n_j'=1>}, for parity factor p = +-1.
/// Generator: G = (t1/2)(e^{+i t2} c†_j c_j' + e^{-i t2} c†_j' c_j)
///              + (t3/2)(n_j - n_j'), U = e^{-iG}.
inline Block tunneling_block(double t1, double t2, double t3, int p) {
    const double omega = std::hypot(t1, t3);
    const double c = std::cos(0.5 * omega);
    // sh = sin(omega/2)/omega, smooth through omega = 0.
    const double sh = (omega < 1e-8) ? 0.5 - omega * omega / 48.0 : std::sin(0.5 * omega) / omega;
    const cplx e2 = std::exp(cplx(0, t2));
    Block b;
    b.u11 = cplx(c, -t3 * sh);
    b.u22 = cplx(c, +t3 * sh);
    b.u12 = cplx(0, -t1 * p * sh) * e2;
    b.u21 = cplx(0, -t1 * p * sh) * std::conj(e2);
    return b;
}

inline Block dagger(const Block& b) {
    return {std::conj(b.u11), std::conj(b.u21), std::conj(b.u12), std::conj(b.u22)};
}

/// dU/dtheta_slot of the tunneling block via the spectral (Daleckii-Krein)
/// formula dU = sum_{a,b} phi(l_a, l_b) P_a dG P_b with
/// phi(l, m) = -i e^{-i(l+m)/2} sinc((l-m)/2) and eigenvalues +-omega/2.
inline std::array<Block, 3> tunneling_derivative_blocks(double t1, double t2, double t3, int p) {
    using M2 = Eigen::Matrix2cd;
    const cplx e2 = std::exp(cplx(0, t2));
    const cplx i_(0, 1);

    M2 g;
    g << cplx(0.5 * t3), 0.5 * t1 * double(p) * e2,
         0.5 * t1 * double(p) * std::conj(e2), cplx(-0.5 * t3);

    std::array<M2, 3> dg;
    dg[0] << cplx(0), 0.5 * double(p) * e2, 0.5 * double(p) * std::conj(e2), cplx(0);
    dg[1] << cplx(0), 0.5 * t1 * double(p) * i_ * e2, -0.5 * t1 * double(p) * i_ * std::conj(e2),
        cplx(0);
    dg[2] << cplx(0.5), cplx(0), cplx(0), cplx(-0.5);

    const double omega = std::hypot(t1, t3);
    std::array<Block, 3> out;
    if (omega < 1e-12) {
        for (int k = 0; k < 3; ++k) {
            const M2 du = -i_ * dg[k];
            out[k] = {du(0, 0), du(0, 1), du(1, 0), du(1, 1)};
        }
        return out;
    }

    const double lam[2] = {+0.5 * omega, -0.5 * omega};
    const M2 n = g / (0.5 * omega);
    const std::array<M2, 2> proj = {0.5 * (M2::Identity() + n), 0.5 * (M2::Identity() - n)};
    const auto phi = [&](double a, double b) {
        const double half = 0.5 * (a - b);
        const double sinc = (std::abs(half) < 1e-8) ? 1.0 - half * half / 6.0 : std::sin(half) / half;
        return -i_ * std::exp(cplx(0, -0.5 * (a + b))) * sinc;
    };
    for (int k = 0; k < 3; ++k) {
        M2 du = M2::Zero();
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) du += phi(lam[a], lam[b]) * proj[a] * dg[k] * proj[b];
        out[k] = {du(0, 0), du(0, 1), du(1, 0), du(1, 1)};
    }
    return out;
}

inline void check_pair(const StateVector& psi, int j, int jp) {
    if (j < 0 || j >= psi.M || jp < 0 || jp >= psi.M)
        throw std::invalid_argument("gate: mode out of range");
    if (j == jp) throw std::invalid_argument("gate: modes must differ");
}

/// Sweeps all basis pairs related by moving one particle between modes j and
/// j' and applies `pick(parity) -> Block` on the (j occupied, j' occupied)
/// coordinates. States with equal occupancy on the two modes are untouched.
template <class PickBlock>
inline void sweep_pair(StateVector& psi, int j, int jp, PickBlock&& pick) {
    const mask_t bj = mask_t(1) << j;
    const mask_t bjp = mask_t(1) << jp;
    for (mask_t m = 0; m < psi.dim(); ++m) {
        if (!(m & bj) || (m & bjp)) continue;
        const mask_t partner = m ^ bj ^ bjp;
        const Block& b = pick(parity_between(m, j, jp));
        const cplx a1 = psi[m], a2 = psi[partner];
        psi[m] = b.u11 * a1 + b.u12 * a2;
        psi[partner] = b.u21 * a1 + b.u22 * a2;
    }
}

} // namespace detail

/// Fermionic tunneling gate U^tun_{jj'}(t1, t2, t3): identity on equal
/// occupations, a parity-dressed 2x2 rotation on the one-particle pair space.
inline void apply_tunneling(StateVector& psi, int j, int jp, double t1, double t2, double t3,
                            bool adjoint = false) {
    detail::check_pair(psi, j, jp);
    detail::Block bp = detail::tunneling_block(t1, t2, t3, +1);
    detail::Block bm = detail::tunneling_block(t1, t2, t3, -1);
    if (adjoint) {
        bp = detail::dagger(bp);
        bm = detail::dagger(bm);
    }
    detail::sweep_pair(psi, j, jp, [&](int p) -> const detail::Block& { return p > 0 ? bp : bm; });
}

/// Fermionic interaction gate: phase e^{-i theta} when both modes are
/// occupied, identity otherwise. Diagonal, no parity factor.
inline void apply_interaction(StateVector& psi, int j, int jp, double theta, bool adjoint = false) {
    detail::check_pair(psi, j, jp);
    const mask_t both = (mask_t(1) << j) | (mask_t(1) << jp);
    const cplx phase = std::exp(cplx(0, adjoint ? theta : -theta));
    for (mask_t m = 0; m < psi.dim(); ++m)
        if ((m & both) == both) psi[m] *= phase;
}

/// Qubit gate e^{+i[tpar (XX + YY) + tperp ZZ]} on registers (j, j'):
/// phase e^{+i tperp} on the even-occupancy subspace, and
/// e^{-i tperp} [cos(2 tpar) I + i sin(2 tpar) swap] on the odd one.
inline void apply_xy_zz(StateVector& psi, int j, int jp, double tpar, double tperp,
                        bool adjoint = false) {
    detail::check_pair(psi, j, jp);
    const double sgn = adjoint ? -1.0 : 1.0;
    const cplx even = std::exp(cplx(0, sgn * tperp));
    const cplx oddp = std::exp(cplx(0, -sgn * tperp));
    const detail::Block b{oddp * std::cos(2 * tpar), oddp * cplx(0, sgn * std::sin(2 * tpar)),
                          oddp * cplx(0, sgn * std::sin(2 * tpar)), oddp * std::cos(2 * tpar)};
    const mask_t bj = mask_t(1) << j;
    const mask_t bjp = mask_t(1) << jp;
    for (mask_t m = 0; m < psi.dim(); ++m) {
        const bool oj = m & bj, ojp = m & bjp;
        if (oj == ojp) psi[m] *= even;
    }
    detail::sweep_pair(psi, j, jp, [&](int) -> const detail::Block& { return b; });
}

/// R^z_j(theta) = e^{-i(theta/2) Z_j}: unoccupied picks up e^{-i theta/2},
/// occupied e^{+i theta/2}.
inline void apply_phase_rotation(StateVector& psi, int j, double theta, bool adjoint = false) {
    if (j < 0 || j >= psi.M) throw std::invalid_argument("gate: register out of range");
    const double sgn = adjoint ? -1.0 : 1.0;
    const cplx lo = std::exp(cplx(0, -0.5 * sgn * theta));
    const cplx hi = std::exp(cplx(0, +0.5 * sgn * theta));
    const mask_t bj = mask_t(1) << j;
    for (mask_t m = 0; m < psi.dim(); ++m) psi[m] *= (m & bj) ? hi : lo;
}

enum class GateKind { tunneling, interaction, xy_zz, phase_rotation };

inline int slot_count(GateKind k) {
    switch (k) {
        case GateKind::tunneling: return 3;
        case GateKind::interaction: return 1;
        case GateKind::xy_zz: return 2;
        case GateKind::phase_rotation: return 1;
    }
    return 0;
}

struct Gate {
    GateKind kind = GateKind::tunneling;
    int j = 0;
    int jp = -1; // unused for phase_rotation
    int param_offset = 0;
    int layer = 0;
    int step = 0; // global step index across the whole circuit
};

/// Layered parameterized circuit for one paradigm, with step annotations and
/// exact resource counts.
struct Ansatz {
    Paradigm paradigm = Paradigm::fermionic;
    bool spinful = false;
    int M = 0;
    int L = 1;
    int depth_per_layer = 0;
    std::vector<Gate> gates;
    int l_p = 0;
    int r_q = 0;

    int depth_total() const { return L * depth_per_layer; }
};

struct Resources {
    int r_q = 0;
    int l_p = 0;
    int depth_total = 0;
};

inline Resources count_resources(const Ansatz& a) { return {a.r_q, a.l_p, a.depth_total()}; }

/// Builds the layered ansatz for (geometry, paradigm, spinful) on the modes
/// defined by the register map. Per layer:
///   spinless fermionic: tunneling over all bond steps, then interaction over
///     all bond steps (depth 2 chi');
///   spinless qubit: XY+ZZ over all bond steps, then one rotation step
///     (depth chi' + 1);
///   spinful fermionic: same-spin tunneling over chi' steps (up and down
///     copies of a bond share a step), then interaction on the four spin
///     combinations per bond as {(up,up),(down,down)} over chi' steps followed
///     by {(up,down),(down,up)} over chi' steps (depth 3 chi');
///   spinful qubit: XY+ZZ on those four register pairs over 2 chi' steps,
///     then one rotation step (depth 2 chi' + 1).
inline Ansatz build_ansatz(const Geometry& g, Paradigm paradigm, bool spinful, int L,
                           const RegisterMap& map) {
    if (L < 1) throw std::invalid_argument("build_ansatz: need L >= 1");
    if (map.spinful != spinful)
        throw std::invalid_argument("build_ansatz: register map spinfulness mismatch");
    if (map.rows != g.rows || map.cols != g.cols)
        throw std::invalid_argument("build_ansatz: register map does not match geometry");

    const GateSchedule sched = edge_color(g);
    const int chi = sched.num_steps();

    Ansatz a;
    a.paradigm = paradigm;
    a.spinful = spinful;
    a.M = map.num_modes();
    a.L = L;

    int offset = 0;
    int step = 0;
    const auto push = [&](GateKind kind, int j, int jp, int layer) {
        a.gates.push_back({kind, j, jp, offset, layer, step});
        offset += slot_count(kind);
        if (kind != GateKind::phase_rotation) a.r_q += (kind == GateKind::xy_zz) ? 3 : 1;
    };

    for (int layer = 0; layer < L; ++layer) {
        if (!spinful && paradigm == Paradigm::fermionic) {
            for (const auto& st : sched.steps) {
                for (const Bond& b : st) push(GateKind::tunneling, map.mode_of(b.a), map.mode_of(b.b), layer);
                ++step;
            }
            for (const auto& st : sched.steps) {
                for (const Bond& b : st) push(GateKind::interaction, map.mode_of(b.a), map.mode_of(b.b), layer);
                ++step;
            }
            a.depth_per_layer = 2 * chi;
        } else if (!spinful && paradigm == Paradigm::qubit) {
            for (const auto& st : sched.steps) {
                for (const Bond& b : st) push(GateKind::xy_zz, map.mode_of(b.a), map.mode_of(b.b), layer);
                ++step;
            }
            for (int s = 0; s < g.num_sites(); ++s) push(GateKind::phase_rotation, map.mode_of(s), -1, layer);
            ++step;
            a.depth_per_layer = chi + 1;
        } else if (spinful && paradigm == Paradigm::fermionic) {
            for (const auto& st : sched.steps) {
                for (const Bond& b : st)
                    for (Spin s : {Spin::up, Spin::down})
                        push(GateKind::tunneling, map.mode_of(b.a, s), map.mode_of(b.b, s), layer);
                ++step;
            }
            for (const auto& st : sched.steps) {
                for (const Bond& b : st)
                    for (Spin s : {Spin::up, Spin::down})
                        push(GateKind::interaction, map.mode_of(b.a, s), map.mode_of(b.b, s), layer);
                ++step;
            }
            for (const auto& st : sched.steps) {
                for (const Bond& b : st) {
                    push(GateKind::interaction, map.mode_of(b.a, Spin::up), map.mode_of(b.b, Spin::down), layer);
                    push(GateKind::interaction, map.mode_of(b.a, Spin::down), map.mode_of(b.b, Spin::up), layer);
                }
                ++step;
            }
            a.depth_per_layer = 3 * chi;
        } else {
            for (const auto& st : sched.steps) {
                for (const Bond& b : st)
                    for (Spin s : {Spin::up, Spin::down})
                        push(GateKind::xy_zz, map.mode_of(b.a, s), map.mode_of(b.b, s), layer);
                ++step;
            }
            for (const auto& st : sched.steps) {
                for (const Bond& b : st) {
                    push(GateKind::xy_zz, map.mode_of(b.a, Spin::up), map.mode_of(b.b, Spin::down), layer);
                    push(GateKind::xy_zz, map.mode_of(b.a, Spin::down), map.mode_of(b.b, Spin::up), layer);
                }
                ++step;
            }
            for (int s = 0; s < g.num_sites(); ++s) {
                push(GateKind::phase_rotation, map.mode_of(s, Spin::up), -1, layer);
                push(GateKind::phase_rotation, map.mode_of(s, Spin::down), -1, layer);
            }
            ++step;
            a.depth_per_layer = 2 * chi + 1;
        }
    }
    a.l_p = offset;
    return a;
}

/// Ansatz over an explicit mode-pair list instead of a lattice geometry, used
/// for molecular registers: same-spin tunneling pairs and the 4-combination
/// interaction (or XY+ZZ) pairs per orbital bond, one rotation step per layer
/// for the qubit paradigm. Orbitals are chained 0-1-2-...; modes interleave
/// spin as (2*orbital, 2*orbital+1).
inline Ansatz build_orbital_chain_ansatz(int num_orbitals, Paradigm paradigm, int L) {
    const Geometry chain = build_geometry(GeometryKind::chain, 1, num_orbitals);
    RegisterMap map;
    map.spinful = true;
    map.rows = 1;
    map.cols = num_orbitals;
    return build_ansatz(chain, paradigm, true, L, map);
}

inline void apply_gate(StateVector& psi, const Gate& g, const double* th, bool adjoint = false) {
    switch (g.kind) {
        case GateKind::tunneling: apply_tunneling(psi, g.j, g.jp, th[0], th[1], th[2], adjoint); break;
        case GateKind::interaction: apply_interaction(psi, g.j, g.jp, th[0], adjoint); break;
        case GateKind::xy_zz: apply_xy_zz(psi, g.j, g.jp, th[0], th[1], adjoint); break;
        case GateKind::phase_rotation: apply_phase_rotation(psi, g.j, th[0], adjoint); break;
    }
}

inline StateVector apply_ansatz(const Ansatz& a, std::span<const double> params,
                                const StateVector& reference) {
    if (static_cast<int>(params.size()) != a.l_p)
        throw std::invalid_argument("apply_ansatz: parameter count mismatch");
    if (reference.M != a.M) throw std::invalid_argument("apply_ansatz: mode count mismatch");
    StateVector psi = reference;
    for (const Gate& g : a.gates) apply_gate(psi, g, params.data() + g.param_offset);
    return psi;
}

/// <lambda| dU/dtheta_slot |psi> accumulated in place, without materializing
/// the derivative image. Used by the adjoint gradient sweep.
inline cplx gate_derivative_overlap(const StateVector& lambda, const StateVector& psi,
                                    const Gate& g, const double* th, int slot) {
    cplx acc(0);
    switch (g.kind) {
        case GateKind::tunneling: {
            const auto dp = detail::tunneling_derivative_blocks(th[0], th[1], th[2], +1);
            const auto dm = detail::tunneling_derivative_blocks(th[0], th[1], th[2], -1);
            const mask_t bj = mask_t(1) << g.j;
            const mask_t bjp = mask_t(1) << g.jp;
            for (mask_t m = 0; m < psi.dim(); ++m) {
                if (!(m & bj) || (m & bjp)) continue;
                const mask_t partner = m ^ bj ^ bjp;
                const detail::Block& b =
                    parity_between(m, g.j, g.jp) > 0 ? dp[slot] : dm[slot];
                const cplx a1 = psi[m], a2 = psi[partner];
                acc += std::conj(lambda[m]) * (b.u11 * a1 + b.u12 * a2);
                acc += std::conj(lambda[partner]) * (b.u21 * a1 + b.u22 * a2);
            }
            break;
        }
        case GateKind::interaction: {
            const mask_t both = (mask_t(1) << g.j) | (mask_t(1) << g.jp);
            const cplx d = cplx(0, -1) * std::exp(cplx(0, -th[0]));
            for (mask_t m = 0; m < psi.dim(); ++m)
                if ((m & both) == both) acc += std::conj(lambda[m]) * d * psi[m];
            break;
        }
        case GateKind::xy_zz: {
            const mask_t bj = mask_t(1) << g.j;
            const mask_t bjp = mask_t(1) << g.jp;
            const cplx oddp = std::exp(cplx(0, -th[1]));
            if (slot == 0) {
                const cplx dii = oddp * (-2.0 * std::sin(2 * th[0]));
                const cplx dsw = oddp * cplx(0, 2.0 * std::cos(2 * th[0]));
                for (mask_t m = 0; m < psi.dim(); ++m) {
                    if (!(m & bj) || (m & bjp)) continue;
                    const mask_t partner = m ^ bj ^ bjp;
                    acc += std::conj(lambda[m]) * (dii * psi[m] + dsw * psi[partner]);
                    acc += std::conj(lambda[partner]) * (dsw * psi[m] + dii * psi[partner]);
                }
            } else {
                const cplx deven = cplx(0, 1) * std::exp(cplx(0, th[1]));
                const cplx dii = cplx(0, -1) * oddp * std::cos(2 * th[0]);
                const cplx dsw = cplx(0, -1) * oddp * cplx(0, std::sin(2 * th[0]));
                for (mask_t m = 0; m < psi.dim(); ++m) {
                    const bool oj = m & bj, ojp = m & bjp;
                    if (oj == ojp) {
                        acc += std::conj(lambda[m]) * deven * psi[m];
                    } else if (oj) {
                        const mask_t partner = m ^ bj ^ bjp;
                        acc += std::conj(lambda[m]) * (dii * psi[m] + dsw * psi[partner]);
                        acc += std::conj(lambda[partner]) * (dsw * psi[m] + dii * psi[partner]);
                    }
                }
            }
            break;
        }
        case GateKind::phase_rotation: {
            const mask_t bj = mask_t(1) << g.j;
            const cplx dlo = cplx(0, -0.5) * std::exp(cplx(0, -0.5 * th[0]));
            const cplx dhi = cplx(0, +0.5) * std::exp(cplx(0, +0.5 * th[0]));
            for (mask_t m = 0; m < psi.dim(); ++m)
                acc += std::conj(lambda[m]) * ((m & bj) ? dhi : dlo) * psi[m];
            break;
        }
    }
    return acc;
}

} // namespace fermivqe
