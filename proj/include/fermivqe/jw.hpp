#pragma once

#include <fermivqe/hamiltonian.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace fermivqe {

/// Pauli product with a real coefficient, encoded by symplectic masks:
/// X on bits of x only, Z on bits of z only, Y where both are set.
struct PauliString {
    double coefficient = 0.0;
    mask_t x = 0;
    mask_t z = 0;

    int weight() const { return popcount(x | z); }

    char factor(int mode) const {
        const bool fx = (x >> mode) & 1, fz = (z >> mode) & 1;
        if (fx && fz) return 'Y';
        if (fx) return 'X';
        if (fz) return 'Z';
        return 'I';
    }

    std::map<int, char> factors(int modes) const {
        std::map<int, char> f;
        for (int m = 0; m < modes; ++m)
            if (const char c = factor(m); c != 'I') f[m] = c;
        return f;
    }
};

struct PauliSum {
    int M = 0;
    std::vector<PauliString> strings;
};

/// P|psi> for the whole sum. A string maps |m> to
/// i^{#Y} (-1)^{popcount(m & z)} |m ^ x> times its coefficient.
inline StateVector apply(const PauliSum& p, const StateVector& psi) {
    if (p.M != psi.M) throw std::invalid_argument("apply: dimension mismatch");
    static constexpr cplx i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    StateVector out(psi.M);
    for (const PauliString& s : p.strings) {
        const cplx base = s.coefficient * i_pow[popcount(s.x & s.z) & 3];
        for (mask_t m = 0; m < psi.dim(); ++m) {
            const cplx amp = psi[m];
            if (amp == cplx(0)) continue;
            const double sign = (popcount(m & s.z) & 1) ? -1.0 : 1.0;
            out[m ^ s.x] += base * sign * amp;
        }
    }
    return out;
}

/// Jordan-Wigner image of a fermionic Hamiltonian. `positions` optionally
/// permutes modes onto register positions (positions[mode] = register); the
/// parity string of a mode then runs over the registers below its own. The
/// default is the identity placement. The result is simplified: duplicate
/// products merged, negligible coefficients dropped, coefficients certified
/// real (source Hermiticity).
inline PauliSum jw_transform(const FermionHamiltonian& h, std::vector<int> positions = {}) {
    if (positions.empty()) {
        positions.resize(h.M);
        std::iota(positions.begin(), positions.end(), 0);
    }
    if (static_cast<int>(positions.size()) != h.M)
        throw std::invalid_argument("jw_transform: positions size mismatch");
    {
        auto sorted = positions;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < h.M; ++i)
            if (sorted[i] != i) throw std::invalid_argument("jw_transform: positions not a permutation");
    }

    // Monomial algebra over (x, z) with the convention P = c * X^x * Z^z;
    // (x1,z1)(x2,z2) = (-1)^{popcount(z1 & x2)} (x1^x2, z1^z2).
    using Key = std::pair<mask_t, mask_t>;
    std::map<Key, cplx> acc_total;

    for (const FermionTerm& term : h.terms) {
        std::map<Key, cplx> acc{{{0, 0}, term.coefficient}};
        for (const FermionOp& op : term.ops) {
            const int p = positions[op.mode];
            const mask_t xb = mask_t(1) << p;
            const mask_t zlow = xb - 1;
            // c†: (X + XZ)/2 with the parity string; c: (X - XZ)/2.
            const Key k1{xb, zlow};
            const Key k2{xb, zlow | xb};
            const cplx half(0.5), sgn(op.dagger ? 0.5 : -0.5);
            std::map<Key, cplx> next;
            for (const auto& [key, c] : acc) {
                const auto mul = [&](const Key& rhs, cplx rc) {
                    const double sign = (popcount(key.second & rhs.first) & 1) ? -1.0 : 1.0;
                    next[{key.first ^ rhs.first, key.second ^ rhs.second}] += c * rc * sign;
                };
                mul(k1, half);
                mul(k2, sgn);
            }
            acc = std::move(next);
        }
        for (const auto& [key, c] : acc) acc_total[key] += c;
    }

    static constexpr cplx minus_i_pow[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    PauliSum out;
    out.M = h.M;
    for (const auto& [key, c] : acc_total) {
        // X^x Z^z = (-i)^{#Y} times the standard X/Y/Z product.
        const cplx std_coeff = c * minus_i_pow[popcount(key.first & key.second) & 3];
        if (std::abs(std_coeff) < 1e-12) continue;
        if (std::abs(std_coeff.imag()) > 1e-10)
            throw std::runtime_error("jw_transform: complex Pauli coefficient, source not Hermitian?");
        out.strings.push_back({std_coeff.real(), key.first, key.second});
    }
    return out;
}

struct PauliStats {
    int term_count = 0;
    int max_weight = 0;
    std::vector<int> weight_histogram; // index = weight
};

inline PauliStats pauli_stats(const PauliSum& p) {
    PauliStats st;
    st.term_count = static_cast<int>(p.strings.size());
    for (const PauliString& s : p.strings) st.max_weight = std::max(st.max_weight, s.weight());
    st.weight_histogram.assign(st.max_weight + 1, 0);
    for (const PauliString& s : p.strings) ++st.weight_histogram[s.weight()];
    return st;
}

} // namespace fermivqe
