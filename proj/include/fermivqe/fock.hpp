#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fermivqe {

using cplx = std::complex<double>;
using mask_t = std::uint64_t;

inline int popcount(mask_t m) { return std::popcount(m); }

/// Parity of the occupied modes strictly between j and j' (the string sign).
/// Symmetric in (j, j'); ignores the occupancy of j and j' themselves.
inline int parity_between(mask_t mask, int j, int jp) {
    if (j > jp) std::swap(j, jp);
    const mask_t between = (jp - j < 2) ? 0
        : mask & ((mask_t(1) << jp) - 1) & ~((mask_t(1) << (j + 1)) - 1);
    return (popcount(between) & 1) ? -1 : +1;
}

/// Parity of the occupied modes strictly below m (sign of c_m / c†_m on a
/// canonically ordered basis state).
inline int parity_below(mask_t mask, int m) {
    const mask_t below = mask & ((mask_t(1) << m) - 1);
    return (popcount(below) & 1) ? -1 : +1;
}

/// Full-space statevector over M modes: 2^M amplitudes, basis states indexed
/// by occupancy mask with bit 0 = mode 0 = least significant.
struct StateVector {
    int M = 0;
    std::vector<cplx> amps;

    StateVector() = default;
    explicit StateVector(int modes) : M(modes), amps(std::size_t(1) << modes, cplx(0)) {
        if (modes < 0 || modes > 30) throw std::invalid_argument("StateVector: bad mode count");
    }

    static StateVector basis(int modes, mask_t mask) {
        StateVector psi(modes);
        if (mask >> modes) throw std::invalid_argument("StateVector::basis: mask out of range");
        psi.amps[mask] = cplx(1);
        return psi;
    }

    static StateVector vacuum(int modes) { return basis(modes, 0); }

    std::size_t dim() const { return amps.size(); }
    cplx& operator[](mask_t mask) { return amps[mask]; }
    const cplx& operator[](mask_t mask) const { return amps[mask]; }

    double norm_sq() const {
        double s = 0;
        for (const cplx& a : amps) s += std::norm(a);
        return s;
    }
    double norm() const { return std::sqrt(norm_sq()); }

    void normalize() {
        const double n = norm();
        if (n == 0) throw std::runtime_error("StateVector::normalize: zero vector");
        for (cplx& a : amps) a /= n;
    }

    /// Largest |amplitude| on any basis state outside the N_f-particle sector.
    double sector_leak(int n_f) const {
        double leak = 0;
        for (mask_t m = 0; m < amps.size(); ++m)
            if (popcount(m) != n_f) leak = std::max(leak, std::abs(amps[m]));
        return leak;
    }
};

inline cplx inner_product(const StateVector& a, const StateVector& b) {
    if (a.M != b.M) throw std::invalid_argument("inner_product: dimension mismatch");
    cplx s(0);
    for (std::size_t i = 0; i < a.amps.size(); ++i) s += std::conj(a.amps[i]) * b.amps[i];
    return s;
}

/// All masks over M modes with popcount N_f, ascending. The index of a mask in
/// this list is its coordinate in the sector-packed representation.
inline std::vector<mask_t> sector_basis(int modes, int n_f) {
    if (n_f < 0 || n_f > modes) throw std::invalid_argument("sector_basis: bad particle count");
    std::vector<mask_t> basis;
    for (mask_t m = 0; m < (mask_t(1) << modes); ++m)
        if (popcount(m) == n_f) basis.push_back(m);
    return basis;
}

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

enum class ReferencePattern { spread, neel, first };

inline ReferencePattern reference_pattern_from_string(const std::string& s) {
    if (s == "spread") return ReferencePattern::spread;
    if (s == "neel") return ReferencePattern::neel;
    if (s == "first") return ReferencePattern::first;
    throw std::invalid_argument("unknown reference pattern: " + s);
}

/// Computational basis state with N_f occupied modes.
///
/// spread: occupied modes {floor(k M / N_f)}, maximally even spacing.
/// neel: spinful layouts (even M, interleaved spins); fermions sit on evenly
///       spread sites with spin alternating by site parity.
/// first: the N_f lowest modes.
inline mask_t reference_mask(int modes, int n_f, ReferencePattern pattern = ReferencePattern::spread) {
    if (n_f < 0 || n_f > modes) throw std::invalid_argument("reference_mask: bad particle count");
    mask_t mask = 0;
    switch (pattern) {
        case ReferencePattern::spread:
            for (int k = 0; k < n_f; ++k)
                mask |= mask_t(1) << (std::int64_t(k) * modes / n_f);
            break;
        case ReferencePattern::neel: {
            if (modes % 2 != 0) throw std::invalid_argument("reference_mask: neel needs even mode count");
            const int sites = modes / 2;
            if (n_f > sites) {
                // Beyond one fermion per site there is no pure Neel pattern;
                // fall back to spreading over modes.
                return reference_mask(modes, n_f, ReferencePattern::spread);
            }
            for (int k = 0; k < n_f; ++k) {
                const int site = int(std::int64_t(k) * sites / n_f);
                mask |= mask_t(1) << (2 * site + (site % 2));
            }
            break;
        }
        case ReferencePattern::first:
            mask = (mask_t(1) << n_f) - 1;
            break;
    }
    return mask;
}

inline StateVector reference_state(int modes, int n_f,
                                   ReferencePattern pattern = ReferencePattern::spread) {
    return StateVector::basis(modes, reference_mask(modes, n_f, pattern));
}

} // namespace fermivqe
