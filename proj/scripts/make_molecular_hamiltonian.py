#!/usr/bin/env python3
"""Generates the bundled 4-orbital molecular Hamiltonian file.

The model is a correlated closed-shell molecule in a minimal active space:
four spatial orbitals (eight spin modes, interleaved as mode = 2*orbital +
spin), one-body orbital energies and hoppings, intra- and inter-orbital
Coulomb repulsion, and pair-hopping terms that push correlation into the
highest orbital. Parameters are tuned so the global ground state sits in the
six-electron sector with a clear margin, is non-degenerate, and carries
meaningful weight outside the lowest-orbital determinant.

The script re-derives the spectrum with a dense matrix construction that is
independent of the C++ library and prints the checks it relies on.
"""

import json
import pathlib

import numpy as np

NUM_ORBITALS = 4
M = 2 * NUM_ORBITALS

ORBITAL_ENERGY = [-2.10, -1.50, -1.25, -0.75]
INTRA_COULOMB = [0.50, 0.50, 0.45, 0.40]
INTER_COULOMB = {(0, 1): 0.16, (0, 2): 0.13, (1, 2): 0.15,
                 (0, 3): 0.15, (1, 3): 0.17, (2, 3): 0.20}
HOPPING = {(0, 1): 0.10, (1, 2): 0.10, (2, 3): 0.18}
PAIR_HOPPING = {(0, 1): 0.07, (1, 2): 0.10, (2, 3): 0.08}
CORE_ENERGY = -71.0


def mode(orbital, spin):
    return 2 * orbital + spin


def build_terms():
    """Term list as (coefficient, ops); ops are written left to right with the
    rightmost operator acting first, matching the interchange format."""
    terms = [(CORE_ENERGY, [])]
    for p in range(NUM_ORBITALS):
        for s in (0, 1):
            m = mode(p, s)
            terms.append((ORBITAL_ENERGY[p], [(m, "+"), (m, "-")]))
    for (p, q), tv in sorted(HOPPING.items()):
        for s in (0, 1):
            terms.append((tv, [(mode(p, s), "+"), (mode(q, s), "-")]))
            terms.append((tv, [(mode(q, s), "+"), (mode(p, s), "-")]))
    for p in range(NUM_ORBITALS):
        up, dn = mode(p, 0), mode(p, 1)
        terms.append((INTRA_COULOMB[p], [(up, "+"), (dn, "+"), (dn, "-"), (up, "-")]))
    for (p, q), jv in sorted(INTER_COULOMB.items()):
        for sa in (0, 1):
            for sb in (0, 1):
                a, b = mode(p, sa), mode(q, sb)
                terms.append((jv, [(a, "+"), (b, "+"), (b, "-"), (a, "-")]))
    for (p, q), kv in sorted(PAIR_HOPPING.items()):
        terms.append((kv, [(mode(p, 0), "+"), (mode(p, 1), "+"),
                           (mode(q, 1), "-"), (mode(q, 0), "-")]))
        terms.append((kv, [(mode(q, 0), "+"), (mode(q, 1), "+"),
                           (mode(p, 1), "-"), (mode(p, 0), "-")]))
    return terms


def dense_matrix(terms):
    """Independent dense construction: mode occupancy is bit m of the basis
    index (mode 0 least significant); annihilators carry the sign of every
    occupied lower mode."""
    eye, z = np.eye(2), np.diag([1.0, -1.0])
    lower = np.array([[0.0, 1.0], [0.0, 0.0]])

    def kron_chain(mats):
        out = np.array([[1.0]])
        for mat in mats:
            out = np.kron(out, mat)
        return out

    annihilate = [kron_chain([eye] * (M - 1 - m) + [lower] + [z] * m) for m in range(M)]
    create = [c.T for c in annihilate]

    H = np.zeros((2 ** M, 2 ** M))
    for coeff, ops in terms:
        mat = np.eye(2 ** M)
        for m, kind in ops:
            mat = mat @ (create[m] if kind == "+" else annihilate[m])
        H += coeff * mat
    return H


def verify(terms):
    H = dense_matrix(terms)
    assert np.allclose(H, H.T), "Hamiltonian is not symmetric"
    sector_e0 = {}
    for nf in range(M + 1):
        idx = [i for i in range(2 ** M) if bin(i).count("1") == nf]
        ev = np.linalg.eigvalsh(H[np.ix_(idx, idx)])
        sector_e0[nf] = ev
    nf = min(sector_e0, key=lambda k: sector_e0[k][0])
    ev = sector_e0[nf]
    print(f"ground sector: nf={nf}, E0={ev[0]:.15f}, in-sector gap {ev[1] - ev[0]:.6f}")
    for other in (nf - 1, nf + 1):
        margin = sector_e0[other][0] - ev[0]
        print(f"margin to nf={other}: {margin:.6f}")
        assert margin > 0.1, "sector margin too small"

    idx = [i for i in range(2 ** M) if bin(i).count("1") == nf]
    _, vecs = np.linalg.eigh(H[np.ix_(idx, idx)])
    psi = vecs[:, 0]
    hf_weight = abs(psi[idx.index((1 << nf) - 1)]) ** 2
    print(f"lowest-orbital determinant weight: {hf_weight:.6f}")
    assert 0.5 < hf_weight < 0.95, "want a correlated but single-reference ground state"
    return nf, ev[0]


def main():
    terms = build_terms()
    nf, e0 = verify(terms)
    payload = {
        "description": "4-orbital molecular active space, interleaved spin modes",
        "num_modes": M,
        "terms": [{"c": [float(c), 0.0], "ops": [[m, k] for m, k in ops]}
                  for c, ops in terms],
    }
    out = pathlib.Path(__file__).resolve().parent.parent / "data" / "water_4orbital.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(payload, indent=1) + "\n")
    print(f"wrote {out} ({len(terms)} terms, ground nf={nf}, E0={e0:.12f})")


if __name__ == "__main__":
    main()
