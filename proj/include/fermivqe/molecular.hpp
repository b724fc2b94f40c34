#pragma once

#include <fermivqe/hamiltonian.hpp>

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>

namespace fermivqe {

/// Reads a second-quantized Hamiltonian from the JSON interchange format
///   {"num_modes": M,
///    "terms": [{"c": [re, im], "ops": [[mode, "+"|"-"], ...]}, ...]}
/// where ops apply right to left and an empty ops list is a constant term.
/// Rejects malformed files, out-of-range modes, and non-Hermitian term lists.
inline FermionHamiltonian load_molecular_hamiltonian(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open Hamiltonian file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("malformed Hamiltonian file " + path + ": " + e.what());
    }

    FermionHamiltonian h;
    try {
        h.M = j.at("num_modes").get<int>();
        if (h.M <= 0 || h.M > 30) throw std::runtime_error("num_modes out of range");
        for (const auto& jt : j.at("terms")) {
            FermionTerm term;
            const auto& c = jt.at("c");
            term.coefficient = cplx(c.at(0).get<double>(), c.at(1).get<double>());
            for (const auto& jop : jt.at("ops")) {
                FermionOp op;
                op.mode = jop.at(0).get<int>();
                const std::string kind = jop.at(1).get<std::string>();
                if (kind == "+") op.dagger = true;
                else if (kind == "-") op.dagger = false;
                else throw std::runtime_error("operator symbol must be \"+\" or \"-\"");
                if (op.mode < 0 || op.mode >= h.M) throw std::runtime_error("mode index out of range");
                term.ops.push_back(op);
            }
            h.terms.push_back(std::move(term));
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("malformed Hamiltonian file " + path + ": " + e.what());
    }

    if (!is_hermitian(h))
        throw std::runtime_error("Hamiltonian file " + path + " is not Hermitian");
    return h;
}

} // namespace fermivqe
