#include <catch2/catch_amalgamated.hpp>

#include <fermivqe/hamiltonian.hpp>
#include <fermivqe/jw.hpp>
#include <fermivqe/molecular.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

using namespace fermivqe;

namespace {

StateVector random_state(int M, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    StateVector psi(M);
    for (auto& a : psi.amps) a = cplx(gauss(rng), gauss(rng));
    psi.normalize();
    return psi;
}

int count_terms(const FermionHamiltonian& h, std::size_t nops) {
    int n = 0;
    for (const auto& t : h.terms) n += (t.ops.size() == nops);
    return n;
}

} // namespace

TEST_CASE("spinless builder emits the documented terms") {
    const auto g2 = build_geometry(GeometryKind::chain, 1, 2);
    const auto h2 = build_spinless_hubbard(g2, 1.0, 0.0);
    REQUIRE(h2.terms.size() == 2);
    for (const auto& t : h2.terms) {
        CHECK(t.coefficient == cplx(-1.0));
        CHECK(t.ops.size() == 2);
    }

    const auto g12 = build_geometry(GeometryKind::chain, 1, 12);
    const auto h12 = build_spinless_hubbard(g12, 1.0, 2.0);
    CHECK(count_terms(h12, 4) == 11);
    for (const auto& t : h12.terms)
        if (t.ops.size() == 4) CHECK(t.coefficient == cplx(2.0));

    Geometry site;
    site.kind = GeometryKind::custom;
    site.rows = site.cols = 1;
    const auto hmu = build_spinless_hubbard(site, 1.0, 0.0, 3.0);
    REQUIRE(hmu.terms.size() == 1);
    CHECK(hmu.terms[0].coefficient == cplx(-3.0));
    CHECK(hmu.terms[0].ops == std::vector<FermionOp>{{0, true}, {0, false}});

    CHECK(is_hermitian(h12));
    CHECK(is_number_conserving(h12));
}

TEST_CASE("spinful builder expands spin-resolved terms") {
    const auto g = build_geometry(GeometryKind::chain, 1, 2);
    const auto map = register_map(g, true);

    const auto h = build_spinful_hubbard(g, 1.0, 2.5, 0.0, 0.0, map);
    CHECK(h.M == 4);
    CHECK(count_terms(h, 2) == 4);
    CHECK(count_terms(h, 4) == 2);

    const auto hv = build_spinful_hubbard(g, 0.0, 0.0, 0.5, 0.0, map);
    REQUIRE(hv.terms.size() == 4);
    for (const auto& t : hv.terms) {
        CHECK(t.coefficient == cplx(0.5));
        CHECK(t.ops.size() == 4);
    }

    CHECK(is_hermitian(h));
    CHECK(is_number_conserving(h));
    CHECK_THROWS_AS(build_spinful_hubbard(g, 1.0, 2.5, 0.0, 0.0, register_map(g, false)),
                    std::invalid_argument);
}

TEST_CASE("apply follows the canonical sign rules") {
    FermionHamiltonian n0{2, {{cplx(1.0), {{0, true}, {0, false}}}}};
    const auto occ = StateVector::basis(2, 0b01);
    const auto out = apply(n0, occ);
    CHECK(std::abs(out[0b01] - cplx(1.0)) < 1e-15);

    FermionHamiltonian create0{2, {{cplx(1.0), {{0, true}}}}};
    const auto twice = apply(create0, apply(create0, StateVector::vacuum(2)));
    CHECK(twice.norm() == 0.0);

    const auto g = build_geometry(GeometryKind::chain, 1, 2);
    const auto hop = build_spinless_hubbard(g, 1.0, 0.0);
    const auto moved = apply(hop, StateVector::basis(2, 0b01));
    CHECK(std::abs(moved[0b10] - cplx(-1.0)) < 1e-15);
    CHECK(std::abs(moved[0b01]) < 1e-15);
}

TEST_CASE("fermionic anticommutation shows up in term ordering") {
    // c†_2 c_0 on |101>: remove mode 0 (sign +), add mode 2 over occupied mode
    // 1... build on |011> instead: remove 0 (+), create 2 above occupied 1 (-).
    FermionHamiltonian h{3, {{cplx(1.0), {{2, true}, {0, false}}}}};
    const auto out = apply(h, StateVector::basis(3, 0b011));
    CHECK(std::abs(out[0b110] - cplx(-1.0)) < 1e-15);
}

TEST_CASE("expectation values of basis states") {
    const auto g = build_geometry(GeometryKind::chain, 1, 2);
    CHECK(expectation(build_spinless_hubbard(g, 1.0, 2.0), StateVector::vacuum(2)) == 0.0);
    CHECK(expectation(build_spinless_hubbard(g, 1.0, 2.0), StateVector::basis(2, 0b11)) ==
          Catch::Approx(2.0));

    const auto g12 = build_geometry(GeometryKind::chain, 1, 12);
    const auto h12 = build_spinless_hubbard(g12, 1.0, 0.0);
    CHECK(expectation(h12, reference_state(12, 6)) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("apply is Hermitian and number conserving on random states") {
    std::mt19937_64 rng(11);
    const auto g = build_geometry(GeometryKind::ladder, 2, 3);
    const auto h = build_spinless_hubbard(g, 1.0, 1.7, 0.4);
    for (int trial = 0; trial < 5; ++trial) {
        const auto a = random_state(h.M, rng);
        const auto b = random_state(h.M, rng);
        const cplx lhs = inner_product(a, apply(h, b));
        const cplx rhs = inner_product(b, apply(h, a));
        CHECK(std::abs(lhs - std::conj(rhs)) < 1e-10);
    }
    for (int nf : {0, 2, 4}) {
        StateVector psi(h.M);
        for (mask_t m : sector_basis(h.M, nf)) psi[m] = cplx(1.0);
        psi.normalize();
        const auto out = apply(h, psi);
        for (mask_t m = 0; m < out.dim(); ++m)
            if (popcount(m) != nf) CHECK(std::abs(out[m]) == 0.0);
    }
}

TEST_CASE("jordan-wigner images of elementary operators") {
    FermionHamiltonian n0{1, {{cplx(1.0), {{0, true}, {0, false}}}}};
    const auto p0 = jw_transform(n0);
    REQUIRE(p0.strings.size() == 2);
    for (const auto& s : p0.strings) {
        if (s.weight() == 0) CHECK(s.coefficient == Catch::Approx(0.5));
        else {
            CHECK(s.factor(0) == 'Z');
            CHECK(s.coefficient == Catch::Approx(-0.5));
        }
    }

    FermionHamiltonian hop{2,
                           {{cplx(1.0), {{0, true}, {1, false}}}, {cplx(1.0), {{1, true}, {0, false}}}}};
    const auto ph = jw_transform(hop);
    REQUIRE(ph.strings.size() == 2);
    for (const auto& s : ph.strings) {
        CHECK(s.coefficient == Catch::Approx(0.5));
        CHECK(s.weight() == 2);
        CHECK((s.factor(0) == 'X' || s.factor(0) == 'Y'));
        CHECK(s.factor(1) == s.factor(0));
    }
}

TEST_CASE("jw string weight grows with register distance") {
    FermionHamiltonian far{12,
                           {{cplx(1.0), {{0, true}, {6, false}}}, {cplx(1.0), {{6, true}, {0, false}}}}};
    const auto stats = pauli_stats(jw_transform(far));
    CHECK(stats.max_weight == 7);

    const auto g12 = build_geometry(GeometryKind::chain, 1, 12);
    const auto chain_stats = pauli_stats(jw_transform(build_spinless_hubbard(g12, 1.0, 2.0)));
    CHECK(chain_stats.max_weight == 2);

    const auto ladder = build_geometry(GeometryKind::ladder, 2, 6);
    const auto row_stats = pauli_stats(jw_transform(build_spinless_hubbard(ladder, 1.0, 0.0)));
    CHECK(row_stats.max_weight == 7);

    // Snake ordering shortens the rightmost vertical bond from weight 7 to 2.
    FermionHamiltonian vert{12,
                            {{cplx(1.0), {{5, true}, {11, false}}}, {cplx(1.0), {{11, true}, {5, false}}}}};
    const auto map = register_map(ladder, false, ModeOrdering::snake);
    std::vector<int> positions(12);
    for (int s = 0; s < 12; ++s) positions[s] = map.site_position(s);
    CHECK(pauli_stats(jw_transform(vert, positions)).max_weight == 2);
    CHECK(pauli_stats(jw_transform(vert)).max_weight == 7);
}

TEST_CASE("jw transform rejects bad position maps") {
    FermionHamiltonian n0{2, {{cplx(1.0), {{0, true}, {0, false}}}}};
    CHECK_THROWS_AS(jw_transform(n0, {0}), std::invalid_argument);
    CHECK_THROWS_AS(jw_transform(n0, {0, 0}), std::invalid_argument);
}

namespace {

std::vector<std::vector<cplx>> dense_of(int M, const auto& op) {
    const std::size_t dim = std::size_t(1) << M;
    std::vector<std::vector<cplx>> mat(dim, std::vector<cplx>(dim));
    for (mask_t col = 0; col < dim; ++col) {
        const auto image = apply(op, StateVector::basis(M, col));
        for (mask_t row = 0; row < dim; ++row) mat[row][col] = image[row];
    }
    return mat;
}

void check_matrix_equivalence(const FermionHamiltonian& h) {
    const auto a = dense_of(h.M, h);
    const auto b = dense_of(h.M, jw_transform(h));
    for (std::size_t r = 0; r < a.size(); ++r)
        for (std::size_t c = 0; c < a.size(); ++c)
            REQUIRE(std::abs(a[r][c] - b[r][c]) < 1e-10);
}

} // namespace

TEST_CASE("jw image reproduces the fermionic matrix") {
    check_matrix_equivalence(
        build_spinless_hubbard(build_geometry(GeometryKind::chain, 1, 4), 1.0, 2.0, 0.3));
    check_matrix_equivalence(
        build_spinless_hubbard(build_geometry(GeometryKind::ladder, 2, 3), 1.0, 1.1, 0.0));
    const auto g2 = build_geometry(GeometryKind::chain, 1, 2);
    check_matrix_equivalence(build_spinful_hubbard(g2, 1.0, 2.5, 0.5, 0.7, register_map(g2, true)));
    const auto g3 = build_geometry(GeometryKind::chain, 1, 3);
    check_matrix_equivalence(
        build_spinful_hubbard(g3, 1.0, 4.0, 0.0, 0.2, register_map(g3, true, ModeOrdering::spin_blocked)));
}

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << body;
    return path;
}

} // namespace

TEST_CASE("molecular loader accepts Hermitian term files") {
    const auto path = write_temp("fermivqe_mol_ok.json", R"({
      "num_modes": 4,
      "terms": [
        {"c": [0.5, 0.25], "ops": [[3, "+"], [1, "-"]]},
        {"c": [0.5, -0.25], "ops": [[1, "+"], [3, "-"]]},
        {"c": [1.5, 0.0], "ops": [[2, "+"], [2, "-"]]},
        {"c": [-0.75, 0.0], "ops": []}
      ]
    })");
    const auto h = load_molecular_hamiltonian(path.string());
    CHECK(h.M == 4);
    CHECK(h.terms.size() == 4);
    CHECK(expectation(h, StateVector::vacuum(4)) == Catch::Approx(-0.75));
    CHECK(expectation(h, StateVector::basis(4, 0b0100)) == Catch::Approx(0.75));
    check_matrix_equivalence(h);
}

TEST_CASE("molecular loader rejects broken files") {
    const auto missing = write_temp("fermivqe_mol_nonherm.json", R"({
      "num_modes": 4,
      "terms": [{"c": [0.5, 0.0], "ops": [[3, "+"], [1, "-"]]}]
    })");
    CHECK_THROWS_WITH(load_molecular_hamiltonian(missing.string()),
                      Catch::Matchers::ContainsSubstring("Hermitian"));

    const auto malformed = write_temp("fermivqe_mol_bad.json", "{ not json");
    CHECK_THROWS_WITH(load_molecular_hamiltonian(malformed.string()),
                      Catch::Matchers::ContainsSubstring("malformed"));

    const auto badmode = write_temp("fermivqe_mol_mode.json", R"({
      "num_modes": 2,
      "terms": [{"c": [1.0, 0.0], "ops": [[5, "+"], [5, "-"]]}]
    })");
    CHECK_THROWS(load_molecular_hamiltonian(badmode.string()));

    const auto badop = write_temp("fermivqe_mol_op.json", R"({
      "num_modes": 2,
      "terms": [{"c": [1.0, 0.0], "ops": [[1, "x"]]}]
    })");
    CHECK_THROWS(load_molecular_hamiltonian(badop.string()));

    CHECK_THROWS_WITH(load_molecular_hamiltonian("/nonexistent/path.json"),
                      Catch::Matchers::ContainsSubstring("cannot open"));
}
