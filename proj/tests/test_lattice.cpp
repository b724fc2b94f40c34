#include <catch2/catch_amalgamated.hpp>

#include <fermivqe/lattice.hpp>

#include <set>

using namespace fermivqe;

TEST_CASE("built-in geometries have the expected bond counts") {
    CHECK(build_geometry(GeometryKind::chain, 1, 12).num_bonds() == 11);
    CHECK(build_geometry(GeometryKind::ladder, 2, 6).num_bonds() == 16);
    CHECK(build_geometry(GeometryKind::rectangle, 3, 4).num_bonds() == 17);
    CHECK(build_geometry(GeometryKind::chain, 1, 12).num_sites() == 12);
    CHECK(build_geometry(GeometryKind::chain, 1, 12).max_degree() == 2);
    CHECK(build_geometry(GeometryKind::ladder, 2, 6).max_degree() == 3);
    CHECK(build_geometry(GeometryKind::rectangle, 3, 4).max_degree() == 4);
}

TEST_CASE("bonds are canonical and sorted") {
    const auto g = build_geometry(GeometryKind::rectangle, 3, 4);
    for (const Bond& b : g.bonds) CHECK(b.a < b.b);
    CHECK(std::is_sorted(g.bonds.begin(), g.bonds.end()));
    CHECK(Bond(5, 2) == Bond(2, 5));
}

TEST_CASE("geometry constructor rejects bad input") {
    CHECK_THROWS_AS(build_geometry(GeometryKind::chain, 2, 6), std::invalid_argument);
    CHECK_THROWS_AS(build_geometry(GeometryKind::ladder, 3, 4), std::invalid_argument);
    CHECK_THROWS_AS(build_geometry(GeometryKind::chain, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_geometry(GeometryKind::rectangle, 0, 4), std::invalid_argument);
    CHECK_THROWS_AS(build_custom_geometry(4, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(build_custom_geometry(4, {{0, 5}}), std::invalid_argument);
    CHECK_THROWS_AS(build_custom_geometry(4, {{0, 1}, {1, 0}}), std::invalid_argument);
}

TEST_CASE("chain schedule alternates even and odd bonds") {
    const auto g = build_geometry(GeometryKind::chain, 1, 12);
    const auto sched = edge_color(g);
    REQUIRE(sched.num_steps() == 2);
    std::vector<Bond> even, odd;
    for (int i = 0; i + 1 < 12; i += 2) even.emplace_back(i, i + 1);
    for (int i = 1; i + 1 < 12; i += 2) odd.emplace_back(i, i + 1);
    CHECK(sched.steps[0] == even);
    CHECK(sched.steps[1] == odd);
}

namespace {

void check_schedule(const Geometry& g, const GateSchedule& sched) {
    std::set<Bond> seen;
    for (const auto& step : sched.steps) {
        std::set<int> sites;
        for (const Bond& b : step) {
            CHECK(sites.insert(b.a).second);
            CHECK(sites.insert(b.b).second);
            CHECK(seen.insert(b).second);
        }
    }
    CHECK(seen == std::set<Bond>(g.bonds.begin(), g.bonds.end()));
}

} // namespace

TEST_CASE("schedules are proper colorings with max-degree step count") {
    for (int cols = 2; cols <= 13; ++cols) {
        for (int rows : {1, 2, 3, 4}) {
            GeometryKind kind = rows == 1   ? GeometryKind::chain
                                : rows == 2 ? GeometryKind::ladder
                                            : GeometryKind::rectangle;
            const auto g = build_geometry(kind, rows, cols);
            const auto sched = edge_color(g);
            check_schedule(g, sched);
            CHECK(sched.num_steps() == g.max_degree());
        }
    }
    CHECK(edge_color(build_geometry(GeometryKind::ladder, 2, 6)).num_steps() == 3);
    CHECK(edge_color(build_geometry(GeometryKind::rectangle, 3, 4)).num_steps() == 4);
}

TEST_CASE("non-bipartite custom geometry still gets a proper schedule") {
    const auto g = build_custom_geometry(3, {{0, 1}, {1, 2}, {0, 2}});
    const auto sched = edge_color(g);
    check_schedule(g, sched);
    CHECK(sched.num_steps() == 3);
}

TEST_CASE("register map matches the documented layouts") {
    const auto ladder = build_geometry(GeometryKind::ladder, 2, 6);

    const auto plain = register_map(ladder, false);
    CHECK(plain.num_modes() == 12);
    CHECK(plain.mode_of(6) == 6);

    const auto snake = register_map(ladder, false, ModeOrdering::snake);
    CHECK(snake.mode_of(6) == 11);
    CHECK(snake.mode_of(11) == 6);
    CHECK(snake.mode_of(0) == 0);

    const auto chain = build_geometry(GeometryKind::chain, 1, 6);
    const auto spinful = register_map(chain, true);
    CHECK(spinful.num_modes() == 12);
    CHECK(spinful.mode_of(3, Spin::up) == 6);
    CHECK(spinful.mode_of(3, Spin::down) == 7);

    const auto blocked = register_map(chain, true, ModeOrdering::spin_blocked);
    CHECK(blocked.mode_of(3, Spin::up) == 3);
    CHECK(blocked.mode_of(3, Spin::down) == 9);
}

TEST_CASE("register maps are bijections onto the mode range") {
    for (bool spinful : {false, true}) {
        for (auto ordering :
             {ModeOrdering::row_major, ModeOrdering::snake, ModeOrdering::spin_blocked}) {
            for (int rows : {1, 2, 3}) {
                const auto g = build_geometry(
                    rows == 1 ? GeometryKind::chain : rows == 2 ? GeometryKind::ladder : GeometryKind::rectangle,
                    rows, 5);
                const auto map = register_map(g, spinful, ordering);
                std::set<int> modes;
                for (int s = 0; s < g.num_sites(); ++s) {
                    modes.insert(map.mode_of(s, Spin::up));
                    if (spinful) modes.insert(map.mode_of(s, Spin::down));
                }
                REQUIRE(static_cast<int>(modes.size()) == map.num_modes());
                CHECK(*modes.begin() == 0);
                CHECK(*modes.rbegin() == map.num_modes() - 1);
            }
        }
    }
}
