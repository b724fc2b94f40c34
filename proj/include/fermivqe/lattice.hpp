#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fermivqe {

enum class GeometryKind { chain, ladder, rectangle, custom };
enum class Spin { up, down };

/// Mode orderings for mapping lattice sites (and spins) onto simulator registers.
/// row_major and snake name the site traversal; spins are interleaved per site
/// (mode 2p, 2p+1) unless spin_blocked, which places all up modes before all
/// down modes over a row-major site traversal.
enum class ModeOrdering { row_major, snake, spin_blocked };

/// Undirected lattice bond, stored canonically with a < b.
struct Bond {
    int a = 0;
    int b = 0;

    Bond() = default;
    Bond(int u, int v) : a(std::min(u, v)), b(std::max(u, v)) {}

    friend bool operator==(const Bond&, const Bond&) = default;
    friend auto operator<=>(const Bond&, const Bond&) = default;
};

/// Lattice of rows x cols sites, numbered row-major from the top-left corner,
/// together with its nearest-neighbor bond list. Chain and ladder are the
/// rows = 1 and rows = 2 special cases of the rectangle; custom geometries
/// carry an explicit bond list.
struct Geometry {
    GeometryKind kind = GeometryKind::chain;
    int rows = 1;
    int cols = 1;
    std::vector<Bond> bonds;

    int num_sites() const { return rows * cols; }
    int num_bonds() const { return static_cast<int>(bonds.size()); }

    int degree_of(int site) const {
        int d = 0;
        for (const Bond& bond : bonds) d += (bond.a == site || bond.b == site);
        return d;
    }

    int max_degree() const {
        std::vector<int> deg(num_sites(), 0);
        for (const Bond& bond : bonds) {
            ++deg[bond.a];
            ++deg[bond.b];
        }
        return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
    }
};

inline Geometry build_geometry(GeometryKind kind, int rows, int cols) {
    if (rows <= 0 || cols <= 0)
        throw std::invalid_argument("build_geometry: rows and cols must be positive");
    if (static_cast<std::int64_t>(rows) * cols < 2)
        throw std::invalid_argument("build_geometry: need at least 2 sites");
    if (kind == GeometryKind::chain && rows != 1)
        throw std::invalid_argument("build_geometry: chain requires rows = 1");
    if (kind == GeometryKind::ladder && rows != 2)
        throw std::invalid_argument("build_geometry: ladder requires rows = 2");
    if (kind == GeometryKind::custom)
        throw std::invalid_argument("build_geometry: custom geometries take an explicit bond list");

    Geometry g;
    g.kind = kind;
    g.rows = rows;
    g.cols = cols;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const int s = r * cols + c;
            if (c + 1 < cols) g.bonds.emplace_back(s, s + 1);
            if (r + 1 < rows) g.bonds.emplace_back(s, s + cols);
        }
    }
    std::sort(g.bonds.begin(), g.bonds.end());
    return g;
}

inline Geometry build_custom_geometry(int num_sites, std::vector<Bond> bonds) {
    if (num_sites < 2) throw std::invalid_argument("custom geometry: need at least 2 sites");
    for (const Bond& bond : bonds) {
        if (bond.a == bond.b) throw std::invalid_argument("custom geometry: self-loop bond");
        if (bond.a < 0 || bond.b >= num_sites)
            throw std::invalid_argument("custom geometry: bond references invalid site");
    }
    std::sort(bonds.begin(), bonds.end());
    if (std::adjacent_find(bonds.begin(), bonds.end()) != bonds.end())
        throw std::invalid_argument("custom geometry: duplicate bond");

    Geometry g;
    g.kind = GeometryKind::custom;
    g.rows = 1;
    g.cols = num_sites;
    g.bonds = std::move(bonds);
    return g;
}

/// Bonds grouped into parallel steps: within a step no two bonds share a site.
struct GateSchedule {
    std::vector<std::vector<Bond>> steps;

    int num_steps() const { return static_cast<int>(steps.size()); }

    std::vector<Bond> all_bonds() const {
        std::vector<Bond> out;
        for (const auto& step : steps) out.insert(out.end(), step.begin(), step.end());
        return out;
    }
};

namespace detail {

/// Two-colors the sites; returns false if the bond graph is not bipartite.
inline bool bipartition(const Geometry& g, std::vector<int>& side) {
    const int n = g.num_sites();
    std::vector<std::vector<int>> adj(n);
    for (const Bond& bond : g.bonds) {
        adj[bond.a].push_back(bond.b);
        adj[bond.b].push_back(bond.a);
    }
    side.assign(n, -1);
    std::vector<int> stack;
    for (int s0 = 0; s0 < n; ++s0) {
        if (side[s0] >= 0) continue;
        side[s0] = 0;
        stack.push_back(s0);
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int v : adj[u]) {
                if (side[v] < 0) {
                    side[v] = 1 - side[u];
                    stack.push_back(v);
                } else if (side[v] == side[u]) {
                    return false;
                }
            }
        }
    }
    return true;
}

} // namespace detail

/// Proper edge coloring of the geometry's bond graph, one color class per step.
///
/// Bipartite graphs (all built-in geometries) are colored with the alternating-
/// path construction behind Koenig's theorem, so the step count equals the
/// maximum site degree. Non-bipartite custom graphs fall back to first-fit
/// greedy; the realized step count is whatever the schedule reports.
/// Deterministic for a fixed geometry: bonds are processed in canonical order
/// and free colors are always chosen lowest-first.
inline GateSchedule edge_color(const Geometry& g) {
    const int n = g.num_sites();
    const int nb = g.num_bonds();
    std::vector<int> side;
    const bool bipartite = detail::bipartition(g, side);
    const int max_colors = bipartite ? std::max(g.max_degree(), 1) : 2 * std::max(g.max_degree(), 1);

    std::vector<int> color(nb, -1);
    // at[u][c] = index of the bond colored c at site u, or -1.
    std::vector<std::vector<int>> at(n, std::vector<int>(max_colors, -1));

    auto lowest_free = [&](int u) {
        for (int c = 0; c < max_colors; ++c)
            if (at[u][c] < 0) return c;
        throw std::logic_error("edge_color: no free color");
    };

    for (int e = 0; e < nb; ++e) {
        const int u = g.bonds[e].a;
        const int v = g.bonds[e].b;
        int ca = lowest_free(u);
        const int cb = lowest_free(v);
        if (ca != cb) {
            if (bipartite) {
                // Walk the ca/cb alternating path from v and swap its colors;
                // afterwards ca is free at v too. The path cannot reach u.
                std::vector<int> path;
                int w = v;
                int want = ca;
                while (at[w][want] >= 0) {
                    const int pe = at[w][want];
                    path.push_back(pe);
                    w = (g.bonds[pe].a == w) ? g.bonds[pe].b : g.bonds[pe].a;
                    want = (want == ca) ? cb : ca;
                }
                for (int pe : path) {
                    at[g.bonds[pe].a][color[pe]] = -1;
                    at[g.bonds[pe].b][color[pe]] = -1;
                }
                for (int pe : path) {
                    color[pe] = (color[pe] == ca) ? cb : ca;
                    at[g.bonds[pe].a][color[pe]] = pe;
                    at[g.bonds[pe].b][color[pe]] = pe;
                }
            } else {
                // Greedy: lowest color free at both endpoints.
                while (at[u][ca] >= 0 || at[v][ca] >= 0) ++ca;
            }
        }
        color[e] = ca;
        at[u][ca] = e;
        at[v][ca] = e;
    }

    GateSchedule schedule;
    schedule.steps.resize(max_colors);
    for (int e = 0; e < nb; ++e) schedule.steps[color[e]].push_back(g.bonds[e]);
    std::erase_if(schedule.steps, [](const auto& step) { return step.empty(); });
    for (auto& step : schedule.steps) std::sort(step.begin(), step.end());
    return schedule;
}

/// Bijective map from (site, spin) pairs to simulator mode indices.
/// M = N for spinless maps and 2N for spinful ones. The default spinful
/// layout is site-major interleaved: mode(j, up) = 2j, mode(j, down) = 2j + 1.
struct RegisterMap {
    bool spinful = false;
    ModeOrdering ordering = ModeOrdering::row_major;
    int rows = 1;
    int cols = 1;

    int num_sites() const { return rows * cols; }
    int num_modes() const { return (spinful ? 2 : 1) * num_sites(); }

    /// Position of a site along the chosen traversal of the lattice.
    int site_position(int site) const {
        if (ordering != ModeOrdering::snake) return site;
        const int r = site / cols;
        const int c = site % cols;
        return r * cols + ((r % 2 == 0) ? c : cols - 1 - c);
    }

    int mode_of(int site, Spin spin = Spin::up) const {
        const int p = site_position(site);
        if (!spinful) return p;
        if (ordering == ModeOrdering::spin_blocked)
            return p + (spin == Spin::down ? num_sites() : 0);
        return 2 * p + (spin == Spin::down ? 1 : 0);
    }
};

inline RegisterMap register_map(const Geometry& g, bool spinful,
                                ModeOrdering ordering = ModeOrdering::row_major) {
    RegisterMap map;
    map.spinful = spinful;
    map.ordering = ordering;
    map.rows = g.rows;
    map.cols = g.cols;
    return map;
}

inline GeometryKind geometry_kind_from_string(const std::string& s) {
    if (s == "chain") return GeometryKind::chain;
    if (s == "ladder") return GeometryKind::ladder;
    if (s == "rectangle") return GeometryKind::rectangle;
    if (s == "custom") return GeometryKind::custom;
    throw std::invalid_argument("unknown geometry kind: " + s);
}

inline ModeOrdering mode_ordering_from_string(const std::string& s) {
    if (s == "row_major") return ModeOrdering::row_major;
    if (s == "snake") return ModeOrdering::snake;
    if (s == "spin_blocked") return ModeOrdering::spin_blocked;
    throw std::invalid_argument("unknown mode ordering: " + s);
}

} // namespace fermivqe
