#ifndef NVKIT_GEOMETRY_HPP
#define NVKIT_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <set>
#include <vector>

#include "nvkit/crystal.hpp"

namespace nvkit {

// ---------------------------------------------------------------------------
// Lattice generation
// ---------------------------------------------------------------------------

// Conventional diamond cell: fcc lattice with a two-atom basis at (0,0,0) and
// (1/4,1/4,1/4). The ABC stacking letter of a (111) bilayer is the coordinate
// sum of its fcc point modulo 3; both basis partners share the letter.
inline Crystal build_cubic_diamond(const LatticeSpec& spec) {
    if (spec.phase != Phase::Cubic)
        throw Error("geometry", "invalid-spec", "build_cubic_diamond requires the cubic phase");
    spec.validate();

    const double a0 = spec.cubic_a0();
    static const std::array<std::array<double, 3>, 4> fcc{{{0, 0, 0}, {0, .5, .5}, {.5, 0, .5}, {.5, .5, 0}}};

    Crystal c;
    c.lattice = spec;
    c.c_axis = normalized(Vec3{1, 1, 1});
    for (int i = 0; i < spec.extents[0]; ++i)
        for (int j = 0; j < spec.extents[1]; ++j)
            for (int k = 0; k < spec.extents[2]; ++k)
                for (const auto& f : fcc) {
                    int s = i + j + k + static_cast<int>(std::lround(f[0] + f[1] + f[2]));
                    auto site = static_cast<StackingSite>(((s % 3) + 3) % 3);
                    Vec3 p{(i + f[0]) * a0, (j + f[1]) * a0, (k + f[2]) * a0};
                    c.atoms.push_back({Species::C, p, site, false});
                    c.atoms.push_back({Species::C, p + Vec3{.25 * a0, .25 * a0, .25 * a0}, site, false});
                }
    rebuild_bonds(c);
    return c;
}

// Wurtzite-type carbon: a = sqrt(8/3) b, c = b/u. Four-atom basis, columns at
// lateral registries (1/3,2/3) -> A and (2/3,1/3) -> B; each atom has three
// in-bilayer bonds and one bond parallel to c.
inline Crystal build_lonsdaleite(const LatticeSpec& spec) {
    if (spec.phase != Phase::Hexagonal)
        throw Error("geometry", "invalid-spec", "build_lonsdaleite requires the hexagonal phase");
    spec.validate();

    const double a = spec.hex_a();
    const double cc = spec.hex_c();
    const double u = spec.internal_u;
    const Vec3 a1{a, 0, 0};
    const Vec3 a2{-a / 2.0, a * std::sqrt(3.0) / 2.0, 0};
    const Vec3 a3{0, 0, cc};

    struct Basis { double fx, fy, fz; StackingSite site; };
    const std::array<Basis, 4> basis{{{1.0 / 3, 2.0 / 3, 0.0, StackingSite::A},
                                      {2.0 / 3, 1.0 / 3, 0.5, StackingSite::B},
                                      {1.0 / 3, 2.0 / 3, u, StackingSite::A},
                                      {2.0 / 3, 1.0 / 3, 0.5 + u, StackingSite::B}}};

    Crystal c;
    c.lattice = spec;
    c.c_axis = Vec3{0, 0, 1};
    for (int i = 0; i < spec.extents[0]; ++i)
        for (int j = 0; j < spec.extents[1]; ++j)
            for (int k = 0; k < spec.extents[2]; ++k)
                for (const auto& b : basis) {
                    Vec3 p = a1 * (i + b.fx) + a2 * (j + b.fy) + a3 * (k + b.fz);
                    c.atoms.push_back({Species::C, p, b.site, false});
                }
    rebuild_bonds(c);
    return c;
}

inline Crystal build(const LatticeSpec& spec) {
    return spec.phase == Phase::Cubic ? build_cubic_diamond(spec) : build_lonsdaleite(spec);
}

// ---------------------------------------------------------------------------
// Buckled-plane clustering
// ---------------------------------------------------------------------------

// Group atoms into buckled planes by their stacking-axis coordinate. The
// 1.0 A gap threshold splits at the long cross-plane gaps and keeps the
// ~0.5 A intra-plane buckling together.
inline std::vector<int> assign_planes(const Crystal& c, double gap_threshold = 1.0) {
    const int n = static_cast<int>(c.atoms.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> proj(n);
    for (int i = 0; i < n; ++i) proj[i] = dot(c.atoms[i].position, c.c_axis);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return proj[a] < proj[b]; });

    std::vector<int> plane(n, -1);
    int current = 0;
    for (int k = 0; k < n; ++k) {
        if (k > 0 && proj[order[k]] - proj[order[k - 1]] > gap_threshold) ++current;
        plane[order[k]] = current;
    }
    return plane;
}

// ---------------------------------------------------------------------------
// Six-ring enumeration
// ---------------------------------------------------------------------------

// All 6-membered cycles in the adjacency restricted to `allowed` vertices.
// Canonical form: smallest vertex first, second vertex smaller than last.
inline std::vector<std::array<int, 6>> find_six_rings(const std::vector<std::vector<int>>& adj,
                                                      const std::vector<char>& allowed) {
    std::vector<std::array<int, 6>> rings;
    const int n = static_cast<int>(adj.size());
    std::array<int, 6> path{};
    std::vector<char> in_path(n, 0);

    auto dfs = [&](auto&& self, int start, int v, int depth) -> void {
        if (depth == 5) {
            for (int w : adj[v])
                if (w == start && path[1] < v) {
                    path[5] = v;
                    rings.push_back(path);
                }
            return;
        }
        path[depth] = v;
        in_path[v] = 1;
        for (int w : adj[v])
            if (w > start && allowed[w] && !in_path[w]) self(self, start, w, depth + 1);
        in_path[v] = 0;
    };

    for (int s = 0; s < n; ++s) {
        if (!allowed[s]) continue;
        in_path[s] = 1;
        path[0] = s;
        for (int w : adj[s])
            if (w > s && allowed[w]) dfs(dfs, s, w, 1);
        in_path[s] = 0;
    }
    return rings;
}

// ---------------------------------------------------------------------------
// Carving
// ---------------------------------------------------------------------------

struct CarveOptions {
    int rings_in_plane = 2;
    int planes_each_side = 1;
    std::optional<int> max_heavy_atoms;  // reject carves larger than this when set
};

// Carve a finite nanocrystal around one or more focal atoms. In each focal
// plane, 6-ring shells are kept out to `rings_in_plane` ring-adjacency hops;
// neighbouring planes (out to `planes_each_side` beyond the focal span) are
// populated by cross-plane bond growth from already retained atoms.
inline Crystal carve_nanocrystal(const Crystal& input, const std::vector<int>& foci, const CarveOptions& opt) {
    if (opt.rings_in_plane < 1)
        throw Error("geometry", "invalid-spec", "rings_in_plane must be >= 1");
    if (opt.planes_each_side < 0)
        throw Error("geometry", "invalid-spec", "planes_each_side must be >= 0");
    const int n = static_cast<int>(input.atoms.size());
    for (int f : foci) {
        if (f < 0 || f >= n) throw Error("geometry", "invalid-spec", "focus index out of range");
        if (input.atoms[f].species != Species::C)
            throw Error("geometry", "invalid-spec", "focus must be a carbon atom");
    }

    // The focal sites must sit in the bulk: fully coordinated, with fully
    // coordinated neighbours. Shells truncated by the generated-region
    // boundary further out are simply truncated.
    for (int f : foci) {
        if (input.coordination(f) != 4)
            throw Error("geometry", "insufficient-bulk", "focus is not a 4-coordinated bulk site");
        for (int j : input.bonds[f])
            if (input.coordination(j) != 4)
                throw Error("geometry", "insufficient-bulk",
                            "focus too close to the generated-region boundary");
    }

    const std::vector<int> plane = assign_planes(input);
    std::vector<char> retained(n, 0);

    int min_focal = std::numeric_limits<int>::max();
    int max_focal = std::numeric_limits<int>::min();
    for (int f : foci) {
        min_focal = std::min(min_focal, plane[f]);
        max_focal = std::max(max_focal, plane[f]);
    }

    // Ring shells per focal plane.
    std::set<int> focal_planes;
    for (int f : foci) focal_planes.insert(plane[f]);
    for (int p : focal_planes) {
        std::vector<char> in_plane(n, 0);
        for (int i = 0; i < n; ++i)
            if (plane[i] == p && input.atoms[i].species == Species::C) in_plane[i] = 1;
        auto rings = find_six_rings(input.bonds, in_plane);

        // Ring adjacency: shared edge.
        auto ring_edges = [&](const std::array<int, 6>& r) {
            std::set<std::pair<int, int>> es;
            for (int i = 0; i < 6; ++i)
                for (int j = i + 1; j < 6; ++j)
                    if (input.bonded(r[i], r[j])) es.insert({std::min(r[i], r[j]), std::max(r[i], r[j])});
            return es;
        };
        std::map<std::pair<int, int>, std::vector<int>> edge_to_ring;
        for (int ri = 0; ri < static_cast<int>(rings.size()); ++ri)
            for (const auto& e : ring_edges(rings[ri])) edge_to_ring[e].push_back(ri);

        std::vector<int> depth(rings.size(), -1);
        std::deque<int> queue;
        for (int ri = 0; ri < static_cast<int>(rings.size()); ++ri)
            for (int f : foci)
                if (plane[f] == p && std::find(rings[ri].begin(), rings[ri].end(), f) != rings[ri].end() &&
                    depth[ri] < 0) {
                    depth[ri] = 0;
                    queue.push_back(ri);
                }
        int focal_ring_count = static_cast<int>(queue.size());
        // Every bulk atom of a buckled plane belongs to three 6-rings; fewer
        // means the plane is cut by the boundary at the focus.
        if (focal_ring_count < 3)
            throw Error("geometry", "insufficient-bulk",
                        "focal site has an incomplete ring environment");
        while (!queue.empty()) {
            int ri = queue.front();
            queue.pop_front();
            if (depth[ri] + 1 >= opt.rings_in_plane) continue;
            for (const auto& e : ring_edges(rings[ri]))
                for (int rj : edge_to_ring[e])
                    if (depth[rj] < 0) {
                        depth[rj] = depth[ri] + 1;
                        queue.push_back(rj);
                    }
        }
        for (int ri = 0; ri < static_cast<int>(rings.size()); ++ri)
            if (depth[ri] >= 0)
                for (int a : rings[ri]) retained[a] = 1;
    }

    // Growth to a fixpoint within the allowed plane band. An atom joins when
    // it hangs off the retained footprint across planes (its axial bond), is
    // braced by two retained in-plane neighbours (hexagon completion without
    // outward flood fill), or is an under-coordinated boundary atom attached
    // to the footprint. The last rule is inert away from the generated-region
    // boundary and makes the saturation case an exact identity.
    const int lo = min_focal - opt.planes_each_side;
    const int hi = max_focal + opt.planes_each_side;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < n; ++i) {
            if (retained[i] || plane[i] < lo || plane[i] > hi) continue;
            if (input.atoms[i].species != Species::C) continue;
            int cross = 0, in_plane = 0;
            for (int j : input.bonds[i])
                if (retained[j]) (plane[j] != plane[i] ? cross : in_plane) += 1;
            bool join = cross > 0 || in_plane >= 2 ||
                        (input.coordination(i) < 4 && cross + in_plane > 0);
            if (join) {
                retained[i] = 1;
                changed = true;
            }
        }
    }

    Crystal out;
    out.lattice = input.lattice;
    out.c_axis = input.c_axis;
    std::vector<int> remap(n, -1);
    for (int i = 0; i < n; ++i)
        if (retained[i]) {
            remap[i] = static_cast<int>(out.atoms.size());
            out.atoms.push_back(input.atoms[i]);
        }
    out.bonds.resize(out.atoms.size());
    for (int i = 0; i < n; ++i) {
        if (remap[i] < 0) continue;
        for (int j : input.bonds[i])
            if (remap[j] >= 0) out.bonds[remap[i]].push_back(remap[j]);
        std::sort(out.bonds[remap[i]].begin(), out.bonds[remap[i]].end());
    }

    if (opt.max_heavy_atoms && out.heavy_count() > *opt.max_heavy_atoms)
        throw Error("geometry", "crystal-too-large",
                    "carved crystal has " + std::to_string(out.heavy_count()) +
                        " heavy atoms, exceeding the cap of " + std::to_string(*opt.max_heavy_atoms));
    return out;
}

inline Crystal carve_nanocrystal(const Crystal& input, int focus, int rings_in_plane, int planes_each_side) {
    CarveOptions opt;
    opt.rings_in_plane = rings_in_plane;
    opt.planes_each_side = planes_each_side;
    return carve_nanocrystal(input, std::vector<int>{focus}, opt);
}

// Interior carbon closest to the centroid; the natural defect focus for a
// freshly generated block.
inline int central_interior_atom(const Crystal& c) {
    Vec3 centroid{0, 0, 0};
    for (const auto& a : c.atoms) centroid += a.position;
    centroid = centroid / static_cast<double>(c.atoms.size());
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < static_cast<int>(c.atoms.size()); ++i) {
        if (c.atoms[i].species != Species::C || c.coordination(i) != 4) continue;
        bool interior = true;
        for (int j : c.bonds[i])
            if (c.coordination(j) != 4) interior = false;
        if (!interior) continue;
        double d = distance(c.atoms[i].position, centroid);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    if (best < 0)
        throw Error("geometry", "insufficient-bulk", "crystal has no interior carbon site");
    return best;
}

// ---------------------------------------------------------------------------
// Hydrogen termination
// ---------------------------------------------------------------------------

namespace detail {

constexpr double kTetAngle = 1.9106332362490186;  // 109.4712...deg in rad

inline Vec3 any_perpendicular(const Vec3& axis) {
    Vec3 ref = std::fabs(axis.x) <= std::fabs(axis.y) && std::fabs(axis.x) <= std::fabs(axis.z)
                   ? Vec3{1, 0, 0}
                   : (std::fabs(axis.y) <= std::fabs(axis.z) ? Vec3{0, 1, 0} : Vec3{0, 0, 1});
    return normalized(cross(axis, ref));
}

// Ideal tetrahedral completion directions for k = 0..3 existing bonds.
inline std::vector<Vec3> tetrahedral_completion(const std::vector<Vec3>& bond_dirs) {
    const double s = 1.0 / std::sqrt(3.0);
    switch (bond_dirs.size()) {
        case 0:
            return {Vec3{s, s, s}, Vec3{s, -s, -s}, Vec3{-s, s, -s}, Vec3{-s, -s, s}};
        case 1: {
            Vec3 axis = normalized(bond_dirs[0]) * -1.0;
            Vec3 e1 = any_perpendicular(axis);
            Vec3 e2 = cross(axis, e1);
            const double half = M_PI - kTetAngle;  // angle from the back axis
            std::vector<Vec3> out;
            for (int k = 0; k < 3; ++k) {
                double phi = 2.0 * M_PI * k / 3.0;
                out.push_back(axis * std::cos(half) + (e1 * std::cos(phi) + e2 * std::sin(phi)) * std::sin(half));
            }
            return out;
        }
        case 2: {
            Vec3 u = normalized((normalized(bond_dirs[0]) + normalized(bond_dirs[1])) * -1.0);
            Vec3 w = normalized(cross(bond_dirs[0], bond_dirs[1]));
            const double half = kTetAngle / 2.0;
            return {u * std::cos(half) + w * std::sin(half), u * std::cos(half) - w * std::sin(half)};
        }
        default: {
            Vec3 sum{0, 0, 0};
            for (const auto& b : bond_dirs) sum += normalized(b);
            return {normalized(sum) * -1.0};
        }
    }
}

}  // namespace detail

// Saturate every under-coordinated carbon with hydrogens along the missing
// ideal tetrahedral directions. Idempotent: a second pass finds nothing to do.
inline Crystal hydrogen_terminate(const Crystal& input, double ch_length = 1.09, bool frozen = true) {
    if (!(ch_length > 0.0)) throw Error("geometry", "invalid-spec", "C-H length must be positive");
    Crystal out = input;
    const int n = static_cast<int>(input.atoms.size());
    for (int i = 0; i < n; ++i) {
        if (input.atoms[i].species != Species::C) continue;
        int k = input.coordination(i);
        if (k > 4)
            throw Error("geometry", "malformed-bond-graph",
                        "carbon atom " + std::to_string(i) + " has coordination " + std::to_string(k));
        if (k == 4) continue;
        std::vector<Vec3> dirs;
        for (int j : input.bonds[i]) dirs.push_back(input.atoms[j].position - input.atoms[i].position);
        for (const Vec3& d : detail::tetrahedral_completion(dirs)) {
            int h = static_cast<int>(out.atoms.size());
            out.atoms.push_back({Species::H, input.atoms[i].position + d * ch_length, StackingSite::None, frozen});
            out.bonds.emplace_back(std::vector<int>{i});
            out.bonds[i].push_back(h);
        }
    }
    for (auto& adj : out.bonds) std::sort(adj.begin(), adj.end());
    return out;
}

}  // namespace nvkit

#endif  // NVKIT_GEOMETRY_HPP
