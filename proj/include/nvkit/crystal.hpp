#ifndef NVKIT_CRYSTAL_HPP
#define NVKIT_CRYSTAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nvkit/core.hpp"

namespace nvkit {

struct LatticeSpec {
    Phase phase = Phase::Cubic;
    double bond_length = 1.545;    // Angstrom
    double internal_u = 0.375;     // wurtzite internal parameter, hexagonal only
    std::array<int, 3> extents{1, 1, 1};

    void validate() const {
        if (!(bond_length > 0.0))
            throw Error("geometry", "invalid-spec", "bond_length must be positive");
        if (phase == Phase::Hexagonal && !(internal_u > 0.0 && internal_u < 0.5))
            throw Error("geometry", "invalid-spec", "internal parameter u must lie in (0, 0.5)");
        for (int e : extents)
            if (e < 1) throw Error("geometry", "invalid-spec", "extents must be >= 1 in every direction");
    }

    double hex_a() const { return std::sqrt(8.0 / 3.0) * bond_length; }
    double hex_c() const { return bond_length / internal_u; }
    double cubic_a0() const { return 4.0 * bond_length / std::sqrt(3.0); }
    // Axial column gaps in the hexagonal phase: u*c (short) and (1-u)*c (long).
    double short_gap() const { return internal_u * hex_c(); }
    double long_gap() const { return (1.0 - internal_u) * hex_c(); }
};

struct Atom {
    Species species = Species::C;
    Vec3 position;
    StackingSite site = StackingSite::None;
    bool frozen = false;  // frozen-hydrogen approximation; H only
};

enum class DefectClass { AB, ShortAA, LongAA, Cubic };

inline const char* defect_class_name(DefectClass c) {
    switch (c) {
        case DefectClass::AB: return "AB";
        case DefectClass::ShortAA: return "ShortAA";
        case DefectClass::LongAA: return "LongAA";
        default: return "Cubic";
    }
}

// An NV placement. Before place_nv() both indices refer to carbon sites; a
// placed crystal keeps a copy with enough information to revert exactly.
struct DefectConfig {
    int nitrogen_index = -1;
    int vacancy_index = -1;
    DefectClass cls = DefectClass::Cubic;
    double separation = 0.0;  // Angstrom
    int multiplicity = 1;
    int charge = 0;  // 0 or -1
};

struct PlacedDefect {
    DefectConfig config;            // nitrogen_index valid in the placed crystal
    int vacancy_original_index = -1;
    Vec3 vacancy_position;
    StackingSite vacancy_site = StackingSite::None;
};

struct Crystal {
    std::vector<Atom> atoms;
    std::vector<std::vector<int>> bonds;  // sorted adjacency lists
    LatticeSpec lattice;
    Vec3 c_axis{0, 0, 1};  // stacking axis; (111)/sqrt(3) for the cubic phase
    std::optional<PlacedDefect> defect;
    // Comment-line metadata carried through XYZ round trips (notation, charge).
    std::map<std::string, std::string> annotations;

    int coordination(int i) const { return static_cast<int>(bonds[i].size()); }

    bool bonded(int i, int j) const {
        const auto& adj = bonds[i];
        return std::binary_search(adj.begin(), adj.end(), j);
    }

    int count(Species s) const {
        int n = 0;
        for (const auto& a : atoms)
            if (a.species == s) ++n;
        return n;
    }

    int heavy_count() const { return static_cast<int>(atoms.size()) - count(Species::H); }
};

// Cell-list pair search: bonds are pairs closer than `cutoff`. Linear in atom
// count for crystal-like densities.
inline std::vector<std::vector<int>> detect_bonds(const std::vector<Atom>& atoms, double cutoff) {
    std::vector<std::vector<int>> adj(atoms.size());
    if (atoms.empty()) return adj;

    Vec3 lo = atoms[0].position, hi = atoms[0].position;
    for (const auto& a : atoms) {
        lo.x = std::min(lo.x, a.position.x); hi.x = std::max(hi.x, a.position.x);
        lo.y = std::min(lo.y, a.position.y); hi.y = std::max(hi.y, a.position.y);
        lo.z = std::min(lo.z, a.position.z); hi.z = std::max(hi.z, a.position.z);
    }
    const double cell = cutoff;
    auto key = [&](const Vec3& p) {
        auto ix = static_cast<std::int64_t>(std::floor((p.x - lo.x) / cell));
        auto iy = static_cast<std::int64_t>(std::floor((p.y - lo.y) / cell));
        auto iz = static_cast<std::int64_t>(std::floor((p.z - lo.z) / cell));
        return std::array<std::int64_t, 3>{ix, iy, iz};
    };
    std::map<std::array<std::int64_t, 3>, std::vector<int>> grid;
    for (int i = 0; i < static_cast<int>(atoms.size()); ++i) grid[key(atoms[i].position)].push_back(i);

    const double cut2 = cutoff * cutoff;
    for (int i = 0; i < static_cast<int>(atoms.size()); ++i) {
        auto k = key(atoms[i].position);
        for (std::int64_t dx = -1; dx <= 1; ++dx)
            for (std::int64_t dy = -1; dy <= 1; ++dy)
                for (std::int64_t dz = -1; dz <= 1; ++dz) {
                    auto it = grid.find({k[0] + dx, k[1] + dy, k[2] + dz});
                    if (it == grid.end()) continue;
                    for (int j : it->second) {
                        if (j <= i) continue;
                        Vec3 d = atoms[i].position - atoms[j].position;
                        if (dot(d, d) < cut2) {
                            adj[i].push_back(j);
                            adj[j].push_back(i);
                        }
                    }
                }
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    return adj;
}

// Pairs within 1.15 * bond_length are bonded: separates 1.545 A first
// neighbours from the 2.52 A in-plane second shell.
inline double bond_cutoff(const LatticeSpec& spec) { return 1.15 * spec.bond_length; }

inline void rebuild_bonds(Crystal& c) { c.bonds = detect_bonds(c.atoms, bond_cutoff(c.lattice)); }

}  // namespace nvkit

#endif  // NVKIT_CRYSTAL_HPP
