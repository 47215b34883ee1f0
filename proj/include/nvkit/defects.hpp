#ifndef NVKIT_DEFECTS_HPP
#define NVKIT_DEFECTS_HPP

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "nvkit/crystal.hpp"

namespace nvkit {

// ---------------------------------------------------------------------------
// WX-YZ stacking notation
// ---------------------------------------------------------------------------

struct NotationTag {
    std::string sites;    // two letters from {A, B}; BB normalizes to AA
    std::string species;  // defect components, e.g. "NV"
    enum class Qualifier { None, Long, Short } qualifier = Qualifier::None;
};

inline NotationTag parse_notation(const std::string& text) {
    auto fail = [&](const std::string& why) {
        throw Error("defects", "invalid-notation", "'" + text + "': " + why);
    };
    auto dash = text.find('-');
    if (dash == std::string::npos) fail("expected the form WX-YZ");
    std::string sites = text.substr(0, dash);
    std::string rest = text.substr(dash + 1);
    if (sites.size() != 2) fail("expected exactly two stacking-site letters");
    for (char ch : sites)
        if (ch != 'A' && ch != 'B') fail(std::string("'") + ch + "' is not a stacking site (A or B)");
    if (sites == "BB" || sites == "BA") sites = sites == "BB" ? "AA" : "AB";

    NotationTag tag;
    tag.sites = sites;
    auto paren = rest.find('(');
    if (paren != std::string::npos) {
        if (rest.back() != ')') fail("unterminated qualifier");
        std::string qual = rest.substr(paren + 1, rest.size() - paren - 2);
        if (qual == "long")
            tag.qualifier = NotationTag::Qualifier::Long;
        else if (qual == "short")
            tag.qualifier = NotationTag::Qualifier::Short;
        else
            fail("unknown qualifier '" + qual + "'");
        rest = rest.substr(0, paren);
    }
    if (rest.empty()) fail("empty species");
    for (char ch : rest)
        if (!std::isalnum(static_cast<unsigned char>(ch))) fail("species must be alphanumeric");
    tag.species = rest;
    return tag;
}

inline std::string format_notation(const NotationTag& tag) {
    std::string s = tag.sites + "-" + tag.species;
    if (tag.qualifier == NotationTag::Qualifier::Long) s += "(long)";
    if (tag.qualifier == NotationTag::Qualifier::Short) s += "(short)";
    return s;
}

inline NotationTag notation_for(DefectClass cls, const std::string& species = "NV") {
    NotationTag tag;
    tag.species = species;
    switch (cls) {
        case DefectClass::AB: tag.sites = "AB"; break;
        case DefectClass::ShortAA:
            tag.sites = "AA";
            tag.qualifier = NotationTag::Qualifier::Short;
            break;
        case DefectClass::LongAA:
            tag.sites = "AA";
            tag.qualifier = NotationTag::Qualifier::Long;
            break;
        case DefectClass::Cubic: tag.sites = "AB"; break;
    }
    return tag;
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

namespace detail {

// 15 deg: ideal axial bonds are at 0 deg, in-bilayer bonds near 109 deg, so
// small relaxation tilts cannot flip the call.
constexpr double kAxialAngle = 15.0 * M_PI / 180.0;

inline bool axial(const Crystal& c, int i, int j) {
    Vec3 d = c.atoms[j].position - c.atoms[i].position;
    return axis_angle(d, c.c_axis) < kAxialAngle;
}

}  // namespace detail

inline DefectClass classify_pair(const Crystal& c, int n_index, int v_index) {
    const int n = static_cast<int>(c.atoms.size());
    if (n_index < 0 || n_index >= n || v_index < 0 || v_index >= n || n_index == v_index)
        throw Error("defects", "invalid-spec", "pair indices out of range");
    for (int i : {n_index, v_index})
        if (c.atoms[i].species != Species::C && c.atoms[i].species != Species::N)
            throw Error("defects", "invalid-spec", "pair sites must be heavy lattice atoms");

    if (c.bonded(n_index, v_index)) {
        if (c.lattice.phase == Phase::Cubic) return DefectClass::Cubic;
        return detail::axial(c, n_index, v_index) ? DefectClass::ShortAA : DefectClass::AB;
    }
    if (c.lattice.phase == Phase::Hexagonal) {
        double sep = distance(c.atoms[n_index].position, c.atoms[v_index].position);
        if (detail::axial(c, n_index, v_index) && sep <= 1.15 * c.lattice.long_gap())
            return DefectClass::LongAA;
    }
    throw Error("defects", "not-an-nv-pair",
                "sites " + std::to_string(n_index) + " and " + std::to_string(v_index) +
                    " are neither bonded nor axially adjacent");
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

inline bool is_interior(const Crystal& c, int i) {
    if (c.atoms[i].species != Species::C || c.coordination(i) != 4) return false;
    for (int j : c.bonds[i])
        if (c.coordination(j) != 4) return false;
    return true;
}

namespace detail {

// Local-environment signature for symmetry equivalence: the sorted multiset of
// (d(N,a), d(V,a)) over atoms within two bond hops of either site. Rotation
// invariant; recovers the 3/1/1 hexagonal split without a space-group library.
inline std::vector<std::pair<double, double>> pair_signature(const Crystal& c, int n_idx, int v_idx) {
    std::set<int> env;
    for (int seed : {n_idx, v_idx}) {
        env.insert(seed);
        for (int a : c.bonds[seed]) {
            env.insert(a);
            for (int b : c.bonds[a]) env.insert(b);
        }
    }
    std::vector<std::pair<double, double>> sig;
    for (int a : env)
        sig.emplace_back(std::round(distance(c.atoms[n_idx].position, c.atoms[a].position) * 1e6),
                         std::round(distance(c.atoms[v_idx].position, c.atoms[a].position) * 1e6));
    std::sort(sig.begin(), sig.end());
    return sig;
}

}  // namespace detail

// Every distinct (N, V) placement with the nitrogen at `focus`, collapsed to
// one representative per symmetry-equivalence class with multiplicity counts.
// Ordering: class enum order, then separation.
inline std::vector<DefectConfig> enumerate_nv_configurations(const Crystal& c, int focus) {
    if (focus < 0 || focus >= static_cast<int>(c.atoms.size()))
        throw Error("defects", "invalid-spec", "focus index out of range");
    if (!is_interior(c, focus))
        throw Error("defects", "surface-site",
                    "focus must be an interior carbon; classification would be distorted at the surface");

    std::vector<int> candidates(c.bonds[focus].begin(), c.bonds[focus].end());
    if (c.lattice.phase == Phase::Hexagonal) {
        // Non-bonded axial partner across the long cross-plane gap.
        const double window = 1.15 * c.lattice.long_gap();
        for (int j = 0; j < static_cast<int>(c.atoms.size()); ++j) {
            if (j == focus || c.bonded(focus, j) || c.atoms[j].species != Species::C) continue;
            double sep = distance(c.atoms[focus].position, c.atoms[j].position);
            if (sep <= window && detail::axial(c, focus, j)) candidates.push_back(j);
        }
    }

    std::vector<std::vector<std::pair<double, double>>> signatures;
    std::vector<DefectConfig> reps;
    for (int v : candidates) {
        if (c.atoms[v].species != Species::C) continue;
        auto sig = detail::pair_signature(c, focus, v);
        bool merged = false;
        for (std::size_t g = 0; g < signatures.size(); ++g)
            if (signatures[g] == sig) {
                ++reps[g].multiplicity;
                merged = true;
                break;
            }
        if (merged) continue;
        DefectConfig cfg;
        cfg.nitrogen_index = focus;
        cfg.vacancy_index = v;
        cfg.cls = classify_pair(c, focus, v);
        cfg.separation = distance(c.atoms[focus].position, c.atoms[v].position);
        cfg.multiplicity = 1;
        signatures.push_back(std::move(sig));
        reps.push_back(cfg);
    }
    std::sort(reps.begin(), reps.end(), [](const DefectConfig& a, const DefectConfig& b) {
        if (a.cls != b.cls) return static_cast<int>(a.cls) < static_cast<int>(b.cls);
        return a.separation < b.separation;
    });
    return reps;
}

// ---------------------------------------------------------------------------
// Placement
// ---------------------------------------------------------------------------

// Substitute N at the nitrogen site and delete the vacancy carbon. The
// returned crystal records the placement with enough detail to revert.
inline Crystal place_nv(const Crystal& input, const DefectConfig& config) {
    const int n = static_cast<int>(input.atoms.size());
    if (config.nitrogen_index < 0 || config.nitrogen_index >= n || config.vacancy_index < 0 ||
        config.vacancy_index >= n || config.nitrogen_index == config.vacancy_index)
        throw Error("defects", "invalid-spec", "defect indices out of range");
    if (config.charge != 0 && config.charge != -1)
        throw Error("defects", "invalid-spec", "charge must be 0 or -1");
    for (int i : {config.nitrogen_index, config.vacancy_index})
        if (input.atoms[i].species != Species::C)
            throw Error("defects", "occupied-site",
                        "site " + std::to_string(i) + " is not a pristine carbon");
    if (input.defect)
        throw Error("defects", "occupied-site", "crystal already carries an NV placement");

    Crystal out;
    out.lattice = input.lattice;
    out.c_axis = input.c_axis;
    const int v = config.vacancy_index;
    std::vector<int> remap(n, -1);
    for (int i = 0; i < n; ++i) {
        if (i == v) continue;
        remap[i] = static_cast<int>(out.atoms.size());
        out.atoms.push_back(input.atoms[i]);
    }
    out.atoms[remap[config.nitrogen_index]].species = Species::N;
    out.bonds.resize(out.atoms.size());
    for (int i = 0; i < n; ++i) {
        if (i == v) continue;
        for (int j : input.bonds[i])
            if (j != v) out.bonds[remap[i]].push_back(remap[j]);
        std::sort(out.bonds[remap[i]].begin(), out.bonds[remap[i]].end());
    }

    PlacedDefect placed;
    placed.config = config;
    placed.config.nitrogen_index = remap[config.nitrogen_index];
    placed.config.separation =
        distance(input.atoms[config.nitrogen_index].position, input.atoms[v].position);
    placed.vacancy_original_index = v;
    placed.vacancy_position = input.atoms[v].position;
    placed.vacancy_site = input.atoms[v].site;
    out.defect = placed;
    return out;
}

// Undo place_nv: re-insert the vacancy carbon at its original index and
// restore the nitrogen site to carbon. Bonds are re-detected for the restored
// atom, which reproduces the original graph exactly on unrelaxed geometry.
inline Crystal revert_nv(const Crystal& placed) {
    if (!placed.defect) throw Error("defects", "invalid-spec", "crystal carries no NV placement");
    const PlacedDefect& d = *placed.defect;
    Crystal out;
    out.lattice = placed.lattice;
    out.c_axis = placed.c_axis;
    const int n = static_cast<int>(placed.atoms.size());
    const int v = d.vacancy_original_index;
    std::vector<int> remap(n);
    out.atoms.reserve(n + 1);
    for (int i = 0; i < n + 1; ++i) {
        if (i == v) {
            out.atoms.push_back({Species::C, d.vacancy_position, d.vacancy_site, false});
        } else {
            int src = i < v ? i : i - 1;
            remap[src] = i;
            out.atoms.push_back(placed.atoms[src]);
        }
    }
    out.atoms[remap[d.config.nitrogen_index]].species = Species::C;
    out.bonds.assign(out.atoms.size(), {});
    for (int i = 0; i < n; ++i)
        for (int j : placed.bonds[i]) out.bonds[remap[i]].push_back(remap[j]);
    const double cutoff = bond_cutoff(placed.lattice);
    for (int i = 0; i < static_cast<int>(out.atoms.size()); ++i) {
        if (i == v) continue;
        if (distance(out.atoms[i].position, d.vacancy_position) < cutoff) {
            out.bonds[i].push_back(v);
            out.bonds[v].push_back(i);
        }
    }
    for (auto& adj : out.bonds) std::sort(adj.begin(), adj.end());
    return out;
}

}  // namespace nvkit

#endif  // NVKIT_DEFECTS_HPP
