#ifndef NVKIT_THERMO_HPP
#define NVKIT_THERMO_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "nvkit/qcdata.hpp"

namespace nvkit {

struct PerAtomGibbs {
    double per_atom_kcal = 0.0;        // G0 / n_atoms
    double per_heavy_atom_kcal = 0.0;  // G0 / n_heavy, the hydrogen-free figure
};

inline PerAtomGibbs per_atom_gibbs(const ThermoRecord& rec) {
    if (rec.n_atoms_total < 1 || rec.n_atoms_heavy < 1)
        throw Error("thermo", "domain-error", "atom counts must be >= 1");
    return {rec.g0_kcal / rec.n_atoms_total, rec.g0_kcal / rec.n_atoms_heavy};
}

struct StabilityEntry {
    std::string label;
    ThermoRecord record;
    PerAtomGibbs per_atom;
};

struct StabilityReport {
    std::vector<StabilityEntry> entries;
    bool enthalpy_constant = true;   // all enthalpies agree within 0.01 meV
    std::string most_stable_label;   // minimal per-heavy-atom G0
    double g0_ratio_max_min = 1.0;   // largest over smallest total G0
};

inline StabilityReport stability_compare(const std::vector<ThermoRecord>& records,
                                         double enthalpy_tolerance_meV = 0.01) {
    if (records.empty()) throw Error("thermo", "domain-error", "no records to compare");

    StabilityReport report;
    double best = std::numeric_limits<double>::infinity();
    double g0_min = std::numeric_limits<double>::infinity();
    double g0_max = -std::numeric_limits<double>::infinity();
    for (const auto& rec : records) {
        StabilityEntry e{rec.label.empty() ? "record-" + std::to_string(report.entries.size() + 1) : rec.label,
                         rec, per_atom_gibbs(rec)};
        if (e.per_atom.per_heavy_atom_kcal < best) {
            best = e.per_atom.per_heavy_atom_kcal;
            report.most_stable_label = e.label;
        }
        g0_min = std::min(g0_min, rec.g0_kcal);
        g0_max = std::max(g0_max, rec.g0_kcal);
        if (std::fabs(rec.enthalpy_meV - records.front().enthalpy_meV) > enthalpy_tolerance_meV)
            report.enthalpy_constant = false;
        report.entries.push_back(std::move(e));
    }
    if (g0_min > 0.0) report.g0_ratio_max_min = g0_max / g0_min;
    return report;
}

// Table-shaped text report, one row per record.
inline std::string format_stability_report(const StabilityReport& report) {
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-16s %10s %10s %10s %10s %10s %8s %8s\n", "system", "zpe_eV",
                  "S_kcal", "H_meV", "G0_kcal", "G0/atom", "[-H]", "n/heavy");
    out += buf;
    for (const auto& e : report.entries) {
        std::snprintf(buf, sizeof buf, "%-16s %10.2f %10.2f %10.2f %10.2f %10.2f %8.2f %4d/%-4d\n",
                      e.label.c_str(), e.record.zpe_eV, e.record.entropy_kcal, e.record.enthalpy_meV,
                      e.record.g0_kcal, e.per_atom.per_atom_kcal, e.per_atom.per_heavy_atom_kcal,
                      e.record.n_atoms_total, e.record.n_atoms_heavy);
        out += buf;
    }
    out += "enthalpy constant: " + std::string(report.enthalpy_constant ? "yes" : "no") + "\n";
    out += "most stable (per heavy atom): " + report.most_stable_label + "\n";
    std::snprintf(buf, sizeof buf, "G0 ratio (max/min): %.3f\n", report.g0_ratio_max_min);
    out += buf;
    return out;
}

}  // namespace nvkit

#endif  // NVKIT_THERMO_HPP
