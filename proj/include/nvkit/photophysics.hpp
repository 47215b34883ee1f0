#ifndef NVKIT_PHOTOPHYSICS_HPP
#define NVKIT_PHOTOPHYSICS_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <vector>

#include "nvkit/qcdata.hpp"

namespace nvkit {

// Single authoritative constant set; every operation in this module converts
// through it. NVKIT_CONSTANTS may substitute an alternate set via the CLI.
struct PhysicalConstants {
    double h = 4.135667696e-15;      // Planck, eV s
    double hc = 1239.842;            // eV nm
    double c_au = 137.035999;        // speed of light, atomic units
    double t_au = 2.4188843265e-17;  // atomic time unit, s

    double hartree_eV() const { return h / (2.0 * M_PI * t_au); }
};

inline const PhysicalConstants& default_constants() {
    static const PhysicalConstants c;
    return c;
}

enum class Unit { Nm, Ev, THz, Hartree };

inline std::optional<Unit> unit_from_name(const std::string& name) {
    if (name == "nm") return Unit::Nm;
    if (name == "eV" || name == "ev") return Unit::Ev;
    if (name == "THz" || name == "thz") return Unit::THz;
    if (name == "hartree" || name == "Ha" || name == "ha") return Unit::Hartree;
    return std::nullopt;
}

// Conversions route through eV. Reciprocal units (nm) require a positive value.
inline double convert(double value, Unit from, Unit to, const PhysicalConstants& k = default_constants()) {
    if (!std::isfinite(value)) throw Error("photophysics", "domain-error", "value must be finite");
    if (from == to) return value;
    double ev;
    switch (from) {
        case Unit::Nm:
            if (!(value > 0.0)) throw Error("photophysics", "domain-error", "wavelength must be positive");
            ev = k.hc / value;
            break;
        case Unit::Ev: ev = value; break;
        case Unit::THz: ev = value * 1e12 * k.h; break;
        default: ev = value * k.hartree_eV(); break;
    }
    switch (to) {
        case Unit::Nm:
            if (!(ev > 0.0)) throw Error("photophysics", "domain-error", "energy must be positive for nm");
            return k.hc / ev;
        case Unit::Ev: return ev;
        case Unit::THz: return ev / k.h * 1e-12;
        default: return ev / k.hartree_eV();
    }
}

// ---------------------------------------------------------------------------
// Crystal-field splitting
// ---------------------------------------------------------------------------

struct SplittingModel {
    // Tetrahedral splitting factor; ~4/9 for sp3 carbon. delta_c = 1 gives the
    // bare transition frequency E/h (see README for the two conventions).
    double delta_c = 4.0 / 9.0;
};

inline double crystal_field_splitting(double energy_eV, const SplittingModel& model = {},
                                      const PhysicalConstants& k = default_constants()) {
    if (!(energy_eV > 0.0))
        throw Error("photophysics", "domain-error", "absorption energy must be positive");
    if (!(model.delta_c > 0.0))
        throw Error("photophysics", "domain-error", "splitting factor must be positive");
    return convert(energy_eV, Unit::Ev, Unit::THz, k) / model.delta_c;
}

// ---------------------------------------------------------------------------
// Radiative rate (spontaneous emission)
// ---------------------------------------------------------------------------

struct RadiativeResult {
    double k_r = 0.0;                // 1/s
    std::optional<double> tau_r;     // s; absent when k_r = 0

    static RadiativeResult from_rate(double k) {
        RadiativeResult r;
        r.k_r = k;
        if (k > 0.0) r.tau_r = 1.0 / k;
        return r;
    }
};

// k_r = (4/3) d^2 <w^3> / c^3 in atomic units, with the bandshape normalized
// over frequency and integrated by trapezoid on the converted grid.
inline RadiativeResult radiative_rate(double transition_dipole_au, const Spectrum& spectrum,
                                      const PhysicalConstants& k = default_constants()) {
    if (transition_dipole_au < 0.0)
        throw Error("photophysics", "domain-error", "transition dipole must be non-negative");
    if (spectrum.points.size() < 2)
        throw Error("photophysics", "degenerate-spectrum", "a bandshape needs at least 2 points");
    if (spectrum.max_intensity() <= 0.0)
        throw Error("photophysics", "degenerate-spectrum", "bandshape is identically zero");

    // omega grid in hartree, ascending (reverse of the wavelength order).
    const std::size_t n = spectrum.points.size();
    std::vector<double> omega(n), s(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& [wl, inten] = spectrum.points[n - 1 - i];
        omega[i] = convert(wl, Unit::Nm, Unit::Hartree, k);
        s[i] = inten;
    }
    auto trapz = [&](auto f) {
        double acc = 0.0;
        for (std::size_t i = 1; i < n; ++i)
            acc += 0.5 * (omega[i] - omega[i - 1]) * (f(i) + f(i - 1));
        return acc;
    };
    double norm = trapz([&](std::size_t i) { return s[i]; });
    if (!(norm > 0.0))
        throw Error("photophysics", "degenerate-spectrum", "bandshape has zero integral");
    double moment3 = trapz([&](std::size_t i) { return s[i] * omega[i] * omega[i] * omega[i]; }) / norm;

    double d2 = transition_dipole_au * transition_dipole_au;
    double k_au = (4.0 / 3.0) * d2 * moment3 / (k.c_au * k.c_au * k.c_au);
    return RadiativeResult::from_rate(k_au / k.t_au);
}

// Closed form for a delta-like bandshape pinned at one wavelength; the oracle
// the trapezoid route converges to as the band narrows.
inline RadiativeResult radiative_rate_delta(double transition_dipole_au, double wavelength_nm,
                                            const PhysicalConstants& k = default_constants()) {
    if (transition_dipole_au < 0.0)
        throw Error("photophysics", "domain-error", "transition dipole must be non-negative");
    double w = convert(wavelength_nm, Unit::Nm, Unit::Hartree, k);
    double d2 = transition_dipole_au * transition_dipole_au;
    double k_au = (4.0 / 3.0) * d2 * w * w * w / (k.c_au * k.c_au * k.c_au);
    return RadiativeResult::from_rate(k_au / k.t_au);
}

// ---------------------------------------------------------------------------
// Peak extraction
// ---------------------------------------------------------------------------

enum class PeakRank { Primary, Secondary, Tertiary };

struct Peak {
    double wavelength_nm = 0.0;
    double intensity = 0.0;  // normalized to the global maximum
    PeakRank rank = PeakRank::Tertiary;
};

struct PeakSet {
    std::vector<Peak> peaks;           // ranked by intensity, descending
    std::optional<double> zpl_nm;      // shortest-wavelength retained peak
    bool empty() const { return peaks.empty(); }
};

inline PeakSet find_peaks(const Spectrum& spectrum, double prominence = 0.05) {
    if (spectrum.points.size() < 2)
        throw Error("photophysics", "degenerate-spectrum", "a spectrum needs at least 2 points");
    double maxI = spectrum.max_intensity();
    if (!(maxI > 0.0))
        throw Error("photophysics", "degenerate-spectrum", "spectrum is identically zero");

    const auto& p = spectrum.points;
    const std::size_t n = p.size();
    PeakSet out;
    for (std::size_t i = 0; i < n; ++i) {
        bool left_ok = (i == 0) || p[i].second > p[i - 1].second;
        bool right_ok = (i + 1 == n) || p[i].second >= p[i + 1].second;
        if (!(left_ok && right_ok)) continue;
        double rel = p[i].second / maxI;
        if (rel < prominence) continue;
        out.peaks.push_back({p[i].first, rel, PeakRank::Tertiary});
    }
    std::sort(out.peaks.begin(), out.peaks.end(),
              [](const Peak& a, const Peak& b) { return a.intensity > b.intensity; });
    for (std::size_t i = 0; i < out.peaks.size(); ++i)
        out.peaks[i].rank = i == 0 ? PeakRank::Primary : (i == 1 ? PeakRank::Secondary : PeakRank::Tertiary);
    for (const Peak& pk : out.peaks)
        if (!out.zpl_nm || pk.wavelength_nm < *out.zpl_nm) out.zpl_nm = pk.wavelength_nm;
    return out;
}

// ---------------------------------------------------------------------------
// Weighted superposition
// ---------------------------------------------------------------------------

inline Spectrum normalize(const Spectrum& s) {
    double m = s.max_intensity();
    if (!(m > 0.0)) throw Error("photophysics", "degenerate-spectrum", "spectrum is identically zero");
    Spectrum out = s;
    for (auto& [wl, inten] : out.points) inten /= m;
    out.normalized = true;
    return out;
}

namespace detail {

inline double interp_or_zero(const Spectrum& s, double wl) {
    const auto& p = s.points;
    if (wl < p.front().first || wl > p.back().first) return 0.0;
    auto it = std::lower_bound(p.begin(), p.end(), wl,
                               [](const auto& pt, double w) { return pt.first < w; });
    if (it->first == wl) return it->second;
    auto prev = std::prev(it);
    double t = (wl - prev->first) / (it->first - prev->first);
    return prev->second + t * (it->second - prev->second);
}

}  // namespace detail

// Each input normalized, resampled onto the union wavelength grid (zero
// outside support), weighted, summed, renormalized.
inline Spectrum combine_spectra(const std::vector<Spectrum>& spectra, const std::vector<double>& weights) {
    if (spectra.empty()) throw Error("photophysics", "invalid-weights", "no spectra to combine");
    if (spectra.size() != weights.size())
        throw Error("photophysics", "invalid-weights", "one weight per spectrum required");
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw Error("photophysics", "invalid-weights", "weights must be non-negative");
        sum += w;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
        throw Error("photophysics", "invalid-weights", "weights must sum to 1");

    std::set<double> grid;
    std::vector<Spectrum> normed;
    for (const auto& s : spectra) {
        normed.push_back(normalize(s));
        for (const auto& [wl, inten] : s.points) grid.insert(wl);
    }
    Spectrum out;
    for (double wl : grid) {
        double acc = 0.0;
        for (std::size_t i = 0; i < normed.size(); ++i)
            acc += weights[i] * detail::interp_or_zero(normed[i], wl);
        out.points.emplace_back(wl, acc);
    }
    return normalize(out);
}

}  // namespace nvkit

#endif  // NVKIT_PHOTOPHYSICS_HPP
