#ifndef NVKIT_ODMR_HPP
#define NVKIT_ODMR_HPP

#include <cmath>
#include <optional>

#include "nvkit/crystal.hpp"

namespace nvkit {

struct OdmrModel {
    double k_perp_ghz = 21.5;        // fine-structure shift per unit strain
    double k_perp_unc_ghz = 1.2;     // reported susceptibility uncertainty
    double d_ref_pm = 154.0;         // N-V separation of NV- in cubic diamond
    double d0_splitting_ghz = 2.88;  // zero-strain |0> to |+-1> splitting
    double rescale_factor = 0.837;   // calculated -> predicted separation
    double linear_validity_strain = 0.16;

    void validate() const {
        for (double v : {k_perp_ghz, d_ref_pm, d0_splitting_ghz, rescale_factor, linear_validity_strain})
            if (!(v > 0.0)) throw Error("odmr", "domain-error", "model parameters must be positive");
    }
};

// Exact: strain from the full-precision predicted separation. Tabulated:
// strain from the separation rounded to integer picometres, which is how the
// published table's shifts were formed.
enum class StrainMode { Exact, Tabulated };

struct OdmrPrediction {
    double d_calc_pm = 0.0;
    double d_pred_pm = 0.0;
    double strain = 0.0;  // signed fraction, compression positive
    bool valid = false;   // |strain| within the linear-response window
    std::optional<double> shift_ghz;
    std::optional<double> splitting_ghz;
    std::optional<double> shift_unc_ghz;
};

inline OdmrPrediction predict(double d_calc_pm, const OdmrModel& model = {},
                              StrainMode mode = StrainMode::Exact) {
    model.validate();
    if (!(d_calc_pm > 0.0))
        throw Error("odmr", "domain-error", "N-V separation must be positive");

    OdmrPrediction p;
    p.d_calc_pm = d_calc_pm;
    p.d_pred_pm = d_calc_pm * model.rescale_factor;
    double d_eff = mode == StrainMode::Tabulated ? std::round(p.d_pred_pm) : p.d_pred_pm;
    p.strain = (model.d_ref_pm - d_eff) / model.d_ref_pm;
    p.valid = std::fabs(p.strain) <= model.linear_validity_strain;
    if (p.valid) {
        p.shift_ghz = model.k_perp_ghz * p.strain;
        p.splitting_ghz = model.d0_splitting_ghz + *p.shift_ghz;
        p.shift_unc_ghz = model.k_perp_unc_ghz * std::fabs(p.strain);
    }
    return p;
}

// The ground-state triplet argument applies to NV- only.
inline OdmrPrediction predict_from_crystal(const Crystal& defect_crystal, const OdmrModel& model = {},
                                           StrainMode mode = StrainMode::Exact) {
    if (!defect_crystal.defect)
        throw Error("odmr", "domain-error", "crystal carries no NV placement");
    if (defect_crystal.defect->config.charge != -1)
        throw Error("odmr", "unsupported-charge",
                    "fine-structure prediction applies to the NV- charge state only");
    return predict(defect_crystal.defect->config.separation * 100.0, model, mode);  // Angstrom -> pm
}

}  // namespace nvkit

#endif  // NVKIT_ODMR_HPP
