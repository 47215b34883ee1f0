#include <doctest.h>

#include <cmath>

#include "nvkit/defects.hpp"
#include "nvkit/geometry.hpp"
#include "nvkit/odmr.hpp"

using namespace nvkit;

TEST_CASE("tabulated-strain mode reproduces the published table") {
    struct Row {
        double d_calc, d_pred, shift, splitting;
        bool valid;
    };
    const Row rows[] = {
        {184.0, 154.0, 0.0, 2.88, true},
        {185.0, 155.0, -0.139, 2.74, true},
        {170.0, 142.0, 1.68, 4.56, true},
        {293.0, 245.0, 0.0, 0.0, false},
    };
    for (const Row& row : rows) {
        OdmrPrediction p = predict(row.d_calc, OdmrModel{}, StrainMode::Tabulated);
        CHECK(std::round(p.d_pred_pm) == doctest::Approx(row.d_pred));
        CHECK(p.valid == row.valid);
        if (row.valid) {
            REQUIRE(p.shift_ghz.has_value());
            REQUIRE(p.splitting_ghz.has_value());
            CHECK(std::fabs(*p.shift_ghz - row.shift) < 0.01);
            CHECK(std::fabs(*p.splitting_ghz - row.splitting) < 0.01);
            REQUIRE(p.shift_unc_ghz.has_value());
            CHECK(*p.shift_unc_ghz == doctest::Approx(1.2 * std::fabs(p.strain)).epsilon(1e-12));
        } else {
            CHECK(!p.shift_ghz.has_value());
            CHECK(!p.splitting_ghz.has_value());
        }
    }
}

TEST_CASE("exact mode keeps full precision") {
    OdmrPrediction p = predict(185.0, OdmrModel{}, StrainMode::Exact);
    double d_pred = 185.0 * 0.837;
    double strain = (154.0 - d_pred) / 154.0;
    CHECK(p.d_pred_pm == doctest::Approx(d_pred).epsilon(1e-12));
    CHECK(p.strain == doctest::Approx(strain).epsilon(1e-12));
    CHECK(*p.shift_ghz == doctest::Approx(21.5 * strain).epsilon(1e-12));
    CHECK(*p.splitting_ghz == doctest::Approx(2.88 + 21.5 * strain).epsilon(1e-12));
}

TEST_CASE("prediction is affine and monotone decreasing in the separation") {
    double prev = 1e9;
    for (double d = 155.0; d <= 210.0; d += 5.0) {
        OdmrPrediction p = predict(d, OdmrModel{}, StrainMode::Exact);
        REQUIRE(p.valid);
        CHECK(*p.shift_ghz < prev);
        prev = *p.shift_ghz;
    }
    // Affine: equal steps in d give equal steps in shift.
    auto shift = [](double d) { return *predict(d, OdmrModel{}, StrainMode::Exact).shift_ghz; };
    double d1 = shift(160.0) - shift(155.0);
    double d2 = shift(205.0) - shift(200.0);
    CHECK(d1 == doctest::Approx(d2).epsilon(1e-12));
}

TEST_CASE("zero-strain fixed point") {
    OdmrModel m;
    double d_fix = m.d_ref_pm / m.rescale_factor;
    OdmrPrediction p = predict(d_fix, m, StrainMode::Exact);
    CHECK(p.strain == doctest::Approx(0.0).scale(1.0));
    CHECK(*p.shift_ghz == doctest::Approx(0.0).scale(1.0));
    CHECK(*p.splitting_ghz == doctest::Approx(m.d0_splitting_ghz).epsilon(1e-12));
}

TEST_CASE("linear-validity gate") {
    OdmrModel m;
    // Just inside and just outside the window on both sides.
    double edge = m.linear_validity_strain;
    double d_in = (m.d_ref_pm * (1.0 - edge * 0.99)) / m.rescale_factor;
    double d_out = (m.d_ref_pm * (1.0 - edge * 1.01)) / m.rescale_factor;
    CHECK(predict(d_in, m, StrainMode::Exact).valid);
    CHECK(!predict(d_out, m, StrainMode::Exact).valid);
    double d_in2 = (m.d_ref_pm * (1.0 + edge * 0.99)) / m.rescale_factor;
    double d_out2 = (m.d_ref_pm * (1.0 + edge * 1.01)) / m.rescale_factor;
    CHECK(predict(d_in2, m, StrainMode::Exact).valid);
    CHECK(!predict(d_out2, m, StrainMode::Exact).valid);
}

TEST_CASE("model and input validation") {
    CHECK_THROWS_AS(predict(-10.0), Error);
    OdmrModel bad;
    bad.rescale_factor = 0.0;
    CHECK_THROWS_AS(predict(184.0, bad), Error);
}

TEST_CASE("prediction from a placed crystal") {
    LatticeSpec spec;
    spec.phase = Phase::Hexagonal;
    spec.extents = {4, 4, 4};
    Crystal c = build(spec);
    int focus = central_interior_atom(c);
    auto configs = enumerate_nv_configurations(c, focus);
    auto short_aa = std::find_if(configs.begin(), configs.end(),
                                 [](const DefectConfig& k) { return k.cls == DefectClass::ShortAA; });
    REQUIRE(short_aa != configs.end());

    DefectConfig cfg = *short_aa;
    cfg.charge = -1;
    Crystal placed = place_nv(c, cfg);

    // With an unrescaled separation (154.5 pm), exact mode yields a tiny
    // compressive shift relative to the 154 pm reference.
    OdmrModel unit;
    unit.rescale_factor = 1.0;
    OdmrPrediction p = predict_from_crystal(placed, unit, StrainMode::Exact);
    CHECK(p.d_calc_pm == doctest::Approx(154.5).epsilon(1e-9));
    CHECK(*p.shift_ghz == doctest::Approx(21.5 * (154.0 - 154.5) / 154.0).epsilon(1e-9));
    CHECK(std::fabs(*p.shift_ghz + 0.070) < 1e-3);

    SUBCASE("neutral charge is rejected") {
        DefectConfig neutral = *short_aa;
        neutral.charge = 0;
        Crystal placed0 = place_nv(c, neutral);
        try {
            predict_from_crystal(placed0);
            FAIL("expected unsupported-charge");
        } catch (const Error& e) {
            CHECK(e.kind() == "unsupported-charge");
        }
    }
    SUBCASE("pristine crystal is rejected") { CHECK_THROWS_AS(predict_from_crystal(c), Error); }
}
