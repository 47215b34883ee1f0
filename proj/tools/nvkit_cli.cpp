// nvkit command-line front end: lattice building, defect enumeration and
// placement, photophysics analysis, spectral superposition, ODMR prediction,
// and thermochemistry reports.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nvkit/nvkit.hpp"

namespace {

using namespace nvkit;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cli", "io-error", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cli", "io-error", "cannot write '" + path + "'");
    out << content;
}

std::vector<double> parse_csv_doubles(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) {
        char* end = nullptr;
        double v = std::strtod(part.c_str(), &end);
        if (end == part.c_str() || *end != '\0')
            throw Error("cli", "usage-error", what + ": '" + part + "' is not a number");
        out.push_back(v);
    }
    return out;
}

// NVKIT_CONSTANTS points to a [constants] block in the .nvrec grammar.
PhysicalConstants load_constants() {
    PhysicalConstants k;
    const char* path = std::getenv("NVKIT_CONSTANTS");
    if (!path || !*path) return k;
    std::istringstream in(read_file(path));
    std::string line;
    bool in_section = false;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[') {
            in_section = line == "[constants]";
            continue;
        }
        if (!in_section) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error("cli", "parse-error", "constants file: expected key=value", line_no);
        std::string key = line.substr(0, eq);
        double v = std::strtod(line.substr(eq + 1).c_str(), nullptr);
        if (key == "h")
            k.h = v;
        else if (key == "hc")
            k.hc = v;
        else if (key == "c_au")
            k.c_au = v;
        else if (key == "t_au")
            k.t_au = v;
        else
            throw Error("cli", "parse-error", "constants file: unknown key '" + key + "'", line_no);
    }
    return k;
}

LatticeSpec spec_from_options(const std::string& phase, double bond, double u,
                              const std::string& extents) {
    LatticeSpec s;
    if (phase == "cubic")
        s.phase = Phase::Cubic;
    else if (phase == "hexagonal")
        s.phase = Phase::Hexagonal;
    else
        throw Error("cli", "usage-error", "phase must be 'cubic' or 'hexagonal'");
    s.bond_length = bond;
    s.internal_u = u;
    auto ext = parse_csv_doubles(extents, "--extents");
    if (ext.size() != 3) throw Error("cli", "usage-error", "--extents needs three integers");
    for (int i = 0; i < 3; ++i) s.extents[i] = static_cast<int>(ext[i]);
    return s;
}

int resolve_focus(const Crystal& c, const std::string& focus) {
    if (focus == "center") return central_interior_atom(c);
    char* end = nullptr;
    long idx = std::strtol(focus.c_str(), &end, 10);
    if (end == focus.c_str() || *end != '\0')
        throw Error("cli", "usage-error", "--focus must be 'center' or an atom index");
    return static_cast<int>(idx);
}

std::string defect_table(const std::vector<DefectConfig>& configs) {
    std::string out = "class     notation      separation_A  multiplicity  vacancy_index\n";
    char buf[160];
    for (const auto& cfg : configs) {
        std::snprintf(buf, sizeof buf, "%-9s %-13s %12.6f %13d %14d\n", defect_class_name(cfg.cls),
                      format_notation(notation_for(cfg.cls)).c_str(), cfg.separation, cfg.multiplicity,
                      cfg.vacancy_index);
        out += buf;
    }
    return out;
}

std::string odmr_table(const std::vector<std::string>& labels, const std::vector<double>& seps,
                       const OdmrModel& model, StrainMode mode) {
    std::string out = "system            d_calc_pm  d_pred_pm  strain_pct  shift_GHz  splitting_GHz\n";
    char buf[200];
    for (std::size_t i = 0; i < seps.size(); ++i) {
        auto p = predict(seps[i], model, mode);
        std::string shift = "-", split = "-", strain = "-";
        if (p.valid) {
            char tmp[32];
            std::snprintf(tmp, sizeof tmp, "%.1f", p.strain * 100.0);
            strain = tmp;
            std::snprintf(tmp, sizeof tmp, "%.3f", *p.shift_ghz);
            shift = tmp;
            std::snprintf(tmp, sizeof tmp, "%.2f", *p.splitting_ghz);
            split = tmp;
        }
        std::snprintf(buf, sizeof buf, "%-17s %9.0f %10.0f %11s %10s %14s\n",
                      (i < labels.size() ? labels[i] : "d=" + fmt6(seps[i])).c_str(), p.d_calc_pm,
                      std::round(p.d_pred_pm), strain.c_str(), shift.c_str(), split.c_str());
        out += buf;
    }
    return out;
}

std::string photophysics_section(const RecordFile& rec, const std::optional<Spectrum>& spec,
                                 double delta_c, const PhysicalConstants& k) {
    std::string out;
    SplittingModel bare{1.0}, split{delta_c};
    for (const auto& ex : rec.excitations) {
        out += "[photophysics]\n";
        out += "state=" + std::to_string(ex.state) + "\n";
        out += "energy_eV=" + fmt6(ex.energy_eV) + "\n";
        out += "splitting_THz=" + fmt6(crystal_field_splitting(ex.energy_eV, split, k)) + "\n";
        out += "bare_THz=" + fmt6(crystal_field_splitting(ex.energy_eV, bare, k)) + "\n";
        if (spec) {
            auto rr = radiative_rate(ex.tdm_au, *spec, k);
            out += "k_r_per_s=" + fmt6(rr.k_r) + "\n";
            if (rr.tau_r) out += "tau_r_ns=" + fmt6(*rr.tau_r * 1e9) + "\n";
        } else {
            // Delta-bandshape surrogate pinned at the transition wavelength.
            double wl = convert(ex.energy_eV, Unit::Ev, Unit::Nm, k);
            auto rr = radiative_rate_delta(ex.tdm_au, wl, k);
            out += "k_r_delta_per_s=" + fmt6(rr.k_r) + "\n";
            if (rr.tau_r) out += "tau_r_delta_ns=" + fmt6(*rr.tau_r * 1e9) + "\n";
        }
        out += "\n";
    }
    if (spec) {
        auto peaks = find_peaks(*spec);
        out += "[photophysics]\n";
        if (peaks.zpl_nm) out += "zpl_nm=" + fmt6(*peaks.zpl_nm) + "\n";
        std::string plist;
        for (const auto& p : peaks.peaks) {
            if (!plist.empty()) plist += ",";
            plist += fmt6(p.wavelength_nm) + ":" + fmt6(p.intensity);
        }
        out += "peaks=" + plist + "\n";
    }
    return out;
}

std::string spectrum_svg(const Spectrum& s, int width = 640, int height = 360) {
    double x0 = s.points.front().first, x1 = s.points.back().first;
    double ymax = s.max_intensity();
    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
                      "\" height=\"" + std::to_string(height) + "\">\n<polyline fill=\"none\" "
                      "stroke=\"black\" points=\"";
    for (const auto& [wl, inten] : s.points) {
        double px = (wl - x0) / (x1 - x0) * (width - 20) + 10;
        double py = height - 10 - inten / ymax * (height - 20);
        svg += fmt6(px) + "," + fmt6(py) + " ";
    }
    svg += "\"/>\n</svg>\n";
    return svg;
}

Crystal build_from_cli(const std::string& phase, double bond, double u, const std::string& extents,
                       bool carve, int rings, int planes, const std::string& focus,
                       std::optional<int> cap, bool hydrogenate, double ch, bool freeze) {
    auto spec = spec_from_options(phase, bond, u, extents);
    Crystal c = build(spec);
    if (carve) {
        CarveOptions opt;
        opt.rings_in_plane = rings;
        opt.planes_each_side = planes;
        opt.max_heavy_atoms = cap;
        c = carve_nanocrystal(c, {resolve_focus(c, focus)}, opt);
    }
    if (hydrogenate) c = hydrogen_terminate(c, ch, freeze);
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"NV colour-centre toolkit for cubic and hexagonal diamond nanocrystals"};
    app.require_subcommand(1);

    // ---- build ----
    std::string phase = "hexagonal", extents = "4,4,3", focus = "center", out_path = "-";
    double bond = 1.545, u = 0.375, ch = 1.09;
    bool do_carve = false, hydrogenate = false, no_freeze = false;
    int rings = 2, planes = 1, cap = -1;
    auto* cmd_build = app.add_subcommand("build", "Generate a lattice and write XYZ");
    cmd_build->add_option("--phase", phase, "cubic or hexagonal")->capture_default_str();
    cmd_build->add_option("--bond", bond, "C-C bond length in Angstrom")->capture_default_str();
    cmd_build->add_option("--u", u, "wurtzite internal parameter")->capture_default_str();
    cmd_build->add_option("--extents", extents, "cells along each lattice vector")->capture_default_str();
    cmd_build->add_flag("--carve", do_carve, "carve a nanocrystal around the focus");
    cmd_build->add_option("--rings", rings, "ring shells in the focal plane")->capture_default_str();
    cmd_build->add_option("--planes", planes, "planes kept on each side")->capture_default_str();
    cmd_build->add_option("--focus", focus, "'center' or an atom index")->capture_default_str();
    cmd_build->add_option("--cap", cap, "heavy-atom cap for carving");
    cmd_build->add_flag("--hydrogenate", hydrogenate, "terminate dangling bonds with H");
    cmd_build->add_option("--ch", ch, "C-H length in Angstrom")->capture_default_str();
    cmd_build->add_flag("--no-freeze", no_freeze, "leave added hydrogens unfrozen");
    cmd_build->add_option("-o,--output", out_path, "output XYZ path ('-' = stdout)");

    // ---- enumerate ----
    std::string enum_xyz;
    auto* cmd_enum = app.add_subcommand("enumerate", "List NV configurations around a focus");
    cmd_enum->add_option("--xyz", enum_xyz, "input XYZ (otherwise a lattice is generated)");
    cmd_enum->add_option("--phase", phase, "cubic or hexagonal")->capture_default_str();
    cmd_enum->add_option("--bond", bond, "C-C bond length")->capture_default_str();
    cmd_enum->add_option("--u", u, "wurtzite internal parameter")->capture_default_str();
    cmd_enum->add_option("--extents", extents, "cells along each lattice vector")->capture_default_str();
    cmd_enum->add_option("--focus", focus, "'center' or an atom index")->capture_default_str();

    // ---- place ----
    std::string place_xyz, place_class = "AB";
    int place_charge = 0, place_n = -1, place_v = -1;
    auto* cmd_place = app.add_subcommand("place", "Place an NV defect and write XYZ");
    cmd_place->add_option("--xyz", place_xyz, "input XYZ (otherwise a lattice is generated)");
    cmd_place->add_option("--phase", phase, "cubic or hexagonal")->capture_default_str();
    cmd_place->add_option("--bond", bond, "C-C bond length")->capture_default_str();
    cmd_place->add_option("--u", u, "wurtzite internal parameter")->capture_default_str();
    cmd_place->add_option("--extents", extents, "cells along each lattice vector")->capture_default_str();
    cmd_place->add_option("--focus", focus, "'center' or an atom index")->capture_default_str();
    cmd_place->add_option("--class", place_class, "AB, ShortAA, LongAA or Cubic")->capture_default_str();
    cmd_place->add_option("--n", place_n, "explicit nitrogen atom index");
    cmd_place->add_option("--v", place_v, "explicit vacancy atom index");
    cmd_place->add_option("--charge", place_charge, "0 or -1")->capture_default_str();
    cmd_place->add_option("-o,--output", out_path, "output XYZ path");

    // ---- analyze ----
    std::string rec_path, spec_path;
    double delta_c = 4.0 / 9.0;
    bool bare = false, as_json = false;
    auto* cmd_analyze = app.add_subcommand("analyze", "Photophysics report from records and spectra");
    cmd_analyze->add_option("--records", rec_path, "input .nvrec file")->required();
    cmd_analyze->add_option("--spectrum", spec_path, "emission bandshape .spec file");
    cmd_analyze->add_option("--delta-c", delta_c, "crystal-field splitting factor")->capture_default_str();
    cmd_analyze->add_flag("--bare", bare, "report the bare transition frequency (delta_c = 1)");
    cmd_analyze->add_flag("--json", as_json, "read/write the JSON mirror of .nvrec");
    cmd_analyze->add_option("-o,--output", out_path, "output path");

    // ---- combine ----
    std::vector<std::string> combine_inputs;
    std::string weights_text = "equal", svg_path;
    auto* cmd_combine = app.add_subcommand("combine", "Weighted superposition of spectra");
    cmd_combine->add_option("spectra", combine_inputs, "input .spec files")->required();
    cmd_combine->add_option("--weights", weights_text, "'equal' or comma-separated fractions")
        ->capture_default_str();
    cmd_combine->add_option("--svg", svg_path, "also write a line-plot SVG");
    cmd_combine->add_option("-o,--output", out_path, "output .spec path");

    // ---- odmr ----
    std::string seps_text = "184,185,170,293", labels_text = "c-NV-,AB-NV-,ShortAA-NV-,LongAA-NV-";
    std::string odmr_xyz;
    bool table = false, exact_mode = false;
    OdmrModel model;
    auto* cmd_odmr = app.add_subcommand("odmr", "Strain-based fine-structure prediction");
    cmd_odmr->add_flag("--table", table, "emit the separation table");
    cmd_odmr->add_option("--separations", seps_text, "calculated N-V separations in pm")
        ->capture_default_str();
    cmd_odmr->add_option("--labels", labels_text, "row labels")->capture_default_str();
    cmd_odmr->add_option("--xyz", odmr_xyz, "predict from a placed-defect XYZ instead");
    cmd_odmr->add_flag("--exact", exact_mode, "full-precision strain instead of tabulated");
    cmd_odmr->add_option("--kperp", model.k_perp_ghz, "GHz per unit strain")->capture_default_str();
    cmd_odmr->add_option("--dref", model.d_ref_pm, "reference separation, pm")->capture_default_str();
    cmd_odmr->add_option("--d0", model.d0_splitting_ghz, "zero-strain splitting, GHz")
        ->capture_default_str();
    cmd_odmr->add_option("--rescale", model.rescale_factor, "separation rescale factor")
        ->capture_default_str();

    // ---- thermo ----
    std::string thermo_path;
    auto* cmd_thermo = app.add_subcommand("thermo", "Per-atom Gibbs stability report");
    cmd_thermo->add_option("--records", thermo_path, "input .nvrec with [thermo] blocks")->required();

    // ---- report ----
    std::string rep_records, rep_thermo, rep_spectrum, rep_seps = "184,185,170,293";
    auto* cmd_report = app.add_subcommand("report", "Chained analyze + odmr + thermo document");
    cmd_report->add_option("--records", rep_records, "input .nvrec with excitations");
    cmd_report->add_option("--thermo", rep_thermo, "input .nvrec with [thermo] blocks");
    cmd_report->add_option("--spectrum", rep_spectrum, "emission bandshape .spec");
    cmd_report->add_option("--separations", rep_seps, "N-V separations in pm")->capture_default_str();
    cmd_report->add_option("-o,--output", out_path, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const PhysicalConstants constants = load_constants();

        if (cmd_build->parsed()) {
            std::optional<int> cap_opt;
            if (cap >= 0) cap_opt = cap;
            Crystal c = build_from_cli(phase, bond, u, extents, do_carve, rings, planes, focus, cap_opt,
                                       hydrogenate, ch, !no_freeze);
            write_file(out_path, write_xyz(c));
        } else if (cmd_enum->parsed()) {
            Crystal c = enum_xyz.empty() ? build(spec_from_options(phase, bond, u, extents))
                                         : parse_xyz(read_file(enum_xyz));
            auto configs = enumerate_nv_configurations(c, resolve_focus(c, focus));
            std::cout << defect_table(configs);
        } else if (cmd_place->parsed()) {
            Crystal c = place_xyz.empty() ? build(spec_from_options(phase, bond, u, extents))
                                          : parse_xyz(read_file(place_xyz));
            DefectConfig cfg;
            if (place_n >= 0 && place_v >= 0) {
                cfg.nitrogen_index = place_n;
                cfg.vacancy_index = place_v;
                cfg.cls = classify_pair(c, place_n, place_v);
            } else {
                auto configs = enumerate_nv_configurations(c, resolve_focus(c, focus));
                auto it = std::find_if(configs.begin(), configs.end(), [&](const DefectConfig& k) {
                    return place_class == defect_class_name(k.cls);
                });
                if (it == configs.end())
                    throw Error("cli", "usage-error",
                                "no configuration of class '" + place_class + "' at this focus");
                cfg = *it;
            }
            cfg.charge = place_charge;
            write_file(out_path, write_xyz(place_nv(c, cfg)));
        } else if (cmd_analyze->parsed()) {
            std::string text = read_file(rec_path);
            RecordFile rec = as_json ? record_file_from_json(nlohmann::json::parse(text))
                                     : parse_record_file(text);
            std::optional<Spectrum> spec;
            if (!spec_path.empty()) spec = parse_spectrum(read_file(spec_path));
            double dc = bare ? 1.0 : delta_c;
            write_file(out_path, photophysics_section(rec, spec, dc, constants));
        } else if (cmd_combine->parsed()) {
            std::vector<Spectrum> spectra;
            for (const auto& p : combine_inputs) spectra.push_back(parse_spectrum(read_file(p)));
            std::vector<double> weights;
            if (weights_text == "equal")
                weights.assign(spectra.size(), 1.0 / static_cast<double>(spectra.size()));
            else
                weights = parse_csv_doubles(weights_text, "--weights");
            Spectrum combined = combine_spectra(spectra, weights);
            write_file(out_path, serialize_spectrum(combined));
            if (!svg_path.empty()) write_file(svg_path, spectrum_svg(combined));
        } else if (cmd_odmr->parsed()) {
            StrainMode mode = exact_mode ? StrainMode::Exact : StrainMode::Tabulated;
            if (!odmr_xyz.empty()) {
                Crystal c = parse_xyz(read_file(odmr_xyz));
                // Re-hydrate a minimal placement record from the comment metadata.
                if (!c.defect) {
                    auto n_it = c.annotations.find("notation");
                    auto q_it = c.annotations.find("charge");
                    if (n_it == c.annotations.end() || q_it == c.annotations.end())
                        throw Error("cli", "usage-error", "XYZ lacks a defect placement");
                    throw Error("odmr", "domain-error",
                                "XYZ defect metadata lacks the N-V separation; use --separations");
                }
                auto p = predict_from_crystal(c, model, mode);
                std::cout << odmr_table({"from-xyz"}, {p.d_calc_pm}, model, mode);
            } else {
                auto seps = parse_csv_doubles(seps_text, "--separations");
                std::vector<std::string> labels;
                std::istringstream in(labels_text);
                std::string part;
                while (std::getline(in, part, ',')) labels.push_back(part);
                std::cout << odmr_table(labels, seps, model, mode);
            }
        } else if (cmd_thermo->parsed()) {
            RecordFile rec = parse_record_file(read_file(thermo_path));
            if (rec.thermos.empty())
                throw Error("cli", "usage-error", "no [thermo] blocks in '" + thermo_path + "'");
            std::cout << format_stability_report(stability_compare(rec.thermos));
        } else if (cmd_report->parsed()) {
            std::string doc = "# nvkit report\n\n";
            if (!rep_records.empty()) {
                RecordFile rec = parse_record_file(read_file(rep_records));
                std::optional<Spectrum> spec;
                if (!rep_spectrum.empty()) spec = parse_spectrum(read_file(rep_spectrum));
                doc += "## photophysics\n\n" +
                       photophysics_section(rec, spec, 4.0 / 9.0, constants) + "\n";
            }
            auto seps = parse_csv_doubles(rep_seps, "--separations");
            doc += "## fine structure\n\n" +
                   odmr_table({"c-NV-", "AB-NV-", "ShortAA-NV-", "LongAA-NV-"}, seps, OdmrModel{},
                              StrainMode::Tabulated) +
                   "\n";
            if (!rep_thermo.empty()) {
                RecordFile rec = parse_record_file(read_file(rep_thermo));
                doc += "## thermochemistry\n\n" + format_stability_report(stability_compare(rec.thermos));
            }
            write_file(out_path, doc);
        }
    } catch (const nvkit::Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
