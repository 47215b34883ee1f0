#ifndef NVKIT_QCDATA_HPP
#define NVKIT_QCDATA_HPP

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nvkit/crystal.hpp"
#include "nvkit/defects.hpp"

#include <json.hpp>

namespace nvkit {

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

struct CsfTerm {
    std::string label;  // free orbital-pair string, e.g. "H->L", "H-1->L+2_a"
    double weight = 0.0;
};

enum class SpinChannel { Alpha, Beta, Paired };

inline const char* channel_name(SpinChannel ch) {
    switch (ch) {
        case SpinChannel::Alpha: return "alpha";
        case SpinChannel::Beta: return "beta";
        default: return "paired";
    }
}

struct ExcitationRecord {
    int state = 1;  // S1 = 1
    SpinChannel channel = SpinChannel::Paired;
    double energy_eV = 0.0;
    double tdm_au = 0.0;  // transition dipole
    double edm_au = 0.0;  // electric dipole
    std::vector<CsfTerm> csf;
    std::map<std::string, std::string> extras;  // unknown keys, passed through
};

struct ElectronicSummary {
    std::optional<double> alpha_gap_eV;
    std::optional<double> beta_gap_eV;
    std::optional<double> paired_gap_eV;  // mutually exclusive with alpha/beta
    std::optional<double> adiabatic_eV;
    std::map<std::string, std::string> extras;
};

struct ThermoRecord {
    std::string label;
    double zpe_eV = 0.0;
    double entropy_kcal = 0.0;
    double enthalpy_meV = 0.0;
    double thermal_kcal = 0.0;
    double nonthermal_kcal = 0.0;
    double g0_kcal = 0.0;
    int n_atoms_total = 1;
    int n_atoms_heavy = 1;
    std::map<std::string, std::string> extras;
};

struct RecordFile {
    std::vector<ExcitationRecord> excitations;
    std::optional<ElectronicSummary> summary;
    std::vector<ThermoRecord> thermos;
};

struct Spectrum {
    std::vector<std::pair<double, double>> points;  // (wavelength nm, intensity), ascending
    bool normalized = false;

    double max_intensity() const {
        double m = 0.0;
        for (const auto& p : points) m = std::max(m, p.second);
        return m;
    }
};

// ---------------------------------------------------------------------------
// Shared line machinery
// ---------------------------------------------------------------------------

namespace detail {

inline std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& text, int line, const std::string& field) {
    char* end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw Error("qcdata", "parse-error", "field '" + field + "': '" + text + "' is not a number", line);
    return v;
}

inline int parse_int(const std::string& text, int line, const std::string& field) {
    char* end = nullptr;
    long v = std::strtol(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0')
        throw Error("qcdata", "parse-error", "field '" + field + "': '" + text + "' is not an integer", line);
    return static_cast<int>(v);
}

struct Block {
    std::string section;
    int header_line = 0;
    std::vector<std::tuple<std::string, std::string, int>> pairs;  // key, value, line

    const std::string* find(const std::string& key) const {
        for (const auto& [k, v, l] : pairs)
            if (k == key) return &v;
        return nullptr;
    }
    int line_of(const std::string& key) const {
        for (const auto& [k, v, l] : pairs)
            if (k == key) return l;
        return header_line;
    }
    std::string require(const std::string& key) const {
        const std::string* v = find(key);
        if (!v)
            throw Error("qcdata", "parse-error",
                        "[" + section + "] block is missing mandatory field '" + key + "'", header_line);
        return *v;
    }
};

inline std::vector<Block> split_blocks(const std::string& text) {
    std::vector<Block> blocks;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    Block* current = nullptr;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = strip(raw);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw Error("qcdata", "parse-error", "unterminated section header", line_no);
            blocks.push_back({line.substr(1, line.size() - 2), line_no, {}});
            current = &blocks.back();
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error("qcdata", "parse-error", "expected 'key=value', got '" + line + "'", line_no);
        if (!current)
            throw Error("qcdata", "parse-error", "key=value pair before any [section] header", line_no);
        current->pairs.emplace_back(strip(line.substr(0, eq)), strip(line.substr(eq + 1)), line_no);
    }
    return blocks;
}

inline std::vector<CsfTerm> parse_csf(const std::string& text, int line) {
    std::vector<CsfTerm> terms;
    std::istringstream in(text);
    std::string part;
    double sum = 0.0;
    while (std::getline(in, part, ',')) {
        part = strip(part);
        auto colon = part.rfind(':');
        if (colon == std::string::npos || colon == 0)
            throw Error("qcdata", "parse-error", "csf term '" + part + "' is not 'label:weight'", line);
        CsfTerm t;
        t.label = strip(part.substr(0, colon));
        t.weight = parse_double(strip(part.substr(colon + 1)), line, "csf");
        if (!(t.weight > 0.0 && t.weight <= 1.0))
            throw Error("qcdata", "validation-error", "csf weight must lie in (0, 1]", line);
        sum += t.weight;
        terms.push_back(std::move(t));
    }
    if (sum > 1.0 + 1e-6)
        throw Error("qcdata", "validation-error", "csf weights sum to more than 1", line);
    return terms;
}

inline std::string serialize_csf(const std::vector<CsfTerm>& terms) {
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) out += ',';
        out += terms[i].label + ":" + fmt6(terms[i].weight);
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// .nvrec interchange format
// ---------------------------------------------------------------------------

inline RecordFile parse_record_file(const std::string& text) {
    RecordFile out;
    for (const auto& block : detail::split_blocks(text)) {
        static const auto known = [](const std::string& section) -> std::vector<std::string> {
            if (section == "excitation")
                return {"state", "channel", "energy_eV", "tdm_au", "edm_au", "csf"};
            if (section == "summary")
                return {"alpha_gap_eV", "beta_gap_eV", "paired_gap_eV", "adiabatic_eV"};
            if (section == "thermo")
                return {"label",        "zpe_eV",  "entropy_kcal", "enthalpy_meV", "thermal_kcal",
                        "nonthermal_kcal", "g0_kcal", "n_atoms",      "n_heavy"};
            return {};
        };
        auto collect_extras = [&](const std::vector<std::string>& keys) {
            std::map<std::string, std::string> extras;
            for (const auto& [k, v, l] : block.pairs)
                if (std::find(keys.begin(), keys.end(), k) == keys.end()) extras[k] = v;
            return extras;
        };

        if (block.section == "excitation") {
            ExcitationRecord r;
            r.state = detail::parse_int(block.require("state"), block.line_of("state"), "state");
            std::string ch = block.require("channel");
            if (ch == "alpha")
                r.channel = SpinChannel::Alpha;
            else if (ch == "beta")
                r.channel = SpinChannel::Beta;
            else if (ch == "paired")
                r.channel = SpinChannel::Paired;
            else
                throw Error("qcdata", "parse-error", "unknown channel '" + ch + "'", block.line_of("channel"));
            r.energy_eV =
                detail::parse_double(block.require("energy_eV"), block.line_of("energy_eV"), "energy_eV");
            if (!(r.energy_eV > 0.0))
                throw Error("qcdata", "validation-error", "excitation energy must be positive",
                            block.line_of("energy_eV"));
            r.tdm_au = detail::parse_double(block.require("tdm_au"), block.line_of("tdm_au"), "tdm_au");
            r.edm_au = detail::parse_double(block.require("edm_au"), block.line_of("edm_au"), "edm_au");
            if (r.tdm_au < 0.0 || r.edm_au < 0.0)
                throw Error("qcdata", "validation-error", "dipole moments must be non-negative",
                            block.header_line);
            if (const std::string* csf = block.find("csf"))
                r.csf = detail::parse_csf(*csf, block.line_of("csf"));
            r.extras = collect_extras(known("excitation"));
            out.excitations.push_back(std::move(r));
        } else if (block.section == "summary") {
            ElectronicSummary s;
            auto opt = [&](const char* key) -> std::optional<double> {
                if (const std::string* v = block.find(key))
                    return detail::parse_double(*v, block.line_of(key), key);
                return std::nullopt;
            };
            s.alpha_gap_eV = opt("alpha_gap_eV");
            s.beta_gap_eV = opt("beta_gap_eV");
            s.paired_gap_eV = opt("paired_gap_eV");
            s.adiabatic_eV = opt("adiabatic_eV");
            if (s.paired_gap_eV && (s.alpha_gap_eV || s.beta_gap_eV))
                throw Error("qcdata", "validation-error",
                            "paired_gap_eV is mutually exclusive with alpha/beta gaps", block.header_line);
            for (const char* key : {"alpha_gap_eV", "beta_gap_eV", "paired_gap_eV"}) {
                if (const std::string* v = block.find(key))
                    if (!(detail::parse_double(*v, block.line_of(key), key) > 0.0))
                        throw Error("qcdata", "validation-error", "band gaps must be positive",
                                    block.line_of(key));
            }
            s.extras = collect_extras(known("summary"));
            if (out.summary)
                throw Error("qcdata", "parse-error", "duplicate [summary] block", block.header_line);
            out.summary = std::move(s);
        } else if (block.section == "thermo") {
            ThermoRecord t;
            if (const std::string* v = block.find("label")) t.label = *v;
            t.zpe_eV = detail::parse_double(block.require("zpe_eV"), block.line_of("zpe_eV"), "zpe_eV");
            t.entropy_kcal = detail::parse_double(block.require("entropy_kcal"),
                                                  block.line_of("entropy_kcal"), "entropy_kcal");
            t.enthalpy_meV = detail::parse_double(block.require("enthalpy_meV"),
                                                  block.line_of("enthalpy_meV"), "enthalpy_meV");
            t.thermal_kcal = detail::parse_double(block.require("thermal_kcal"),
                                                  block.line_of("thermal_kcal"), "thermal_kcal");
            t.nonthermal_kcal = detail::parse_double(block.require("nonthermal_kcal"),
                                                     block.line_of("nonthermal_kcal"), "nonthermal_kcal");
            t.g0_kcal = detail::parse_double(block.require("g0_kcal"), block.line_of("g0_kcal"), "g0_kcal");
            t.n_atoms_total = detail::parse_int(block.require("n_atoms"), block.line_of("n_atoms"), "n_atoms");
            t.n_atoms_heavy = detail::parse_int(block.require("n_heavy"), block.line_of("n_heavy"), "n_heavy");
            if (t.n_atoms_total < 1 || t.n_atoms_heavy < 1)
                throw Error("qcdata", "validation-error", "atom counts must be >= 1", block.header_line);
            if (t.n_atoms_heavy > t.n_atoms_total)
                throw Error("qcdata", "validation-error", "n_heavy exceeds n_atoms", block.header_line);
            t.extras = collect_extras(known("thermo"));
            out.thermos.push_back(std::move(t));
        } else {
            throw Error("qcdata", "parse-error", "unknown section [" + block.section + "]",
                        block.header_line);
        }
    }
    return out;
}

// Canonical serialization: fixed key order per section, 6-decimal numerics,
// unknown keys appended in sorted order, blank line between blocks.
inline std::string serialize_record_file(const RecordFile& rec) {
    std::string out;
    auto extras = [&out](const std::map<std::string, std::string>& m) {
        for (const auto& [k, v] : m) out += k + "=" + v + "\n";
    };
    bool first = true;
    auto sep = [&] {
        if (!first) out += "\n";
        first = false;
    };
    for (const auto& r : rec.excitations) {
        sep();
        out += "[excitation]\n";
        out += "state=" + std::to_string(r.state) + "\n";
        out += std::string("channel=") + channel_name(r.channel) + "\n";
        out += "energy_eV=" + fmt6(r.energy_eV) + "\n";
        out += "tdm_au=" + fmt6(r.tdm_au) + "\n";
        out += "edm_au=" + fmt6(r.edm_au) + "\n";
        if (!r.csf.empty()) out += "csf=" + detail::serialize_csf(r.csf) + "\n";
        extras(r.extras);
    }
    if (rec.summary) {
        sep();
        out += "[summary]\n";
        const auto& s = *rec.summary;
        if (s.alpha_gap_eV) out += "alpha_gap_eV=" + fmt6(*s.alpha_gap_eV) + "\n";
        if (s.beta_gap_eV) out += "beta_gap_eV=" + fmt6(*s.beta_gap_eV) + "\n";
        if (s.paired_gap_eV) out += "paired_gap_eV=" + fmt6(*s.paired_gap_eV) + "\n";
        if (s.adiabatic_eV) out += "adiabatic_eV=" + fmt6(*s.adiabatic_eV) + "\n";
        extras(s.extras);
    }
    for (const auto& t : rec.thermos) {
        sep();
        out += "[thermo]\n";
        if (!t.label.empty()) out += "label=" + t.label + "\n";
        out += "zpe_eV=" + fmt6(t.zpe_eV) + "\n";
        out += "entropy_kcal=" + fmt6(t.entropy_kcal) + "\n";
        out += "enthalpy_meV=" + fmt6(t.enthalpy_meV) + "\n";
        out += "thermal_kcal=" + fmt6(t.thermal_kcal) + "\n";
        out += "nonthermal_kcal=" + fmt6(t.nonthermal_kcal) + "\n";
        out += "g0_kcal=" + fmt6(t.g0_kcal) + "\n";
        out += "n_atoms=" + std::to_string(t.n_atoms_total) + "\n";
        out += "n_heavy=" + std::to_string(t.n_atoms_heavy) + "\n";
        extras(t.extras);
    }
    return out;
}

// JSON mirror of the same schema, accepted and emitted behind a CLI flag.
inline nlohmann::json record_file_to_json(const RecordFile& rec) {
    nlohmann::json j;
    j["excitations"] = nlohmann::json::array();
    for (const auto& r : rec.excitations) {
        nlohmann::json e{{"state", r.state},
                         {"channel", channel_name(r.channel)},
                         {"energy_eV", r.energy_eV},
                         {"tdm_au", r.tdm_au},
                         {"edm_au", r.edm_au}};
        if (!r.csf.empty()) {
            e["csf"] = nlohmann::json::array();
            for (const auto& t : r.csf) e["csf"].push_back({{"label", t.label}, {"weight", t.weight}});
        }
        if (!r.extras.empty()) e["extras"] = r.extras;
        j["excitations"].push_back(std::move(e));
    }
    if (rec.summary) {
        nlohmann::json s;
        const auto& sm = *rec.summary;
        if (sm.alpha_gap_eV) s["alpha_gap_eV"] = *sm.alpha_gap_eV;
        if (sm.beta_gap_eV) s["beta_gap_eV"] = *sm.beta_gap_eV;
        if (sm.paired_gap_eV) s["paired_gap_eV"] = *sm.paired_gap_eV;
        if (sm.adiabatic_eV) s["adiabatic_eV"] = *sm.adiabatic_eV;
        if (!sm.extras.empty()) s["extras"] = sm.extras;
        j["summary"] = std::move(s);
    }
    j["thermos"] = nlohmann::json::array();
    for (const auto& t : rec.thermos) {
        nlohmann::json e{{"label", t.label},
                         {"zpe_eV", t.zpe_eV},
                         {"entropy_kcal", t.entropy_kcal},
                         {"enthalpy_meV", t.enthalpy_meV},
                         {"thermal_kcal", t.thermal_kcal},
                         {"nonthermal_kcal", t.nonthermal_kcal},
                         {"g0_kcal", t.g0_kcal},
                         {"n_atoms", t.n_atoms_total},
                         {"n_heavy", t.n_atoms_heavy}};
        if (!t.extras.empty()) e["extras"] = t.extras;
        j["thermos"].push_back(std::move(e));
    }
    return j;
}

inline RecordFile record_file_from_json(const nlohmann::json& j) {
    // Route through the canonical text form so both inputs share validation.
    RecordFile rec;
    std::string text;
    auto extras = [&text](const nlohmann::json& e) {
        if (!e.contains("extras")) return;
        for (const auto& [k, v] : e["extras"].items()) text += k + "=" + v.get<std::string>() + "\n";
    };
    if (j.contains("excitations"))
        for (const auto& e : j["excitations"]) {
            text += "[excitation]\nstate=" + std::to_string(e.at("state").get<int>()) + "\n";
            text += "channel=" + e.at("channel").get<std::string>() + "\n";
            text += "energy_eV=" + fmt6(e.at("energy_eV").get<double>()) + "\n";
            text += "tdm_au=" + fmt6(e.at("tdm_au").get<double>()) + "\n";
            text += "edm_au=" + fmt6(e.at("edm_au").get<double>()) + "\n";
            if (e.contains("csf")) {
                std::vector<CsfTerm> terms;
                for (const auto& t : e["csf"])
                    terms.push_back({t.at("label").get<std::string>(), t.at("weight").get<double>()});
                text += "csf=" + detail::serialize_csf(terms) + "\n";
            }
            extras(e);
            text += "\n";
        }
    if (j.contains("summary")) {
        text += "[summary]\n";
        for (const char* key : {"alpha_gap_eV", "beta_gap_eV", "paired_gap_eV", "adiabatic_eV"})
            if (j["summary"].contains(key)) text += std::string(key) + "=" + fmt6(j["summary"][key].get<double>()) + "\n";
        extras(j["summary"]);
        text += "\n";
    }
    if (j.contains("thermos"))
        for (const auto& t : j["thermos"]) {
            text += "[thermo]\n";
            if (t.contains("label")) text += "label=" + t.at("label").get<std::string>() + "\n";
            text += "zpe_eV=" + fmt6(t.at("zpe_eV").get<double>()) + "\n";
            text += "entropy_kcal=" + fmt6(t.at("entropy_kcal").get<double>()) + "\n";
            text += "enthalpy_meV=" + fmt6(t.at("enthalpy_meV").get<double>()) + "\n";
            text += "thermal_kcal=" + fmt6(t.at("thermal_kcal").get<double>()) + "\n";
            text += "nonthermal_kcal=" + fmt6(t.at("nonthermal_kcal").get<double>()) + "\n";
            text += "g0_kcal=" + fmt6(t.at("g0_kcal").get<double>()) + "\n";
            text += "n_atoms=" + std::to_string(t.at("n_atoms").get<int>()) + "\n";
            text += "n_heavy=" + std::to_string(t.at("n_heavy").get<int>()) + "\n";
            extras(t);
            text += "\n";
        }
    return parse_record_file(text);
}

// ---------------------------------------------------------------------------
// .spec two-column spectra
// ---------------------------------------------------------------------------

inline Spectrum parse_spectrum(const std::string& text) {
    Spectrum s;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = detail::strip(raw);
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.find("normalized") != std::string::npos) s.normalized = true;
            continue;
        }
        std::istringstream row(line);
        double wl, inten;
        if (!(row >> wl >> inten))
            throw Error("qcdata", "parse-error", "expected two numeric columns, got '" + line + "'", line_no);
        std::string trailing;
        if (row >> trailing)
            throw Error("qcdata", "parse-error", "trailing content '" + trailing + "'", line_no);
        if (inten < 0.0)
            throw Error("qcdata", "validation-error", "intensity must be non-negative", line_no);
        s.points.emplace_back(wl, inten);
    }
    std::sort(s.points.begin(), s.points.end());
    for (std::size_t i = 1; i < s.points.size(); ++i)
        if (s.points[i].first == s.points[i - 1].first)
            throw Error("qcdata", "duplicate-abscissa",
                        "duplicate wavelength " + fmt6(s.points[i].first) + " nm");
    if (s.points.size() < 2)
        throw Error("qcdata", "degenerate-spectrum", "a spectrum needs at least 2 points");
    return s;
}

inline std::string serialize_spectrum(const Spectrum& s) {
    std::string out;
    if (s.normalized) out += "# normalized\n";
    for (const auto& [wl, inten] : s.points) out += fmt6(wl) + " " + fmt6(inten) + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// .xyz geometry files
// ---------------------------------------------------------------------------

inline std::string write_xyz(const Crystal& c) {
    std::string out = std::to_string(c.atoms.size()) + "\n";
    out += std::string("phase=") + phase_name(c.lattice.phase);
    if (c.defect) {
        out += " notation=" + format_notation(notation_for(c.defect->config.cls));
        out += " charge=" + std::to_string(c.defect->config.charge);
    } else {
        if (auto it = c.annotations.find("notation"); it != c.annotations.end())
            out += " notation=" + it->second;
        if (auto it = c.annotations.find("charge"); it != c.annotations.end())
            out += " charge=" + it->second;
    }
    std::string frozen;
    for (std::size_t i = 0; i < c.atoms.size(); ++i)
        if (c.atoms[i].frozen) {
            if (!frozen.empty()) frozen += ",";
            frozen += std::to_string(i);
        }
    if (!frozen.empty()) out += " frozen=[" + frozen + "]";
    out += "\n";
    for (const auto& a : c.atoms) {
        out += species_symbol(a.species);
        out += " " + fmt6(a.position.x) + " " + fmt6(a.position.y) + " " + fmt6(a.position.z) + "\n";
    }
    return out;
}

inline Crystal parse_xyz(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw Error("qcdata", "malformed-xyz", "empty input", 1);
    int count = detail::parse_int(detail::strip(line), 1, "atom count");
    if (count < 0) throw Error("qcdata", "malformed-xyz", "negative atom count", 1);
    std::string comment;
    if (!std::getline(in, comment))
        throw Error("qcdata", "malformed-xyz", "missing comment line", 2);

    Crystal c;
    c.lattice.phase = Phase::Cubic;
    std::vector<int> frozen_indices;
    {
        std::istringstream cs(comment);
        std::string token;
        while (cs >> token) {
            auto eq = token.find('=');
            if (eq == std::string::npos) continue;
            std::string key = token.substr(0, eq), val = token.substr(eq + 1);
            if (key == "phase") {
                if (val == "hexagonal")
                    c.lattice.phase = Phase::Hexagonal;
                else if (val != "cubic")
                    throw Error("qcdata", "malformed-xyz", "unknown phase '" + val + "'", 2);
            } else if (key == "notation") {
                parse_notation(val);  // reject malformed tags
                c.annotations["notation"] = val;
            } else if (key == "charge") {
                c.annotations["charge"] = std::to_string(detail::parse_int(val, 2, "charge"));
            } else if (key == "frozen") {
                if (val.size() < 2 || val.front() != '[' || val.back() != ']')
                    throw Error("qcdata", "malformed-xyz", "frozen list must be [i,j,...]", 2);
                std::istringstream fs(val.substr(1, val.size() - 2));
                std::string idx;
                while (std::getline(fs, idx, ','))
                    frozen_indices.push_back(detail::parse_int(detail::strip(idx), 2, "frozen"));
            }
        }
    }
    c.c_axis = c.lattice.phase == Phase::Cubic ? normalized(Vec3{1, 1, 1}) : Vec3{0, 0, 1};

    int line_no = 2;
    for (int i = 0; i < count; ++i) {
        if (!std::getline(in, line))
            throw Error("qcdata", "malformed-xyz",
                        "body ends after " + std::to_string(i) + " of " + std::to_string(count) + " atoms",
                        line_no);
        ++line_no;
        std::istringstream row(detail::strip(line));
        std::string sym;
        double x, y, z;
        if (!(row >> sym >> x >> y >> z))
            throw Error("qcdata", "malformed-xyz", "expected 'SYMBOL x y z'", line_no);
        auto sp = species_from_symbol(sym);
        if (!sp) throw Error("qcdata", "malformed-xyz", "unknown species '" + sym + "'", line_no);
        c.atoms.push_back({*sp, {x, y, z}, StackingSite::None, false});
    }
    while (std::getline(in, line)) {
        ++line_no;
        if (!detail::strip(line).empty())
            throw Error("qcdata", "malformed-xyz", "body longer than the declared atom count", line_no);
    }
    for (int i : frozen_indices) {
        if (i < 0 || i >= count)
            throw Error("qcdata", "malformed-xyz", "frozen index " + std::to_string(i) + " out of range", 2);
        c.atoms[i].frozen = true;
    }
    rebuild_bonds(c);
    return c;
}

}  // namespace nvkit

#endif  // NVKIT_QCDATA_HPP
