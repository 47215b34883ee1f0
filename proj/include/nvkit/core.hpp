#ifndef NVKIT_CORE_HPP
#define NVKIT_CORE_HPP

#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nvkit {

// Structured error carrying the originating module and, for parsers, a line
// number. The CLI prints `module: message` and exits 1.
class Error : public std::runtime_error {
public:
    Error(std::string module, std::string kind, const std::string& message, int line = -1)
        : std::runtime_error(module + ": " + (line >= 0 ? "line " + std::to_string(line) + ": " : "") + message),
          module_(std::move(module)), kind_(std::move(kind)), line_(line) {}

    const std::string& module() const { return module_; }
    const std::string& kind() const { return kind_; }
    int line() const { return line_; }

private:
    std::string module_;
    std::string kind_;
    int line_;
};

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline Vec3 normalized(const Vec3& v) { return v / norm(v); }
inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

// Angle between two directions in radians, insensitive to sign of either.
inline double axis_angle(const Vec3& a, const Vec3& b) {
    double c = std::fabs(dot(a, b)) / (norm(a) * norm(b));
    if (c > 1.0) c = 1.0;
    return std::acos(c);
}

enum class Phase { Cubic, Hexagonal };
enum class Species { C, N, H };
enum class StackingSite { A, B, C, None };

inline const char* species_symbol(Species s) {
    switch (s) {
        case Species::C: return "C";
        case Species::N: return "N";
        default: return "H";
    }
}

inline std::optional<Species> species_from_symbol(const std::string& sym) {
    if (sym == "C") return Species::C;
    if (sym == "N") return Species::N;
    if (sym == "H") return Species::H;
    return std::nullopt;
}

inline const char* phase_name(Phase p) { return p == Phase::Cubic ? "cubic" : "hexagonal"; }

// Fixed-point 6-decimal formatting; the canonical numeric form for every
// serialized file.
inline std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string s(buf);
    if (s == "-0.000000") s = "0.000000";
    return s;
}

}  // namespace nvkit

#endif  // NVKIT_CORE_HPP
