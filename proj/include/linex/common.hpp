#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace linex {

/// Runtime failure (I/O, numerical breakdown, stage abort).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Parameter outside its documented range, bad config, malformed input.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 v) { return std::sqrt(dot(v, v)); }

constexpr double kPi = 3.14159265358979323846;

inline double to_deg(double rad) { return rad * 180.0 / kPi; }
inline double to_rad(double deg) { return deg * kPi / 180.0; }

/// Undirected azimuth of an (east, north) direction: degrees clockwise from
/// north, folded into [0, 180). Due east -> 90, due north -> 0.
inline double azimuth_from_en(double east, double north) {
    double a = to_deg(std::atan2(east, north));
    a = std::fmod(a + 360.0, 180.0);
    return a;
}

/// Azimuth of a segment in pixel coordinates (x = column, y = row, rows grow
/// southward), so north is -y.
inline double pixel_azimuth(Vec2 from, Vec2 to) {
    return azimuth_from_en(to.x - from.x, from.y - to.y);
}

/// Azimuth of a segment in world coordinates (north is +y).
inline double world_azimuth(Vec2 from, Vec2 to) {
    return azimuth_from_en(to.x - from.x, to.y - from.y);
}

/// Smallest difference between two undirected azimuths, in [0, 90].
inline double azimuth_diff(double a, double b) {
    double d = std::fmod(std::fabs(a - b), 180.0);
    return std::min(d, 180.0 - d);
}

}  // namespace linex
