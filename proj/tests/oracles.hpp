#pragma once

// Independent reference computations used as test oracles. Nothing here
// calls into the library under test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>

namespace oracle {

/// Closed segment against closed axis-aligned rectangle by the separating
/// axis test: the rectangle's two axes plus the segment normal.
inline bool segment_hits_rect(double ax, double ay, double bx, double by, double xmin, double ymin, double xmax,
                              double ymax)
{
    if (std::max(ax, bx) < xmin || std::min(ax, bx) > xmax || std::max(ay, by) < ymin || std::min(ay, by) > ymax) {
        return false;
    }
    const double nx = -(by - ay);
    const double ny = bx - ax;
    const double s = nx * ax + ny * ay;
    const double c[4] = {nx * xmin + ny * ymin, nx * xmax + ny * ymin, nx * xmin + ny * ymax,
                         nx * xmax + ny * ymax};
    const double lo = *std::min_element(c, c + 4);
    const double hi = *std::max_element(c, c + 4);
    return lo <= s && s <= hi;
}

/// Good and bad amplitudes after k Grover iterations, by iterating the
/// two-amplitude recursion directly.
inline std::pair<double, double> grover_amplitudes(std::uint64_t N, std::uint64_t m, int k)
{
    double g = 1.0 / std::sqrt(static_cast<double>(N));
    double b = g;
    const double Nd = static_cast<double>(N);
    const double md = static_cast<double>(m);
    for (int i = 0; i < k; ++i) {
        const double mean = (-md * g + (Nd - md) * b) / Nd;
        g = 2.0 * mean + g;
        b = 2.0 * mean - b;
    }
    return {g, b};
}

/// Brute-force best iteration count over [kmin, kmax].
inline int best_iterations(std::uint64_t N, std::uint64_t m, int kmin, int kmax)
{
    int best = kmin;
    double best_p = -1.0;
    for (int k = kmin; k <= kmax; ++k) {
        const auto [g, b] = grover_amplitudes(N, m, k);
        const double p = static_cast<double>(m) * g * g;
        if (p > best_p + 1e-12) {
            best_p = p;
            best = k;
        }
    }
    return best;
}

inline double harmonic(std::uint64_t m)
{
    double h = 0.0;
    for (std::uint64_t i = m; i >= 1; --i) {
        h += 1.0 / static_cast<double>(i);
    }
    return h;
}

/// Binomial standard error of a frequency with success probability p.
inline double binomial_sigma(double p, double samples) { return std::sqrt(p * (1.0 - p) / samples); }

/// Drops the trailing wall_s column from a CSV whose header ends with it.
inline std::string strip_wall_column(const std::string& csv)
{
    const auto eol = csv.find('\n');
    const std::string header = csv.substr(0, eol);
    const std::string suffix = ",wall_s";
    if (header.size() < suffix.size() || header.compare(header.size() - suffix.size(), suffix.size(), suffix) != 0) {
        return csv;
    }
    std::istringstream in(csv);
    std::string out;
    std::string line;
    while (std::getline(in, line)) {
        out += line.substr(0, line.rfind(',')) + '\n';
    }
    return out;
}

inline std::map<std::string, std::string> without_wall_time(std::map<std::string, std::string> files)
{
    for (auto& [name, content] : files) {
        content = strip_wall_column(content);
    }
    return files;
}

} // namespace oracle
