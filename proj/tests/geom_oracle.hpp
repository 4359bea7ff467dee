#pragma once

// Brute-force geometry oracles that replace the library's reductions
// (vertex maximization for Hausdorff, edge-pair minimization and the
// intersection logic for set distance) with dense boundary sampling. The
// sampling always includes the polygon vertices, where the suprema of the
// convex distance functionals live, so agreement is limited only by the
// second-order sampling error at edge-interior minima.

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "numrange/convexgeom.hpp"

namespace geomoracle {

using numrange::Complex;
using numrange::ConvexPolygon;

inline std::vector<Complex> sample_boundary(const ConvexPolygon& p, int total) {
    const auto& v = p.vertices;
    std::vector<Complex> out;
    if (v.size() == 1) {
        out.push_back(v[0]);
        return out;
    }
    std::vector<std::pair<Complex, Complex>> edges;
    if (v.size() == 2) {
        edges.emplace_back(v[0], v[1]);
    } else {
        for (std::size_t i = 0; i < v.size(); ++i)
            edges.emplace_back(v[i], v[(i + 1) % v.size()]);
    }
    double L = 0.0;
    for (auto& [a, b] : edges) L += std::abs(b - a);
    for (auto& [a, b] : edges) {
        int per_edge = std::max(2, int(std::lround(total * std::abs(b - a) / L)));
        for (int k = 0; k <= per_edge; ++k) {
            double t = double(k) / per_edge;
            out.push_back(a + t * (b - a));
        }
    }
    return out;
}

// Ray casting, deliberately different from the library's cross-product test.
inline bool inside_raycast(const ConvexPolygon& p, Complex z) {
    const auto& v = p.vertices;
    if (v.size() < 3) return false;
    bool in = false;
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
        double xi = v[i].real(), yi = v[i].imag();
        double xj = v[j].real(), yj = v[j].imag();
        if ((yi > z.imag()) != (yj > z.imag()) &&
            z.real() < (xj - xi) * (z.imag() - yi) / (yj - yi) + xi)
            in = !in;
    }
    return in;
}

// Distance from a point to a polygon by pure boundary sampling.
inline double oracle_point_distance(const ConvexPolygon& p, Complex z, int samples) {
    if (inside_raycast(p, z)) return 0.0;
    double d = std::numeric_limits<double>::infinity();
    for (Complex s : sample_boundary(p, samples)) d = std::min(d, std::abs(z - s));
    return d;
}

inline double oracle_one_sided(const ConvexPolygon& p, const ConvexPolygon& q,
                               int samples) {
    double worst = 0.0;
    for (Complex s : sample_boundary(p, samples))
        worst = std::max(worst, numrange::point_distance(q, s));
    return worst;
}

inline double oracle_hausdorff(const ConvexPolygon& p, const ConvexPolygon& q,
                               int samples) {
    return std::max(oracle_one_sided(p, q, samples), oracle_one_sided(q, p, samples));
}

inline double oracle_set_distance(const ConvexPolygon& p, const ConvexPolygon& q,
                                  int samples) {
    double best = std::numeric_limits<double>::infinity();
    for (Complex s : sample_boundary(p, samples)) {
        if (inside_raycast(q, s)) return 0.0;
        best = std::min(best, numrange::point_distance(q, s));
    }
    for (Complex t : sample_boundary(q, samples))
        if (inside_raycast(p, t)) return 0.0;
    return best;
}

inline ConvexPolygon random_convex_polygon(std::uint32_t seed, double scale = 1.0,
                                           Complex offset = Complex(0.0)) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::uniform_int_distribution<int> count(3, 14);
    int n = count(gen);
    std::vector<Complex> pts;
    for (int i = 0; i < n; ++i)
        pts.push_back(offset + scale * Complex(dist(gen), dist(gen)));
    return numrange::convex_hull(pts);
}

}  // namespace geomoracle
