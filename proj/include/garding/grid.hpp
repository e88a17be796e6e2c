#pragma once

// Evaluation lattices over the real coordinates of C^N, and the
// "lattice:RADIUS:POINTS_PER_AXIS" spec syntax used on the command line.

#include <cstddef>
#include <string>
#include <vector>

#include "garding/cxcalc.hpp"
#include "garding/errors.hpp"

namespace garding {

struct GridSpec {
    double radius = 0.5;
    int points_per_axis = 3;
};

inline GridSpec parse_grid_spec(const std::string& text) {
    const std::string prefix = "lattice:";
    if (text.rfind(prefix, 0) != 0)
        throw domain_error("grid spec must look like lattice:RADIUS:POINTS_PER_AXIS");
    const std::size_t second = text.find(':', prefix.size());
    if (second == std::string::npos)
        throw domain_error("grid spec must look like lattice:RADIUS:POINTS_PER_AXIS");
    GridSpec g;
    try {
        g.radius = std::stod(text.substr(prefix.size(), second - prefix.size()));
        g.points_per_axis = std::stoi(text.substr(second + 1));
    } catch (const std::exception&) {
        throw domain_error("grid spec: could not parse numbers in '" + text + "'");
    }
    if (!(g.radius > 0.0) || g.points_per_axis < 1)
        throw domain_error("grid spec: radius must be positive, points per axis >= 1");
    return g;
}

/// Full lattice over [-radius, radius]^{2N} in the real coordinates of C^N.
/// Refuses to build more than max_points points.
inline std::vector<CPoint> make_lattice(int n, const GridSpec& spec,
                                        std::size_t max_points = 200000) {
    const int P = spec.points_per_axis;
    const int axes = 2 * n;
    double count = 1.0;
    for (int a = 0; a < axes; ++a) count *= double(P);
    if (count > double(max_points))
        throw domain_error("lattice would have " + std::to_string(std::size_t(count)) +
                           " points; reduce the radius/points or the dimension");

    std::vector<double> ticks(std::size_t(P), 0.0);
    for (int i = 0; i < P; ++i)
        ticks[std::size_t(i)] =
            P == 1 ? 0.0 : -spec.radius + 2.0 * spec.radius * double(i) / double(P - 1);

    std::vector<CPoint> grid;
    grid.reserve(std::size_t(count));
    std::vector<int> idx(std::size_t(axes), 0);
    while (true) {
        CPoint z(std::size_t(n), Complex(0.0, 0.0));
        for (int j = 0; j < n; ++j)
            z[std::size_t(j)] = Complex(ticks[std::size_t(idx[std::size_t(2 * j)])],
                                        ticks[std::size_t(idx[std::size_t(2 * j + 1)])]);
        grid.push_back(std::move(z));
        int a = 0;
        while (a < axes && ++idx[std::size_t(a)] == P) {
            idx[std::size_t(a)] = 0;
            ++a;
        }
        if (a == axes) break;
    }
    return grid;
}

/// Keep grid points interior to the field's domain (by a 2h margin), up to
/// an optional cap.
inline std::vector<CPoint> interior_points(const std::vector<CPoint>& grid,
                                           const ScalarField& u, double h,
                                           std::size_t cap = 0) {
    std::vector<CPoint> out;
    for (const CPoint& z : grid) {
        bool ok = true;
        if (u.domain) {
            try {
                detail::check_interior(z, u.domain, h, u.n);
            } catch (const domain_error&) {
                ok = false;
            }
        }
        if (ok) out.push_back(z);
        if (cap > 0 && out.size() >= cap) break;
    }
    return out;
}

} // namespace garding
