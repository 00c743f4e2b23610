#pragma once

namespace godbersen {

// Rank tests (affine independence of hull input).
inline constexpr double eps_rank = 1e-9;
// Vertex and facet identity, relative to the body's coordinate scale.
inline constexpr double eps_geom = 1e-9;
// Strict interiority of witnesses and origins.
inline constexpr double eps_strict = 1e-10;
// Largest admissible condition number of a triangulation simplex.
inline constexpr double cond_max = 1e12;
// Profile extraction refuses Bernstein systems worse than this.
inline constexpr double interp_cond_max = 1e10;

}  // namespace godbersen
