#pragma once

// Cones read off interval combinatorics alone, independent of complexes,
// fingerprints and structure constants. Over 1 -> ... -> n a nonzero map
// M[a,b] -> M[c,d] exists iff c <= a <= d <= b, with kernel M[d+1,b] and
// cokernel M[c,a-1]; a nonsplit extension of M[a,b] by M[c,d] exists iff
// a < c <= b+1 <= d, with middle term M[a,d] + M[c,b].

#include <optional>

#include "minuscy/orbitcat.hpp"

namespace minuscy {

// Cone in D^b of a nonzero morphism M[x] -> Σ^r M[y], r in {0, 1}; nullopt
// when no nonzero morphism exists.
std::optional<DbObject> interval_cone(Interval x, Interval y, int r);

// Cone in D of a nonzero multiple of the k-th basis morphism x -> y.
ObjectVector interval_cone(const OrbitCategory& c, int x, int y, int k);

}  // namespace minuscy
