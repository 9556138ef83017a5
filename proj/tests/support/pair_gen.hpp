#pragma once

#include <vector>

#include "mvapx/gpoly.hpp"
#include "mvapx/random.hpp"

namespace mvapx::testing {

struct Tables {
  std::vector<ExtInt> p, b;
};

/// Random paramodular tables on k elements, built without the library:
/// a coverage-function polymatroid, either as a base polymatroid or with
/// p = 0, optionally with a direct box, then shifted by a random vector.
/// With allow_infinite, some pairs drop the lower border entirely.
Tables random_paramodular_tables(Rng& rng, std::size_t k, bool allow_infinite);

gpoly::GroundSet names(std::size_t k);

gpoly::BorderPair random_pair(Rng& rng, std::size_t k, bool allow_infinite = false);

/// Exhaustive check of the three inequality families, written out
/// independently of gpoly::find_paramodular_violation.
bool naive_is_paramodular(const Tables& t);

/// Integer points of `pair` inside the finite box [lo, hi], found by testing
/// every point of the box against every subset.
std::vector<IntVector> points_in_box(const gpoly::BorderPair& pair, const IntVector& lo,
                                     const IntVector& hi);

/// Finite box spanned by the singleton borders of the pair.
void singleton_box(const gpoly::BorderPair& pair, IntVector& lo, IntVector& hi);

}  // namespace mvapx::testing
