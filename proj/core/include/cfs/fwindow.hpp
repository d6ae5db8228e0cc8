#pragma once

#include "cfs/rational.hpp"
#include "cfs/word.hpp"

namespace cfs {

// Certified range of f(theta) = theta_0 + [0;theta_1,...] + [0;theta_-1,...]
// over every bi-infinite sequence with symbols in [1,N] whose window around
// position `pos` equals `center`. Each one-sided tail is enclosed by the
// hull of the one-symbol-deeper cylinders, so the width shrinks
// geometrically as the window grows.
QInterval f_window_range(const Word& center, size_t pos, int alphabet);

// Hull of [0; w, b, *] over b in [1,N]; w may be empty (hull of all
// single-symbol cylinders).
QInterval tail_hull(const Word& w, int alphabet);

}  // namespace cfs
