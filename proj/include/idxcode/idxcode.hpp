#ifndef IDXCODE_IDXCODE_HPP
#define IDXCODE_IDXCODE_HPP

#include "idxcode/bits.hpp"
#include "idxcode/coloring.hpp"
#include "idxcode/errors.hpp"
#include "idxcode/gf2.hpp"
#include "idxcode/gk.hpp"
#include "idxcode/graph.hpp"
#include "idxcode/index_code.hpp"
#include "idxcode/minrank.hpp"
#include "idxcode/random.hpp"
#include "idxcode/rounding.hpp"
#include "idxcode/spectral.hpp"
#include "idxcode/vector_coloring.hpp"

#endif  // IDXCODE_IDXCODE_HPP
