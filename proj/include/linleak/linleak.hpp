//===--- linleak.hpp - umbrella header --------------------------------------===//
//
// Part of the linleak project, released under the Apache License v2.0.
// See LICENSE for details.
//
//===----------------------------------------------------------------------===//

#ifndef LINLEAK_LINLEAK_HPP
#define LINLEAK_LINLEAK_HPP

#include "linleak/analysis.hpp"
#include "linleak/attack.hpp"
#include "linleak/core.hpp"
#include "linleak/dataset_io.hpp"
#include "linleak/experiment.hpp"
#include "linleak/mechanism.hpp"
#include "linleak/rng.hpp"
#include "linleak/stats.hpp"

#endif  // LINLEAK_LINLEAK_HPP
