#pragma once

#include <utility>

#include "twoslope/kernel.hpp"
#include "twoslope/profile.hpp"
#include "twoslope/rng.hpp"

namespace twoslope {

/// A random pair accepted by segment_pair_energy: identical (10%), touching
/// with continuous contact (30%) or separated by a log-uniform gap. Lengths
/// are log-uniform in [e^-5, e], values in [-1, 1], slopes in [-3, 3].
std::pair<Segment, Segment> random_segment_pair(SplitMix64& rng);

/// Uniform (Dirichlet(1, ..., 1)) point of the gap simplex.
GapConfiguration random_gaps(SplitMix64& rng, const ProblemParams& params);

}  // namespace twoslope
