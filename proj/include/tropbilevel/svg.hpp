#pragma once

#include <string>

#include "tropbilevel/bilevel.hpp"

namespace tropbilevel::svg {

/// Tropical segment between u and v as polyline vertices, u first.
std::vector<TropVector> segment_vertices(const TropVector& u, const TropVector& v);

/// Two panels (TP1 left, TP2 right) with generators, pairwise tropical
/// segments, the greatest point of TP2 and the partition regions of a 2-D
/// instance. Throws UnsupportedInstance unless dim = 2 with finite
/// generators.
std::string render_figure(const BilevelInstance& inst);

}  // namespace tropbilevel::svg
