#pragma once

#include <string>
#include <vector>

#include "sphinx/io.hpp"
#include "sphinx/markedset.hpp"

namespace sphinx {

// SVG output.  Lattice points go through to_cartesian() and are scaled by
// `unit` with y pointing up; coordinates are printed with 3 decimals.
//
// Every placement becomes exactly one closed <path class="tile ...">; marks
// are drawn on top as lines and circles:
//   channel 1  warm hue per pattern index j (level-1 skeleton edges solid,
//              higher ones dashed), a dot at the head end
//   channel 2  blue shade per child index, a thin line beside the edge
//   channel 3  greens: wire class A / B on edges, corner marks on tiles
struct RenderOptions {
    double unit = 40.0;
    bool labels = false;  // print the tile record as a <title>
};

std::string render_tiling(const std::vector<DocPlacement>& placements, const RenderOptions& opt = {});
std::string render_tiling(const DecoratedSupertile& d, const RenderOptions& opt = {});
std::string render_catalog(const std::vector<MarkedTile>& tiles, const RenderOptions& opt = {});

}  // namespace sphinx
