#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sphinx/enforcement.hpp"
#include "sphinx/lattice.hpp"
#include "sphinx/markedset.hpp"

namespace sphinx {

// Line-oriented text documents.
//
//   format sphinx-tiling 1
//   lattice tri-skew-1
//   meta <key> <value...>
//   place <x> <y> <rotation> <reflected 0|1> sphinx
//   place <x> <y> <rotation> <reflected 0|1> <tile record>
//
//   format sphinx-tileset 1
//   lattice tri-skew-1
//   meta <key> <value...>
//   tile <tile record>
//
// '#' starts a comment line.  Tile records are the describe() text of a
// MarkedTile.

inline constexpr int kFormatVersion = 1;
inline constexpr const char* kLatticeId = "tri-skew-1";

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DocPlacement {
    std::optional<MarkedTile> tile;  // empty: a plain sphinx
    Pose pose;
    bool operator==(const DocPlacement&) const = default;
};

struct TilingDocument {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<DocPlacement> placements;
    bool operator==(const TilingDocument&) const = default;

    std::optional<std::string> get(const std::string& key) const;
};

struct TilesetDocument {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<MarkedTile> tiles;
    bool operator==(const TilesetDocument&) const = default;
};

std::string serialize(const TilingDocument& d);
std::string serialize(const TilesetDocument& d);
TilingDocument parse_tiling(const std::string& text);
TilesetDocument parse_tileset(const std::string& text);

MarkedTile parse_tile(const std::string& record);

// "x,y,r" or "x,y,r,m"
Pose parse_pose(const std::string& s);
std::string pose_spec(const Pose& p);

// Region specs:
//   supertile:N            level-N supertile at the identity pose
//   supertile:N:x,y,r[,m]  ... at the given pose
//   cells:U0,0;D1,0;...    raw cell list (U = up, D = down cell at col,row)
Region parse_region(const std::string& spec);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace sphinx
