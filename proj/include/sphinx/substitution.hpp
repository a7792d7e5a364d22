#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sphinx/lattice.hpp"

namespace sphinx {

// Child labels S0..S3.  They are ordered by the least cell (TriCell order:
// column, row, Up before Down) of each child inside the identity parent.
using ChildIndex = int;
inline constexpr int kChildren = 4;

struct ChildRule {
    Vtx offset;  // translation for a level-1 parent; scaled by 2^(level-1)
    Lin lin;
};

const std::array<ChildRule, 4>& child_table();

struct ResourceLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Caps, overridable through SPHINX_MAX_LEAVES and SPHINX_MAX_CELLS.
std::size_t max_leaves();
std::size_t max_cells();

// Children of a level-`level` supertile placed at `pose`; poses are level-1.
std::array<std::pair<ChildIndex, Pose>, 4> substitute(const Pose& pose, int level = 1);
// parent pose (level child_level+1) for which `child` is child i
Pose parent_pose(const Pose& child, ChildIndex i, int child_level = 0);

struct SupertileNode {
    int level = 0;
    Pose pose;
    std::optional<ChildIndex> child_index;
    std::vector<int> path;  // child indices from the root
    std::vector<SupertileNode> children;
};

SupertileNode generate(int level, const Pose& root_pose = identity_pose());
std::vector<const SupertileNode*> leaves(const SupertileNode& root);
std::vector<const SupertileNode*> all_nodes(const SupertileNode& root);  // preorder
// pointers into the tree; a temporary would leave them dangling
void leaves(SupertileNode&&) = delete;
void all_nodes(SupertileNode&&) = delete;
const SupertileNode& node_at(const SupertileNode& root, const std::vector<int>& path);

using Patch = std::vector<Pose>;

struct Grouping {
    std::vector<Pose> parents;
    // for every placement of the patch: (parent position in `parents`, child index)
    std::vector<std::pair<int, ChildIndex>> assignment;
    bool operator==(const Grouping&) const = default;
};

// Every way to group all placements (level `level` poses) into complete
// parents.  Deterministic order.
std::vector<Grouping> decompose(const Patch& patch, int level = 0);

bool patch_in_supertile(const Patch& patch, int max_level);

}  // namespace sphinx
