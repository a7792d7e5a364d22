#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sphinx/lattice.hpp"
#include "sphinx/markedset.hpp"
#include "sphinx/substitution.hpp"

namespace sphinx {

// ---- matching ----------------------------------------------------------------
//
// Tiles meet at three kinds of shared places:
//   edge/cell    a tile-tile boundary segment against the edge tile on it (channel 1)
//   edge/vertex  an edge tile's end against a vertex tile's port, or a
//                sphinx-internal edge against a port that must be empty
//   vertex/cell  a tile-tile corner against a vertex tile's sector (channel 3)
// Labels at one place must all agree.

struct Violation {
    std::string where;
    int channel = 1;
    std::string left, right;
    auto operator<=>(const Violation&) const = default;
};

struct MatchReport {
    std::vector<Violation> violations;  // sorted
    bool ok() const { return violations.empty(); }
};

struct Overlap : std::runtime_error {
    explicit Overlap(const std::string& what) : std::runtime_error("Overlap: " + what) {}
};

MatchReport check_matching(const std::vector<PlacedTile>& placed);

// ---- regions and plain tilings ---------------------------------------------

using Region = std::vector<TriCell>;  // distinct, row_major_less order

Region supertile_region(int level, const Pose& pose = identity_pose());

struct SearchOptions {
    std::uint64_t cap = 0;      // stop after this many solutions (0: no cap)
    std::size_t witnesses = 0;  // how many solutions to keep
    int threads = 1;
};

struct PlainCount {
    std::uint64_t count = 0;
    bool capped = false;
    std::vector<std::vector<Pose>> samples;  // placement order = search order
};

// Exhaustive sphinx tilings of a region: the least uncovered cell in row-major
// order is covered next, orientations tried in all_lins() order.
PlainCount count_plain_tilings(const Region& region, const SearchOptions& opt = {});

// ---- marked tilings ----------------------------------------------------------

// A marked tiling in label form: the sphinx geometry, a face type per sphinx
// and a label on every interior tiling edge.  Vertex tiles are implied by the
// labels; one realizing choice per vertex is kept in `vertex_tiles`.
struct MarkedTiling {
    std::vector<Pose> poses;
    std::vector<FaceType> faces;
    std::map<Edge, EdgeLabel> labels;
    std::vector<PlacedTile> vertex_tiles;

    std::vector<PlacedTile> placements() const;
};

struct MarkedCount {
    std::uint64_t count = 0;  // distinct labelings over all geometries
    std::uint64_t geometries = 0;
    bool capped = false;
    std::vector<MarkedTiling> samples;
};

// Open boundary: ports and sectors outside the region are unconstrained.
MarkedCount count_marked_tilings(const Region& region, const TileSet& tiles, const SearchOptions& opt = {});

// ---- enforcement -------------------------------------------------------------

enum class Verdict { Pass, Fail, Inconclusive };
std::string to_string(Verdict v);

struct VerifyOptions {
    bool strip3 = false;
    std::uint64_t cap = 20'000'000;  // labelings before giving up
    int threads = 1;
};

struct Evidence {
    Verdict verdict = Verdict::Inconclusive;
    int level = 0, collar = 0;
    bool strip3 = false;
    std::uint64_t geometries = 0, labelings = 0, non_decorations = 0;
    std::set<ParentContext> matched;  // contexts some tiling's core agreed with
    std::size_t core_cells = 0, core_edges = 0;
    std::optional<MarkedTiling> counterexample;  // fewest core differences
    std::size_t counterexample_diff = 0;
    std::string summary() const;
};

// Every marked tiling of the level-n region, compared on its core (cells and
// edges at least `collar` steps from the boundary) with decorate_supertile(n,
// ctx) for every valid context.
Evidence verify_enforcement(int n, int collar, const VerifyOptions& opt = {});

// the tile set the verifier uses: the closed enumeration, optionally stripped
const TileSet& verifier_tileset(bool strip3);

}  // namespace sphinx
