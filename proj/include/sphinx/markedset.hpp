#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sphinx/lattice.hpp"
#include "sphinx/skeleton.hpp"
#include "sphinx/substitution.hpp"

namespace sphinx {

// ---- channel values ------------------------------------------------------
//
// channel 1 (skeleton position): pattern index j, direction, and whether the
//   owning skeleton is a level-1 one (its faces are the owner's children)
// channel 2 (parent position): child index of the owning supertile, or
//   Unknown (-1) for a root without context
// channel 3 (vertex wire): wire class on edges, corner marks on tiles

inline constexpr int kUnknown = -1;

enum class Mark : std::uint8_t { None = 0, In = 1, End = 2 };

struct SegMark {
    int j = 0;
    bool with_ccw = false;  // pattern direction agrees with the tile's CCW boundary order
    auto operator<=>(const SegMark&) const = default;
};

// tile-tile: a sphinx with marks on its 8 boundary segments and 8 corners
struct FaceType {
    std::array<std::optional<SegMark>, 8> segs{};
    std::array<Mark, 8> marks{};
    auto operator<=>(const FaceType&) const = default;
};

struct EdgeLabel {
    int j = 0;
    bool forward = true;  // pattern direction is edge.a -> edge.b
    int ch2 = kUnknown;
    std::optional<Terminal> ch3;
    bool l1 = false;
    auto operator<=>(const EdgeLabel&) const = default;
};

// edge-tile colours; the direction is carried by the placement
struct EdgeType {
    int j = 0;
    int ch2 = kUnknown;
    std::optional<Terminal> ch3;
    bool l1 = false;
    auto operator<=>(const EdgeType&) const = default;
};

inline EdgeType type_of(const EdgeLabel& l) { return {l.j, l.ch2, l.ch3, l.l1}; }

// ---- vertex-tile ports -----------------------------------------------------
//
// A vertex tile records what meets it in each direction.  Channel 2 and 3
// values are either pinned or tied to a group: ports of one group must carry
// equal values (they belong to one skeleton), so a template stands for the
// finite family of its concrete colourings.

enum class PortKind : std::uint8_t { Unused = 0, NoEdge = 1, Edge = 2 };
enum class SpecKind : std::uint8_t { None = 0, Pinned = 1, Group = 2 };

struct Port {
    PortKind kind = PortKind::Unused;
    int j = 0;
    bool out = false;  // the edge points away from the vertex
    SpecKind c2 = SpecKind::Pinned;
    int c2v = 0;  // value (-1..3) or group id
    SpecKind c3 = SpecKind::None;
    int c3v = 0;  // Terminal value or group id
    bool l1 = false;
    auto operator<=>(const Port&) const = default;
};

enum class VertexForm : std::uint8_t { Full = 0, Half = 1, Side = 2, Run = 3 };

// Full: 6 ports, 6 sectors.  Half / Side: 4 ports along a straight run and the
// 3 sectors on one side (a Side leaves ports 0 and 3 Unused).  Run: the 2
// collinear ports of a straight pass-through.
struct VertexPiece {
    VertexForm form = VertexForm::Full;
    std::vector<Port> ports;
    std::vector<Mark> sectors;
    auto operator<=>(const VertexPiece&) const = default;
};

// renumber groups by first occurrence
void regroup(std::vector<Port>& ports);
VertexPiece canonical_piece(const VertexPiece& p);
// the arrangement of `p` that canonical_piece picks, as the symmetry taking
// canonical port i to its lattice direction
Lin canonical_orientation(const VertexPiece& p);
// ports/sectors of `p` placed by symmetry l: global direction -> port
struct Oriented {
    std::array<std::optional<Port>, 6> ports;
    std::array<std::optional<Mark>, 6> sectors;
};
Oriented orient(const VertexPiece& p, Lin l);
// all distinct arrangements of a piece: (symmetry, oriented data)
std::vector<std::pair<Lin, Oriented>> orientations(const VertexPiece& p);
int port_direction(VertexForm f, int i, Lin l);  // global direction of port i
int sector_index(VertexForm f, int i, Lin l);    // global sector of sector i

// ---- tile set -------------------------------------------------------------

enum class TileKind : std::uint8_t { TileTile = 0, EdgeTile = 1, VertexTile = 2 };

struct MarkedTile {
    TileKind kind = TileKind::TileTile;
    FaceType face;
    EdgeType edge;
    VertexPiece vertex;
    auto operator<=>(const MarkedTile&) const = default;
};

MarkedTile canonicalize(const MarkedTile& t);
std::string describe(const MarkedTile& t);

struct TileSet {
    std::set<FaceType> faces;
    std::set<EdgeType> edges;
    std::set<VertexPiece> vertices;  // canonical templates

    size_t count(VertexForm f) const;
    size_t size() const { return faces.size() + edges.size() + vertices.size(); }
    bool operator==(const TileSet&) const = default;
    void merge(const TileSet& o);
    std::vector<MarkedTile> tiles() const;  // catalogue order
};

// drop channel 3 everywhere (wire classes, wire groups, corner marks)
TileSet strip_channel3(const TileSet& t);
// the concrete (all pinned) canonical pieces a template stands for, keeping
// only those whose ports are all served by some edge type
std::vector<VertexPiece> concretizations(const VertexPiece& tpl, const std::set<EdgeType>& edges);
// number of distinct concrete vertex tiles the templates stand for
size_t concrete_vertex_tile_count(const TileSet& t);

// ---- decorations ------------------------------------------------------------

struct ParentContext {
    std::optional<ChildIndex> index;
    std::optional<Terminal> wire;
    auto operator<=>(const ParentContext&) const = default;
};
std::string to_string(const ParentContext& c);

struct InconsistentContext : std::runtime_error {
    InconsistentContext() : std::runtime_error("InconsistentContext") {}
};

struct BoundarySummary {
    std::optional<ChildIndex> position;  // expected place in the parent
    std::optional<Terminal> wire;        // class passed down by the parent
    Vtx origin;                          // where the skeleton meets the parent's
    // skeleton edges meeting the boundary: (terminal vertex, pattern index)
    std::vector<std::pair<Vtx, int>> boundary_edges;
    std::optional<Vtx> wire_terminal;  // epivertex the wire ends at
    bool operator==(const BoundarySummary&) const = default;
};

struct PlacedTile {
    MarkedTile tile;
    Pose pose;
    bool operator==(const PlacedTile&) const = default;
};

struct DecoratedSupertile {
    int level = 0;
    ParentContext ctx;
    bool strip3 = false;
    std::shared_ptr<const SupertileNode> root;
    Ownership own;
    std::vector<const SupertileNode*> leaf_nodes;
    std::map<TriCell, int> leaf_of;
    std::map<std::vector<int>, const SupertileNode*> nodes;
    std::map<std::vector<int>, std::optional<Terminal>> color;
    std::map<std::vector<int>, VertexWire> wires;
    std::map<Edge, EdgeLabel> labels;  // tiling edges strictly inside the region
    std::set<Edge> outer;              // region boundary
    std::vector<FaceType> faces;       // per leaf
    BoundarySummary summary;

    std::vector<Vtx> vertices() const;  // vertices on tiling edges, sorted
    // vertex pieces at v, each with the symmetry placing it and its concrete
    // colouring; empty when v is not determined inside this supertile.  A
    // run seen from both sides is placed only once.
    std::vector<std::pair<VertexPiece, std::optional<PlacedTile>>> pieces_at(Vtx v) const;
    std::vector<PlacedTile> placements() const;
};

DecoratedSupertile decorate_supertile(int n, ParentContext ctx = {}, bool strip3 = false);

// tiles of level-n supertiles in every valid context
TileSet tiles_at_level(int n);

struct NotClosed : std::runtime_error {
    explicit NotClosed(int n) : std::runtime_error("NotClosed at level " + std::to_string(n)) {}
};

struct TilesetReport {
    TileSet tiles;
    int closure_level = 0;  // least k with set(k) == set(k + 1)
    std::vector<TileSet> cumulative;  // set(1) .. set(max_level)
};

// Cumulative tile sets set(1..n); closed when set(n-1) == set(n).
TilesetReport enumerate_tileset(int max_level);

// ---- recomposition ---------------------------------------------------------
//
// Every unit triangle is cut into 9 triangles of side 1/3: three corner
// triangles (sub 0..2, at corners 0..2), three edge-middle triangles (sub 3..5,
// on edges 0-1, 1-2, 2-0) and three inner triangles (sub 6..8).  A vertex
// tile takes the corner triangles around a tiling vertex, an edge tile the
// edge-middle triangles beside a tiling edge (a thin rhombus), and the rest of
// each sphinx is its tile-tile.

struct SubTri {
    TriCell cell;
    int sub = 0;
    auto operator<=>(const SubTri&) const = default;
};

struct RecomposedPiece {
    TileKind kind = TileKind::TileTile;
    std::vector<SubTri> geometry;
    Pose pose;  // sphinx pose, edge tail/direction, or vertex position
};

std::vector<RecomposedPiece> recompose(const SupertileNode& node, const Ownership& own);

}  // namespace sphinx
