#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sphinx/lattice.hpp"
#include "sphinx/substitution.hpp"

namespace sphinx {

// Only tiling edges (edges between two different leaves) are owned; edges
// inside a single sphinx are not part of any skeleton.
struct SkeletonEdge {
    Edge edge;
    int owner_level = 0;
    bool ambient = false;  // on the root boundary; owner_level = n + 1
    std::vector<int> owner_path;
    int position = -1;       // index into skeleton_pattern(), -1 when ambient
    DirectedEdge direction;  // pattern direction mapped to the lattice
};

using Ownership = std::map<Edge, SkeletonEdge>;

// The level-1 skeleton in the canonical frame: the 8 unit edges between
// different children of the identity level-1 supertile, sorted.  The pattern
// direction of an edge runs from its smaller endpoint to the larger one.
const std::vector<Edge>& skeleton_pattern();
// pattern vertices lying on the boundary of the level-1 supertile, sorted
const std::vector<Vtx>& skeleton_terminals();

Ownership edge_ownership(const SupertileNode& root);

// position label and direction of a unit edge on the skeleton of `owner`
std::pair<int, DirectedEdge> skeleton_label(const SupertileNode& owner, const Edge& e);

// The skeleton of `node`, ordered by pattern index and then along the pattern
// direction.  Edges are recomputed from the pattern and cross-checked against
// the ownership map.
std::vector<SkeletonEdge> skeleton_of(const SupertileNode& node, const Ownership& own);

enum class Terminal : std::uint8_t { A = 0, B = 1 };
inline Terminal swap(Terminal t) { return t == Terminal::A ? Terminal::B : Terminal::A; }
char terminal_char(Terminal t);

struct Epivertex {
    Vtx vertex;
    std::vector<int> owner_path;
    int level = 0;
    Terminal kind = Terminal::A;
    bool operator==(const Epivertex&) const = default;
};

struct NotAnEpivertex : std::runtime_error {
    NotAnEpivertex() : std::runtime_error("NotAnEpivertex") {}
};
struct Unroutable : std::runtime_error {
    Unroutable() : std::runtime_error("Unroutable") {}
};

// A: the corner (0,0) of the base, B: the far end of the base, both images of
// the node pose.
std::array<Epivertex, 2> epivertices(const SupertileNode& node);
Epivertex vertex_substitution(const SupertileNode& root, const Epivertex& e);

// The child whose wire continues a wire of class t, and the class it carries.
ChildIndex wire_target_child(Terminal t);
// class of the wire a non-target child always carries
Terminal default_child_wire(ChildIndex i);
// wire class of child i given the parent's class; leaves only carry a wire
// when they are the target
std::optional<Terminal> child_wire(std::optional<Terminal> parent, ChildIndex i, int child_level);
// parent contexts that some parent actually produces
bool valid_context(std::optional<ChildIndex> idx, std::optional<Terminal> wire);
std::vector<std::pair<std::optional<ChildIndex>, std::optional<Terminal>>> valid_contexts();

// Where a node's skeleton meets its parent's (terminal index per child index);
// the root uses terminal 0.
Vtx origin_vertex(const SupertileNode& node);
const std::array<int, 4>& origin_terminal_table();
// the terminal of a level-1 skeleton where the wire leaves for a leaf
inline constexpr int kLeafEntryTerminal = 2;

struct VertexWire {
    Terminal color = Terminal::A;
    std::vector<int> owner_path;
    std::vector<Vtx> vertices;     // along the owner's skeleton
    std::vector<int> next_path;    // node continuing the wire
    std::vector<Edge> edges() const;
};

VertexWire route_vertex_wire(const SupertileNode& node, Terminal t, const Ownership& own);

// Full descent of a wire down to the leaf that carries it to the terminal.
struct WireChain {
    std::vector<VertexWire> segments;
    std::vector<int> leaf_path;
    Vtx entry;     // corner where the wire enters the leaf
    Vtx terminal;  // corner of the leaf where it ends
};
WireChain trace_wire(const SupertileNode& root, const SupertileNode& node, Terminal t, const Ownership& own);

std::vector<Vtx> shortest_path(const std::vector<Edge>& edges, Vtx src, Vtx dst);

}  // namespace sphinx
