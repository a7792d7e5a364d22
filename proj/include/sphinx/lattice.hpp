#pragma once

// Integer geometry on the triangular lattice.
//
// Vertices use the skew basis e1 = (1, 0), e2 = (1/2, sqrt(3)/2), so a vertex
// is a pair of integers (x, y).  Unit triangles:
//   Up(c, r)   has corners (c, r), (c+1, r), (c, r+1)
//   Down(c, r) has corners (c, r), (c+1, r), (c+1, r-1)
// Up(c, r) and Down(c, r) share the horizontal edge (c, r)-(c+1, r).
//
// Internally a cell is often handled through its "centroid times three"
// (C3) coordinates: Up(c, r) -> (3c+1, 3r+1), Down(c, r) -> (3c+2, 3r-1).
// Linear lattice maps act on C3 coordinates directly and a translation by t
// adds 3t, which keeps every pose operation on cells exact.

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sphinx {

struct Vtx {
    int x = 0;
    int y = 0;
    auto operator<=>(const Vtx&) const = default;
    Vtx operator+(Vtx o) const { return {x + o.x, y + o.y}; }
    Vtx operator-(Vtx o) const { return {x - o.x, y - o.y}; }
    Vtx operator*(int k) const { return {x * k, y * k}; }
};

// The six unit steps, counterclockwise starting east.
inline constexpr std::array<Vtx, 6> kDirs{{{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}};

int dir_index(Vtx step);  // -1 if not a unit step

enum class Parity : std::uint8_t { Up = 0, Down = 1 };

struct TriCell {
    int col = 0;
    int row = 0;
    Parity parity = Parity::Up;
    // (col, row, parity) lexicographic, Up before Down
    auto operator<=>(const TriCell&) const = default;
};

// C3 coordinates of a cell
struct C3 {
    int x = 0;
    int y = 0;
    auto operator<=>(const C3&) const = default;
};

C3 to_c3(const TriCell& c);
TriCell from_c3(C3 p);  // throws std::invalid_argument on a non-cell point

std::array<Vtx, 3> corners(const TriCell& c);  // counterclockwise

// Row-major order used by the tilers: by row, then column, Down before Up
// (a Down cell of row r sits below the Up cell of row r).
bool row_major_less(const TriCell& a, const TriCell& b);

struct Edge {
    Vtx a, b;  // a < b
    auto operator<=>(const Edge&) const = default;
};

Edge make_edge(Vtx p, Vtx q);
std::array<Edge, 3> cell_edges(const TriCell& c);
// the cells on both sides of a unit edge; first is the cell to the left of a->b
std::array<TriCell, 2> edge_cells(const Edge& e);
// the cell in the sector between directions k and k+1 around v
TriCell sector_cell(Vtx v, int k);

// Linear part of a lattice symmetry: v -> R^rot F^ref v with
// R(x, y) = (-y, x + y) (rotation by 60 degrees) and F(x, y) = (x + y, -y)
// (reflection in the e1 axis).
struct Lin {
    int rot = 0;
    bool ref = false;
    auto operator<=>(const Lin&) const = default;
};

Lin lin_mul(Lin a, Lin b);
Lin lin_inv(Lin a);
Vtx lin_apply(Lin l, Vtx v);
std::array<Lin, 12> all_lins();  // rotations first, then reflections

struct Pose {
    Vtx anchor;
    int rotation = 0;  // mod 6
    bool reflected = false;
    auto operator<=>(const Pose&) const = default;

    Lin lin() const { return {rotation, reflected}; }
    static Pose from(Vtx t, Lin l) { return {t, l.rot, l.ref}; }
};

Pose canonical(Pose p);
Pose identity_pose();
Pose compose_poses(const Pose& a, const Pose& b);  // a after b
Pose invert_pose(const Pose& a);
Vtx apply(const Pose& p, Vtx v);
Vtx apply_inverse(const Pose& p, Vtx v);
TriCell apply(const Pose& p, const TriCell& c);
Edge apply(const Pose& p, const Edge& e);

// Canonical sphinx: Up(0,0), Up(1,0), Up(2,0), Down(0,1), Down(1,1), Up(0,1).
// Outline (0,0) (3,0) (2,1) (1,1) (0,2); base 3, sides 1, 1, 1, 2.
struct SphinxShape {
    std::vector<TriCell> cells;
};

const SphinxShape& canonical_sphinx();
// boundary vertices of the unit sphinx in counterclockwise order from (0,0)
const std::array<Vtx, 8>& sphinx_boundary_vertices();

std::vector<TriCell> place(const SphinxShape& shape, const Pose& pose);
// the sphinx inflated by 2^level, placed by pose
std::vector<TriCell> supertile_cells(int level, const Pose& pose);
// subdivide one cell into its four half-scale cells after doubling coordinates
std::array<TriCell, 4> subdivide(const TriCell& c);

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Disconnected : GeometryError {
    Disconnected() : GeometryError("Disconnected") {}
};
struct NotSimplyConnected : GeometryError {
    NotSimplyConnected() : GeometryError("NotSimplyConnected") {}
};

struct DirectedEdge {
    Vtx from, to;
    auto operator<=>(const DirectedEdge&) const = default;
};

// closed boundary cycle, counterclockwise, starting at the least vertex
std::vector<DirectedEdge> boundary(const std::vector<TriCell>& cells);

struct Cartesian {
    double x, y;
};
Cartesian to_cartesian(Vtx v);

std::string to_string(const Vtx& v);
std::string to_string(const TriCell& c);
std::string to_string(const Pose& p);

}  // namespace sphinx
