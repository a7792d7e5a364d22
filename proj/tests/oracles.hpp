#pragma once

// Test-side oracles.  Nothing here calls into the library beyond plain data
// types, so a bug in the library cannot hide behind its own helpers.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "sphinx/lattice.hpp"

namespace oracle {

struct Pt {
    double x, y;
};

inline Pt cart(sphinx::Vtx v) { return {v.x + 0.5 * v.y, v.y * std::sqrt(3.0) / 2.0}; }

inline Pt centroid(const sphinx::TriCell& c) {
    // straight from the cell definition, not from corners()
    double cx = c.col, cy = c.row;
    if (c.parity == sphinx::Parity::Up) {
        cx += 1.0 / 3, cy += 1.0 / 3;
    } else {
        cx += 2.0 / 3, cy -= 1.0 / 3;
    }
    return {cx + 0.5 * cy, cy * std::sqrt(3.0) / 2.0};
}

// even-odd rule
inline bool inside(const std::vector<Pt>& poly, Pt p) {
    bool in = false;
    for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
        const Pt &a = poly[i], &b = poly[j];
        if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) in = !in;
    }
    return in;
}

// rotation by 60 degrees and the reflection fixing e1, written out directly
inline sphinx::Vtx rot60(sphinx::Vtx v) { return {-v.y, v.x + v.y}; }
inline sphinx::Vtx mirror(sphinx::Vtx v) { return {v.x + v.y, -v.y}; }

inline sphinx::Vtx act(sphinx::Vtx v, int rot, bool ref) {
    if (ref) v = mirror(v);
    for (int i = 0; i < ((rot % 6) + 6) % 6; ++i) v = rot60(v);
    return v;
}

// the unit sphinx outline, by hand
inline const std::array<sphinx::Vtx, 8>& sphinx_outline() {
    static const std::array<sphinx::Vtx, 8> o{{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {2, 1}, {1, 1}, {0, 2}, {0, 1}}};
    return o;
}

// all cells whose centroid falls inside the outline scaled by s and placed
inline std::set<sphinx::TriCell> sphinx_cells(int s, sphinx::Vtx t, int rot, bool ref) {
    std::vector<Pt> poly;
    int lo = 1 << 30, hi = -(1 << 30);
    for (auto v : sphinx_outline()) {
        auto w = act(v * s, rot, ref) + t;
        poly.push_back(cart(w));
        lo = std::min({lo, w.x, w.y});
        hi = std::max({hi, w.x, w.y});
    }
    std::set<sphinx::TriCell> out;
    for (int c = lo - 1; c <= hi + 1; ++c)
        for (int r = lo - 1; r <= hi + 1; ++r)
            for (auto par : {sphinx::Parity::Up, sphinx::Parity::Down}) {
                sphinx::TriCell cell{c, r, par};
                if (inside(poly, centroid(cell))) out.insert(cell);
            }
    return out;
}

// Least path in (length, vertex sequence) order among all simple paths.
inline std::vector<sphinx::Vtx> least_path(const std::vector<sphinx::Edge>& edges, sphinx::Vtx src, sphinx::Vtx dst) {
    std::map<sphinx::Vtx, std::vector<sphinx::Vtx>> adj;
    for (const auto& e : edges) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    std::vector<sphinx::Vtx> best, cur{src};
    std::set<sphinx::Vtx> on{src};
    std::function<void(sphinx::Vtx)> go = [&](sphinx::Vtx v) {
        if (v == dst) {
            if (best.empty() || cur.size() < best.size() || (cur.size() == best.size() && cur < best)) best = cur;
            return;
        }
        for (auto w : adj[v])
            if (!on.count(w)) {
                on.insert(w);
                cur.push_back(w);
                go(w);
                cur.pop_back();
                on.erase(w);
            }
    };
    go(src);
    return best;
}

// Plain sphinx tilings of a cell set by a tiler that scans cells in C3 order
// and tries shapes built from sphinx_cells(1, ...) at every translation.
inline long count_tilings(const std::set<sphinx::TriCell>& region) {
    std::vector<std::vector<sphinx::TriCell>> shapes;  // normalized to least cell at origin-ish
    for (int ref = 0; ref < 2; ++ref)
        for (int rot = 0; rot < 6; ++rot) {
            auto cells = sphinx_cells(1, {0, 0}, rot, ref);
            shapes.emplace_back(cells.begin(), cells.end());
        }
    auto key = [](const sphinx::TriCell& c) {
        int x = c.parity == sphinx::Parity::Up ? 3 * c.col + 1 : 3 * c.col + 2;
        int y = c.parity == sphinx::Parity::Up ? 3 * c.row + 1 : 3 * c.row - 1;
        return std::pair{y, x};
    };
    std::set<sphinx::TriCell> left = region;
    std::function<long()> rec = [&]() -> long {
        if (left.empty()) return 1;
        auto first = *std::min_element(left.begin(), left.end(), [&](auto& a, auto& b) { return key(a) < key(b); });
        long n = 0;
        for (const auto& sh : shapes)
            for (const auto& anchor : sh) {
                // translate so that `anchor` lands on `first`; parities must agree
                if (anchor.parity != first.parity) continue;
                int dc = first.col - anchor.col, dr = first.row - anchor.row;
                std::vector<sphinx::TriCell> placed;
                bool ok = true;
                for (auto c : sh) {
                    sphinx::TriCell t{c.col + dc, c.row + dr, c.parity};
                    if (!left.count(t) || key(t) < key(first)) {
                        ok = false;
                        break;
                    }
                    placed.push_back(t);
                }
                if (!ok) continue;
                for (auto& t : placed) left.erase(t);
                n += rec();
                for (auto& t : placed) left.insert(t);
            }
        return n;
    };
    return rec();
}

}  // namespace oracle
