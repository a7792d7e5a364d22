#include "sphinx/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace sphinx {

namespace {

const std::array<const char*, 8> kWarm{"#d73027", "#f46d43", "#fdae61", "#e6c229",
                                       "#e08214", "#b35806", "#c51b7d", "#8c510a"};
const std::array<const char*, 5> kBlue{"#9e9e9e", "#c6dbef", "#6baed6", "#2171b5", "#08306b"};  // U, 0..3

const char* wire_color(Terminal t) { return t == Terminal::A ? "#41ab5d" : "#005a32"; }
const char* mark_color(Mark m) { return m == Mark::In ? "#74c476" : "#00441b"; }

struct P {
    double x, y;
};
P operator+(P a, P b) { return {a.x + b.x, a.y + b.y}; }
P operator-(P a, P b) { return {a.x - b.x, a.y - b.y}; }
P operator*(P a, double s) { return {a.x * s, a.y * s}; }

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s = buf;
    if (s == "-0.000") s = "0.000";
    return s;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&')
            out += "&amp;";
        else if (c == '<')
            out += "&lt;";
        else if (c == '>')
            out += "&gt;";
        else
            out += c;
    }
    return out;
}

class Canvas {
public:
    explicit Canvas(double unit) : unit_(unit) {}

    // lattice point to drawing coordinates (lattice units, y up)
    static P at(Vtx v) {
        auto c = to_cartesian(v);
        return {c.x, c.y};
    }

    void path(const std::vector<P>& pts, const std::string& cls, const std::string& fill, const std::string& stroke,
              const std::string& extra = "", const std::string& title = "") {
        std::ostringstream os;
        os << "<path class=\"" << cls << "\" d=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) os << (i ? " L" : "M") << xy(pts[i]);
        os << " Z\" fill=\"" << fill << "\" stroke=\"" << stroke << "\"" << extra;
        if (title.empty())
            os << "/>";
        else
            os << "><title>" << escape(title) << "</title></path>";
        items_.push_back(os.str());
    }

    void line(P a, P b, const std::string& cls, const std::string& stroke, double width, bool dashed = false) {
        std::ostringstream os;
        os << "<line class=\"" << cls << "\" x1=\"" << X(a) << "\" y1=\"" << Y(a) << "\" x2=\"" << X(b) << "\" y2=\""
           << Y(b) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width * unit_) << "\"";
        if (dashed) os << " stroke-dasharray=\"" << num(0.08 * unit_) << "\"";
        os << "/>";
        items_.push_back(os.str());
    }

    void dot(P c, double r, const std::string& cls, const std::string& fill) {
        std::ostringstream os;
        os << "<circle class=\"" << cls << "\" cx=\"" << X(c) << "\" cy=\"" << Y(c) << "\" r=\"" << num(r * unit_)
           << "\" fill=\"" << fill << "\"/>";
        items_.push_back(os.str());
        grow({c.x - r, c.y - r});
        grow({c.x + r, c.y + r});
    }

    void text(P c, const std::string& s, double size) {
        std::ostringstream os;
        os << "<text x=\"" << X(c) << "\" y=\"" << Y(c) << "\" font-size=\"" << num(size * unit_)
           << "\" font-family=\"monospace\">" << escape(s) << "</text>";
        items_.push_back(os.str());
        grow(c);
        grow({c.x + 0.6 * size * static_cast<double>(s.size()), c.y});
    }

    void open_group(const std::string& cls) { items_.push_back("<g class=\"" + cls + "\">"); }
    void close_group() { items_.push_back("</g>"); }

    std::string finish() const {
        std::ostringstream os;
        double x0 = 0, y0 = 0, w = 1, h = 1;
        if (have_) {
            double pad = 0.5;
            x0 = (lo_.x - pad) * unit_;
            y0 = -(hi_.y + pad) * unit_;
            w = (hi_.x - lo_.x + 2 * pad) * unit_;
            h = (hi_.y - lo_.y + 2 * pad) * unit_;
        }
        os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(x0) << ' ' << num(y0) << ' ' << num(w) << ' '
           << num(h) << "\" width=\"" << num(w) << "\" height=\"" << num(h) << "\">\n";
        for (const auto& s : items_) os << s << "\n";
        os << "</svg>\n";
        return os.str();
    }

private:
    double unit_;
    std::vector<std::string> items_;
    bool have_ = false;
    P lo_{0, 0}, hi_{0, 0};

    void grow(P p) {
        if (!have_) {
            lo_ = hi_ = p;
            have_ = true;
            return;
        }
        lo_ = {std::min(lo_.x, p.x), std::min(lo_.y, p.y)};
        hi_ = {std::max(hi_.x, p.x), std::max(hi_.y, p.y)};
    }
    std::string X(P p) { return grow(p), num(p.x * unit_); }
    std::string Y(P p) { return num(-p.y * unit_); }
    std::string xy(P p) { return X(p) + " " + Y(p); }
};

P centroid(const std::vector<P>& ps) {
    P c{0, 0};
    for (auto p : ps) c = c + p;
    return c * (1.0 / static_cast<double>(ps.size()));
}

P unit_normal(P a, P b) {
    P d = b - a;
    double l = std::hypot(d.x, d.y);
    return {-d.y / l, d.x / l};
}

void draw(Canvas& cv, const std::optional<MarkedTile>& tile, const Pose& pose, P shift, const RenderOptions& opt) {
    auto at = [&](Vtx v) { return Canvas::at(v) + shift; };
    std::string title = opt.labels ? (tile ? describe(*tile) : "sphinx") : "";
    if (!tile || tile->kind == TileKind::TileTile) {
        const auto& sb = sphinx_boundary_vertices();
        std::vector<P> pts;
        for (Vtx v : sb) pts.push_back(at(apply(pose, v)));
        cv.path(pts, tile ? "tile face" : "tile sphinx", "#f2f0eb", "#555555", " stroke-width=\"1\"", title);
        if (!tile) return;
        P c = centroid(pts);
        for (int k = 0; k < 8; ++k) {
            const auto& s = tile->face.segs[k];
            P a = pts[k], b = pts[(k + 1) % 8];
            if (s) {
                P a2 = a + (b - a) * 0.15 + (c - a) * 0.06, b2 = b + (a - b) * 0.15 + (c - b) * 0.06;
                cv.line(a2, b2, "ch1", kWarm[s->j % 8], 0.07);
                cv.dot(s->with_ccw ? b2 : a2, 0.05, "ch1-head", kWarm[s->j % 8]);
            }
            Mark m = tile->face.marks[k];
            if (m != Mark::None) cv.dot(a + (c - a) * 0.18, 0.08, m == Mark::In ? "ch3-in" : "ch3-end", mark_color(m));
        }
    } else if (tile->kind == TileKind::EdgeTile) {
        const EdgeType& e = tile->edge;
        P t = at(pose.anchor), h = at(pose.anchor + kDirs[pose.rotation]);
        P m = (t + h) * 0.5, n = unit_normal(t, h);
        cv.path({t, m + n * 0.12, h, m - n * 0.12}, "tile edge", kWarm[e.j % 8], "#333333",
                e.l1 ? " stroke-width=\"0.5\"" : " stroke-width=\"0.5\" fill-opacity=\"0.45\"", title);
        cv.line(t + (h - t) * 0.25 + n * 0.2, t + (h - t) * 0.75 + n * 0.2, "ch2", kBlue[e.ch2 + 1], 0.05, !e.l1);
        cv.dot(h + (t - h) * 0.2, 0.04, "ch1-head", "#333333");
        if (e.ch3) cv.dot(m, 0.06, "ch3-wire", wire_color(*e.ch3));
    } else {
        P v = at(pose.anchor);
        std::vector<P> hex;
        for (int k = 0; k < 6; ++k) hex.push_back(v + (at(pose.anchor + kDirs[k]) - v) * 0.15);
        cv.path(hex, "tile vertex", "#ffffff", "#333333", " stroke-width=\"0.5\"", title);
        Oriented o = orient(tile->vertex, pose.lin());
        for (int k = 0; k < 6; ++k) {
            P d = at(pose.anchor + kDirs[k]) - v;
            if (o.ports[k] && o.ports[k]->kind == PortKind::Edge)
                cv.line(v + d * 0.15, v + d * 0.32, "ch1-port", kWarm[o.ports[k]->j % 8], 0.04, !o.ports[k]->l1);
            if (o.sectors[k] && *o.sectors[k] != Mark::None) {
                P e = at(pose.anchor + kDirs[(k + 1) % 6]) - v;
                cv.dot(v + (d + e) * 0.12, 0.04, "ch3-sector", mark_color(*o.sectors[k]));
            }
        }
    }
}

}  // namespace

std::string render_tiling(const std::vector<DocPlacement>& placements, const RenderOptions& opt) {
    Canvas cv(opt.unit);
    // bulk first so that edge and vertex tiles sit on top
    for (int pass = 0; pass < 3; ++pass)
        for (const auto& p : placements) {
            int kind = p.tile ? static_cast<int>(p.tile->kind) : 0;
            if (kind == pass) draw(cv, p.tile, p.pose, {0, 0}, opt);
        }
    return cv.finish();
}

std::string render_tiling(const DecoratedSupertile& d, const RenderOptions& opt) {
    std::vector<DocPlacement> ps;
    for (const auto& p : d.placements()) ps.push_back({p.tile, p.pose});
    return render_tiling(ps, opt);
}

std::string render_catalog(const std::vector<MarkedTile>& tiles, const RenderOptions& opt) {
    Canvas cv(opt.unit);
    const int cols = 6;
    const double w = 4.5, h = 3.6;
    for (std::size_t i = 0; i < tiles.size(); ++i) {
        const MarkedTile& t = tiles[i];
        P origin{static_cast<double>(i % cols) * w, -static_cast<double>(i / cols) * h};
        Pose pose = identity_pose();
        P shift = origin;
        if (t.kind != TileKind::TileTile) shift = shift + P{1.0, 1.0};
        cv.open_group("entry");
        draw(cv, t, pose, shift, opt);
        cv.text(origin + P{0, -0.5}, "#" + std::to_string(i), 0.3);
        std::string rec = describe(t);
        // two short lines keep the text inside the grid cell
        auto cut = rec.find('|');
        cv.text(origin + P{0, -0.85}, rec.substr(0, std::min(cut, rec.size())), 0.13);
        if (cut != std::string::npos) cv.text(origin + P{0, -1.05}, rec.substr(cut), 0.13);
        cv.close_group();
    }
    return cv.finish();
}

}  // namespace sphinx
