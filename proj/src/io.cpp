#include "sphinx/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace sphinx {

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

int to_int(const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        throw FormatError("not an integer: '" + s + "'");
    }
    if (used != s.size()) throw FormatError("not an integer: '" + s + "'");
    return v;
}

Mark parse_mark(const std::string& t) {
    if (t == ".") return Mark::None;
    if (t == "i") return Mark::In;
    if (t == "e") return Mark::End;
    throw FormatError("bad mark '" + t + "'");
}

int parse_ch2(const std::string& t) { return t == "U" ? kUnknown : to_int(t); }

Terminal parse_terminal(const std::string& t) {
    if (t == "A") return Terminal::A;
    if (t == "B") return Terminal::B;
    throw FormatError("bad wire class '" + t + "'");
}

Port parse_port(const std::string& t) {
    Port p;
    if (t == "_") return p;
    if (t == "-") {
        p.kind = PortKind::NoEdge;
        return p;
    }
    // j<j><o|i><l|h>/<P v|G g>/<n|P c|W g>
    auto s1 = t.find('/'), s2 = t.rfind('/');
    if (t.size() < 4 || t[0] != 'j' || s1 == std::string::npos || s1 == s2) throw FormatError("bad port '" + t + "'");
    std::string head = t.substr(1, s1 - 1), c2 = t.substr(s1 + 1, s2 - s1 - 1), c3 = t.substr(s2 + 1);
    if (head.size() < 3 || c2.size() < 2 || c3.empty()) throw FormatError("bad port '" + t + "'");
    p.kind = PortKind::Edge;
    p.j = to_int(head.substr(0, head.size() - 2));
    char o = head[head.size() - 2], l = head.back();
    if ((o != 'o' && o != 'i') || (l != 'l' && l != 'h')) throw FormatError("bad port '" + t + "'");
    p.out = o == 'o';
    p.l1 = l == 'l';
    if (c2[0] == 'P') {
        p.c2 = SpecKind::Pinned;
        p.c2v = parse_ch2(c2.substr(1));
    } else if (c2[0] == 'G') {
        p.c2 = SpecKind::Group;
        p.c2v = to_int(c2.substr(1));
    } else {
        throw FormatError("bad port '" + t + "'");
    }
    if (c3 == "n") {
        p.c3 = SpecKind::None;
    } else if (c3[0] == 'P') {
        p.c3 = SpecKind::Pinned;
        p.c3v = static_cast<int>(parse_terminal(c3.substr(1)));
    } else if (c3[0] == 'W') {
        p.c3 = SpecKind::Group;
        p.c3v = to_int(c3.substr(1));
    } else {
        throw FormatError("bad port '" + t + "'");
    }
    return p;
}

// the record part of a line: everything after the first n tokens
std::string rest_after(const std::string& line, std::size_t n) {
    std::size_t pos = 0;
    for (std::size_t i = 0; i < n; ++i) {
        pos = line.find_first_not_of(" \t", pos);
        pos = line.find_first_of(" \t", pos);
    }
    pos = line.find_first_not_of(" \t", pos);
    return pos == std::string::npos ? "" : line.substr(pos);
}

void header(std::ostringstream& os, const char* kind, const std::vector<std::pair<std::string, std::string>>& meta) {
    os << "format " << kind << ' ' << kFormatVersion << "\n";
    os << "lattice " << kLatticeId << "\n";
    for (const auto& [k, v] : meta) os << "meta " << k << ' ' << v << "\n";
}

// shared reader: checks the header, collects meta, hands other lines back
template <class F>
void read_doc(const std::string& text, const char* kind, std::vector<std::pair<std::string, std::string>>& meta, F body) {
    std::istringstream is(text);
    std::string line;
    bool have_format = false, have_lattice = false;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto toks = split_ws(line);
        if (toks.empty() || toks[0][0] == '#') continue;
        try {
            if (!have_format) {
                if (toks.size() != 3 || toks[0] != "format" || toks[1] != kind)
                    throw FormatError(std::string("expected 'format ") + kind + " <version>'");
                if (toks[2] != std::to_string(kFormatVersion)) throw FormatError("unsupported format version " + toks[2]);
                have_format = true;
            } else if (!have_lattice) {
                if (toks.size() != 2 || toks[0] != "lattice") throw FormatError("expected 'lattice <id>'");
                if (toks[1] != kLatticeId) throw FormatError("unknown lattice convention " + toks[1]);
                have_lattice = true;
            } else if (toks[0] == "meta") {
                if (toks.size() < 2) throw FormatError("meta needs a key");
                std::string v = rest_after(line, 2);
                v.erase(v.find_last_not_of(" \t") + 1);
                meta.push_back({toks[1], v});
            } else {
                body(toks, line);
            }
        } catch (const FormatError& e) {
            throw FormatError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!have_lattice) throw FormatError("missing header");
}

}  // namespace

std::optional<std::string> TilingDocument::get(const std::string& key) const {
    for (const auto& [k, v] : meta)
        if (k == key) return v;
    return std::nullopt;
}

MarkedTile parse_tile(const std::string& record) {
    auto t = split_ws(record);
    if (t.empty()) throw FormatError("empty tile record");
    MarkedTile m;
    if (t[0] == "face") {
        if (t.size() != 18 || t[9] != "|") throw FormatError("face record needs 8 segments | 8 marks");
        m.kind = TileKind::TileTile;
        for (int k = 0; k < 8; ++k) {
            const auto& s = t[1 + k];
            if (s == "-") continue;
            if (s.size() < 2 || (s.back() != '+' && s.back() != '-')) throw FormatError("bad segment '" + s + "'");
            m.face.segs[k] = SegMark{to_int(s.substr(0, s.size() - 1)), s.back() == '+'};
        }
        for (int k = 0; k < 8; ++k) m.face.marks[k] = parse_mark(t[10 + k]);
    } else if (t[0] == "edge") {
        if (t.size() != 5) throw FormatError("edge record needs j ch2 ch3 l1");
        m.kind = TileKind::EdgeTile;
        m.edge.j = to_int(t[1]);
        m.edge.ch2 = parse_ch2(t[2]);
        if (t[3] != "n") m.edge.ch3 = parse_terminal(t[3]);
        if (t[4] != "0" && t[4] != "1") throw FormatError("bad l1 flag");
        m.edge.l1 = t[4] == "1";
    } else if (t[0] == "vertex") {
        if (t.size() < 3 || t[1].size() != 1) throw FormatError("bad vertex record");
        m.kind = TileKind::VertexTile;
        switch (t[1][0]) {
            case 'F': m.vertex.form = VertexForm::Full; break;
            case 'H': m.vertex.form = VertexForm::Half; break;
            case 'S': m.vertex.form = VertexForm::Side; break;
            case 'R': m.vertex.form = VertexForm::Run; break;
            default: throw FormatError("bad vertex form");
        }
        std::size_t i = 2;
        for (; i < t.size() && t[i] != "|"; ++i) m.vertex.ports.push_back(parse_port(t[i]));
        if (i == t.size()) throw FormatError("vertex record needs '|'");
        for (++i; i < t.size(); ++i) m.vertex.sectors.push_back(parse_mark(t[i]));
        std::size_t np = m.vertex.form == VertexForm::Full ? 6 : (m.vertex.form == VertexForm::Run ? 2 : 4);
        std::size_t ns = m.vertex.form == VertexForm::Full ? 6 : (m.vertex.form == VertexForm::Run ? 0 : 3);
        if (m.vertex.ports.size() != np || m.vertex.sectors.size() != ns) throw FormatError("vertex record has wrong arity");
    } else {
        throw FormatError("unknown tile kind '" + t[0] + "'");
    }
    return m;
}

Pose parse_pose(const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 3 && parts.size() != 4) throw FormatError("pose must be x,y,r or x,y,r,m");
    Pose p{{to_int(parts[0]), to_int(parts[1])}, to_int(parts[2]), false};
    if (parts.size() == 4) {
        if (parts[3] != "m" && parts[3] != "p") throw FormatError("pose reflection flag must be m or p");
        p.reflected = parts[3] == "m";
    }
    if (p.rotation < 0 || p.rotation > 5) throw FormatError("rotation must be 0..5");
    return p;
}

std::string pose_spec(const Pose& p) {
    return std::to_string(p.anchor.x) + "," + std::to_string(p.anchor.y) + "," + std::to_string(p.rotation) + "," +
           (p.reflected ? "m" : "p");
}

std::string serialize(const TilingDocument& d) {
    std::ostringstream os;
    header(os, "sphinx-tiling", d.meta);
    for (const auto& p : d.placements) {
        os << "place " << p.pose.anchor.x << ' ' << p.pose.anchor.y << ' ' << p.pose.rotation << ' '
           << (p.pose.reflected ? 1 : 0) << ' ' << (p.tile ? describe(*p.tile) : "sphinx") << "\n";
    }
    return os.str();
}

std::string serialize(const TilesetDocument& d) {
    std::ostringstream os;
    header(os, "sphinx-tileset", d.meta);
    for (const auto& t : d.tiles) os << "tile " << describe(t) << "\n";
    return os.str();
}

TilingDocument parse_tiling(const std::string& text) {
    TilingDocument d;
    read_doc(text, "sphinx-tiling", d.meta, [&](const std::vector<std::string>& t, const std::string& line) {
        if (t[0] != "place" || t.size() < 6) throw FormatError("expected 'place x y r m tile'");
        DocPlacement p;
        p.pose = Pose{{to_int(t[1]), to_int(t[2])}, to_int(t[3]), false};
        if (p.pose.rotation < 0 || p.pose.rotation > 5) throw FormatError("rotation must be 0..5");
        if (t[4] != "0" && t[4] != "1") throw FormatError("reflection flag must be 0 or 1");
        p.pose.reflected = t[4] == "1";
        std::string rec = rest_after(line, 5);
        if (rec != "sphinx") p.tile = parse_tile(rec);
        d.placements.push_back(std::move(p));
    });
    return d;
}

TilesetDocument parse_tileset(const std::string& text) {
    TilesetDocument d;
    read_doc(text, "sphinx-tileset", d.meta, [&](const std::vector<std::string>& t, const std::string& line) {
        if (t[0] != "tile") throw FormatError("expected 'tile <record>'");
        d.tiles.push_back(parse_tile(rest_after(line, 1)));
    });
    return d;
}

Region parse_region(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw FormatError("region spec needs a kind: supertile:N or cells:...");
    std::string kind = spec.substr(0, colon), rest = spec.substr(colon + 1);
    if (kind == "supertile") {
        auto c2 = rest.find(':');
        int level = to_int(rest.substr(0, c2));
        if (level < 0) throw FormatError("level must be >= 0");
        Pose p = c2 == std::string::npos ? identity_pose() : parse_pose(rest.substr(c2 + 1));
        return supertile_region(level, p);
    }
    if (kind != "cells") throw FormatError("unknown region kind '" + kind + "'");
    Region r;
    std::string tok;
    std::istringstream is(rest);
    while (std::getline(is, tok, ';')) {
        if (tok.empty()) continue;
        auto comma = tok.find(',');
        if ((tok[0] != 'U' && tok[0] != 'D') || comma == std::string::npos) throw FormatError("bad cell '" + tok + "'");
        TriCell c{to_int(tok.substr(1, comma - 1)), to_int(tok.substr(comma + 1)), tok[0] == 'U' ? Parity::Up : Parity::Down};
        r.push_back(c);
    }
    std::sort(r.begin(), r.end(), row_major_less);
    if (std::adjacent_find(r.begin(), r.end()) != r.end()) throw FormatError("duplicate cell in region");
    if (r.empty()) throw FormatError("empty region");
    return r;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace sphinx
