#include "bondedkb/ingest.hpp"

#include "bondedkb/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

namespace bkb {

namespace {

using Vec2 = std::array<double, 2>;

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
Vec3 normalized(const Vec3& a) {
    double n = std::sqrt(dot(a, a));
    return {a[0] / n, a[1] / n, a[2] / n};
}
double cross2(const Vec2& a, const Vec2& b) { return a[0] * b[1] - a[1] * b[0]; }
Vec2 sub2(const Vec2& a, const Vec2& b) { return {a[0] - b[0], a[1] - b[1]}; }
double len2(const Vec2& a) { return std::hypot(a[0], a[1]); }

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(' '), b = s.find_last_not_of(' ');
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

PolymerStructure load_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("structure JSON: ") + e.what());
    }
    PolymerStructure s;
    try {
        for (const auto& c : j.at("chains")) {
            PolymerChain chain;
            for (const auto& p : c) {
                if (!p.is_array() || p.size() != 3) throw ParseError("structure JSON: a point must be [x, y, z]");
                chain.points.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
            }
            s.chains.push_back(std::move(chain));
        }
        if (j.contains("bonds"))
            for (const auto& b : j.at("bonds")) {
                if (!b.is_array() || b.size() != 4) throw ParseError("structure JSON: a bond must be [ci, ri, cj, rj]");
                s.bonds.push_back({b[0].get<int>(), b[1].get<int>(), b[2].get<int>(), b[3].get<int>()});
            }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("structure JSON: ") + e.what());
    }
    return s;
}

double field_double(const std::string& line, size_t pos, size_t n, int lineno) {
    std::string f = trim(line.substr(pos, n));
    try {
        size_t used = 0;
        double v = std::stod(f, &used);
        if (used != f.size()) throw std::invalid_argument(f);
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(lineno) + ": bad number \"" + f + "\"");
    }
}

int field_int(const std::string& line, size_t pos, size_t n, int lineno) {
    std::string f = trim(line.substr(pos, n));
    try {
        size_t used = 0;
        int v = std::stoi(f, &used);
        if (used != f.size()) throw std::invalid_argument(f);
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(lineno) + ": bad integer \"" + f + "\"");
    }
}

PolymerStructure load_pdb(const std::string& text, const std::string& only_chain) {
    struct Res {
        int seq;
        Vec3 p;
    };
    std::vector<std::string> order;
    std::map<std::string, std::vector<Res>> residues;
    struct SS {
        std::string c1, c2;
        int r1, r2, line;
    };
    std::vector<SS> ss;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string rec = line.substr(0, std::min<size_t>(6, line.size()));
        if (rec == "ENDMDL") break;
        if (rec == "SSBOND") {
            if (line.size() < 35) throw ParseError("line " + std::to_string(lineno) + ": SSBOND record too short");
            ss.push_back({std::string(1, line[15]), std::string(1, line[29]), field_int(line, 17, 4, lineno),
                          field_int(line, 31, 4, lineno), lineno});
        } else if (rec == "ATOM  " || rec == "HETATM") {
            if (line.size() < 54) throw ParseError("line " + std::to_string(lineno) + ": ATOM record too short");
            if (trim(line.substr(12, 4)) != "CA") continue;
            const char alt = line[16];
            if (alt != ' ' && alt != 'A') continue;
            std::string chain(1, line[21]);
            if (!only_chain.empty() && chain != only_chain) continue;
            const int seq = field_int(line, 22, 4, lineno);
            Vec3 p{field_double(line, 30, 8, lineno), field_double(line, 38, 8, lineno),
                   field_double(line, 46, 8, lineno)};
            if (!residues.count(chain)) order.push_back(chain);
            auto& rs = residues[chain];
            if (!rs.empty() && rs.back().seq == seq) continue;  // insertion codes are not supported
            rs.push_back({seq, p});
        }
    }
    PolymerStructure s;
    std::map<std::pair<std::string, int>, std::pair<int, int>> where;
    for (size_t ci = 0; ci < order.size(); ++ci) {
        auto rs = residues[order[ci]];
        std::stable_sort(rs.begin(), rs.end(), [](const Res& a, const Res& b) { return a.seq < b.seq; });
        PolymerChain c;
        for (size_t ri = 0; ri < rs.size(); ++ri) {
            c.points.push_back(rs[ri].p);
            where[{order[ci], rs[ri].seq}] = {static_cast<int>(ci), static_cast<int>(ri)};
        }
        s.chains.push_back(std::move(c));
    }
    if (s.chains.empty()) throw ValidationError("structure has no CA atoms" + (only_chain.empty() ? "" : " in chain " + only_chain));
    for (const auto& b : ss) {
        if (!only_chain.empty() && (b.c1 != only_chain || b.c2 != only_chain)) continue;
        auto a = where.find({b.c1, b.r1}), c = where.find({b.c2, b.r2});
        if (a == where.end() || c == where.end())
            throw ValidationError("line " + std::to_string(b.line) + ": SSBOND refers to a residue without a CA atom");
        s.bonds.push_back({a->second.first, a->second.second, c->second.first, c->second.second});
    }
    return s;
}

}  // namespace

PolymerStructure load_structure(const std::string& text, StructureFormat format, const std::string& chain) {
    if (format == StructureFormat::Auto) {
        size_t p = text.find_first_not_of(" \t\r\n");
        format = (p != std::string::npos && text[p] == '{') ? StructureFormat::Json : StructureFormat::Pdb;
    }
    PolymerStructure s = format == StructureFormat::Json ? load_json(text) : load_pdb(text, chain);
    validate_structure(s);
    return s;
}

PolymerStructure load_structure_file(const std::string& path, StructureFormat format, const std::string& chain) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return load_structure(ss.str(), format, chain);
}

void validate_structure(const PolymerStructure& s) {
    for (size_t i = 0; i < s.chains.size(); ++i)
        if (s.chains[i].points.size() < 2)
            throw ValidationError("chain " + std::to_string(i) + " has fewer than 2 points");
    std::map<std::pair<int, int>, int> used;
    for (size_t k = 0; k < s.bonds.size(); ++k) {
        const auto& b = s.bonds[k];
        for (auto [c, r] : {std::pair{b.chain1, b.residue1}, std::pair{b.chain2, b.residue2}}) {
            if (c < 0 || c >= static_cast<int>(s.chains.size()) || r < 0 ||
                r >= static_cast<int>(s.chains[c].points.size()))
                throw ValidationError("bond " + std::to_string(k) + " refers to a missing residue");
            if (used.count({c, r}))
                throw ValidationError("residue " + std::to_string(r) + " of chain " + std::to_string(c) +
                                      " carries two bonds");
            used[{c, r}] = static_cast<int>(k);
        }
        if (b.chain1 == b.chain2 && b.residue1 == b.residue2)
            throw ValidationError("bond " + std::to_string(k) + " joins a residue to itself");
    }
}

PolymerStructure close_chain(const PolymerStructure& s) {
    PolymerStructure out = s;
    for (auto& c : out.chains) {
        if (c.closed) continue;
        // a chain whose last point repeats the first is closed already
        if (c.points.size() > 2 && c.points.front() == c.points.back()) c.points.pop_back();
        c.closed = true;
    }
    return out;
}

namespace {

struct Degenerate {};

struct Seg {
    int a = 0, b = 0;  // global point ids
    Vec2 p{}, q{};
    double zp = 0, zq = 0;
    bool bond = false;
    int owner = 0;  // chain index or bond index
    int index = 0;  // segment index within its chain
};

struct CrossingHit {
    int under = 0, over = 0;  // segment indices
    double tu = 0, to = 0;
    Vec2 at{};
    bool over_enters_at_1 = false;
};

BondedDiagram project_once(const PolymerStructure& s, const Vec3& d, double tol) {
    Vec3 axis{1, 0, 0};
    if (std::fabs(d[0]) > 0.6) axis = {0, 1, 0};
    const Vec3 e1 = normalized(cross(d, axis));
    const Vec3 e2 = cross(d, e1);

    std::vector<std::vector<int>> gid(s.chains.size());
    std::vector<Vec2> pt;
    std::vector<double> depth;
    for (size_t c = 0; c < s.chains.size(); ++c)
        for (const auto& p : s.chains[c].points) {
            gid[c].push_back(static_cast<int>(pt.size()));
            pt.push_back({dot(p, e1), dot(p, e2)});
            depth.push_back(dot(p, d));
        }

    // bond vertices: node ids in (chain, residue) order
    std::map<int, int> vertex_of;  // gid -> vertex id
    std::map<int, int> partner;    // gid -> partner gid
    {
        std::vector<int> ends;
        for (const auto& b : s.bonds) {
            int x = gid[b.chain1][b.residue1], y = gid[b.chain2][b.residue2];
            partner[x] = y;
            partner[y] = x;
            ends.push_back(x);
            ends.push_back(y);
        }
        std::sort(ends.begin(), ends.end());
        for (int g : ends) vertex_of[g] = static_cast<int>(vertex_of.size());
    }

    std::vector<Seg> segs;
    auto make = [&](int a, int b, bool bond, int owner, int index) {
        Seg sg{a, b, pt[a], pt[b], depth[a], depth[b], bond, owner, index};
        if (len2(sub2(sg.q, sg.p)) < tol) throw Degenerate{};
        segs.push_back(sg);
    };
    for (size_t c = 0; c < s.chains.size(); ++c) {
        const int n = static_cast<int>(gid[c].size());
        for (int i = 0; i < n; ++i) make(gid[c][i], gid[c][(i + 1) % n], false, static_cast<int>(c), i);
    }
    const int first_bond_seg = static_cast<int>(segs.size());
    for (size_t k = 0; k < s.bonds.size(); ++k) {
        int x = gid[s.bonds[k].chain1][s.bonds[k].residue1], y = gid[s.bonds[k].chain2][s.bonds[k].residue2];
        if (vertex_of[x] > vertex_of[y]) std::swap(x, y);  // tail at the lower vertex id
        make(x, y, true, static_cast<int>(k), 0);
    }

    std::vector<CrossingHit> hits;
    for (size_t i = 0; i < segs.size(); ++i)
        for (size_t j = i + 1; j < segs.size(); ++j) {
            const Seg& A = segs[i];
            const Seg& B = segs[j];
            const Vec2 r = sub2(A.q, A.p), sv = sub2(B.q, B.p);
            const double lr = len2(r), ls = len2(sv);
            const int shared = (A.a == B.a) + (A.a == B.b) + (A.b == B.a) + (A.b == B.b);
            if (shared >= 2) throw Degenerate{};
            if (shared == 1) {
                // segments leaving a common point must not fold onto each other
                Vec2 da = (A.a == B.a || A.a == B.b) ? r : Vec2{-r[0], -r[1]};
                Vec2 db = (B.a == A.a || B.a == A.b) ? sv : Vec2{-sv[0], -sv[1]};
                if (std::fabs(cross2(da, db)) <= tol * (lr + ls) && da[0] * db[0] + da[1] * db[1] > 0) throw Degenerate{};
                continue;
            }
            const double den = cross2(r, sv);
            const Vec2 w = sub2(B.p, A.p);
            if (std::fabs(den) <= tol * (lr + ls)) {
                // parallel: degenerate only if they overlap on a common line
                if (std::fabs(cross2(w, r)) / lr <= tol) {
                    double t0 = (w[0] * r[0] + w[1] * r[1]) / (lr * lr);
                    double t1 = t0 + (sv[0] * r[0] + sv[1] * r[1]) / (lr * lr);
                    if (std::max(t0, t1) >= -tol / lr && std::min(t0, t1) <= 1 + tol / lr) throw Degenerate{};
                }
                continue;
            }
            const double t = cross2(w, sv) / den, u = cross2(w, r) / den;
            const double et = tol / lr, eu = tol / ls;
            if (t < -et || t > 1 + et || u < -eu || u > 1 + eu) continue;
            if (t < et || t > 1 - et || u < eu || u > 1 - eu) throw Degenerate{};
            const double za = A.zp + t * (A.zq - A.zp), zb = B.zp + u * (B.zq - B.zp);
            if (std::fabs(za - zb) <= tol) throw Degenerate{};
            CrossingHit h;
            const bool a_over = za > zb;
            h.under = static_cast<int>(a_over ? j : i);
            h.over = static_cast<int>(a_over ? i : j);
            h.tu = a_over ? u : t;
            h.to = a_over ? t : u;
            h.at = {A.p[0] + t * r[0], A.p[1] + t * r[1]};
            const Vec2 du = a_over ? sv : r, dov = a_over ? r : sv;
            h.over_enters_at_1 = cross2(du, dov) > 0;
            hits.push_back(h);
        }
    for (size_t i = 0; i < hits.size(); ++i)
        for (size_t j = i + 1; j < hits.size(); ++j)
            if (len2(sub2(hits[i].at, hits[j].at)) <= tol) throw Degenerate{};

    const int nv = static_cast<int>(vertex_of.size());
    // events along each segment: (t, node, arrive slot, leave slot)
    struct Event {
        double t;
        int node, arrive, leave;
    };
    std::vector<std::vector<Event>> on_seg(segs.size());
    for (size_t k = 0; k < hits.size(); ++k) {
        const int node = nv + static_cast<int>(k);
        const auto& h = hits[k];
        on_seg[h.under].push_back({h.tu, node, 0, 2});
        if (h.over_enters_at_1)
            on_seg[h.over].push_back({h.to, node, 1, 3});
        else
            on_seg[h.over].push_back({h.to, node, 3, 1});
    }
    for (auto& v : on_seg) std::sort(v.begin(), v.end(), [](const Event& a, const Event& b) { return a.t < b.t; });

    // vertex slot layout: counterclockwise from the bond
    struct VSlots {
        int bond = 0, in = 0, out = 0;
    };
    std::map<int, VSlots> vslots;  // by gid
    for (const auto& [g, v] : vertex_of) {
        // find chain neighbours
        int c = 0, r = 0;
        for (size_t cc = 0; cc < gid.size(); ++cc)
            for (size_t rr = 0; rr < gid[cc].size(); ++rr)
                if (gid[cc][rr] == g) {
                    c = static_cast<int>(cc);
                    r = static_cast<int>(rr);
                }
        const int n = static_cast<int>(gid[c].size());
        const int prev = gid[c][(r + n - 1) % n], next = gid[c][(r + 1) % n];
        auto angle = [&](int other) {
            Vec2 dv = sub2(pt[other], pt[g]);
            return std::atan2(dv[1], dv[0]);
        };
        const double ab = angle(partner[g]);
        auto rel = [&](double a) {
            double x = a - ab;
            while (x < 0) x += 2 * M_PI;
            while (x >= 2 * M_PI) x -= 2 * M_PI;
            return x;
        };
        const double ain = rel(angle(prev)), aout = rel(angle(next));
        if (std::fabs(ain - aout) < 1e-12 || ain < 1e-12 || aout < 1e-12) throw Degenerate{};
        vslots[g] = ain < aout ? VSlots{0, 1, 2} : VSlots{0, 2, 1};
    }

    BondedDiagram dgm;
    std::map<int, Crossing> crossings;
    std::map<int, BondVertex> vertices;
    for (int k = 0; k < static_cast<int>(hits.size()); ++k) crossings[nv + k].id = nv + k;
    for (const auto& [g, v] : vertex_of) vertices[v].id = v;
    auto attach = [&](int node, int slot, int edge, bool out) {
        if (node < nv)
            vertices[node].incident[slot] = {edge, out};
        else
            crossings[node].incident[slot] = {edge, out};
    };
    int next_edge = 0;
    auto walk = [&](const std::vector<Event>& ev, bool cyclic, EdgeKind kind) {
        if (ev.empty()) {
            dgm.edges.push_back({next_edge++, kind, 0});
            return;
        }
        const int m = static_cast<int>(ev.size());
        for (int i = 0; i < (cyclic ? m : m - 1); ++i) {
            const int e = next_edge++;
            dgm.edges.push_back({e, kind, 0});
            attach(ev[i].node, ev[i].leave, e, true);
            const Event& nx = ev[(i + 1) % m];
            attach(nx.node, nx.arrive, e, false);
        }
    };
    for (size_t c = 0; c < s.chains.size(); ++c) {
        std::vector<Event> ev;
        for (int i = 0; i < static_cast<int>(gid[c].size()); ++i) {
            const int g = gid[c][i];
            if (vertex_of.count(g)) ev.push_back({0, vertex_of[g], vslots[g].in, vslots[g].out});
            int sidx = 0;
            for (size_t k = 0; k < static_cast<size_t>(first_bond_seg); ++k)
                if (segs[k].owner == static_cast<int>(c) && segs[k].index == i) sidx = static_cast<int>(k);
            for (const auto& e : on_seg[sidx]) ev.push_back(e);
        }
        walk(ev, true, EdgeKind::Chain);
    }
    for (size_t k = first_bond_seg; k < segs.size(); ++k) {
        std::vector<Event> ev;
        ev.push_back({0, vertex_of[segs[k].a], -1, vslots[segs[k].a].bond});
        for (const auto& e : on_seg[k]) ev.push_back(e);
        ev.push_back({1, vertex_of[segs[k].b], vslots[segs[k].b].bond, -1});
        walk(ev, false, EdgeKind::Bond);
    }
    for (auto& [id, c] : crossings) dgm.crossings.push_back(c);
    for (auto& [id, v] : vertices) dgm.bond_vertices.push_back(v);
    dgm = canonicalize(dgm);
    auto bad = validate(dgm);
    if (!bad.empty()) throw InternalConsistencyError("projection produced an invalid diagram: " + bad.front().element + ": " + bad.front().rule);
    return dgm;
}

}  // namespace

BondedDiagram project(const PolymerStructure& input, const ProjectionConfig& cfg) {
    validate_structure(input);
    if (cfg.perturbation <= 0) throw ValidationError("perturbation must be positive");
    if (cfg.max_retries < 1) throw ValidationError("max_retries must be at least 1");
    PolymerStructure s = close_chain(input);
    double lo[3] = {1e300, 1e300, 1e300}, hi[3] = {-1e300, -1e300, -1e300};
    for (const auto& c : s.chains)
        for (const auto& p : c.points)
            for (int k = 0; k < 3; ++k) {
                lo[k] = std::min(lo[k], p[k]);
                hi[k] = std::max(hi[k], p[k]);
            }
    double scale = 0;
    for (int k = 0; k < 3; ++k) scale = std::max(scale, hi[k] - lo[k]);
    const double tol = 1e-9 * (scale > 0 ? scale : 1.0);

    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto random_unit = [&] {
        for (;;) {
            Vec3 v{gauss(rng), gauss(rng), gauss(rng)};
            if (dot(v, v) > 1e-12) return normalized(v);
        }
    };
    Vec3 base = cfg.direction ? *cfg.direction : random_unit();
    if (dot(base, base) < 1e-24) throw ValidationError("projection direction must be nonzero");
    base = normalized(base);
    Vec3 d = base;
    for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
        try {
            BondedDiagram out = project_once(s, d, tol);
            const int w = writhe(out);
            if (cfg.zero_framing && w != 0)
                for (auto& e : out.edges)
                    if (e.kind == EdgeKind::Chain) {
                        e.half_twists -= 2 * w;
                        break;
                    }
            return out;
        } catch (const Degenerate&) {
            Vec3 n = random_unit();
            const double eps = cfg.perturbation * (attempt + 1);
            d = normalized({base[0] + eps * n[0], base[1] + eps * n[1], base[2] + eps * n[2]});
        }
    }
    throw GenericityError("no generic projection found after " + std::to_string(cfg.max_retries) + " attempts");
}

}  // namespace bkb
