#pragma once

#include "arblink/common.hpp"
#include "arblink/tangle.hpp"

#include <json.hpp>

#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace arblink::diagram {

struct PDCrossing {
    long long over_in = 0;
    long long over_out = 0;
    long long under_in = 0;
    long long under_out = 0;
    int sign = 1;

    friend bool operator==(const PDCrossing& a, const PDCrossing& b) {
        return a.over_in == b.over_in && a.over_out == b.over_out &&
               a.under_in == b.under_in && a.under_out == b.under_out && a.sign == b.sign;
    }
};

struct PlanarDiagram {
    int n_components = 0;
    std::optional<long long> writhe;  // defined only for one-component closures
    std::vector<long long> arcs;
    std::vector<PDCrossing> crossings;
    std::vector<int> arc_component;  // derived: component id per arc

    friend bool operator==(const PlanarDiagram& a, const PlanarDiagram& b) {
        return a.n_components == b.n_components && a.writhe == b.writhe && a.arcs == b.arcs &&
               a.crossings == b.crossings;
    }
};

namespace detail {

// Crossing ports 0..3 sit in counterclockwise planar order; at creation time
// 0=SW, 1=SE, 2=NE, 3=NW.  The two strands occupy opposite ports (0-2, 1-3),
// so the strand-through map is port ^ 2.  This data never changes under
// rotation or gluing, which only permute the tangle's outer corners.
struct Crossing {
    bool over_is_02 = true;  // positive half twist: the 0-2 strand passes over
};

struct PortRef {
    int crossing = -1;
    int port = -1;
    friend bool operator==(const PortRef&, const PortRef&) = default;
};

// Open strand end at a tangle corner: either anchored at a crossing port or
// running straight to a peer corner of the same tangle.
struct Attach {
    bool is_port = false;
    PortRef port;
    int peer = -1;
};

// Corner indices: SW=0, SE=1, NE=2, NW=3 (counterclockwise).
enum : int { SW = 0, SE = 1, NE = 2, NW = 3 };

struct Net {
    std::vector<Crossing> crossings;
    std::vector<std::array<PortRef, 2>> segments;
    std::array<Attach, 4> corner;
    int free_loops = 0;
};

inline Attach attach_port(int crossing, int port) {
    Attach a;
    a.is_port = true;
    a.port = {crossing, port};
    return a;
}

inline Attach attach_peer(int corner) {
    Attach a;
    a.is_port = false;
    a.peer = corner;
    return a;
}

inline Net integral_net(long long m) {
    Net net;
    if (m == 0) {
        net.corner[SW] = attach_peer(NW);
        net.corner[NW] = attach_peer(SW);
        net.corner[SE] = attach_peer(NE);
        net.corner[NE] = attach_peer(SE);
        return net;
    }
    int k = static_cast<int>(m < 0 ? -m : m);
    net.crossings.assign(k, Crossing{m > 0});
    for (int i = 0; i + 1 < k; ++i) {
        net.segments.push_back({PortRef{i, NW}, PortRef{i + 1, SW}});
        net.segments.push_back({PortRef{i, NE}, PortRef{i + 1, SE}});
    }
    net.corner[SW] = attach_port(0, SW);
    net.corner[SE] = attach_port(0, SE);
    net.corner[NE] = attach_port(k - 1, NE);
    net.corner[NW] = attach_port(k - 1, NW);
    return net;
}

// Joins two open strand ends in `slots`, adding a segment, rethreading a
// through-strand, or closing a free loop.  Consumed slots are not looked at
// again by the caller.
template <std::size_t N>
inline void glue(std::array<Attach, N>& slots, int a, int b, Net& net) {
    Attach A = slots[a];
    Attach B = slots[b];
    if (A.is_port && B.is_port) {
        net.segments.push_back({A.port, B.port});
    } else if (A.is_port) {
        if (B.peer == a) throw Error("internal: inconsistent through-strand");
        slots[B.peer] = A;
    } else if (B.is_port) {
        if (A.peer == b) throw Error("internal: inconsistent through-strand");
        slots[A.peer] = B;
    } else if (A.peer == b) {
        // both ends of the same crossing-free strand: a closed circle
        ++net.free_loops;
    } else {
        slots[A.peer] = attach_peer(B.peer);
        slots[B.peer] = attach_peer(A.peer);
    }
}

inline Net vcomp_net(const Net& upper, const Net& lower) {
    Net net;
    net.crossings = lower.crossings;
    net.crossings.insert(net.crossings.end(), upper.crossings.begin(), upper.crossings.end());
    net.segments = lower.segments;
    const int off = static_cast<int>(lower.crossings.size());
    for (auto seg : upper.segments) {
        seg[0].crossing += off;
        seg[1].crossing += off;
        net.segments.push_back(seg);
    }
    net.free_loops = lower.free_loops + upper.free_loops;

    // slots 0..3 = lower corners, 4..7 = upper corners
    std::array<Attach, 8> slots;
    for (int c = 0; c < 4; ++c) {
        slots[c] = lower.corner[c];
        Attach u = upper.corner[c];
        if (u.is_port)
            u.port.crossing += off;
        else
            u.peer += 4;
        slots[4 + c] = u;
    }
    glue(slots, NW, 4 + SW, net);        // lower target left to upper source left
    glue(slots, NE, 4 + SE, net);        // lower target right to upper source right

    const std::array<int, 4> keep = {SW, SE, 4 + NE, 4 + NW};
    std::array<int, 8> remap;
    remap.fill(-1);
    for (int c = 0; c < 4; ++c) remap[keep[c]] = c;
    for (int c = 0; c < 4; ++c) {
        Attach a = slots[keep[c]];
        if (!a.is_port) {
            if (remap[a.peer] < 0) throw Error("internal: dangling through-strand after vcomp");
            a.peer = remap[a.peer];
        }
        net.corner[c] = a;
    }
    return net;
}

// Counterclockwise quarter turn: the corner at old position i moves to (i+1) mod 4.
inline Net rot_net(const Net& t) {
    Net net = t;
    for (int c = 0; c < 4; ++c) {
        Attach a = t.corner[c];
        if (!a.is_port) a.peer = (a.peer + 1) % 4;
        net.corner[(c + 1) % 4] = a;
    }
    return net;
}

inline Net build_net(const tangle::Word& w) {
    switch (w->kind) {
        case tangle::TangleWord::Kind::Integral: return integral_net(w->twists);
        case tangle::TangleWord::Kind::VComp: return vcomp_net(build_net(w->upper), build_net(w->lower));
        case tangle::TangleWord::Kind::Rot: return rot_net(build_net(w->inner));
    }
    throw Error("internal: unknown word node");
}

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace detail

// Traces the trace closure of a word: target corners joined to the source
// corners on the same side by disjoint arcs around the diagram.
inline PlanarDiagram closure_trace(const tangle::Word& w) {
    using namespace detail;
    Net net = build_net(w);
    glue(net.corner, NW, SW, net);
    glue(net.corner, NE, SE, net);

    const int num_cross = static_cast<int>(net.crossings.size());
    const int num_segs = static_cast<int>(net.segments.size());
    if (num_segs != 2 * num_cross) throw Error("internal: closure left open strands");

    // seg/end holding each crossing port
    std::vector<std::array<std::pair<int, int>, 4>> port_owner(num_cross, {{{-1, -1}, {-1, -1}, {-1, -1}, {-1, -1}}});
    for (int s = 0; s < num_segs; ++s)
        for (int e = 0; e < 2; ++e) {
            const PortRef& p = net.segments[s][e];
            if (port_owner[p.crossing][p.port].first != -1)
                throw Error("internal: port used twice");
            port_owner[p.crossing][p.port] = {s, e};
        }

    // Walk each closed strand once; record component ids and, at every
    // crossing port, whether the strand enters or exits there.
    enum class Dir { Unset, Enter, Exit };
    std::vector<std::array<Dir, 4>> port_dir(num_cross, {Dir::Unset, Dir::Unset, Dir::Unset, Dir::Unset});
    std::vector<int> seg_comp(num_segs, -1);
    int strand_components = 0;
    for (int s0 = 0; s0 < num_segs; ++s0) {
        if (seg_comp[s0] != -1) continue;
        const int comp = strand_components++;
        int seg = s0, from_end = 0;
        do {
            seg_comp[seg] = comp;
            const PortRef p = net.segments[seg][1 - from_end];
            const PortRef q{p.crossing, p.port ^ 2};
            port_dir[p.crossing][p.port] = Dir::Enter;
            port_dir[q.crossing][q.port] = Dir::Exit;
            auto [nseg, nend] = port_owner[q.crossing][q.port];
            seg = nseg;
            from_end = nend;
        } while (!(seg == s0 && from_end == 0));
    }

    // Arcs: maximal strand runs between under-passes; the over-strand keeps
    // its arc through a crossing.
    Dsu dsu(num_segs);
    for (int c = 0; c < num_cross; ++c) {
        const int o = net.crossings[c].over_is_02 ? 0 : 1;
        dsu.unite(port_owner[c][o].first, port_owner[c][o ^ 2].first);
    }
    std::vector<long long> seg_arc(num_segs, -1);
    std::map<int, long long> root_arc;
    long long arc_count = 0;
    std::vector<int> arc_comp;
    for (int s = 0; s < num_segs; ++s) {
        int r = dsu.find(s);
        auto it = root_arc.find(r);
        if (it == root_arc.end()) {
            root_arc.emplace(r, arc_count);
            arc_comp.push_back(seg_comp[s]);
            seg_arc[s] = arc_count++;
        } else {
            seg_arc[s] = it->second;
        }
    }

    PlanarDiagram pd;
    pd.n_components = strand_components + net.free_loops;
    long long writhe = 0;
    for (int c = 0; c < num_cross; ++c) {
        const int o1 = net.crossings[c].over_is_02 ? 0 : 1;
        const int o2 = o1 ^ 2;
        const int u1 = o1 ^ 1;
        const int u2 = u1 ^ 2;
        const auto& dir = port_dir[c];
        const int o_in = dir[o1] == Dir::Enter ? o1 : o2;
        const int o_out = o_in ^ 2;
        const int u_in = dir[u1] == Dir::Enter ? u1 : u2;
        const int u_out = u_in ^ 2;
        if (dir[o_in] != Dir::Enter || dir[o_out] != Dir::Exit || dir[u_in] != Dir::Enter ||
            dir[u_out] != Dir::Exit)
            throw Error("internal: inconsistent strand orientation at a crossing");
        PDCrossing pc;
        pc.over_in = seg_arc[port_owner[c][o_in].first];
        pc.over_out = seg_arc[port_owner[c][o_out].first];
        pc.under_in = seg_arc[port_owner[c][u_in].first];
        pc.under_out = seg_arc[port_owner[c][u_out].first];
        pc.sign = (u_out == (o_out + 1) % 4) ? 1 : -1;
        writhe += pc.sign;
        pd.crossings.push_back(pc);
    }
    for (long long a = 0; a < arc_count; ++a) pd.arcs.push_back(a);
    pd.arc_component = arc_comp;
    for (int l = 0; l < net.free_loops; ++l) {
        pd.arcs.push_back(arc_count + l);
        pd.arc_component.push_back(strand_components + l);
    }
    if (pd.n_components == 1) pd.writhe = writhe;
    return pd;
}

inline bool closure_is_knot(const tangle::Word& w) { return closure_trace(w).n_components == 1; }

inline std::string to_pd_json(const PlanarDiagram& d) {
    nlohmann::ordered_json j;
    j["n_components"] = d.n_components;
    if (d.writhe)
        j["writhe"] = *d.writhe;
    else
        j["writhe"] = nullptr;
    j["arcs"] = d.arcs;
    j["crossings"] = nlohmann::ordered_json::array();
    for (const auto& c : d.crossings) {
        nlohmann::ordered_json jc;
        jc["over_in"] = c.over_in;
        jc["over_out"] = c.over_out;
        jc["under_in"] = c.under_in;
        jc["under_out"] = c.under_out;
        jc["sign"] = c.sign;
        j["crossings"].push_back(jc);
    }
    return j.dump();
}

inline PlanarDiagram from_pd_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("invalid PD JSON: ") + e.what());
    }
    PlanarDiagram d;
    try {
        d.n_components = j.at("n_components").get<int>();
        if (!j.at("writhe").is_null()) d.writhe = j.at("writhe").get<long long>();
        d.arcs = j.at("arcs").get<std::vector<long long>>();
        for (const auto& jc : j.at("crossings")) {
            PDCrossing c;
            c.over_in = jc.at("over_in").get<long long>();
            c.over_out = jc.at("over_out").get<long long>();
            c.under_in = jc.at("under_in").get<long long>();
            c.under_out = jc.at("under_out").get<long long>();
            c.sign = jc.at("sign").get<int>();
            if (c.sign != 1 && c.sign != -1) throw SchemaError("crossing sign must be +1 or -1");
            d.crossings.push_back(c);
        }
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("PD JSON does not match schema: ") + e.what());
    }
    std::map<long long, int> arc_pos;
    for (std::size_t i = 0; i < d.arcs.size(); ++i) arc_pos[d.arcs[i]] = static_cast<int>(i);
    if (arc_pos.size() != d.arcs.size()) throw SchemaError("duplicate arc ids");
    for (const auto& c : d.crossings)
        for (long long id : {c.over_in, c.over_out, c.under_in, c.under_out})
            if (!arc_pos.count(id)) throw SchemaError("crossing refers to unknown arc id");

    // Component partition of arcs is derived: consecutive arcs of one strand
    // meet at its under-passes, and the over-arc stays within its own strand.
    detail::Dsu dsu(static_cast<int>(d.arcs.size()));
    for (const auto& c : d.crossings) {
        dsu.unite(arc_pos[c.under_in], arc_pos[c.under_out]);
        dsu.unite(arc_pos[c.over_in], arc_pos[c.over_out]);
    }
    std::map<int, int> root_comp;
    for (std::size_t i = 0; i < d.arcs.size(); ++i) {
        int r = dsu.find(static_cast<int>(i));
        auto it = root_comp.find(r);
        if (it == root_comp.end()) it = root_comp.emplace(r, static_cast<int>(root_comp.size())).first;
        d.arc_component.push_back(it->second);
    }
    return d;
}

}  // namespace arblink::diagram
