#pragma once

// JSON readers and writers for triangulations, curves, representations and paths.

#include "classical.hpp"
#include "hopf.hpp"
#include "qtorus.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace skein::io {

using json = nlohmann::json;

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(e.byte, "in '" + path + "': " + e.what());
    }
}

namespace detail {

[[noreturn]] inline void bad(const std::string& what) { throw ParseError(0, what); }

inline const json& field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) bad(std::string("missing field '") + name + "'");
    return j.at(name);
}

inline int as_int(const json& j, const std::string& what) {
    if (!j.is_number_integer()) bad(what + " must be an integer");
    return j.get<int>();
}

inline std::string as_string(const json& j, const std::string& what) {
    if (!j.is_string()) bad(what + " must be a string");
    return j.get<std::string>();
}

inline int face_ref(const std::vector<Triangulation::Face>& faces, const json& j) {
    if (j.is_number_integer()) {
        int f = j.get<int>();
        if (f < 0 || f >= int(faces.size())) throw DomainError("face index out of range");
        return f;
    }
    std::string id = as_string(j, "face reference");
    for (int i = 0; i < int(faces.size()); ++i) if (faces[i].id == id) return i;
    throw DomainError("unknown face '" + id + "'");
}

// a side as 0..2 or as the label written in that face
inline int side_ref(const Triangulation::Face& f, const json& j) {
    if (j.is_number_integer()) {
        int s = j.get<int>();
        if (s < 0 || s > 2) throw DomainError("side index out of range");
        return s;
    }
    std::string l = as_string(j, "side reference");
    for (int s = 0; s < 3; ++s) if (f.labels[s] == l) return s;
    throw DomainError("face '" + f.id + "' has no side '" + l + "'");
}

inline std::vector<int> states(const json& j) {
    if (j.is_string()) return parse_states(j.get<std::string>());
    if (!j.is_array()) bad("states must be a string or an array");
    std::vector<int> r;
    for (auto& x : j) {
        auto s = parse_states(as_string(x, "state"));
        if (s.size() != 1) bad("each state is '+' or '-'");
        r.push_back(s[0]);
    }
    return r;
}

} // namespace detail

// {faces: [{id, sides: [s0, s1, s2]}], gluings: [[f, s, f', s']], boundary: [[f, s], ...]}
inline Triangulation triangulation_from_json(const json& j) {
    using namespace detail;
    std::vector<Triangulation::Face> faces;
    for (auto& f : field(j, "faces")) {
        Triangulation::Face face;
        face.id = f.contains("id") ? (f["id"].is_string() ? f["id"].get<std::string>() : f["id"].dump()) : "F" + std::to_string(faces.size());
        const json& sides = field(f, "sides");
        if (!sides.is_array() || sides.size() != 3) bad("a face has three sides");
        for (int s = 0; s < 3; ++s) face.labels[s] = sides[s].is_null() ? "" : as_string(sides[s], "side label");
        faces.push_back(face);
    }
    std::vector<std::pair<SideRef, SideRef>> gl;
    if (j.contains("gluings"))
        for (auto& g : j["gluings"]) {
            if (!g.is_array() || g.size() != 4) bad("a gluing is [face, side, face, side]");
            int f0 = face_ref(faces, g[0]), f1 = face_ref(faces, g[2]);
            gl.push_back({{f0, side_ref(faces[f0], g[1])}, {f1, side_ref(faces[f1], g[3])}});
        }
    std::optional<std::vector<SideRef>> bnd;
    if (j.contains("boundary")) {
        bnd.emplace();
        for (auto& b : j["boundary"]) {
            if (!b.is_array() || b.size() != 2) bad("a boundary entry is [face, side]");
            int f = face_ref(faces, b[0]);
            bnd->push_back({f, side_ref(faces[f], b[1])});
        }
    }
    return Triangulation(std::move(faces), std::move(gl), bnd);
}

// {closed, steps: [{face, enter, exit}], states: "+-", edge_orders: {...}} or
// {weights: {edge: n}} for a multicurve without boundary points
inline NormalCurve curve_from_json(const Triangulation& tri, const json& j) {
    using namespace detail;
    NormalCurve c;
    if (j.contains("weights")) {
        std::map<std::string, int> w;
        for (auto& [k, v] : j["weights"].items()) w[k] = as_int(v, "weight");
        c = curve_from_weights(tri, w);
        if (!boundary_points(tri, c).empty()) {
            auto pts = boundary_points(tri, c);
            if (!j.contains("states")) throw DomainError("a multicurve with boundary points needs states");
            auto st = states(j["states"]);
            if (st.size() != pts.size()) throw DomainError("one state per boundary point is required");
            for (size_t i = 0; i < pts.size(); ++i) c.end_states[{pts[i].side, pts[i].pos}] = st[i];
        }
    } else {
        bool closed = j.contains("closed") && j["closed"].get<bool>();
        std::vector<CurveStep> steps;
        for (auto& s : field(j, "steps")) {
            int f = face_ref(tri.faces(), field(s, "face"));
            steps.push_back({f, side_ref(tri.faces()[f], field(s, "enter")), side_ref(tri.faces()[f], field(s, "exit"))});
        }
        std::vector<int> st;
        if (j.contains("states")) st = states(j["states"]);
        c = curve_from_steps(tri, steps, closed, st);
    }
    // crossing orders along edges are fixed by normal position; accept them only
    // when they list one id per crossing
    if (j.contains("edge_orders"))
        for (auto& [name, ids] : j["edge_orders"].items()) {
            int e = tri.edge_index(name);
            if (!ids.is_array() || int(ids.size()) != c.side_weight(tri.edges()[e].first))
                throw DomainError("edge order for '" + name + "' does not list every crossing once");
        }
    return c;
}

// {generators: {name: [[p, q], [r, s]]}} with rationals as strings or integers
inline GroupoidRep rep_from_json(const json& j) {
    using namespace detail;
    GroupoidRep rep;
    for (auto& [name, m] : field(j, "generators").items()) {
        if (!m.is_array() || m.size() != 2 || !m[0].is_array() || !m[1].is_array() || m[0].size() != 2 || m[1].size() != 2)
            bad("generator '" + name + "' must be a 2x2 matrix");
        auto entry = [&](const json& x) {
            if (x.is_number_integer()) return Rational(x.get<long long>());
            return parse_rational(as_string(x, "matrix entry"));
        };
        rep.set(name, SL2Matrix(entry(m[0][0]), entry(m[0][1]), entry(m[1][0]), entry(m[1][1])));
    }
    return rep;
}

// {word: [...], states: "+-", closed: bool}; the first state is the start
inline StatedPath path_from_json(const json& j) {
    using namespace detail;
    StatedPath p;
    for (auto& t : field(j, "word")) p.word.push_back(as_string(t, "word entry"));
    p.closed = j.contains("closed") && j["closed"].get<bool>();
    if (j.contains("reversed")) p.reversed = j["reversed"].get<bool>();
    if (!p.closed) {
        auto st = states(field(j, "states"));
        if (st.size() != 2) bad("an open path has two states");
        p.start_state = st[0];
        p.end_state = st[1];
    } else if (j.contains("states") && !states(j["states"]).empty()) {
        throw DomainError("closed paths carry no states");
    }
    return p;
}

// ---- output

inline json to_json(const HalfLaurent& c) {
    json t = json::array();
    for (auto& [e, x] : c.terms()) t.push_back({{"v", e}, {"coeff", x.str()}});
    return t;
}

inline json to_json(const OqElement& x) {
    json terms = json::array();
    for (auto& [m, c] : x.terms())
        terms.push_back({{"monomial", m.is_one() ? "1" : m.to_string()}, {"h", m.h}, {"letter", m.letter == Letter::B ? "b" : m.letter == Letter::C ? "c" : ""},
                         {"k", m.k}, {"l", m.l}, {"coeff", c.to_string()}});
    return {{"text", x.to_qstring()}, {"terms", terms}};
}

inline json to_json(const OqTensor& x) {
    json terms = json::array();
    for (auto& [k, c] : x.terms()) {
        json legs = json::array();
        for (auto& m : k) legs.push_back(m.is_one() ? "1" : m.to_string());
        terms.push_back({{"legs", legs}, {"coeff", c.to_string()}});
    }
    return {{"arity", x.arity()}, {"terms", terms}};
}

inline json to_json(const QTElement& x) {
    json terms = json::array();
    for (auto& [k, c] : x.terms()) terms.push_back({{"exponent", k}, {"coeff", c.to_string()}});
    return {{"generators", x.torus()->names()}, {"text", x.to_qstring()}, {"terms", terms}};
}

inline json to_json(const SL2Matrix& m) {
    return json::array({json::array({m(0, 0).str(), m(0, 1).str()}), json::array({m(1, 0).str(), m(1, 1).str()})});
}

} // namespace skein::io
