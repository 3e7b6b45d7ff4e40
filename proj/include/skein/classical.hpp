#pragma once

#include "tangle.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace skein {

using Rational = boost::multiprecision::cpp_rational;

// 2x2 rational matrix of determinant one
class SL2Matrix {
public:
    SL2Matrix() : m_{{{1, 0}, {0, 1}}} {}
    SL2Matrix(Rational a, Rational b, Rational c, Rational d) : m_{{{a, b}, {c, d}}} {
        if (a * d - b * c != 1) throw DomainError("matrix does not have determinant 1");
    }

    const Rational& operator()(int i, int j) const { return m_[i][j]; }
    Rational trace() const { return m_[0][0] + m_[1][1]; }

    SL2Matrix inverse() const { return raw(m_[1][1], -m_[0][1], -m_[1][0], m_[0][0]); }
    SL2Matrix operator-() const { return raw(-m_[0][0], -m_[0][1], -m_[1][0], -m_[1][1]); }
    friend SL2Matrix operator*(const SL2Matrix& x, const SL2Matrix& y) {
        SL2Matrix r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.m_[i][j] = x.m_[i][0] * y.m_[0][j] + x.m_[i][1] * y.m_[1][j];
        return r;
    }
    friend bool operator==(const SL2Matrix& x, const SL2Matrix& y) { return x.m_ == y.m_; }

    std::string to_string() const {
        return "[[" + m_[0][0].str() + "," + m_[0][1].str() + "],[" + m_[1][0].str() + "," + m_[1][1].str() + "]]";
    }

    static SL2Matrix identity() { return SL2Matrix(); }
    // the half fiber sqrt(O), whose square is the full fiber O = -Id
    static SL2Matrix half_fiber() { return raw(0, -1, 1, 0); }

private:
    std::array<std::array<Rational, 2>, 2> m_;
    static SL2Matrix raw(Rational a, Rational b, Rational c, Rational d) {
        SL2Matrix r;
        r.m_ = {{{a, b}, {c, d}}};
        return r;
    }
};

// Values of a twisted bundle on named generator paths. The fiber names are built in:
// "sqrtO" is the half fiber and "O" the full fiber.
class GroupoidRep {
public:
    GroupoidRep() = default;
    explicit GroupoidRep(std::map<std::string, SL2Matrix> gens) {
        for (auto& [n, m] : gens) set(n, m);
    }

    void set(const std::string& name, const SL2Matrix& m) {
        if (name.empty() || name[0] == '~' || name == "|" || name.find("^") != std::string::npos)
            throw DomainError("bad generator name '" + name + "'");
        if (name == "sqrtO" && !(m == SL2Matrix::half_fiber())) throw DomainError("sqrtO must be [[0,-1],[1,0]]");
        if (name == "O" && !(m == -SL2Matrix::identity())) throw DomainError("O must be -Id");
        gens_[name] = m;
    }

    SL2Matrix get(const std::string& name) const {
        if (name == "sqrtO") return SL2Matrix::half_fiber();
        if (name == "O") return -SL2Matrix::identity();
        auto it = gens_.find(name);
        if (it == gens_.end()) throw DomainError("unknown generator '" + name + "'");
        return it->second;
    }
    const std::map<std::string, SL2Matrix>& generators() const { return gens_; }

private:
    std::map<std::string, SL2Matrix> gens_;
};

// A path as its holonomy word in traversal order. Tokens: a generator name, "g^-1"
// for its groupoid inverse, "~g" for the good lift of the reversed arc, and "|"
// for a crossing with the cut arc. `reversed` marks the good lift of the whole
// path read backwards.
struct StatedPath {
    std::vector<std::string> word;
    int start_state = Plus;
    int end_state = Plus;
    bool closed = false;
    bool reversed = false;

    // the same arc traversed from the other end
    StatedPath inverse() const {
        StatedPath r = *this;
        if (closed) {
            r.word.clear();
            for (auto it = word.rbegin(); it != word.rend(); ++it) {
                const std::string& t = *it;
                if (t.size() > 3 && t.compare(t.size() - 3, 3, "^-1") == 0) r.word.push_back(t.substr(0, t.size() - 3));
                else r.word.push_back(t + "^-1");
            }
        } else {
            r.reversed = !reversed;
            std::swap(r.start_state, r.end_state);
        }
        return r;
    }
};

// ordered product, later steps on the left: word [g1, g2] holonomy M(g2) M(g1)
inline SL2Matrix holonomy(const GroupoidRep& rep, const StatedPath& p) {
    SL2Matrix h;
    for (auto& t : p.word) {
        if (t == "|") {
            h = SL2Matrix::half_fiber().inverse() * h;
            continue;
        }
        SL2Matrix m;
        if (!t.empty() && t[0] == '~') m = -rep.get(t.substr(1)).inverse();
        else if (t.size() > 3 && t.compare(t.size() - 3, 3, "^-1") == 0) m = rep.get(t.substr(0, t.size() - 3)).inverse();
        else m = rep.get(t);
        h = m * h;
    }
    // good lift of the reversed arc: rho(reversed) = -rho(arc)^-1
    if (p.reversed) h = -h.inverse();
    return h;
}

// trace table: row = end state, column = start state, i.e. sqrt(O)^-1 rho(path)
inline std::array<std::array<Rational, 2>, 2> trace_table(const SL2Matrix& h) {
    SL2Matrix t = SL2Matrix::half_fiber().inverse() * h;
    return {{{t(0, 0), t(0, 1)}, {t(1, 0), t(1, 1)}}};
}

// det(eta | H eps) with + = e1, - = e2
inline Rational trace_arc(const GroupoidRep& rep, const StatedPath& p) {
    if (p.closed) throw DomainError("trace_arc needs an open path");
    return trace_table(holonomy(rep, p))[p.end_state][p.start_state];
}

inline Rational trace_loop(const GroupoidRep& rep, const StatedPath& p) {
    if (!p.closed) throw DomainError("trace_loop needs a closed path");
    return holonomy(rep, p).trace();
}

// Cutting formula: the word split at "|" into pieces (one or two cuts), summed
// over the states at the cut points of the product of the piece traces. Each cut
// contributes a half-fiber inverse to the uncut holonomy, so the result equals
// trace_arc of the uncut path.
inline Rational cut_check(const GroupoidRep& rep, const StatedPath& p) {
    if (p.closed) throw DomainError("cut_check needs an open path");
    if (p.reversed) throw DomainError("cut_check takes the arc in its given direction");
    std::vector<std::vector<std::string>> pieces(1);
    for (auto& t : p.word) {
        if (t == "|") pieces.emplace_back();
        else pieces.back().push_back(t);
    }
    const int cuts = int(pieces.size()) - 1;
    if (cuts < 1 || cuts > 2) throw DomainError("cut_check handles one or two crossings with the cut");
    Rational total = 0;
    for (int mask = 0; mask < (1 << cuts); ++mask) {
        std::vector<int> st{p.start_state};
        for (int i = 0; i < cuts; ++i) st.push_back((mask >> i) & 1 ? Minus : Plus);
        st.push_back(p.end_state);
        Rational prod = 1;
        for (size_t i = 0; i < pieces.size(); ++i) {
            StatedPath piece{pieces[i], st[i], st[i + 1], false, false};
            prod *= trace_arc(rep, piece);
            if (prod == 0) break;
        }
        total += prod;
    }
    return total;
}

// ---------------------------------------------------------------- bigon at v = 1

// Values of a, b, c, d on the bigon: the arc from the left edge to the right edge
// with holonomy h and states (left, right) = (+,+), (+,-), (-,+), (-,-).
inline std::map<char, Rational> bigon_dictionary(const SL2Matrix& h) {
    auto t = trace_table(h);
    return {{'a', t[Plus][Plus]}, {'b', t[Minus][Plus]}, {'c', t[Plus][Minus]}, {'d', t[Minus][Minus]}};
}

// evaluate at v = 1 with a, b, c, d sent to the given values
inline Rational classical_value(const OqElement& x, const std::map<char, Rational>& dict) {
    for (char g : {'a', 'b', 'c', 'd'})
        if (!dict.count(g)) throw DomainError(std::string("dictionary misses ") + g);
    auto pw = [](Rational b, int k) {
        Rational r = 1;
        for (int i = 0; i < k; ++i) r *= b;
        return r;
    };
    Rational s = 0;
    for (auto& [m, c] : x.terms()) {
        Int cv = c.specialize(1);
        if (cv == 0) continue;
        Rational t = Rational(cv) * pw(dict.at('a'), m.h) * pw(dict.at('d'), m.l);
        if (m.letter == Letter::B) t *= pw(dict.at('b'), m.k);
        if (m.letter == Letter::C) t *= pw(dict.at('c'), m.k);
        s += t;
    }
    return s;
}

// The algebra map at v = 1 from the bigon skein algebra to functions on SL2,
// checked on x and on the given factorization: true iff the value of x equals
// the product of the factors' values.
inline bool skein_vs_classical(const OqElement& x, const std::vector<OqElement>& factors, const std::map<char, Rational>& dict) {
    Rational p = 1;
    for (auto& f : factors) p *= classical_value(f, dict);
    return classical_value(x, dict) == p;
}

// Trace function of a stated bigon tangle at q = 1. Classically only the regular
// homotopy class of each component matters: crossings are plain transpositions,
// and every full turn of the tangent changes the good lift by the fiber O = -Id.
// An arc from the left edge to the right edge contributes its trace, a returning
// arc the v = 1 value of the trivial arc on that edge, a closed component tr(O^k).
inline Rational classical_tangle_value(const SlicedTangle& t, const SL2Matrix& h) {
    t.validate();
    auto tab = trace_table(h);
    // nodes: (0, i) left point, (1, i) right point, (2, k) cup end, (3, k) cap end;
    // ends 2k (lower) and 2k+1 (upper) of the same cup or cap are partners
    using Node = std::pair<int, int>;
    std::vector<Node> cur;
    for (int i = 0; i < t.strands; ++i) cur.push_back({0, i});
    std::map<Node, Node> seg;  // the two ends of each strand segment
    int cups = 0, caps = 0;
    for (auto& s : t.slices) {
        if (s.kind == Slice::Cup) {
            cur.insert(cur.begin() + s.pos, {Node{2, 2 * cups}, Node{2, 2 * cups + 1}});
            ++cups;
        } else if (s.kind == Slice::Cap) {
            for (int e = 0; e < 2; ++e) {
                Node end{3, 2 * caps + e};
                seg[cur[s.pos + e]] = end;
                seg[end] = cur[s.pos + e];
            }
            cur.erase(cur.begin() + s.pos, cur.begin() + s.pos + 2);
            ++caps;
        } else {
            std::swap(cur[s.pos], cur[s.pos + 1]);
        }
    }
    for (int j = 0; j < int(cur.size()); ++j) {
        seg[cur[j]] = {1, j};
        seg[{1, j}] = cur[j];
    }
    // Half turns of the tangent on passing a cap (arriving eastward) or a cup
    // (arriving westward): counterclockwise +1, clockwise -1.
    auto half_turn = [](const Node& n) {
        bool lower = n.second % 2 == 0;
        return n.first == 3 ? (lower ? 1 : -1) : (lower ? -1 : 1);
    };
    std::set<Node> seen;
    // follow segments, jumping across cups and caps, until a boundary point
    auto walk = [&](Node n, int& turns) {
        seen.insert(n);
        for (;;) {
            n = seg.at(n);
            seen.insert(n);
            if (n.first < 2) return n;
            turns += half_turn(n);
            n.second ^= 1;
            seen.insert(n);
        }
    };
    auto state_of = [&](const Node& n) { return n.first == 0 ? t.left[n.second] : t.right[n.second]; };
    auto fiber_sign = [](int full_turns) { return full_turns % 2 == 0 ? 1 : -1; };
    Rational value = 1;
    std::vector<Node> bnd;
    for (int i = 0; i < t.strands; ++i) bnd.push_back({0, i});
    for (int j = 0; j < int(cur.size()); ++j) bnd.push_back({1, j});
    for (auto& b : bnd) {
        if (seen.count(b)) continue;
        int turns = 0;
        Node e = walk(b, turns);
        if (b.first != e.first) {
            Node l = b.first == 0 ? b : e, r = b.first == 0 ? e : b;
            value *= fiber_sign(turns / 2) * tab[state_of(r)][state_of(l)];
        } else {
            Node lo = b.second < e.second ? b : e, hi = b.second < e.second ? e : b;
            // the standard returning arc turns once counterclockwise on the left
            // edge, once clockwise on the right, when walked from its lower end
            int standard = (b.first == 0) == (b == lo) ? 1 : -1;
            HalfLaurent c = b.first == 0 ? cap_value(state_of(lo), state_of(hi)) : cup_value(state_of(lo), state_of(hi));
            value *= fiber_sign((turns - standard) / 2) * Rational(c.specialize(1));
        }
        if (value == 0) return value;
    }
    // what is left consists of closed components
    for (auto& [n, x] : seg) {
        if (seen.count(n)) continue;
        int turns = 0;
        Node k = n;
        while (!seen.count(k)) {
            seen.insert(k);
            k = seg.at(k);
            seen.insert(k);
            turns += half_turn(k);
            k.second ^= 1;
        }
        value *= 2 * fiber_sign(turns / 2);
    }
    return value;
}

// ---------------------------------------------------------------- random points

// random element of SL2(Q) as a product of elementary and diagonal matrices
inline SL2Matrix random_sl2(std::mt19937& rng, int height = 5) {
    std::uniform_int_distribution<int> num(-height, height), den(1, height);
    auto rat = [&]() { return Rational(num(rng), den(rng)); };
    auto nonzero = [&]() {
        Rational r;
        do r = rat(); while (r == 0);
        return r;
    };
    Rational s = rat(), t = rat(), u = nonzero();
    SL2Matrix up(1, s, 0, 1), low(1, 0, t, 1), diag(u, 0, 0, 1 / u);
    return up * diag * low;
}

inline Rational parse_rational(const std::string& s) {
    try {
        size_t slash = s.find('/');
        if (slash == std::string::npos) return Rational(Int(s));
        Int d(s.substr(slash + 1));
        if (d == 0) throw DomainError("zero denominator in '" + s + "'");
        return Rational(Int(s.substr(0, slash)), d);
    } catch (const DomainError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError(0, "bad rational '" + s + "'");
    }
}

} // namespace skein
