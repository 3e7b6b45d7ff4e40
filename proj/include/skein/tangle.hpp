#pragma once

#include "hopf.hpp"
#include "parse.hpp"
#include "rt_core.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace skein {

struct StructureError : DomainError {
    using DomainError::DomainError;
};

struct Slice {
    enum Kind { Cap, Cup, PosCross, NegCross } kind;
    int pos = 0;
    int in = 0;

    int out() const { return kind == Cap ? in - 2 : kind == Cup ? in + 2 : in; }

    void validate() const {
        if (pos < 0) throw StructureError("negative slice position");
        switch (kind) {
            case Cap:
                if (in < pos + 2) throw StructureError("cap@" + std::to_string(pos) + " needs " + std::to_string(pos + 2) + " strands, has " + std::to_string(in));
                break;
            case Cup:
                if (pos > in) throw StructureError("cup@" + std::to_string(pos) + " beyond " + std::to_string(in) + " strands");
                break;
            default:
                if (pos + 1 >= in) throw StructureError("crossing@" + std::to_string(pos) + " needs " + std::to_string(pos + 2) + " strands, has " + std::to_string(in));
        }
    }

    std::string to_string() const {
        static const char* names[] = {"cap", "cup", "x+", "x-"};
        return std::string(names[kind]) + "@" + std::to_string(pos);
    }
};

// Strand positions and states are bottom-based; slices run left to right.
struct SlicedTangle {
    int strands = 0;  // number of strands on the left edge
    std::vector<Slice> slices;
    std::vector<int> left, right;

    int out_strands() const { return slices.empty() ? strands : slices.back().out(); }

    void validate() const {
        int n = strands;
        for (auto& s : slices) {
            if (s.in != n) throw StructureError("strand chain broken at " + s.to_string());
            s.validate();
            n = s.out();
        }
        if (int(left.size()) != strands)
            throw StructureError("left states have length " + std::to_string(left.size()) + ", expected " + std::to_string(strands));
        if (int(right.size()) != n)
            throw StructureError("right states have length " + std::to_string(right.size()) + ", expected " + std::to_string(n));
        if (n > 30 || strands > 30) throw StructureError("too many strands");
        for (int x : left) if (x != Plus && x != Minus) throw StructureError("bad state");
        for (int x : right) if (x != Plus && x != Minus) throw StructureError("bad state");
    }

    // slices only; the strand count is written explicitly when there are no slices
    std::string word() const {
        std::string w;
        if (slices.empty()) return "id" + std::to_string(strands);
        for (auto& s : slices) {
            if (!w.empty()) w += ";";
            w += s.to_string();
        }
        return w;
    }

    // sub-tangle of slices [from, to) with the given boundary states
    SlicedTangle sub(size_t from, size_t to, std::vector<int> l, std::vector<int> r) const {
        SlicedTangle t;
        t.strands = from < slices.size() ? slices[from].in : out_strands();
        t.slices.assign(slices.begin() + from, slices.begin() + to);
        t.left = std::move(l);
        t.right = std::move(r);
        return t;
    }
};

inline std::vector<int> parse_states(const std::string& s) {
    std::vector<int> r;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '+') r.push_back(Plus);
        else if (s[i] == '-') r.push_back(Minus);
        else throw ParseError(i, std::string("bad state character '") + s[i] + "'");
    }
    return r;
}

inline std::string states_string(const std::vector<int>& s) {
    std::string r;
    for (int x : s) r += state_char(x);
    return r;
}

// Word grammar: slices separated by ';', each idN | cap@i | cup@i | x+@i | x-@i.
// Without a leading idN the strand count is taken from the left states.
inline SlicedTangle parse_tangle(const std::string& word, const std::string& left, const std::string& right) {
    SlicedTangle t;
    t.left = parse_states(left);
    t.right = parse_states(right);
    int n = -1;
    size_t i = 0;
    auto skip = [&] { while (i < word.size() && std::isspace((unsigned char)word[i])) ++i; };
    auto number = [&]() {
        size_t st = i;
        while (i < word.size() && std::isdigit((unsigned char)word[i])) ++i;
        if (st == i) throw ParseError(i, "expected integer");
        return std::stoi(word.substr(st, i - st));
    };
    skip();
    while (i < word.size()) {
        size_t p = i;
        if (word.compare(i, 2, "id") == 0) {
            i += 2;
            int k = number();
            if (n == -1) n = k;
            else if (n != k) throw StructureError("id" + std::to_string(k) + " after a slice with " + std::to_string(n) + " strands");
        } else {
            Slice s{Slice::Cap, 0, 0};
            if (word.compare(i, 3, "cap") == 0) { s.kind = Slice::Cap; i += 3; }
            else if (word.compare(i, 3, "cup") == 0) { s.kind = Slice::Cup; i += 3; }
            else if (word.compare(i, 2, "x+") == 0) { s.kind = Slice::PosCross; i += 2; }
            else if (word.compare(i, 2, "x-") == 0) { s.kind = Slice::NegCross; i += 2; }
            else throw ParseError(p, "unknown slice '" + word.substr(p, 8) + "'");
            if (i >= word.size() || word[i] != '@') throw ParseError(i, "expected '@'");
            ++i;
            s.pos = number();
            if (n == -1) n = int(t.left.size());
            s.in = n;
            s.validate();
            n = s.out();
            t.slices.push_back(s);
        }
        skip();
        if (i < word.size()) {
            if (word[i] != ';') throw ParseError(i, "expected ';'");
            ++i;
            skip();
        }
        if (t.slices.empty() && n >= 0) t.strands = n;
    }
    if (n == -1) t.strands = int(t.left.size());
    else if (!t.slices.empty()) t.strands = t.slices.front().in;
    t.validate();
    return t;
}

namespace detail {

using Mask = std::uint32_t;

inline Mask to_mask(const std::vector<int>& s) {
    Mask m = 0;
    for (size_t j = 0; j < s.size(); ++j) if (s[j] == Minus) m |= Mask(1) << j;
    return m;
}
inline std::vector<int> from_mask(Mask m, int n) {
    std::vector<int> s(n);
    for (int j = 0; j < n; ++j) s[j] = (m >> j) & 1 ? Minus : Plus;
    return s;
}
inline int bit(Mask m, int j) { return int((m >> j) & 1); }
inline Mask remove2(Mask m, int i) {
    Mask low = m & ((Mask(1) << i) - 1);
    return low | ((m >> (i + 2)) << i);
}
inline Mask insert2(Mask m, int i, int b0, int b1) {
    Mask low = m & ((Mask(1) << i) - 1);
    return low | (Mask(b0) << i) | (Mask(b1) << (i + 1)) | ((m >> i) << (i + 2));
}

using StateVec = std::map<Mask, HalfLaurent>;

inline void accumulate(StateVec& v, Mask m, const HalfLaurent& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = v.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) v.erase(it);
    }
}

// Z of one slice applied to a state vector
inline StateVec apply_slice(const Slice& s, const StateVec& in) {
    StateVec out;
    for (auto& [m, c] : in) {
        int lb = bit(m, s.pos), lt = s.kind == Slice::Cup ? 0 : bit(m, s.pos + 1);
        switch (s.kind) {
            case Slice::Cap:
                accumulate(out, remove2(m, s.pos), c * cap_value(lb, lt));
                break;
            case Slice::Cup:
                for (int b = 0; b < 2; ++b)
                    for (int t = 0; t < 2; ++t) {
                        HalfLaurent w = cup_value(b, t);
                        if (!w.is_zero()) accumulate(out, insert2(m, s.pos, b, t), c * w);
                    }
                break;
            default: {
                int sign = s.kind == Slice::PosCross ? 1 : -1;
                Mask base = remove2(m, s.pos);
                for (int b = 0; b < 2; ++b)
                    for (int t = 0; t < 2; ++t) {
                        HalfLaurent w = crossing_value(sign, lb, lt, b, t);
                        if (!w.is_zero()) accumulate(out, insert2(base, s.pos, b, t), c * w);
                    }
            }
        }
    }
    return out;
}

inline StateVec propagate(const std::vector<Slice>& slices, size_t from, Mask start) {
    StateVec v{{start, HalfLaurent(1)}};
    for (size_t k = from; k < slices.size() && !v.empty(); ++k) v = apply_slice(slices[k], v);
    return v;
}

// product of generators alpha_{l r} over through strands, top strand first
inline OqElement through_product(const std::vector<std::pair<int, int>>& strands) {
    std::string w;
    for (auto it = strands.rbegin(); it != strands.rend(); ++it) w += gen_of(it->first, it->second);
    return OqElement::word(w);
}

inline OqElement skein_rec(const std::vector<Slice>& sl, size_t from, int n, Mask left, Mask right);

// E(slice, left, eta) times Z(rest)(eta -> right), summed over eta
inline OqElement skein_rec(const std::vector<Slice>& sl, size_t from, int n, Mask left, Mask right) {
    if (from == sl.size()) {
        std::vector<std::pair<int, int>> st;
        for (int j = 0; j < n; ++j) st.emplace_back(bit(left, j), bit(right, j));
        return through_product(st);
    }
    const Slice& s = sl[from];
    if (s.kind == Slice::PosCross || s.kind == Slice::NegCross) {
        // X+ = q (id) + q^-1 (cap;cup), X- with q inverted
        int e = s.kind == Slice::PosCross ? 1 : -1;
        OqElement r = HalfLaurent::q(e) * skein_rec(sl, from + 1, n, left, right);
        std::vector<Slice> alt;
        alt.push_back(Slice{Slice::Cap, s.pos, n});
        alt.push_back(Slice{Slice::Cup, s.pos, n - 2});
        alt.insert(alt.end(), sl.begin() + from + 1, sl.end());
        r += HalfLaurent::q(-e) * skein_rec(alt, 0, n, left, right);
        return r;
    }
    OqElement r;
    int m = s.out();
    for (Mask eta = 0; eta < (Mask(1) << m); ++eta) {
        HalfLaurent z;
        {
            StateVec v = propagate(sl, from + 1, eta);
            auto it = v.find(right);
            if (it == v.end()) continue;
            z = it->second;
        }
        HalfLaurent scal;
        std::vector<std::pair<int, int>> st;
        if (s.kind == Slice::Cap) {
            scal = cap_value(bit(left, s.pos), bit(left, s.pos + 1));
            for (int j = 0; j < n; ++j) {
                if (j == s.pos || j == s.pos + 1) continue;
                st.emplace_back(bit(left, j), bit(eta, j < s.pos ? j : j - 2));
            }
        } else {
            scal = cup_value(bit(eta, s.pos), bit(eta, s.pos + 1));
            for (int j = 0; j < n; ++j) st.emplace_back(bit(left, j), bit(eta, j < s.pos ? j : j + 2));
        }
        if (scal.is_zero()) continue;
        r += (scal * z) * through_product(st);
    }
    return r;
}

} // namespace detail

// matrix entry of the Reshetikhin-Turaev operator from left to right states
inline HalfLaurent rt_evaluate(const SlicedTangle& t) {
    t.validate();
    auto v = detail::propagate(t.slices, 0, detail::to_mask(t.left));
    auto it = v.find(detail::to_mask(t.right));
    return it == v.end() ? HalfLaurent() : it->second;
}

inline OqElement skein_element(const SlicedTangle& t) {
    t.validate();
    return detail::skein_rec(t.slices, 0, t.strands, detail::to_mask(t.left), detail::to_mask(t.right));
}

// Independent evaluation: expand all crossings, trace the crossingless pieces
// as a graph, then evaluate loops, returning arcs and through strands.
inline OqElement kauffman_reduce(const SlicedTangle& t) {
    t.validate();
    std::vector<size_t> cross;
    for (size_t k = 0; k < t.slices.size(); ++k)
        if (t.slices[k].kind == Slice::PosCross || t.slices[k].kind == Slice::NegCross) cross.push_back(k);
    const int nl = t.strands, nr = t.out_strands();
    const HalfLaurent loop = -HalfLaurent::q(2) - HalfLaurent::q(-2);
    OqElement total;
    for (std::uint64_t choice = 0; choice < (std::uint64_t(1) << cross.size()); ++choice) {
        HalfLaurent weight(1);
        // node ids: 0..nl-1 left points, nl..nl+nr-1 right points, then interior
        std::vector<std::vector<int>> adj(nl + nr);
        auto fresh = [&] { adj.emplace_back(); return int(adj.size()) - 1; };
        auto link = [&](int x, int y) { adj[x].push_back(y); adj[y].push_back(x); };
        std::vector<int> cur(nl);
        for (int j = 0; j < nl; ++j) cur[j] = j;
        size_t ci = 0;
        auto do_cap = [&](int i) {
            link(cur[i], cur[i + 1]);
            cur.erase(cur.begin() + i, cur.begin() + i + 2);
        };
        auto do_cup = [&](int i) {
            int x = fresh(), y = fresh();
            link(x, y);
            cur.insert(cur.begin() + i, {x, y});
        };
        for (auto& s : t.slices) {
            switch (s.kind) {
                case Slice::Cap: do_cap(s.pos); break;
                case Slice::Cup: do_cup(s.pos); break;
                default: {
                    bool smooth = (choice >> ci++) & 1;  // 0: identity resolution
                    int e = s.kind == Slice::PosCross ? 1 : -1;
                    if (!smooth) weight *= HalfLaurent::q(e);
                    else {
                        weight *= HalfLaurent::q(-e);
                        do_cap(s.pos);
                        do_cup(s.pos);
                    }
                }
            }
        }
        for (int j = 0; j < nr; ++j) link(cur[j], nl + j);

        std::vector<char> seen(adj.size(), 0);
        std::vector<int> mate(nl + nr, -1);
        for (int st = 0; st < nl + nr; ++st) {
            if (seen[st]) continue;
            int prev = -1, x = st;
            seen[x] = 1;
            for (;;) {
                int nxt = -1;
                for (int y : adj[x]) if (y != prev) { nxt = y; break; }
                if (nxt < 0) break;
                prev = x;
                x = nxt;
                seen[x] = 1;
                if (x < nl + nr) break;
            }
            mate[st] = x;
            mate[x] = st;
        }
        int loops = 0;
        for (size_t x = nl + nr; x < adj.size(); ++x) {
            if (seen[x]) continue;
            ++loops;
            std::vector<int> stack{int(x)};
            seen[x] = 1;
            while (!stack.empty()) {
                int y = stack.back();
                stack.pop_back();
                for (int z : adj[y]) if (!seen[z]) { seen[z] = 1; stack.push_back(z); }
            }
        }
        for (int k = 0; k < loops; ++k) weight *= loop;

        std::vector<std::pair<int, int>> through;
        for (int j = 0; j < nl && !weight.is_zero(); ++j) {
            int m = mate[j];
            if (m >= nl) through.emplace_back(t.left[j], t.right[m - nl]);
            else if (m > j) weight *= cap_value(t.left[j], t.left[m]);
        }
        for (int j = 0; j < nr && !weight.is_zero(); ++j) {
            int m = mate[nl + j] - nl;
            if (m > j) weight *= cup_value(t.right[j], t.right[m]);
        }
        if (weight.is_zero()) continue;
        total += weight * detail::through_product(through);
    }
    return total;
}

// ---- Temperley-Lieb algebra

// Points 0..n-1 are the left edge, n..2n-1 the right edge, both bottom to top.
struct TLDiagram {
    int n = 0;
    std::vector<int> partner;

    static TLDiagram identity(int n) {
        TLDiagram d{n, std::vector<int>(2 * n)};
        for (int j = 0; j < n; ++j) { d.partner[j] = n + j; d.partner[n + j] = j; }
        return d;
    }
    // e_i joins strands i-1 and i on each side (1 <= i < n)
    static TLDiagram e(int n, int i) {
        if (i < 1 || i >= n) throw DomainError("e_i needs 1 <= i < n");
        TLDiagram d = identity(n);
        int a = i - 1, b = i;
        d.partner[a] = b; d.partner[b] = a;
        d.partner[n + a] = n + b; d.partner[n + b] = n + a;
        return d;
    }

    bool is_identity() const { return *this == identity(n); }

    // add a straight strand on top
    TLDiagram with_top_strand() const {
        TLDiagram d{n + 1, std::vector<int>(2 * n + 2)};
        auto re = [&](int p) { return p < n ? p : p + 1; };
        for (int p = 0; p < 2 * n; ++p) d.partner[re(p)] = re(partner[p]);
        d.partner[n] = 2 * n + 1;
        d.partner[2 * n + 1] = n;
        return d;
    }

    bool planar() const {
        // cyclic order: left bottom->top, then right top->bottom
        std::vector<int> pos(2 * n);
        for (int j = 0; j < n; ++j) { pos[j] = j; pos[n + j] = 2 * n - 1 - j; }
        for (int x = 0; x < 2 * n; ++x)
            for (int y = 0; y < 2 * n; ++y) {
                int a = pos[x], b = pos[partner[x]], c = pos[y], d = pos[partner[y]];
                if (a > b) std::swap(a, b);
                if (c > d) std::swap(c, d);
                if (a < c && c < b && b < d) return false;
            }
        return true;
    }

    friend bool operator==(const TLDiagram& x, const TLDiagram& y) { return x.n == y.n && x.partner == y.partner; }
    friend bool operator<(const TLDiagram& x, const TLDiagram& y) {
        return std::tie(x.n, x.partner) < std::tie(y.n, y.partner);
    }

    std::string to_string() const {
        std::string s = "{";
        auto name = [&](int p) { return (p < n ? "L" : "R") + std::to_string(p < n ? p : p - n); };
        bool first = true;
        for (int p = 0; p < 2 * n; ++p) {
            if (partner[p] < p) continue;
            if (!first) s += ",";
            first = false;
            s += name(p) + "-" + name(partner[p]);
        }
        return s + "}";
    }
};

// x placed to the left of y; returns the glued diagram and the loop count
inline std::pair<TLDiagram, int> tl_compose(const TLDiagram& x, const TLDiagram& y) {
    if (x.n != y.n) throw DomainError("TL strand count mismatch");
    const int n = x.n;
    TLDiagram r{n, std::vector<int>(2 * n)};
    std::vector<char> mid(n, 0);
    // walk from an outer point until reaching another outer point
    auto walk = [&](bool in_x, int p) {
        for (;;) {
            if (in_x) {
                int m = x.partner[p];
                if (m < n) return m;
                mid[m - n] = 1;
                in_x = false;
                p = m - n;
            } else {
                int m = y.partner[p];
                if (m >= n) return n + (m - n);
                mid[m] = 1;
                in_x = true;
                p = n + m;
            }
        }
    };
    for (int j = 0; j < n; ++j) {
        r.partner[j] = walk(true, j);
        r.partner[n + j] = walk(false, n + j);
    }
    int loops = 0;
    for (int j = 0; j < n; ++j) {
        if (mid[j]) continue;
        ++loops;
        int p = j;  // middle point j, trace through x then y
        do {
            mid[p] = 1;
            int m = y.partner[p];  // y's left point p
            int back = x.partner[n + m];
            p = back - n;
            mid[m] = 1;
        } while (!mid[p]);
    }
    return {r, loops};
}

class TLElement {
public:
    using Map = std::map<TLDiagram, RatFunc>;

    explicit TLElement(int n = 0) : n_(n) {}
    static TLElement diagram(const TLDiagram& d, const RatFunc& c = RatFunc(1)) {
        TLElement r(d.n);
        r.add(d, c);
        return r;
    }
    static TLElement one(int n) { return diagram(TLDiagram::identity(n)); }
    static TLElement e(int n, int i) { return diagram(TLDiagram::e(n, i)); }

    int n() const { return n_; }
    const Map& terms() const& { return t_; }
    const Map& terms() const&& = delete;  // would dangle in a range-for
    bool is_zero() const { return t_.empty(); }

    void add(const TLDiagram& d, const RatFunc& c) {
        if (c.is_zero()) return;
        if (d.n != n_) throw DomainError("TL strand count mismatch");
        auto [it, fresh] = t_.emplace(d, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    TLElement& operator+=(const TLElement& o) { for (auto& [d, c] : o.t_) add(d, c); return *this; }
    friend TLElement operator+(TLElement x, const TLElement& y) { return x += y; }
    friend TLElement operator-(TLElement x, const TLElement& y) { for (auto& [d, c] : y.t_) x.add(d, -c); return x; }
    friend TLElement operator*(const RatFunc& s, const TLElement& x) {
        TLElement r(x.n_);
        for (auto& [d, c] : x.t_) r.add(d, s * c);
        return r;
    }
    friend bool operator==(const TLElement& x, const TLElement& y) { return x.n_ == y.n_ && x.t_ == y.t_; }

    // coefficient of the identity diagram
    RatFunc epsilon() const {
        auto it = t_.find(TLDiagram::identity(n_));
        return it == t_.end() ? RatFunc() : it->second;
    }

    TLElement with_top_strand() const {
        TLElement r(n_ + 1);
        for (auto& [d, c] : t_) r.add(d.with_top_strand(), c);
        return r;
    }

    std::string to_string() const {
        if (t_.empty()) return "0";
        std::string s;
        for (auto& [d, c] : t_) {
            if (!s.empty()) s += " + ";
            s += "(" + c.to_qstring() + ")*" + (d.is_identity() ? std::string("1") : d.to_string());
        }
        return s;
    }

private:
    int n_;
    Map t_;
};

inline TLElement tl_product(const TLElement& x, const TLElement& y) {
    if (x.n() != y.n()) throw DomainError("TL strand count mismatch");
    const RatFunc loop(-HalfLaurent::q(2) - HalfLaurent::q(-2));
    TLElement r(x.n());
    for (auto& [dx, cx] : x.terms())
        for (auto& [dy, cy] : y.terms()) {
            auto [d, loops] = tl_compose(dx, dy);
            RatFunc c = cx * cy;
            for (int k = 0; k < loops; ++k) c *= loop;
            r.add(d, c);
        }
    return r;
}
inline TLElement operator*(const TLElement& x, const TLElement& y) { return tl_product(x, y); }

// all crossingless matchings; there are Catalan(n) of them
inline std::vector<TLDiagram> tl_basis(int n) {
    using Pairs = std::vector<std::pair<int, int>>;
    // non-crossing matchings of points listed in cyclic order
    std::function<std::vector<Pairs>(const std::vector<int>&)> gather = [&](const std::vector<int>& pts) {
        std::vector<Pairs> res;
        if (pts.empty()) { res.emplace_back(); return res; }
        for (size_t m = 1; m < pts.size(); m += 2) {
            auto in = gather(std::vector<int>(pts.begin() + 1, pts.begin() + m));
            auto out = gather(std::vector<int>(pts.begin() + m + 1, pts.end()));
            for (auto& x : in)
                for (auto& y : out) {
                    Pairs c{{pts[0], pts[m]}};
                    c.insert(c.end(), x.begin(), x.end());
                    c.insert(c.end(), y.begin(), y.end());
                    res.push_back(std::move(c));
                }
        }
        return res;
    };
    std::vector<int> cyc(2 * n);
    for (int j = 0; j < n; ++j) { cyc[j] = j; cyc[2 * n - 1 - j] = n + j; }
    std::vector<TLDiagram> out;
    for (auto& ps : gather(cyc)) {
        TLDiagram d{n, std::vector<int>(2 * n)};
        for (auto [a, b] : ps) { d.partner[a] = b; d.partner[b] = a; }
        out.push_back(std::move(d));
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline TLElement jones_wenzl(int n) {
    if (n < 1) throw DomainError("jones_wenzl needs n >= 1");
    TLElement jw = TLElement::one(1);
    for (int k = 2; k <= n; ++k) {
        TLElement p = jw.with_top_strand();
        RatFunc coef(q_int(k - 1), q_int(k));
        jw = p + coef * (p * TLElement::e(k, k - 1) * p);
    }
    return jw;
}

// A crossingless diagram as slices: caps for left returns, then cups for right returns.
inline SlicedTangle tl_to_tangle(const TLDiagram& d, std::vector<int> left, std::vector<int> right) {
    const int n = d.n;
    SlicedTangle t;
    t.strands = n;
    t.left = std::move(left);
    t.right = std::move(right);
    auto reduce = [&](std::vector<int> live) {
        // repeatedly remove innermost returning arcs; returns positions used
        std::vector<int> ps;
        for (bool again = true; again;) {
            again = false;
            for (size_t i = 0; i + 1 < live.size(); ++i) {
                if (d.partner[live[i]] == live[i + 1]) {
                    ps.push_back(int(i));
                    live.erase(live.begin() + i, live.begin() + i + 2);
                    again = true;
                    break;
                }
            }
        }
        return std::pair{ps, int(live.size())};
    };
    std::vector<int> L(n), R(n);
    for (int j = 0; j < n; ++j) { L[j] = j; R[j] = n + j; }
    auto [caps, through] = reduce(L);
    auto [cups, through2] = reduce(R);
    if (through != through2) throw DomainError("TL diagram is not planar");
    int m = n;
    for (int p : caps) { t.slices.push_back(Slice{Slice::Cap, p, m}); m -= 2; }
    for (auto it = cups.rbegin(); it != cups.rend(); ++it) { t.slices.push_back(Slice{Slice::Cup, *it, m}); m += 2; }
    return t;
}

inline HalfLaurent laurent_lcm(const HalfLaurent& x, const HalfLaurent& y) {
    int sx, sy;
    auto dx = poly::from_laurent(x, sx), dy = poly::from_laurent(y, sy);
    auto g = poly::gcd(dx, dy);
    return divexact(x * y, poly::to_laurent(g, 0));
}

// A stated TL element as numerator / common denominator.
struct StatedTL {
    HalfLaurent den;
    OqElement num;
};

inline StatedTL stated_tl(const TLElement& x, const std::vector<int>& left, const std::vector<int>& right) {
    HalfLaurent den(1);
    for (auto& [d, c] : x.terms()) den = laurent_lcm(den, c.den());
    OqElement num;
    for (auto& [d, c] : x.terms()) {
        HalfLaurent f = c.num() * divexact(den, c.den());
        num += f * skein_element(tl_to_tangle(d, left, right));
    }
    return {den, num};
}

} // namespace skein
