#pragma once

#include "ring.hpp"
#include "rt_core.hpp"

#include <array>
#include <compare>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace skein {

// Generators as letters: a = alpha_{++}, b = alpha_{+-}, c = alpha_{-+}, d = alpha_{--}.
inline int gen_row(char g) { return (g == 'a' || g == 'b') ? Plus : Minus; }
inline int gen_col(char g) { return (g == 'a' || g == 'c') ? Plus : Minus; }
inline char gen_of(int row, int col) {
    static const char t[2][2] = {{'a', 'b'}, {'c', 'd'}};
    return t[row][col];
}

enum class Letter : int { None = 0, B = 1, C = 2 };

struct PBWMonomial {
    int h = 0;
    Letter letter = Letter::None;
    int k = 0;
    int l = 0;

    auto operator<=>(const PBWMonomial&) const = default;

    int degree() const { return h + k + l; }
    bool is_one() const { return degree() == 0; }

    std::string word() const {
        std::string w(h, 'a');
        w.append(k, letter == Letter::B ? 'b' : 'c');
        w.append(l, 'd');
        return w;
    }

    // (left, right) weights; a:(1,1) b:(1,-1) c:(-1,1) d:(-1,-1)
    std::pair<int, int> weight() const {
        int x = h - l, y = h - l;
        if (letter == Letter::B) x += k, y -= k;
        if (letter == Letter::C) x -= k, y += k;
        return {x, y};
    }

    static PBWMonomial from_word(const std::string& w) {
        PBWMonomial m;
        size_t i = 0;
        while (i < w.size() && w[i] == 'a') ++m.h, ++i;
        if (i < w.size() && (w[i] == 'b' || w[i] == 'c')) {
            m.letter = w[i] == 'b' ? Letter::B : Letter::C;
            char x = w[i];
            while (i < w.size() && w[i] == x) ++m.k, ++i;
        }
        while (i < w.size() && w[i] == 'd') ++m.l, ++i;
        if (i != w.size()) throw DomainError("word '" + w + "' is not a PBW normal word");
        return m;
    }

    std::string to_string() const {
        std::string s;
        auto put = [&](char g, int e) {
            if (!e) return;
            if (!s.empty()) s += "*";
            s += g;
            if (e != 1) s += "^" + std::to_string(e);
        };
        put('a', h);
        put(letter == Letter::B ? 'b' : 'c', k);
        put('d', l);
        return s;
    }
};

using WordLinear = std::map<std::string, HalfLaurent>;

// Rewriting of words over {a,b,c,d}: the leftmost pair with a rule is
// replaced until no rule applies.  Results cached per word.
class Rewriter {
public:
    using Rule = std::vector<std::pair<std::string, HalfLaurent>>;

    void add(const std::string& lhs, Rule rhs) { rules_[key(lhs[0], lhs[1])] = std::move(rhs); has_[key(lhs[0], lhs[1])] = true; }

    const WordLinear& normal_form(const std::string& w) {
        auto it = cache_.find(w);
        if (it != cache_.end()) return it->second;
        WordLinear out;
        size_t i = 0;
        while (i + 1 < w.size() && !has_[key(w[i], w[i + 1])]) ++i;
        if (i + 1 >= w.size()) {
            out[w] = HalfLaurent(1);
        } else {
            for (auto& [rep, coef] : rules_[key(w[i], w[i + 1])]) {
                std::string nw = w.substr(0, i) + rep + w.substr(i + 2);
                const WordLinear& sub = normal_form(nw);
                for (auto& [sw, sc] : sub) {
                    HalfLaurent& slot = out[sw];
                    slot += coef * sc;
                }
            }
            for (auto jt = out.begin(); jt != out.end();) jt = jt->second.is_zero() ? out.erase(jt) : std::next(jt);
        }
        return cache_.emplace(w, std::move(out)).first->second;
    }

private:
    static int key(char x, char y) { return (x - 'a') * 4 + (y - 'a'); }
    std::array<Rule, 16> rules_{};
    std::array<bool, 16> has_{};
    std::unordered_map<std::string, WordLinear> cache_;
};

// PBW rules: a to the left, d to the right, bc and cb through ad.
inline Rewriter& pbw_rewriter() {
    thread_local Rewriter rw = [] {
        Rewriter r;
        auto q = [](int k) { return HalfLaurent::q(k); };
        r.add("ba", {{"ab", q(2)}});
        r.add("ca", {{"ac", q(2)}});
        r.add("da", {{"ad", q(4)}, {"", HalfLaurent(1) - q(4)}});
        r.add("db", {{"bd", q(2)}});
        r.add("dc", {{"cd", q(2)}});
        r.add("bc", {{"ad", q(2)}, {"", -q(2)}});
        r.add("cb", {{"ad", q(2)}, {"", -q(2)}});
        return r;
    }();
    return rw;
}

// Canonical-basis words c^l a^m b^n and c^l d^m b^n (order c < {a,d} < b).
inline Rewriter& canonical_rewriter() {
    thread_local Rewriter rw = [] {
        Rewriter r;
        auto q = [](int k) { return HalfLaurent::q(k); };
        r.add("ac", {{"ca", q(-2)}});
        r.add("dc", {{"cd", q(2)}});
        r.add("bc", {{"cb", HalfLaurent(1)}});
        r.add("ba", {{"ab", q(2)}});
        r.add("bd", {{"db", q(-2)}});
        r.add("ad", {{"", HalfLaurent(1)}, {"cb", q(-2)}});
        r.add("da", {{"", HalfLaurent(1)}, {"cb", q(2)}});
        return r;
    }();
    return rw;
}

class OqElement {
public:
    using Map = std::map<PBWMonomial, HalfLaurent>;

    OqElement() = default;
    OqElement(long long c) { if (c) t_[PBWMonomial{}] = HalfLaurent(c); }
    OqElement(const HalfLaurent& c) { if (!c.is_zero()) t_[PBWMonomial{}] = c; }
    static OqElement monomial(const PBWMonomial& m, const HalfLaurent& c = HalfLaurent(1)) {
        OqElement r;
        if (!c.is_zero()) r.t_[m] = c;
        return r;
    }
    static OqElement gen(char g) {
        PBWMonomial m;
        switch (g) {
            case 'a': m.h = 1; break;
            case 'b': m.letter = Letter::B; m.k = 1; break;
            case 'c': m.letter = Letter::C; m.k = 1; break;
            case 'd': m.l = 1; break;
            default: throw DomainError(std::string("unknown generator ") + g);
        }
        return monomial(m);
    }
    static OqElement from_words(const WordLinear& wl) {
        OqElement r;
        for (auto& [w, c] : wl) r.add(PBWMonomial::from_word(w), c);
        return r;
    }
    // normal form of an arbitrary word
    static OqElement word(const std::string& w) { return from_words(pbw_rewriter().normal_form(w)); }

    const Map& terms() const& { return t_; }
    const Map& terms() const&& = delete;  // would dangle in a range-for
    bool is_zero() const { return t_.empty(); }
    HalfLaurent coeff(const PBWMonomial& m) const {
        auto it = t_.find(m);
        return it == t_.end() ? HalfLaurent() : it->second;
    }

    void add(const PBWMonomial& m, const HalfLaurent& c) {
        if (c.is_zero()) return;
        auto it = t_.find(m);
        if (it == t_.end()) { t_.emplace(m, c); return; }
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }

    OqElement& operator+=(const OqElement& o) { for (auto& [m, c] : o.t_) add(m, c); return *this; }
    OqElement& operator-=(const OqElement& o) { for (auto& [m, c] : o.t_) add(m, -c); return *this; }
    friend OqElement operator+(OqElement x, const OqElement& y) { return x += y; }
    friend OqElement operator-(OqElement x, const OqElement& y) { return x -= y; }
    OqElement operator-() const { OqElement r; for (auto& [m, c] : t_) r.t_[m] = -c; return r; }
    friend OqElement operator*(const HalfLaurent& s, const OqElement& x) {
        OqElement r;
        if (s.is_zero()) return r;
        for (auto& [m, c] : x.t_) r.t_[m] = s * c;
        return r;
    }
    friend OqElement operator*(const OqElement& x, const OqElement& y);
    OqElement& operator*=(const OqElement& o) { return *this = *this * o; }
    friend bool operator==(const OqElement& x, const OqElement& y) { return x.t_ == y.t_; }
    friend bool operator!=(const OqElement& x, const OqElement& y) { return !(x == y); }
    friend bool operator<(const OqElement& x, const OqElement& y) { return x.t_ < y.t_; }

    int degree() const {
        int d = 0;
        for (auto& [m, c] : t_) d = std::max(d, m.degree());
        return d;
    }

    // ascending (h, letter, k, l), coefficients in v ascending
    std::string to_string() const { return format(false); }
    // descending order, coefficients in q when possible
    std::string to_qstring() const { return format(true); }

private:
    Map t_;

    std::string format(bool qform) const {
        if (t_.empty()) return "0";
        bool ev = true;
        for (auto& [m, c] : t_) ev = ev && c.even();
        const char* var = (qform && ev) ? "q" : "v";
        std::string s;
        auto emit = [&](const PBWMonomial& m, int e, const Int& c) {
            Int mag = abs(c);
            if (s.empty()) { if (c < 0) s += "-"; }
            else s += c < 0 ? " - " : " + ";
            std::string body;
            auto join = [&](const std::string& part) { if (!body.empty()) body += "*"; body += part; };
            if (mag != 1) join(mag.str());
            int k = (var[0] == 'q') ? e / 2 : e;
            if (k != 0) join(std::string(var) + (k == 1 ? "" : "^" + std::to_string(k)));
            if (!m.is_one()) join(m.to_string());
            if (body.empty()) body = "1";
            s += body;
        };
        if (qform) {
            for (auto it = t_.rbegin(); it != t_.rend(); ++it)
                for (auto jt = it->second.terms().rbegin(); jt != it->second.terms().rend(); ++jt)
                    emit(it->first, jt->first, jt->second);
        } else {
            for (auto& [m, c] : t_)
                for (auto& [e, cc] : c.terms()) emit(m, e, cc);
        }
        return s;
    }
};

inline std::ostream& operator<<(std::ostream& os, const OqElement& x) { return os << x.to_string(); }

namespace detail {

struct MonoPairHash {
    size_t operator()(const std::pair<PBWMonomial, PBWMonomial>& p) const {
        auto f = [](const PBWMonomial& m) {
            return size_t(m.h) * 1000003u ^ size_t(m.letter) * 7919u ^ size_t(m.k) * 131u ^ size_t(m.l);
        };
        return f(p.first) * 31 + f(p.second);
    }
};

struct MonoHash {
    size_t operator()(const PBWMonomial& m) const {
        return size_t(m.h) * 1000003u ^ size_t(m.letter) * 7919u ^ size_t(m.k) * 131u ^ size_t(m.l);
    }
};

} // namespace detail

inline const OqElement& mono_mul(const PBWMonomial& x, const PBWMonomial& y) {
    thread_local std::unordered_map<std::pair<PBWMonomial, PBWMonomial>, OqElement, detail::MonoPairHash> cache;
    auto key = std::make_pair(x, y);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, OqElement::word(x.word() + y.word())).first->second;
}

inline OqElement operator*(const OqElement& x, const OqElement& y) {
    OqElement r;
    for (auto& [mx, cx] : x.t_)
        for (auto& [my, cy] : y.t_) {
            HalfLaurent c = cx * cy;
            if (mx.is_one()) { r.add(my, c); continue; }
            if (my.is_one()) { r.add(mx, c); continue; }
            for (auto& [m, cm] : mono_mul(mx, my).t_) r.add(m, c * cm);
        }
    return r;
}

inline OqElement multiply(const OqElement& x, const OqElement& y) { return x * y; }

inline OqElement power(const OqElement& x, int n) {
    if (n < 0) throw DomainError("negative power of a non-invertible element");
    OqElement r(1);
    for (int i = 0; i < n; ++i) r = r * x;
    return r;
}

// ---- tensors: n legs, keys are tuples of PBW monomials

class OqTensor {
public:
    using Key = std::vector<PBWMonomial>;
    using Map = std::map<Key, HalfLaurent>;

    explicit OqTensor(int arity = 2) : n_(arity) {}
    static OqTensor pure(const std::vector<OqElement>& legs) {
        OqTensor r(int(legs.size()));
        r.add(Key(legs.size()), HalfLaurent(1));
        for (size_t i = 0; i < legs.size(); ++i) {
            OqTensor nr(int(legs.size()));
            for (auto& [k, c] : r.t_)
                for (auto& [m, cm] : legs[i].terms()) {
                    Key kk = k;
                    kk[i] = m;
                    nr.add(kk, c * cm);
                }
            r = std::move(nr);
        }
        return r;
    }

    int arity() const { return n_; }
    const Map& terms() const& { return t_; }
    const Map& terms() const&& = delete;  // would dangle in a range-for
    bool is_zero() const { return t_.empty(); }

    void add(const Key& k, const HalfLaurent& c) {
        if (c.is_zero()) return;
        auto it = t_.find(k);
        if (it == t_.end()) { t_.emplace(k, c); return; }
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }

    OqTensor& operator+=(const OqTensor& o) { check(o); for (auto& [k, c] : o.t_) add(k, c); return *this; }
    OqTensor& operator-=(const OqTensor& o) { check(o); for (auto& [k, c] : o.t_) add(k, -c); return *this; }
    friend OqTensor operator+(OqTensor x, const OqTensor& y) { return x += y; }
    friend OqTensor operator-(OqTensor x, const OqTensor& y) { return x -= y; }
    friend OqTensor operator*(const HalfLaurent& s, const OqTensor& x) {
        OqTensor r(x.n_);
        for (auto& [k, c] : x.t_) r.add(k, s * c);
        return r;
    }
    // componentwise product
    friend OqTensor operator*(const OqTensor& x, const OqTensor& y) {
        x.check(y);
        OqTensor r(x.n_);
        for (auto& [kx, cx] : x.t_)
            for (auto& [ky, cy] : y.t_) {
                std::vector<std::pair<Key, HalfLaurent>> cur{{Key(x.n_), cx * cy}};
                for (int i = 0; i < x.n_; ++i) {
                    std::vector<std::pair<Key, HalfLaurent>> nxt;
                    const OqElement& p = mono_mul(kx[i], ky[i]);
                    for (auto& [k, c] : cur)
                        for (auto& [m, cm] : p.terms()) {
                            Key kk = k;
                            kk[i] = m;
                            nxt.emplace_back(std::move(kk), c * cm);
                        }
                    cur = std::move(nxt);
                }
                for (auto& [k, c] : cur) r.add(k, c);
            }
        return r;
    }
    friend bool operator==(const OqTensor& x, const OqTensor& y) { return x.n_ == y.n_ && x.t_ == y.t_; }
    friend bool operator!=(const OqTensor& x, const OqTensor& y) { return !(x == y); }

    std::string to_string(bool qform = false) const {
        if (t_.empty()) return "0";
        std::string s;
        auto body = [&](const Key& k) {
            std::string b;
            for (int i = 0; i < n_; ++i) {
                if (i) b += " (x) ";
                b += k[i].is_one() ? "1" : k[i].to_string();
            }
            return b;
        };
        auto emit = [&](const Key& k, const HalfLaurent& c) {
            std::string cs = qform ? c.to_qstring() : c.to_string();
            if (!s.empty()) s += " + ";
            s += "(" + cs + ")*[" + body(k) + "]";
        };
        if (qform) for (auto it = t_.rbegin(); it != t_.rend(); ++it) emit(it->first, it->second);
        else for (auto& [k, c] : t_) emit(k, c);
        return s;
    }

private:
    int n_;
    Map t_;
    void check(const OqTensor& o) const {
        if (o.n_ != n_) throw DomainError("tensor arity mismatch");
    }
};

// apply f leg-wise at position i; f returns an element (linear maps)
inline OqTensor map_leg(const OqTensor& x, int i, const std::function<OqElement(const PBWMonomial&)>& f) {
    OqTensor r(x.arity());
    for (auto& [k, c] : x.terms()) {
        OqElement img = f(k[i]);
        for (auto& [m, cm] : img.terms()) {
            auto kk = k;
            kk[i] = m;
            r.add(kk, c * cm);
        }
    }
    return r;
}

// ---- Hopf structure

inline const OqTensor& mono_coproduct(const PBWMonomial& m) {
    thread_local std::unordered_map<PBWMonomial, OqTensor, detail::MonoHash> cache;
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    OqTensor r(2);
    std::string w = m.word();
    if (w.empty()) {
        r.add({PBWMonomial{}, PBWMonomial{}}, HalfLaurent(1));
    } else if (w.size() == 1) {
        // Delta(alpha_ij) = sum_k alpha_ik (x) alpha_kj
        int i = gen_row(w[0]), j = gen_col(w[0]);
        for (int k = 0; k < 2; ++k)
            r += OqTensor::pure({OqElement::gen(gen_of(i, k)), OqElement::gen(gen_of(k, j))});
    } else {
        PBWMonomial head = PBWMonomial::from_word(w.substr(0, w.size() - 1));
        PBWMonomial last = PBWMonomial::from_word(w.substr(w.size() - 1));
        r = mono_coproduct(head) * mono_coproduct(last);
    }
    return cache.emplace(m, std::move(r)).first->second;
}

inline OqTensor coproduct(const OqElement& x) {
    OqTensor r(2);
    for (auto& [m, c] : x.terms()) r += c * mono_coproduct(m);
    return r;
}

// (Delta (x) id) Delta, i.e. three legs
inline OqTensor coproduct3(const OqElement& x) {
    OqTensor r(3);
    OqTensor d = coproduct(x);
    for (auto& [k, c] : d.terms())
        for (auto& [k2, c2] : mono_coproduct(k[0]).terms()) r.add({k2[0], k2[1], k[1]}, c * c2);
    return r;
}

inline HalfLaurent mono_counit(const PBWMonomial& m) { return m.k == 0 ? HalfLaurent(1) : HalfLaurent(); }

inline HalfLaurent counit(const OqElement& x) {
    HalfLaurent r;
    for (auto& [m, c] : x.terms()) if (m.k == 0) r += c;
    return r;
}

inline const OqElement& mono_antipode(const PBWMonomial& m) {
    thread_local std::unordered_map<PBWMonomial, OqElement, detail::MonoHash> cache;
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    OqElement r;
    std::string w = m.word();
    if (w.empty()) {
        r = OqElement(1);
    } else if (w.size() == 1) {
        switch (w[0]) {
            case 'a': r = OqElement::gen('d'); break;
            case 'd': r = OqElement::gen('a'); break;
            case 'b': r = HalfLaurent::mono(-1, 4) * OqElement::gen('b'); break;
            default: r = HalfLaurent::mono(-1, -4) * OqElement::gen('c'); break;
        }
    } else {
        PBWMonomial head = PBWMonomial::from_word(w.substr(0, w.size() - 1));
        PBWMonomial last = PBWMonomial::from_word(w.substr(w.size() - 1));
        r = mono_antipode(last) * mono_antipode(head);
    }
    return cache.emplace(m, std::move(r)).first->second;
}

inline OqElement antipode(const OqElement& x) {
    OqElement r;
    for (auto& [m, c] : x.terms()) r += c * mono_antipode(m);
    return r;
}

// ---- co-R-matrix

// 2x2 matrices over R indexed by states
using Mat2 = std::array<std::array<HalfLaurent, 2>, 2>;

inline Mat2 mat_mul(const Mat2& x, const Mat2& y) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
    return r;
}

// rho(alpha_ij (x) alpha_kl) is the crossing X+ with left states (i,k)
// and right states (l,j): the strand of x over the strand of y.
inline HalfLaurent co_r_generator(char x, char y, bool inverse) {
    int i = gen_row(x), j = gen_col(x), k = gen_row(y), l = gen_col(y);
    if (!inverse) return crossing_value(+1, i, k, l, j);
    // rho-bar from X-: x = alpha_{l_t r_b}, y = alpha_{l_b r_t}
    return crossing_value(-1, k, i, j, l);
}

// M(w)_{ij} = rho(alpha_ij (x) w), M(w1..wm) = M(wm)...M(w1);
// for rho-bar the factor order is reversed.
inline const Mat2& co_r_matrix(const PBWMonomial& m, bool inverse) {
    thread_local std::unordered_map<PBWMonomial, Mat2, detail::MonoHash> cache[2];
    auto& cc = cache[inverse];
    auto it = cc.find(m);
    if (it != cc.end()) return it->second;
    Mat2 r;
    std::string w = m.word();
    if (w.empty()) {
        r[0][0] = r[1][1] = HalfLaurent(1);
    } else if (w.size() == 1) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r[i][j] = co_r_generator(gen_of(i, j), w[0], inverse);
    } else {
        const Mat2& head = co_r_matrix(PBWMonomial::from_word(w.substr(0, w.size() - 1)), inverse);
        const Mat2& last = co_r_matrix(PBWMonomial::from_word(w.substr(w.size() - 1)), inverse);
        r = inverse ? mat_mul(head, last) : mat_mul(last, head);
    }
    return cc.emplace(m, std::move(r)).first->second;
}

inline HalfLaurent mono_co_r(const PBWMonomial& x, const PBWMonomial& y, bool inverse) {
    thread_local std::map<std::pair<PBWMonomial, PBWMonomial>, HalfLaurent> cache[2];
    if (x.is_one()) return mono_counit(y);
    auto key = std::make_pair(x, y);
    auto& cc = cache[inverse];
    auto it = cc.find(key);
    if (it != cc.end()) return it->second;
    std::string w = x.word();
    HalfLaurent r;
    int i = gen_row(w[0]), j = gen_col(w[0]);
    if (w.size() == 1) {
        r = co_r_matrix(y, inverse)[i][j];
    } else {
        // rho(x1 x_rest (x) y) = sum rho(x1 (x) y') rho(x_rest (x) y'')
        // rho-bar(x1 x_rest (x) y) = sum rho-bar(x1 (x) y'') rho-bar(x_rest (x) y')
        PBWMonomial rest = PBWMonomial::from_word(w.substr(1));
        for (auto& [k, c] : mono_coproduct(y).terms()) {
            const PBWMonomial& y1 = inverse ? k[1] : k[0];
            const PBWMonomial& y2 = inverse ? k[0] : k[1];
            HalfLaurent f = co_r_matrix(y1, inverse)[i][j];
            if (f.is_zero()) continue;
            HalfLaurent g = mono_co_r(rest, y2, inverse);
            if (!g.is_zero()) r += c * f * g;
        }
    }
    return cc.emplace(key, r).first->second;
}

inline HalfLaurent co_r(const OqElement& x, const OqElement& y, bool inverse = false) {
    HalfLaurent r;
    for (auto& [mx, cx] : x.terms())
        for (auto& [my, cy] : y.terms()) {
            HalfLaurent v = mono_co_r(mx, my, inverse);
            if (!v.is_zero()) r += cx * cy * v;
        }
    return r;
}

// ---- U_{q^2}(sl2): words in K, K^-1, E^(n), F^(n)

struct ULetter {
    enum Kind { K, Kinv, E, F } kind;
    int n = 1;  // divided power exponent for E, F
    bool operator==(const ULetter&) const = default;
};
using UWord = std::vector<ULetter>;

inline std::string to_string(const UWord& u) {
    if (u.empty()) return "1";
    std::string s;
    for (auto& x : u) {
        if (!s.empty()) s += " ";
        switch (x.kind) {
            case ULetter::K: s += "K"; break;
            case ULetter::Kinv: s += "K^-1"; break;
            case ULetter::E: s += x.n == 1 ? "E" : "E^(" + std::to_string(x.n) + ")"; break;
            case ULetter::F: s += x.n == 1 ? "F" : "F^(" + std::to_string(x.n) + ")"; break;
        }
    }
    return s;
}

namespace detail {

// single-letter pairings against a word y1..ym; letters K, k (= K^-1), E, F
inline HalfLaurent pair_letter(char u, const std::string& w) {
    auto kv = [](char s, char g) -> HalfLaurent {  // <K^{+-1}, g>
        int e = (s == 'K') ? 2 : -2;
        if (g == 'a') return HalfLaurent::q(e);
        if (g == 'd') return HalfLaurent::q(-e);
        return HalfLaurent();
    };
    auto eps = [](char g) { return (g == 'a' || g == 'd') ? HalfLaurent(1) : HalfLaurent(); };
    size_t m = w.size();
    if (u == 'K' || u == 'k') {
        HalfLaurent r(1);
        for (char g : w) r *= kv(u, g);
        return r;
    }
    HalfLaurent r;
    char hit = u == 'E' ? 'b' : 'c';
    for (size_t j = 0; j < m; ++j) {
        if (w[j] != hit) continue;
        HalfLaurent t(1);
        for (size_t i = 0; i < m && !t.is_zero(); ++i) {
            if (i == j) continue;
            // Delta(E) = 1(x)E + E(x)K ; Delta(F) = K^-1(x)F + F(x)1
            if (u == 'E') t *= i < j ? eps(w[i]) : kv('K', w[i]);
            else t *= i < j ? kv('k', w[i]) : eps(w[i]);
        }
        r += t;
    }
    return r;
}

inline HalfLaurent pair_basic(const std::string& u, const PBWMonomial& x) {
    thread_local std::map<std::pair<std::string, PBWMonomial>, HalfLaurent> cache;
    if (u.empty()) return mono_counit(x);
    if (u.size() == 1) return pair_letter(u[0], x.word());
    auto key = std::make_pair(u, x);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    HalfLaurent r;
    std::string rest = u.substr(1);
    for (auto& [k, c] : mono_coproduct(x).terms()) {
        HalfLaurent f = pair_letter(u[0], k[0].word());
        if (f.is_zero()) continue;
        r += c * f * pair_basic(rest, k[1]);
    }
    return cache.emplace(key, r).first->second;
}

inline std::pair<std::string, HalfLaurent> expand_uword(const UWord& u) {
    std::string s;
    HalfLaurent den(1);
    for (auto& x : u) {
        switch (x.kind) {
            case ULetter::K: s += 'K'; break;
            case ULetter::Kinv: s += 'k'; break;
            case ULetter::E:
            case ULetter::F:
                if (x.n < 1) throw DomainError("divided power exponent must be positive");
                s.append(x.n, x.kind == ULetter::E ? 'E' : 'F');
                den *= q_factorial(x.n);
                break;
        }
    }
    return {s, den};
}

} // namespace detail

inline HalfLaurent hopf_pairing(const UWord& u, const OqElement& x) {
    auto [s, den] = detail::expand_uword(u);
    HalfLaurent r;
    for (auto& [m, c] : x.terms()) r += c * detail::pair_basic(s, m);
    return divexact(r, den);
}

// u . x = sum x' <u, x''>
inline OqElement u_action(const UWord& u, const OqElement& x) {
    auto [s, den] = detail::expand_uword(u);
    OqElement r;
    for (auto& [m, c] : x.terms())
        for (auto& [k, ck] : mono_coproduct(m).terms()) {
            HalfLaurent p = detail::pair_basic(s, k[1]);
            if (!p.is_zero()) r.add(k[0], c * ck * p);
        }
    OqElement out;
    for (auto& [m, c] : r.terms()) out.add(m, divexact(c, den));
    return out;
}

// ---- involutions and the reduced bigon

// chi: v -> v^-1 on coefficients, generators fixed, products reversed
inline OqElement bar_involution(const OqElement& x) {
    OqElement r;
    for (auto& [m, c] : x.terms()) {
        std::string w = m.word();
        std::reverse(w.begin(), w.end());
        r += c.bar() * OqElement::word(w);
    }
    return r;
}

// algebra involution b <-> c
inline OqElement rotation(const OqElement& x) {
    OqElement r;
    for (auto& [m, c] : x.terms()) {
        PBWMonomial n = m;
        if (n.letter == Letter::B) n.letter = Letter::C;
        else if (n.letter == Letter::C) n.letter = Letter::B;
        r.add(n, c);
    }
    return r;
}

// Laurent polynomial in x with coefficients in R
using XLaurent = std::map<int, HalfLaurent>;

inline XLaurent xl_mul(const XLaurent& p, const XLaurent& q) {
    XLaurent r;
    for (auto& [e, c] : p)
        for (auto& [f, d] : q) {
            HalfLaurent& s = r[e + f];
            s += c * d;
        }
    for (auto it = r.begin(); it != r.end();) it = it->second.is_zero() ? r.erase(it) : std::next(it);
    return r;
}

inline XLaurent reduce_bigon(const OqElement& x) {
    XLaurent r;
    for (auto& [m, c] : x.terms()) {
        if (m.k) continue;
        HalfLaurent& s = r[m.h - m.l];
        s += c;
    }
    for (auto it = r.begin(); it != r.end();) it = it->second.is_zero() ? r.erase(it) : std::next(it);
    return r;
}

inline std::string to_string(const XLaurent& p) {
    if (p.empty()) return "0";
    std::string s;
    for (auto& [e, c] : p) {
        if (!s.empty()) s += " + ";
        s += "(" + c.to_string() + ")";
        if (e) s += "*x^" + std::to_string(e);
    }
    return s;
}

// canonical-basis expansion of an element: each PBW word rewritten
inline WordLinear to_canonical(const OqElement& x) {
    WordLinear r;
    for (auto& [m, c] : x.terms())
        for (auto& [w, cw] : canonical_rewriter().normal_form(m.word())) {
            HalfLaurent& s = r[w];
            s += c * cw;
        }
    for (auto it = r.begin(); it != r.end();) it = it->second.is_zero() ? r.erase(it) : std::next(it);
    return r;
}

// all PBW monomials of a given degree
inline std::vector<PBWMonomial> pbw_monomials(int deg) {
    std::vector<PBWMonomial> out;
    for (int h = 0; h <= deg; ++h)
        for (int l = 0; h + l <= deg; ++l) {
            int k = deg - h - l;
            if (k == 0) out.push_back({h, Letter::None, 0, l});
            else {
                out.push_back({h, Letter::B, k, l});
                out.push_back({h, Letter::C, k, l});
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace skein
