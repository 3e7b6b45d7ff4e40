#pragma once

#include "parse.hpp"
#include "rt_core.hpp"

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace skein {

// ---------------------------------------------------------------- quantum tori

// x_i x_j = q^{A_ij} x_j x_i
class QuantumTorus {
public:
    QuantumTorus(std::vector<std::string> names, std::vector<std::vector<int>> A)
        : names_(std::move(names)), A_(std::move(A)) {
        const size_t n = names_.size();
        if (A_.size() != n) throw DomainError("torus matrix size does not match the generator count");
        for (size_t i = 0; i < n; ++i) {
            if (A_[i].size() != n) throw DomainError("torus matrix is not square");
            for (size_t j = 0; j < n; ++j)
                if (A_[i][j] != -A_[j][i]) throw DomainError("torus matrix is not antisymmetric");
        }
        std::set<std::string> seen(names_.begin(), names_.end());
        if (seen.size() != n) throw DomainError("duplicate generator name");
    }

    int rank() const { return int(names_.size()); }
    int a(int i, int j) const { return A_[i][j]; }
    const std::vector<std::vector<int>>& matrix() const { return A_; }
    const std::vector<std::string>& names() const { return names_; }
    int index_of(const std::string& n) const {
        for (int i = 0; i < rank(); ++i) if (names_[i] == n) return i;
        return -1;
    }

    friend bool operator==(const QuantumTorus& x, const QuantumTorus& y) { return x.names_ == y.names_ && x.A_ == y.A_; }

private:
    std::vector<std::string> names_;
    std::vector<std::vector<int>> A_;
};

using TorusPtr = std::shared_ptr<const QuantumTorus>;

inline TorusPtr make_torus(std::vector<std::string> names, std::vector<std::vector<int>> A) {
    return std::make_shared<const QuantumTorus>(std::move(names), std::move(A));
}

namespace detail {
// cyclic: x1 x0 = q x0 x1, x2 x1 = q x1 x2, x0 x2 = q x2 x0
inline std::vector<std::vector<int>> cyclic3() { return {{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}}; }
} // namespace detail

// T: corner arcs alpha, beta, gamma with beta alpha = q alpha beta and its rotations
inline const TorusPtr& triangle_torus() {
    static const TorusPtr t = make_torus({"alpha", "beta", "gamma"}, detail::cyclic3());
    return t;
}

// T': edges a, b, c with b a = q a b and its rotations
inline const TorusPtr& edge_torus() {
    static const TorusPtr t = make_torus({"a", "b", "c"}, detail::cyclic3());
    return t;
}

class QTElement {
public:
    using Exponent = std::vector<int>;
    using Map = std::map<Exponent, HalfLaurent>;

    explicit QTElement(TorusPtr t) : torus_(std::move(t)) {}
    QTElement(TorusPtr t, const HalfLaurent& c) : torus_(std::move(t)) {
        add(Exponent(torus_->rank(), 0), c);
    }

    static QTElement monomial(const TorusPtr& t, const Exponent& k, const HalfLaurent& c = HalfLaurent(1)) {
        if (int(k.size()) != t->rank()) throw DomainError("exponent length does not match torus rank");
        QTElement r(t);
        r.add(k, c);
        return r;
    }
    static QTElement gen(const TorusPtr& t, int i, int power = 1) {
        Exponent k(t->rank(), 0);
        k.at(i) = power;
        return monomial(t, k);
    }

    const TorusPtr& torus() const { return torus_; }
    const Map& terms() const& { return t_; }
    const Map& terms() const&& = delete;  // would dangle in a range-for
    bool is_zero() const { return t_.empty(); }
    size_t size() const { return t_.size(); }

    void add(const Exponent& k, const HalfLaurent& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = t_.try_emplace(k, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    QTElement& operator+=(const QTElement& o) {
        check(o);
        for (auto& [k, c] : o.t_) add(k, c);
        return *this;
    }
    QTElement& operator-=(const QTElement& o) {
        check(o);
        for (auto& [k, c] : o.t_) add(k, -c);
        return *this;
    }
    friend QTElement operator+(QTElement x, const QTElement& y) { return x += y; }
    friend QTElement operator-(QTElement x, const QTElement& y) { return x -= y; }
    QTElement operator-() const {
        QTElement r(torus_);
        for (auto& [k, c] : t_) r.t_.emplace(k, -c);
        return r;
    }
    friend QTElement operator*(const HalfLaurent& s, const QTElement& x) {
        QTElement r(x.torus_);
        if (s.is_zero()) return r;
        for (auto& [k, c] : x.t_) r.add(k, s * c);
        return r;
    }
    friend QTElement operator*(const QTElement& x, const QTElement& y);

    friend bool operator==(const QTElement& x, const QTElement& y) {
        return (x.torus_ == y.torus_ || *x.torus_ == *y.torus_) && x.t_ == y.t_;
    }
    friend bool operator!=(const QTElement& x, const QTElement& y) { return !(x == y); }

    // q-power of the monomial product x^k x^l = q^{sum_{i>j} k_i l_j A_ij} x^{k+l}
    static int product_exponent(const QuantumTorus& t, const Exponent& k, const Exponent& l) {
        int e = 0;
        for (int i = 0; i < t.rank(); ++i)
            if (k[i])
                for (int j = 0; j < i; ++j) e += k[i] * l[j] * t.a(i, j);
        return e;
    }

    // inverse of a unit monomial c x^k
    QTElement inverse() const {
        if (t_.size() != 1) throw DomainError("only monomials are invertible in this implementation");
        auto& [k, c] = *t_.begin();
        if (!c.is_monomial() || abs(c.terms()[0].second) != 1) throw DomainError("coefficient is not a unit");
        Exponent neg(k.size());
        for (size_t i = 0; i < k.size(); ++i) neg[i] = -k[i];
        // x^k x^{-k} = q^{e} so (x^k)^{-1} = q^{-e} x^{-k}
        int e = product_exponent(*torus_, k, neg);
        auto [ce, cc] = c.terms()[0];
        return monomial(torus_, neg, HalfLaurent::mono(cc, -ce - 2 * e));
    }

    // coefficients at v = 1 (a commutative Laurent polynomial)
    std::map<Exponent, Int> at_v1() const {
        std::map<Exponent, Int> r;
        for (auto& [k, c] : t_) {
            Int s = c.specialize(1);
            if (s != 0) r[k] = s;
        }
        return r;
    }

    // ascending exponent order with v-form coefficients, e.g. "-v^-1*alpha + 2*beta"
    std::string to_string() const { return format(false); }
    // descending order, coefficients in q when possible
    std::string to_qstring() const { return format(true); }

private:
    TorusPtr torus_;
    Map t_;

    std::string format(bool qform) const {
        if (t_.empty()) return "0";
        bool ev = qform;
        for (auto& [k, c] : t_) ev = ev && c.even();
        std::string s;
        auto emit = [&](const Exponent& k, int e, const Int& c) {
            if (s.empty()) { if (c < 0) s += "-"; }
            else s += c < 0 ? " - " : " + ";
            std::string body;
            auto join = [&](const std::string& part) { if (!body.empty()) body += "*"; body += part; };
            Int mag = abs(c);
            if (mag != 1) join(mag.str());
            int p = ev ? e / 2 : e;
            if (p != 0) join(std::string(ev ? "q" : "v") + (p == 1 ? "" : "^" + std::to_string(p)));
            for (int i = 0; i < torus_->rank(); ++i)
                if (k[i]) join(torus_->names()[i] + (k[i] == 1 ? "" : "^" + std::to_string(k[i])));
            if (body.empty()) body = "1";
            s += body;
        };
        if (qform) {
            for (auto it = t_.rbegin(); it != t_.rend(); ++it)
                for (auto jt = it->second.terms().rbegin(); jt != it->second.terms().rend(); ++jt) emit(it->first, jt->first, jt->second);
        } else {
            for (auto& [k, c] : t_)
                for (auto& [e, cc] : c.terms()) emit(k, e, cc);
        }
        return s;
    }

    void check(const QTElement& o) const {
        if (torus_ != o.torus_ && !(*torus_ == *o.torus_)) throw DomainError("quantum torus mismatch");
    }
};

inline QTElement operator*(const QTElement& x, const QTElement& y) {
    x.check(y);
    QTElement r(x.torus_);
    const QuantumTorus& T = *x.torus_;
    const int n = T.rank();
    for (auto& [k, c] : x.t_)
        for (auto& [l, d] : y.t_) {
            QTElement::Exponent m(n);
            for (int i = 0; i < n; ++i) m[i] = k[i] + l[i];
            r.add(m, (c * d).shifted(2 * QTElement::product_exponent(T, k, l)));
        }
    return r;
}

inline QTElement qt_multiply(const QTElement& x, const QTElement& y) { return x * y; }

inline std::ostream& operator<<(std::ostream& os, const QTElement& x) { return os << x.to_string(); }

inline QTElement qt_power(const QTElement& x, int k) {
    if (k < 0) return qt_power(x.inverse(), -k);
    QTElement r(x.torus(), HalfLaurent(1));
    for (int i = 0; i < k; ++i) r = r * x;
    return r;
}

// Expressions over the torus generators with the shared grammar, e.g. "q^-1*alpha*beta^-1 + 2".
inline QTElement parse_qt(const TorusPtr& t, const std::string& text) {
    std::function<QTElement(const Expr&)> ev = [&](const Expr& e) -> QTElement {
        if (detail::is_scalar_expr(e)) return QTElement(t, detail::eval_scalar(e));
        switch (e.kind) {
            case Expr::Ident: {
                int i = t->index_of(e.name);
                if (i < 0) throw ParseError(e.pos, "unknown identifier '" + e.name + "'");
                return QTElement::gen(t, i);
            }
            case Expr::Add: return ev(*e.kids[0]) + ev(*e.kids[1]);
            case Expr::Sub: return ev(*e.kids[0]) - ev(*e.kids[1]);
            case Expr::Mul: return ev(*e.kids[0]) * ev(*e.kids[1]);
            case Expr::Neg: return -ev(*e.kids[0]);
            case Expr::Pow: return qt_power(ev(*e.kids[0]), e.exp);
            default: break;
        }
        throw ParseError(e.pos, "bad expression");
    };
    auto e = ExprParser(text).parse();
    return ev(*e);
}

// ---------------------------------------------------------------- the triangle

// Corner arcs: alpha is opposite side a (= 0) and joins sides b and c, and so on
// cyclically. Sides of a face are listed counterclockwise.
enum Corner : int { Alpha = 0, Beta = 1, Gamma = 2 };

// xi(mu, nu): nu follows mu counterclockwise around the surrounded vertex,
// so mu sits on side corner+2 and nu on side corner+1.
struct StatedCornerArc {
    int corner = Alpha;
    int mu = Plus;
    int nu = Plus;
    bool bad() const { return mu == Minus && nu == Plus; }
};

inline int mu_side(int corner) { return (corner + 2) % 3; }
inline int nu_side(int corner) { return (corner + 1) % 3; }

// rotation alpha -> beta -> gamma -> alpha (also a -> b -> c on T')
inline QTElement tau(const QTElement& x) {
    if (x.torus()->rank() != 3) throw DomainError("tau acts on rank-3 tori");
    const TorusPtr& t = x.torus();
    QTElement r(t);
    for (auto& [k, c] : x.terms())
        r += c * (qt_power(QTElement::gen(t, 1), k[0]) * qt_power(QTElement::gen(t, 2), k[1]) *
                  qt_power(QTElement::gen(t, 0), k[2]));
    return r;
}

inline QTElement tau_power(QTElement x, int n) {
    for (int i = 0; i < ((n % 3) + 3) % 3; ++i) x = tau(x);
    return x;
}

// Image of a single stated corner arc in T:
//   alpha(++) -> alpha, alpha(--) -> alpha^-1, alpha(-+) -> 0, alpha(+-) -> q^{-1/2} beta gamma^-1,
// and the tau-rotations for beta and gamma.
inline QTElement corner_image(const StatedCornerArc& arc) {
    const TorusPtr& T = triangle_torus();
    if (arc.corner < 0 || arc.corner > 2) throw DomainError("corner must be alpha, beta or gamma");
    QTElement base(T);
    if (arc.bad()) return base;
    if (arc.mu == Plus && arc.nu == Plus) base = QTElement::gen(T, Alpha);
    else if (arc.mu == Minus && arc.nu == Minus) base = QTElement::gen(T, Alpha, -1);
    else base = QTElement::monomial(T, {0, 1, -1}, HalfLaurent::v(-1));
    return tau_power(base, arc.corner);
}

// stacked product, first arc on top
inline QTElement triangle_element(const std::vector<StatedCornerArc>& arcs) {
    QTElement r(triangle_torus(), HalfLaurent(1));
    for (auto& a : arcs) {
        r = r * corner_image(a);
        if (r.is_zero()) break;
    }
    return r;
}

// T -> T':  alpha -> q^{1/2} b c, beta -> q^{1/2} c a, gamma -> q^{1/2} a b
inline QTElement triangle_to_edges(const QTElement& x) {
    const TorusPtr& E = edge_torus();
    if (!(*x.torus() == *triangle_torus())) throw DomainError("expected an element of T");
    std::array<QTElement, 3> img{QTElement(E), QTElement(E), QTElement(E)}, inv{QTElement(E), QTElement(E), QTElement(E)};
    for (int k = 0; k < 3; ++k) {
        img[k] = HalfLaurent::v(1) * (QTElement::gen(E, (k + 1) % 3) * QTElement::gen(E, (k + 2) % 3));
        inv[k] = img[k].inverse();
    }
    QTElement r(E);
    for (auto& [k, c] : x.terms()) {
        QTElement m(E, c);
        for (int g = 0; g < 3; ++g)
            for (int i = 0; i < std::abs(k[g]); ++i) m = m * (k[g] > 0 ? img[g] : inv[g]);
        r += m;
    }
    return r;
}

// ---------------------------------------------------------------- face diagrams

// A simple diagram in one face: mult[k] nested corner arcs at corner k. Arcs are
// numbered corner-major, innermost first. Endpoint 2*i is the mu-end of arc i,
// 2*i+1 its nu-end. heights[s] lists the endpoints on side s from low to high.
struct FaceDiagram {
    std::array<int, 3> mult{0, 0, 0};
    std::vector<std::array<int, 2>> states;
    std::array<std::vector<int>, 3> heights;

    int arc_count() const { return mult[0] + mult[1] + mult[2]; }
    int arc_index(int corner, int j) const {
        int i = j;
        for (int k = 0; k < corner; ++k) i += mult[k];
        return i;
    }
    std::pair<int, int> arc_of(int i) const {  // (corner, nesting index)
        for (int k = 0; k < 3; ++k) {
            if (i < mult[k]) return {k, i};
            i -= mult[k];
        }
        throw DomainError("arc index out of range");
    }
    int side_of(int endpoint) const {
        int k = arc_of(endpoint / 2).first;
        return endpoint % 2 == 0 ? mu_side(k) : nu_side(k);
    }
    // index along the side in clockwise order: first the arcs of corner s+2
    // (innermost first), then those of corner s+1 (outermost first)
    int position(int endpoint) const {
        auto [k, j] = arc_of(endpoint / 2);
        int s = side_of(endpoint);
        if (k == (s + 2) % 3) return j;
        return mult[(s + 2) % 3] + (mult[k] - 1 - j);
    }
    int side_count(int s) const { return mult[(s + 1) % 3] + mult[(s + 2) % 3]; }
    std::vector<int> side_endpoints(int s) const {  // clockwise order
        std::vector<int> e(side_count(s), -1);
        for (int ep = 0; ep < 2 * arc_count(); ++ep)
            if (side_of(ep) == s) e[position(ep)] = ep;
        return e;
    }

    void validate() const {
        for (int m : mult) if (m < 0) throw DomainError("negative corner multiplicity");
        if (int(states.size()) != arc_count()) throw DomainError("one state pair per arc is required");
        for (auto& st : states)
            for (int x : st) if (x != Plus && x != Minus) throw DomainError("bad state");
        for (int s = 0; s < 3; ++s) {
            auto want = side_endpoints(s);
            auto got = heights[s];
            std::sort(want.begin(), want.end());
            std::sort(got.begin(), got.end());
            if (want != got) throw DomainError("height order must list exactly the endpoints on each side");
        }
    }

    // heights increasing along each side in the given direction (true: clockwise)
    void set_monotone_heights(const std::array<bool, 3>& clockwise) {
        for (int s = 0; s < 3; ++s) {
            heights[s] = side_endpoints(s);
            if (!clockwise[s]) std::reverse(heights[s].begin(), heights[s].end());
        }
    }
};

namespace detail {

// Height exchange of two endpoints x, y adjacent in height on one side, x earlier
// in clockwise order. With x higher:
//   D(x:s0, y:s1) = sum X+(s1, s0; m0, m1) D'(x:m0, y:m1)
// and with y higher:
//   D(x:s0, y:s1) = sum X-(s0, s1; m0, m1) D'(x:m1, y:m0),
// where D' has the two heights swapped. These are inverse to each other; the
// sign is the one for which every stacking order of the arcs gives the same element.
class FaceEvaluator {
public:
    FaceEvaluator(const FaceDiagram& d, std::vector<int> order) : d_(d), order_(std::move(order)) {
        rank_.assign(d.arc_count(), 0);
        for (size_t i = 0; i < order_.size(); ++i) rank_[order_[i]] = int(i);
        for (int ep = 0; ep < 2 * d.arc_count(); ++ep) pos_.push_back(d.position(ep));
    }

    QTElement run() {
        std::vector<int> st;
        for (auto& p : d_.states) { st.push_back(p[0]); st.push_back(p[1]); }
        return eval(st, d_.heights);
    }

private:
    using Heights = std::array<std::vector<int>, 3>;
    const FaceDiagram& d_;
    std::vector<int> order_, rank_, pos_;
    std::map<std::pair<std::vector<int>, Heights>, QTElement> memo_;

    QTElement eval(const std::vector<int>& st, const Heights& h) {
        auto key = std::make_pair(st, h);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        QTElement r = step(st, h);
        memo_.emplace(std::move(key), r);
        return r;
    }

    QTElement step(const std::vector<int>& st, const Heights& h) {
        for (int s = 0; s < 3; ++s) {
            const auto& cur = h[s];
            for (size_t i = 0; i + 1 < cur.size(); ++i) {
                int lo = cur[i], hi = cur[i + 1];
                if (rank_[lo / 2] > rank_[hi / 2]) continue;  // already in stacking order
                int x = pos_[lo] < pos_[hi] ? lo : hi, y = x == lo ? hi : lo;
                bool x_high = x == hi;
                Heights nh = h;
                std::swap(nh[s][i], nh[s][i + 1]);
                QTElement r(triangle_torus());
                for (int m0 : {Plus, Minus})
                    for (int m1 : {Plus, Minus}) {
                        HalfLaurent w = x_high ? crossing_value(+1, st[y], st[x], m0, m1)
                                               : crossing_value(-1, st[x], st[y], m0, m1);
                        if (w.is_zero()) continue;
                        std::vector<int> ns = st;
                        ns[x] = x_high ? m0 : m1;
                        ns[y] = x_high ? m1 : m0;
                        r += w * eval(ns, nh);
                    }
                return r;
            }
        }
        // consistent with the stacking order: multiply the arcs, top first
        QTElement r(triangle_torus(), HalfLaurent(1));
        for (int a : order_) {
            auto [k, j] = d_.arc_of(a);
            r = r * corner_image({k, st[2 * a], st[2 * a + 1]});
            if (r.is_zero()) break;
        }
        return r;
    }
};

} // namespace detail

// Element of T represented by a face diagram. `order` is the stacking order used
// internally (arc indices, top first); the result does not depend on it.
inline QTElement evaluate_face(const FaceDiagram& d, std::vector<int> order = {}) {
    d.validate();
    if (order.empty())
        for (int i = 0; i < d.arc_count(); ++i) order.push_back(i);
    std::vector<int> chk = order;
    std::sort(chk.begin(), chk.end());
    for (int i = 0; i < int(chk.size()); ++i)
        if (chk[i] != i || int(chk.size()) != d.arc_count()) throw DomainError("order must be a permutation of the arcs");
    return detail::FaceEvaluator(d, std::move(order)).run();
}

// ---------------------------------------------------------------- triangulations

struct SideRef {
    int face = 0;
    int side = 0;
    friend bool operator==(const SideRef& x, const SideRef& y) { return x.face == y.face && x.side == y.side; }
    friend bool operator<(const SideRef& x, const SideRef& y) {
        return x.face != y.face ? x.face < y.face : x.side < y.side;
    }
};

class Triangulation {
public:
    struct Face {
        std::string id;
        std::array<std::string, 3> labels;  // counterclockwise
    };
    struct Edge {
        std::string name;
        SideRef first;
        std::optional<SideRef> second;
        bool boundary() const { return !second; }
    };

    Triangulation() = default;
    Triangulation(std::vector<Face> faces, std::vector<std::pair<SideRef, SideRef>> gluings,
                  std::optional<std::vector<SideRef>> boundary = std::nullopt)
        : faces_(std::move(faces)), gluings_(std::move(gluings)) {
        build(boundary);
    }

    int face_count() const { return int(faces_.size()); }
    const std::vector<Face>& faces() const { return faces_; }
    const std::vector<std::pair<SideRef, SideRef>>& gluings() const { return gluings_; }
    const std::vector<Edge>& edges() const { return edges_; }
    int edge_of(const SideRef& s) const { return edge_of_.at(s); }
    std::optional<SideRef> partner(const SideRef& s) const {
        auto it = partner_.find(s);
        if (it == partner_.end()) return std::nullopt;
        return it->second;
    }
    int edge_index(const std::string& name) const {
        for (int i = 0; i < int(edges_.size()); ++i) if (edges_[i].name == name) return i;
        throw DomainError("unknown edge '" + name + "'");
    }
    int face_index(const std::string& id) const {
        for (int i = 0; i < face_count(); ++i) if (faces_[i].id == id) return i;
        throw DomainError("unknown face '" + id + "'");
    }
    int vertex_count() const { return vertices_; }
    int boundary_count() const {
        int b = 0;
        for (auto& e : edges_) b += e.boundary();
        return b;
    }
    // V - E + F with the punctures filled in
    int euler_characteristic() const { return vertices_ - int(edges_.size()) + face_count(); }

    // quantum torus on the 3F face sides: the tensor product of copies of T'
    const TorusPtr& face_torus() const { return face_torus_; }
    int face_generator(const SideRef& s) const { return 3 * s.face + s.side; }

private:
    std::vector<Face> faces_;
    std::vector<std::pair<SideRef, SideRef>> gluings_;
    std::vector<Edge> edges_;
    std::map<SideRef, int> edge_of_;
    std::map<SideRef, SideRef> partner_;
    int vertices_ = 0;
    TorusPtr face_torus_;

    static bool identifier(const std::string& s) {
        if (s.empty() || !std::isalpha((unsigned char)s[0])) return false;
        for (char c : s) if (!std::isalnum((unsigned char)c) && c != '_') return false;
        return s != "q" && s != "v";
    }

    void build(const std::optional<std::vector<SideRef>>& boundary) {
        if (faces_.empty()) throw DomainError("triangulation has no faces");
        std::set<std::string> ids;
        for (auto& f : faces_)
            if (!ids.insert(f.id).second) throw DomainError("duplicate face id '" + f.id + "'");
        auto check_side = [&](const SideRef& s) {
            if (s.face < 0 || s.face >= face_count() || s.side < 0 || s.side > 2) throw DomainError("side reference out of range");
        };
        for (auto& [x, y] : gluings_) {
            check_side(x);
            check_side(y);
            if (x == y) throw DomainError("a side cannot be glued to itself");
            if (partner_.count(x) || partner_.count(y)) throw DomainError("side glued more than once");
            partner_[x] = y;
            partner_[y] = x;
        }
        std::vector<SideRef> free;
        for (int f = 0; f < face_count(); ++f)
            for (int s = 0; s < 3; ++s)
                if (!partner_.count({f, s})) free.push_back({f, s});
        if (boundary) {
            auto b = *boundary;
            for (auto& s : b) check_side(s);
            std::sort(b.begin(), b.end());
            if (b != free) throw DomainError("boundary list must be exactly the unglued sides");
        }
        // edges: glued pairs in gluing order, then boundary sides
        for (auto& [x, y] : gluings_) add_edge(x, y);
        for (auto& s : free) add_edge(s, std::nullopt);
        if (int(edges_.size()) != int(gluings_.size()) + int(free.size()) || 3 * face_count() != 2 * int(gluings_.size()) + int(free.size()))
            throw DomainError("edge count inconsistent with faces and gluings");
        std::set<std::string> names;
        for (auto& e : edges_) {
            if (!identifier(e.name)) throw DomainError("edge name '" + e.name + "' is not an identifier");
            if (!names.insert(e.name).second) throw DomainError("duplicate edge name '" + e.name + "'");
        }
        count_vertices();
        build_face_torus();
    }

    void add_edge(const SideRef& x, std::optional<SideRef> y) {
        const std::string& lx = faces_[x.face].labels[x.side];
        if (y) {
            const std::string& ly = faces_[y->face].labels[y->side];
            if (!lx.empty() && !ly.empty() && lx != ly) throw DomainError("glued sides carry different labels '" + lx + "', '" + ly + "'");
        }
        std::string name = lx.empty() ? (y ? faces_[y->face].labels[y->side] : std::string()) : lx;
        if (name.empty()) name = "e" + std::to_string(edges_.size());
        edge_of_[x] = int(edges_.size());
        if (y) edge_of_[*y] = int(edges_.size());
        edges_.push_back({name, x, y});
    }

    // side s of a face runs from corner vertex s to vertex s+1 counterclockwise;
    // gluing reverses direction
    void count_vertices() {
        const int n = 3 * face_count();
        std::vector<int> parent(n);
        for (int i = 0; i < n; ++i) parent[i] = i;
        std::function<int(int)> find = [&](int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); };
        auto unite = [&](int i, int j) { parent[find(i)] = find(j); };
        auto vid = [](int f, int k) { return 3 * f + (k % 3); };
        for (auto& [x, y] : gluings_) {
            unite(vid(x.face, x.side), vid(y.face, y.side + 1));
            unite(vid(x.face, x.side + 1), vid(y.face, y.side));
        }
        std::set<int> roots;
        for (int i = 0; i < n; ++i) roots.insert(find(i));
        vertices_ = int(roots.size());
    }

    void build_face_torus() {
        std::vector<std::string> names;
        const int n = 3 * face_count();
        std::vector<std::vector<int>> A(n, std::vector<int>(n, 0));
        auto cyc = detail::cyclic3();
        for (int f = 0; f < face_count(); ++f) {
            std::string id = identifier(faces_[f].id) ? faces_[f].id : "F" + faces_[f].id;
            for (int s = 0; s < 3; ++s) names.push_back(id + "_" + "abc"[s]);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) A[3 * f + i][3 * f + j] = cyc[i][j];
        }
        face_torus_ = make_torus(std::move(names), std::move(A));
    }
};

// Chekhov-Fock torus on the edges: K_ef = sum over faces of A(s, s') over the
// face sides s representing e and s' representing f.
inline TorusPtr chekhov_fock(const Triangulation& tri) {
    const int n = int(tri.edges().size());
    std::vector<std::vector<int>> K(n, std::vector<int>(n, 0));
    auto cyc = detail::cyclic3();
    for (int f = 0; f < tri.face_count(); ++f)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) K[tri.edge_of({f, i})][tri.edge_of({f, j})] += cyc[i][j];
    std::vector<std::string> names;
    for (auto& e : tri.edges()) names.push_back(e.name);
    return make_torus(std::move(names), std::move(K));
}

// Image of the edge generator in the face torus: the product of the two sides,
// Weyl-normalized when both lie in the same face.
inline QTElement edge_generator(const Triangulation& tri, int e) {
    const auto& E = tri.edges().at(e);
    const TorusPtr& T = tri.face_torus();
    QTElement r = QTElement::gen(T, tri.face_generator(E.first));
    if (E.second) {
        int i = tri.face_generator(E.first), j = tri.face_generator(*E.second);
        r = r * QTElement::gen(T, j);
        r = HalfLaurent::v(-T->a(i, j)) * r;
    }
    return r;
}

// every monomial has equal exponents on the two sides of each glued pair
inline bool check_balanced(const Triangulation& tri, const QTElement& x) {
    if (!(*x.torus() == *tri.face_torus())) throw DomainError("element is not in the face torus of this triangulation");
    for (auto& [k, c] : x.terms())
        for (auto& [s, t] : tri.gluings())
            if (k[tri.face_generator(s)] != k[tri.face_generator(t)]) return false;
    return true;
}

// rewrite a balanced element in the Chekhov-Fock torus
inline QTElement to_edge_coordinates(const Triangulation& tri, const QTElement& x) {
    if (!check_balanced(tri, x)) throw DomainError("element is not balanced");
    TorusPtr cf = chekhov_fock(tri);
    const int n = int(tri.edges().size());
    std::vector<QTElement> gen, inv;
    for (int e = 0; e < n; ++e) {
        gen.push_back(edge_generator(tri, e));
        inv.push_back(gen.back().inverse());
    }
    QTElement r(cf);
    for (auto& [k, c] : x.terms()) {
        QTElement::Exponent ke(n);
        for (int e = 0; e < n; ++e) ke[e] = k[tri.face_generator(tri.edges()[e].first)];
        QTElement img(tri.face_torus(), HalfLaurent(1));
        for (int e = 0; e < n; ++e)
            for (int i = 0; i < std::abs(ke[e]); ++i) img = img * (ke[e] > 0 ? gen[e] : inv[e]);
        auto it = img.terms().begin();
        if (img.size() != 1 || it->first != k) throw DomainError("edge monomial mismatch");
        r.add(ke, divexact(c, it->second));
    }
    return r;
}

// ---------------------------------------------------------------- normal curves

// A normal multicurve given by its corner multiplicities in each face. Positions
// on a side are counted clockwise in that face; position p on one copy of an
// interior edge meets position n-1-p on the other copy. Boundary endpoints carry
// states keyed by (side, position).
struct NormalCurve {
    std::vector<std::array<int, 3>> corners;
    std::map<std::pair<SideRef, int>, int> end_states;

    int side_weight(const SideRef& s) const {
        const auto& m = corners.at(s.face);
        return m[(s.side + 1) % 3] + m[(s.side + 2) % 3];
    }
};

struct CurveStep {
    int face = 0;
    int enter = 0;
    int exit = 0;
};

// (face, side, position) of one endpoint of a corner arc
struct CurvePoint {
    SideRef side;
    int pos = 0;
    friend bool operator<(const CurvePoint& x, const CurvePoint& y) {
        return x.side < y.side || (x.side == y.side && x.pos < y.pos);
    }
    friend bool operator==(const CurvePoint& x, const CurvePoint& y) { return x.side == y.side && x.pos == y.pos; }
};

namespace detail {

inline FaceDiagram face_layout(const std::array<int, 3>& m) {
    FaceDiagram d;
    d.mult = m;
    d.states.assign(d.arc_count(), {Plus, Plus});
    return d;
}

inline void check_curve_shape(const Triangulation& tri, const NormalCurve& c) {
    if (int(c.corners.size()) != tri.face_count()) throw DomainError("one corner triple per face is required");
    for (auto& m : c.corners)
        for (int x : m) if (x < 0) throw DomainError("negative corner multiplicity");
    for (auto& [s, t] : tri.gluings())
        if (c.side_weight(s) != c.side_weight(t)) throw DomainError("non-normal curve: weights differ across a glued edge");
}

} // namespace detail

// all endpoints of the multicurve's corner arcs
inline std::vector<CurvePoint> curve_points(const Triangulation& tri, const NormalCurve& c) {
    std::vector<CurvePoint> out;
    for (int f = 0; f < tri.face_count(); ++f)
        for (int s = 0; s < 3; ++s)
            for (int p = 0; p < c.side_weight({f, s}); ++p) out.push_back({{f, s}, p});
    return out;
}

inline std::vector<CurvePoint> boundary_points(const Triangulation& tri, const NormalCurve& c) {
    std::vector<CurvePoint> out;
    for (auto& p : curve_points(tri, c))
        if (!tri.partner(p.side)) out.push_back(p);
    return out;
}

inline NormalCurve curve_from_weights(const Triangulation& tri, const std::map<std::string, int>& weights) {
    std::vector<int> w(tri.edges().size(), 0);
    for (auto& [name, n] : weights) {
        if (n < 0) throw DomainError("negative edge weight");
        w[tri.edge_index(name)] = n;
    }
    NormalCurve c;
    for (int f = 0; f < tri.face_count(); ++f) {
        std::array<int, 3> n{}, m{};
        for (int s = 0; s < 3; ++s) n[s] = w[tri.edge_of({f, s})];
        for (int k = 0; k < 3; ++k) {
            int t = n[(k + 1) % 3] + n[(k + 2) % 3] - n[k];
            if (t < 0 || t % 2) throw DomainError("weights violate the triangle conditions in face '" + tri.faces()[f].id + "'");
            m[k] = t / 2;
        }
        c.corners.push_back(m);
    }
    return c;
}

// Components of the multicurve as sequences of steps, together with the end
// points (for arcs) in traversal order.
struct CurveComponent {
    std::vector<CurveStep> steps;
    bool closed = true;
    std::optional<CurvePoint> start, end;
};

inline std::vector<CurveComponent> curve_components(const Triangulation& tri, const NormalCurve& c) {
    detail::check_curve_shape(tri, c);
    // endpoint key -> (face, arc, end)
    struct End { int face, arc, end; };
    std::map<CurvePoint, End> at;
    std::vector<FaceDiagram> lay;
    for (int f = 0; f < tri.face_count(); ++f) {
        lay.push_back(detail::face_layout(c.corners[f]));
        for (int ep = 0; ep < 2 * lay[f].arc_count(); ++ep)
            at[{{f, lay[f].side_of(ep)}, lay[f].position(ep)}] = {f, ep / 2, ep % 2};
    }
    auto point_of = [&](int f, int ep) { return CurvePoint{{f, lay[f].side_of(ep)}, lay[f].position(ep)}; };
    auto across = [&](const CurvePoint& p) -> std::optional<CurvePoint> {
        auto q = tri.partner(p.side);
        if (!q) return std::nullopt;
        return CurvePoint{*q, c.side_weight(p.side) - 1 - p.pos};
    };
    std::set<std::pair<int, int>> used;  // (face, arc)
    std::vector<CurveComponent> comps;
    auto walk = [&](CurvePoint p, CurveComponent& comp) {
        // enter the arc at p and keep going until a boundary or the start
        for (;;) {
            End e = at.at(p);
            if (used.count({e.face, e.arc})) return;
            used.insert({e.face, e.arc});
            CurvePoint q = point_of(e.face, 2 * e.arc + (1 - e.end));
            comp.steps.push_back({e.face, p.side.side, q.side.side});
            auto nxt = across(q);
            if (!nxt) {
                comp.end = q;
                return;
            }
            p = *nxt;
        }
    };
    for (auto& p : boundary_points(tri, c)) {
        End e = at.at(p);
        if (used.count({e.face, e.arc})) continue;
        CurveComponent comp;
        comp.closed = false;
        comp.start = p;
        walk(p, comp);
        comps.push_back(std::move(comp));
    }
    for (auto& [p, e] : at) {
        if (used.count({e.face, e.arc})) continue;
        CurveComponent comp;
        walk(p, comp);
        comps.push_back(std::move(comp));
    }
    return comps;
}

// A single curve given as a sequence of corner steps. For an arc, states holds
// the states at its first and last endpoint.
inline NormalCurve curve_from_steps(const Triangulation& tri, const std::vector<CurveStep>& steps, bool closed,
                                    const std::vector<int>& states = {}) {
    if (steps.empty()) throw DomainError("curve has no steps");
    NormalCurve c;
    c.corners.assign(tri.face_count(), {0, 0, 0});
    for (size_t i = 0; i < steps.size(); ++i) {
        const auto& s = steps[i];
        if (s.face < 0 || s.face >= tri.face_count() || s.enter < 0 || s.enter > 2 || s.exit < 0 || s.exit > 2)
            throw DomainError("step out of range");
        if (s.enter == s.exit) throw DomainError("non-normal curve: a step enters and exits the same side");
        c.corners[s.face][3 - s.enter - s.exit] += 1;
        bool last = i + 1 == steps.size();
        if (last && !closed) break;
        const auto& n = last ? steps[0] : steps[i + 1];
        auto p = tri.partner({s.face, s.exit});
        if (!p || !(*p == SideRef{n.face, n.enter})) throw DomainError("consecutive steps do not share a glued edge");
    }
    if (!closed) {
        if (tri.partner({steps.front().face, steps.front().enter}) || tri.partner({steps.back().face, steps.back().exit}))
            throw DomainError("an open curve must start and end on boundary edges");
        if (states.size() != 2) throw DomainError("an open curve needs two end states");
    } else if (!states.empty()) {
        throw DomainError("closed curves carry no states");
    }
    auto comps = curve_components(tri, c);
    if (comps.size() != 1 || comps[0].closed != closed || comps[0].steps.size() != steps.size())
        throw DomainError("steps do not describe a single normal curve");
    if (!closed) {
        const auto& cs = comps[0].steps;
        bool fwd = cs.front().face == steps.front().face && cs.front().enter == steps.front().enter;
        for (size_t i = 0; fwd && i < cs.size(); ++i)
            fwd = cs[i].face == steps[i].face && cs[i].enter == steps[i].enter && cs[i].exit == steps[i].exit;
        c.end_states[{comps[0].start->side, comps[0].start->pos}] = fwd ? states[0] : states[1];
        c.end_states[{comps[0].end->side, comps[0].end->pos}] = fwd ? states[1] : states[0];
    }
    return c;
}

// ---------------------------------------------------------------- quantum trace

struct TraceOptions {
    // interior edges on which the cut points get heights in the opposite direction
    std::set<int> reversed_edges;
    // per-face stacking order used by the face evaluator (empty: natural)
    std::map<int, std::vector<int>> face_orders;
};

// Cut along every interior edge, sum over the states at the cut points, evaluate
// each face in T, push into T' and multiply in the face torus. On an interior edge
// the cut points get heights increasing clockwise along its first side (so
// decreasing clockwise along the second); boundary edges use the positive order.
inline QTElement quantum_trace(const Triangulation& tri, const NormalCurve& c, const TraceOptions& opt = {}) {
    detail::check_curve_shape(tri, c);
    const TorusPtr& T = tri.face_torus();
    const int F = tri.face_count();

    std::vector<FaceDiagram> faces;
    for (int f = 0; f < F; ++f) {
        FaceDiagram d = detail::face_layout(c.corners[f]);
        for (int s = 0; s < 3; ++s) {
            auto ends = d.side_endpoints(s);
            bool clockwise;
            int e = tri.edge_of({f, s});
            const auto& E = tri.edges()[e];
            if (E.boundary()) clockwise = false;
            else clockwise = (E.first == SideRef{f, s});
            if (opt.reversed_edges.count(e)) clockwise = !clockwise;
            if (!clockwise) std::reverse(ends.begin(), ends.end());
            d.heights[s] = ends;
        }
        faces.push_back(std::move(d));
    }

    // cut points: one per crossing with an interior edge, keyed on the first side
    std::vector<CurvePoint> cuts;
    for (auto& e : tri.edges())
        if (!e.boundary())
            for (int p = 0; p < c.side_weight(e.first); ++p) cuts.push_back({e.first, p});
    if (cuts.size() > 24) throw DomainError("too many crossings for the state sum");
    for (auto& p : boundary_points(tri, c))
        if (!c.end_states.count({p.side, p.pos})) throw DomainError("missing state for a boundary endpoint");

    // state of an endpoint given the cut states
    auto state_at = [&](const CurvePoint& p, const std::vector<int>& cs) -> int {
        const auto& E = tri.edges()[tri.edge_of(p.side)];
        if (E.boundary()) return c.end_states.at({p.side, p.pos});
        CurvePoint key = p;
        if (!(E.first == p.side)) key = {E.first, c.side_weight(p.side) - 1 - p.pos};
        auto it = std::lower_bound(cuts.begin(), cuts.end(), key);
        return cs[it - cuts.begin()];
    };
    std::sort(cuts.begin(), cuts.end());

    std::vector<std::map<std::vector<std::array<int, 2>>, QTElement>> cache(F);
    auto face_value = [&](int f, const std::vector<int>& cs) -> QTElement {
        FaceDiagram d = faces[f];
        for (int a = 0; a < d.arc_count(); ++a)
            for (int end = 0; end < 2; ++end) {
                int ep = 2 * a + end;
                d.states[a][end] = state_at({{f, d.side_of(ep)}, d.position(ep)}, cs);
            }
        auto it = cache[f].find(d.states);
        if (it != cache[f].end()) return it->second;
        std::vector<int> order;
        if (auto o = opt.face_orders.find(f); o != opt.face_orders.end()) order = o->second;
        QTElement local = triangle_to_edges(evaluate_face(d, order));
        QTElement emb(T);
        for (auto& [k, cf] : local.terms()) {
            QTElement::Exponent big(T->rank(), 0);
            for (int s = 0; s < 3; ++s) big[3 * f + s] = k[s];
            emb.add(big, cf);
        }
        cache[f].emplace(d.states, emb);
        return emb;
    };

    QTElement total(T);
    const size_t N = cuts.size();
    std::vector<int> cs(N);
    for (unsigned long long mask = 0; mask < (1ull << N); ++mask) {
        for (size_t i = 0; i < N; ++i) cs[i] = (mask >> i) & 1 ? Minus : Plus;
        QTElement prod(T, HalfLaurent(1));
        for (int f = 0; f < F && !prod.is_zero(); ++f) prod = prod * face_value(f, cs);
        total += prod;
    }
    return total;
}

// ---------------------------------------------------------------- standard surfaces

// two triangles glued along the diagonal d; boundary edges bottom, right, top, left
inline Triangulation square_triangulation() {
    return Triangulation({{"F0", {"bottom", "right", "d"}}, {"F1", {"d", "top", "left"}}}, {{{0, 2}, {1, 0}}});
}

// two triangles with all three edges glued: x (horizontal), y (vertical), d (diagonal)
inline Triangulation punctured_torus_triangulation() {
    return Triangulation({{"F0", {"x", "y", "d"}}, {"F1", {"d", "x", "y"}}},
                         {{{0, 0}, {1, 1}}, {{0, 1}, {1, 2}}, {{0, 2}, {1, 0}}});
}

// slope p/q on the punctured torus: weights |q| on x, |p| on y, |p - q| on d
inline NormalCurve torus_curve(const Triangulation& torus, int p, int q) {
    return curve_from_weights(torus, {{"x", std::abs(q)}, {"y", std::abs(p)}, {"d", std::abs(p - q)}});
}

} // namespace skein
