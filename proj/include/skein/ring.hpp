#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace skein {

using Int = boost::multiprecision::cpp_int;

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Laurent polynomial in v with integer coefficients; q = v^2.
// Terms kept sorted by exponent, no zero coefficients.
class HalfLaurent {
public:
    using Term = std::pair<int, Int>;

    HalfLaurent() = default;
    HalfLaurent(long long c) { if (c != 0) t_.emplace_back(0, Int(c)); }
    HalfLaurent(const Int& c) { if (c != 0) t_.emplace_back(0, c); }

    static HalfLaurent mono(const Int& c, int vexp) {
        HalfLaurent r;
        if (c != 0) r.t_.emplace_back(vexp, c);
        return r;
    }
    static HalfLaurent v(int k = 1) { return mono(1, k); }
    static HalfLaurent q(int k = 1) { return mono(1, 2 * k); }

    const std::vector<Term>& terms() const& { return t_; }
    const std::vector<Term>& terms() const&& = delete;  // would dangle in a range-for
    bool is_zero() const { return t_.empty(); }
    bool is_one() const { return t_.size() == 1 && t_[0].first == 0 && t_[0].second == 1; }
    bool is_monomial() const { return t_.size() == 1; }
    int min_exp() const { return t_.empty() ? 0 : t_.front().first; }
    int max_exp() const { return t_.empty() ? 0 : t_.back().first; }
    bool even() const {
        for (auto& [e, c] : t_) if (e % 2) return false;
        return true;
    }

    Int coeff(int k) const {
        auto it = std::lower_bound(t_.begin(), t_.end(), k,
                                   [](const Term& a, int e) { return a.first < e; });
        return (it != t_.end() && it->first == k) ? it->second : Int(0);
    }

    HalfLaurent shifted(int k) const {
        HalfLaurent r = *this;
        for (auto& tm : r.t_) tm.first += k;
        return r;
    }

    // v -> v^-1
    HalfLaurent bar() const {
        HalfLaurent r;
        r.t_.reserve(t_.size());
        for (auto it = t_.rbegin(); it != t_.rend(); ++it) r.t_.emplace_back(-it->first, it->second);
        return r;
    }

    HalfLaurent operator-() const {
        HalfLaurent r = *this;
        for (auto& tm : r.t_) tm.second = -tm.second;
        return r;
    }

    HalfLaurent& operator+=(const HalfLaurent& o) { merge(o, 1); return *this; }
    HalfLaurent& operator-=(const HalfLaurent& o) { merge(o, -1); return *this; }
    HalfLaurent& operator*=(const HalfLaurent& o) { *this = *this * o; return *this; }

    friend HalfLaurent operator+(HalfLaurent a, const HalfLaurent& b) { return a += b; }
    friend HalfLaurent operator-(HalfLaurent a, const HalfLaurent& b) { return a -= b; }
    friend HalfLaurent operator*(const HalfLaurent& a, const HalfLaurent& b) {
        HalfLaurent r;
        if (a.is_zero() || b.is_zero()) return r;
        if (a.t_.size() == 1 || b.t_.size() == 1) {
            const HalfLaurent& m = a.t_.size() == 1 ? a : b;
            const HalfLaurent& p = a.t_.size() == 1 ? b : a;
            r.t_.reserve(p.t_.size());
            for (auto& [e, c] : p.t_) r.t_.emplace_back(e + m.t_[0].first, c * m.t_[0].second);
            return r;
        }
        std::vector<Term> acc;
        acc.reserve(a.t_.size() * b.t_.size());
        for (auto& [ea, ca] : a.t_)
            for (auto& [eb, cb] : b.t_) acc.emplace_back(ea + eb, ca * cb);
        std::sort(acc.begin(), acc.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
        for (auto& tm : acc) {
            if (!r.t_.empty() && r.t_.back().first == tm.first) r.t_.back().second += tm.second;
            else r.t_.push_back(std::move(tm));
        }
        r.compact();
        return r;
    }

    friend bool operator==(const HalfLaurent& a, const HalfLaurent& b) { return a.t_ == b.t_; }
    friend bool operator!=(const HalfLaurent& a, const HalfLaurent& b) { return !(a == b); }
    friend bool operator<(const HalfLaurent& a, const HalfLaurent& b) { return a.t_ < b.t_; }

    // value at v = +1 or v = -1
    Int specialize(int at) const {
        if (at != 1 && at != -1) throw DomainError("specialize: only v = 1 or v = -1");
        Int s = 0;
        for (auto& [e, c] : t_) s += (at == -1 && (e % 2)) ? Int(-c) : c;
        return s;
    }

    bool nonnegative() const {
        for (auto& tm : t_) if (tm.second < 0) return false;
        return true;
    }

    std::string to_string() const;   // canonical: v-form, ascending
    std::string to_qstring() const;  // q-form, descending (v-form if odd exponents)

private:
    std::vector<Term> t_;

    void compact() {
        t_.erase(std::remove_if(t_.begin(), t_.end(), [](const Term& x) { return x.second == 0; }), t_.end());
    }
    void merge(const HalfLaurent& o, int sign) {
        if (o.t_.empty()) return;
        std::vector<Term> out;
        out.reserve(t_.size() + o.t_.size());
        size_t i = 0, j = 0;
        while (i < t_.size() || j < o.t_.size()) {
            if (j == o.t_.size() || (i < t_.size() && t_[i].first < o.t_[j].first)) {
                out.push_back(std::move(t_[i++]));
            } else if (i == t_.size() || o.t_[j].first < t_[i].first) {
                out.emplace_back(o.t_[j].first, o.t_[j].second);
                if (sign < 0) out.back().second = -out.back().second;
                ++j;
            } else {
                Int c = t_[i].second;
                if (sign > 0) c += o.t_[j].second;
                else c -= o.t_[j].second;
                if (c != 0) out.emplace_back(t_[i].first, std::move(c));
                ++i, ++j;
            }
        }
        t_ = std::move(out);
    }
};

namespace detail {

inline std::string int_str(const Int& c) { return c.str(); }

// one term; var is "v" or "q", k the exponent in that variable
inline void put_term(std::ostringstream& os, bool first, const Int& c, const char* var, int k) {
    Int m = abs(c);
    if (first) { if (c < 0) os << "-"; }
    else os << (c < 0 ? " - " : " + ");
    if (k == 0) { os << int_str(m); return; }
    if (m != 1) os << int_str(m) << "*";
    os << var;
    if (k != 1) os << "^" << k;
}

} // namespace detail

inline std::string HalfLaurent::to_string() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : t_) { detail::put_term(os, first, c, "v", e); first = false; }
    return os.str();
}

inline std::string HalfLaurent::to_qstring() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    bool ev = even();
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        detail::put_term(os, first, it->second, ev ? "q" : "v", ev ? it->first / 2 : it->first);
        first = false;
    }
    return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const HalfLaurent& p) { return os << p.to_string(); }

// ---- dense polynomial helpers for exact division and gcd over Z[v]

namespace poly {

using Dense = std::vector<Int>;  // index = degree

inline void trim(Dense& p) { while (!p.empty() && p.back() == 0) p.pop_back(); }

inline Int content(const Dense& p) {
    Int g = 0;
    for (auto& c : p) g = gcd(g, abs(c));
    return g;
}

inline Dense primitive(Dense p) {
    Int g = content(p);
    if (g > 1) for (auto& c : p) c /= g;
    if (!p.empty() && p.back() < 0) for (auto& c : p) c = -c;
    return p;
}

// pseudo-remainder of a by b
inline Dense prem(Dense a, const Dense& b) {
    if (b.empty()) throw DomainError("division by zero polynomial");
    const Int& lb = b.back();
    int db = int(b.size()) - 1;
    while (!a.empty() && int(a.size()) - 1 >= db) {
        Int la = a.back();
        int shift = int(a.size()) - 1 - db;
        for (auto& c : a) c *= lb;
        for (int i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
        trim(a);
    }
    return a;
}

inline Dense gcd(const Dense& x, const Dense& y) {
    if (x.empty()) return primitive(y);
    if (y.empty()) return primitive(x);
    Int cg = boost::multiprecision::gcd(content(x), content(y));
    Dense a = primitive(x), b = primitive(y);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        Dense r = prem(a, b);
        a = std::move(b);
        b = r.empty() ? r : primitive(r);
    }
    a = primitive(a);
    for (auto& c : a) c *= cg;
    return a;
}

// exact quotient a / b, nullopt when b does not divide a
inline std::optional<Dense> divexact(Dense a, const Dense& b) {
    if (b.empty()) throw DomainError("division by zero polynomial");
    trim(a);
    if (a.empty()) return Dense{};
    int db = int(b.size()) - 1;
    if (int(a.size()) - 1 < db) return std::nullopt;
    Dense qt(a.size() - db, 0);
    const Int& lb = b.back();
    while (!a.empty() && int(a.size()) - 1 >= db) {
        if (a.back() % lb != 0) return std::nullopt;
        Int c = a.back() / lb;
        int shift = int(a.size()) - 1 - db;
        qt[shift] = c;
        for (int i = 0; i <= db; ++i) a[i + shift] -= c * b[i];
        trim(a);
    }
    if (!a.empty()) return std::nullopt;
    return qt;
}

inline Dense from_laurent(const HalfLaurent& p, int& shift) {
    shift = p.min_exp();
    Dense d;
    if (p.is_zero()) return d;
    d.assign(p.max_exp() - shift + 1, 0);
    for (auto& [e, c] : p.terms()) d[e - shift] = c;
    return d;
}

inline HalfLaurent to_laurent(const Dense& d, int shift) {
    HalfLaurent r;
    for (size_t i = 0; i < d.size(); ++i)
        if (d[i] != 0) r += HalfLaurent::mono(d[i], int(i) + shift);
    return r;
}

} // namespace poly

// exact quotient in Z[v^{±1}]; throws when not exact
inline HalfLaurent divexact(const HalfLaurent& a, const HalfLaurent& b) {
    if (b.is_zero()) throw DomainError("division by zero");
    if (a.is_zero()) return a;
    int sa, sb;
    auto da = poly::from_laurent(a, sa);
    auto db = poly::from_laurent(b, sb);
    auto qt = poly::divexact(da, db);
    if (!qt) throw DomainError("inexact division " + a.to_string() + " / " + b.to_string());
    return poly::to_laurent(*qt, sa - sb);
}

inline std::optional<HalfLaurent> try_divexact(const HalfLaurent& a, const HalfLaurent& b) {
    if (b.is_zero()) throw DomainError("division by zero");
    if (a.is_zero()) return a;
    int sa, sb;
    auto qt = poly::divexact(poly::from_laurent(a, sa), poly::from_laurent(b, sb));
    if (!qt) return std::nullopt;
    return poly::to_laurent(*qt, sa - sb);
}

// Fraction num/den over Z[v^{±1}].  Canonical: common factors removed,
// den has lowest exponent 0 and positive leading coefficient.
class RatFunc {
public:
    RatFunc() : den_(1) {}
    RatFunc(long long c) : num_(c), den_(1) {}
    RatFunc(const HalfLaurent& p) : num_(p), den_(1) {}
    RatFunc(const HalfLaurent& n, const HalfLaurent& d) : num_(n), den_(d) {
        if (d.is_zero()) throw DomainError("zero denominator");
        normalize();
    }

    const HalfLaurent& num() const { return num_; }
    const HalfLaurent& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_laurent() const { return den_.is_one(); }

    RatFunc operator-() const { RatFunc r = *this; r.num_ = -r.num_; return r; }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero() || b.is_zero()) return RatFunc();
        if (a.den_.is_one() && b.den_.is_one()) { RatFunc r; r.num_ = a.num_ * b.num_; return r; }
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw DomainError("division by zero");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    RatFunc bar() const { return RatFunc(num_.bar(), den_.bar()); }

    std::string to_string() const {
        if (den_.is_one()) return num_.to_string();
        return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
    }
    std::string to_qstring() const {
        if (den_.is_one()) return num_.to_qstring();
        return "(" + num_.to_qstring() + ")/(" + den_.to_qstring() + ")";
    }

private:
    HalfLaurent num_, den_;

    void normalize() {
        if (num_.is_zero()) { den_ = 1; return; }
        int k = den_.min_exp();
        num_ = num_.shifted(-k);
        den_ = den_.shifted(-k);
        int sn, sd;
        auto dn = poly::from_laurent(num_, sn);
        auto dd = poly::from_laurent(den_, sd);
        auto g = poly::gcd(dn, dd);
        if (g.size() > 1 || (g.size() == 1 && g[0] != 1)) {
            num_ = poly::to_laurent(*poly::divexact(dn, g), sn);
            den_ = poly::to_laurent(*poly::divexact(dd, g), sd);
        }
        if (den_.terms().back().second < 0) { num_ = -num_; den_ = -den_; }
    }
};

inline std::ostream& operator<<(std::ostream& os, const RatFunc& r) { return os << r.to_string(); }

// [n] = (q^2n - q^-2n)/(q^2 - q^-2), n >= 0
inline HalfLaurent q_int(int n) {
    if (n < 0) return -q_int(-n);
    HalfLaurent r;
    for (int k = 0; k < n; ++k) r += HalfLaurent::v(4 * (n - 1) - 8 * k);
    return r;
}

inline HalfLaurent q_factorial(int n) {
    HalfLaurent r = 1;
    for (int k = 2; k <= n; ++k) r *= q_int(k);
    return r;
}

// Gaussian binomial in q^e: prod_{k<i} (1 - q^{e(n-k)}) / (1 - q^{e(k+1)}).
// e = 0 falls back to the ordinary binomial.
inline HalfLaurent q_binom(int n, int i, int e = 1) {
    if (i < 0 || i > n || n < 0) return HalfLaurent();
    if (e == 0) {
        Int c = 1;
        for (int k = 0; k < i; ++k) c = c * (n - k) / (k + 1);
        return HalfLaurent(c);
    }
    HalfLaurent numr = 1, denr = 1;
    for (int k = 0; k < i; ++k) {
        numr *= HalfLaurent(1) - HalfLaurent::q(e * (n - k));
        denr *= HalfLaurent(1) - HalfLaurent::q(e * (k + 1));
    }
    return divexact(numr, denr);
}

} // namespace skein
