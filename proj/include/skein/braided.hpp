#pragma once

#include "hopf.hpp"

#include <functional>
#include <map>
#include <unordered_map>
#include <utility>

namespace skein {

// Elements of the (n-1)-fold braided tensor power; legs are PBW monomials.
using BraidedElement = OqTensor;

enum class RhoVariant { Standard, Mirror };

namespace detail {

// rho(u (x) v) for the standard variant, rho'(u (x) v) = rhobar(v (x) u) for the mirror
inline HalfLaurent braid_weight(const PBWMonomial& u, const OqElement& v, RhoVariant var) {
    OqElement U = OqElement::monomial(u);
    return var == RhoVariant::Standard ? co_r(U, v, false) : co_r(v, U, true);
}

// total coaction of a tuple: legs' coproduct left parts, right parts multiplied in order
inline std::vector<std::pair<OqTensor::Key, OqElement>> tuple_coaction(const OqTensor::Key& k) {
    std::vector<std::pair<OqTensor::Key, OqElement>> cur{{OqTensor::Key{}, OqElement(1)}};
    for (auto& m : k) {
        std::vector<std::pair<OqTensor::Key, OqElement>> nxt;
        const OqTensor& d = mono_coproduct(m);
        for (auto& [key, u] : cur)
            for (auto& [dk, c] : d.terms()) {
                auto kk = key;
                kk.push_back(dk[0]);
                nxt.emplace_back(std::move(kk), c * (u * OqElement::monomial(dk[1])));
            }
        cur = std::move(nxt);
    }
    // merge equal keys
    std::map<OqTensor::Key, OqElement> merged;
    for (auto& [k2, u] : cur) merged[k2] += u;
    std::vector<std::pair<OqTensor::Key, OqElement>> out;
    for (auto& [k2, u] : merged)
        if (!u.is_zero()) out.emplace_back(k2, u);
    return out;
}

inline OqTensor braided_mono(const OqTensor::Key& x, const OqTensor::Key& y, RhoVariant var);

struct KeyPairHash {
    size_t operator()(const std::pair<OqTensor::Key, OqTensor::Key>& p) const {
        size_t h = 1469598103934665603ull;
        auto mix = [&](const PBWMonomial& m) {
            for (int v : {m.h, int(m.letter), m.k, m.l}) h = (h ^ size_t(v + 17)) * 1099511628211ull;
        };
        for (auto& m : p.first) mix(m);
        h ^= 0x9e3779b97f4a7c15ull;
        for (auto& m : p.second) mix(m);
        return h;
    }
};

// (X (x) x)(Y (x) y) = sum rho(u (x) v) (X Y') (x) (x' y),  Delta(x) = x' (x) u, coaction(Y) = Y' (x) v
inline OqTensor braided_mono(const OqTensor::Key& x, const OqTensor::Key& y, RhoVariant var) {
    const int k = int(x.size());
    if (k == 1) {
        OqTensor r(1);
        for (auto& [m, c] : mono_mul(x[0], y[0]).terms()) r.add({m}, c);
        return r;
    }
    thread_local std::unordered_map<std::pair<OqTensor::Key, OqTensor::Key>, OqTensor, KeyPairHash> cache[2];
    auto& memo = cache[var == RhoVariant::Mirror];
    auto key = std::make_pair(x, y);
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    OqTensor::Key X(x.begin(), x.end() - 1), Y(y.begin(), y.end() - 1);
    const PBWMonomial& xl = x.back();
    const PBWMonomial& yl = y.back();
    OqTensor r(k);
    auto coY = tuple_coaction(Y);
    const OqTensor& dx = mono_coproduct(xl);
    for (auto& [dk, cx] : dx.terms()) {
        const OqElement& tail = mono_mul(dk[0], yl);
        for (auto& [Yp, v] : coY) {
            HalfLaurent w = cx * braid_weight(dk[1], v, var);
            if (w.is_zero()) continue;
            OqTensor head = braided_mono(X, Yp, var);
            for (auto& [hk, hc] : head.terms())
                for (auto& [tm, tc] : tail.terms()) {
                    auto kk = hk;
                    kk.push_back(tm);
                    r.add(kk, w * hc * tc);
                }
        }
    }
    memo.emplace(std::move(key), r);
    return r;
}

} // namespace detail

inline BraidedElement braided_product(const BraidedElement& x, const BraidedElement& y, RhoVariant var = RhoVariant::Standard) {
    if (x.arity() != y.arity()) throw DomainError("braided product arity mismatch");
    BraidedElement r(x.arity());
    if (x.arity() == 0) {
        HalfLaurent s;
        for (auto& [k, c] : x.terms())
            for (auto& [k2, c2] : y.terms()) s += c * c2;
        r.add({}, s);
        return r;
    }
    for (auto& [kx, cx] : x.terms())
        for (auto& [ky, cy] : y.terms()) {
            OqTensor p = detail::braided_mono(kx, ky, var);
            for (auto& [k, c] : p.terms()) r.add(k, cx * cy * c);
        }
    return r;
}

// total right coaction of a braided tensor: sum (x_1' (x) ... (x) x_k') (x) u_1...u_k, as k+1 legs
inline OqTensor braided_coaction(const BraidedElement& x) {
    OqTensor r(x.arity() + 1);
    for (auto& [k, c] : x.terms())
        for (auto& [kk, u] : detail::tuple_coaction(k))
            for (auto& [m, cu] : u.terms()) {
                auto key = kk;
                key.push_back(m);
                r.add(key, c * cu);
            }
    return r;
}

// Cutting the n-gon along the diagonal after leg j: the first j legs keep their
// left coproduct parts, whose right parts (multiplied in order) become the first
// leg of the second piece. Result has j + (n - j) legs.
inline OqTensor polygon_split(int n, const BraidedElement& x, int cut) {
    if (x.arity() != n - 1) throw DomainError("polygon element must have n-1 legs");
    if (cut < 1 || cut > n - 2) throw DomainError("cut out of range");
    OqTensor r(n);
    for (auto& [k, c] : x.terms()) {
        OqTensor::Key head(k.begin(), k.begin() + cut);
        for (auto& [hk, u] : detail::tuple_coaction(head))
            for (auto& [m, cu] : u.terms()) {
                auto key = hk;
                key.push_back(m);
                key.insert(key.end(), k.begin() + cut, k.end());
                r.add(key, c * cu);
            }
    }
    return r;
}

using Coaction = std::function<OqTensor(const OqElement&)>;
using Product = std::function<OqElement(const OqElement&, const OqElement&)>;

inline OqTensor trivial_coaction(const OqElement& x) { return OqTensor::pure({x, OqElement(1)}); }

// x * y = sum x' y' rho(u (x) v) with coaction2(x) = x' (x) u, coaction1(y) = y' (x) v
inline OqElement self_braided_product(const OqElement& x, const OqElement& y, const Coaction& coaction1,
                                      const Coaction& coaction2, const Product& prod = multiply) {
    OqTensor dx = coaction2(x), dy = coaction1(y);
    OqElement r;
    for (auto& [kx, cx] : dx.terms())
        for (auto& [ky, cy] : dy.terms()) {
            HalfLaurent w = cx * cy * mono_co_r(kx[1], ky[1], false);
            if (w.is_zero()) continue;
            r += w * prod(OqElement::monomial(kx[0]), OqElement::monomial(ky[0]));
        }
    return r;
}

// x (.) y = sum rho(x' (x) y') x'' y''
inline OqElement twisted_product(const OqElement& x, const OqElement& y) {
    OqTensor dx = coproduct(x), dy = coproduct(y);
    OqElement r;
    for (auto& [kx, cx] : dx.terms())
        for (auto& [ky, cy] : dy.terms()) {
            HalfLaurent w = cx * cy * mono_co_r(kx[0], ky[0], false);
            if (!w.is_zero()) r += w * mono_mul(kx[1], ky[1]);
        }
    return r;
}

// left coproduct turned into a right coaction: x -> x' (x) S(u) if Delta(x) = u (x) x'
inline OqTensor left_to_right_coaction(const OqElement& x) {
    OqTensor r(2), dx = coproduct(x);
    for (auto& [k, c] : dx.terms())
        for (auto& [m, cm] : mono_antipode(k[0]).terms()) r.add({k[1], m}, c * cm);
    return r;
}

inline OqTensor coproduct_coaction(const OqElement& x) { return coproduct(x); }

// right coadjoint coaction: x'' (x) S(x') x'''
inline OqTensor coadjoint_coaction(const OqElement& x) {
    OqTensor r(2), tx = coproduct3(x);
    for (auto& [k, c] : tx.terms()) {
        OqElement u = mono_antipode(k[0]) * OqElement::monomial(k[2]);
        for (auto& [m, cm] : u.terms()) r.add({k[1], m}, c * cm);
    }
    return r;
}

// covariantized product: x * y = sum x'' y'' rho(S(x') x''' (x) S(y')).
// The antipode acts on x' alone, matching the coadjoint coaction; applying it to
// the product x' x''' breaks associativity already on generators.
inline OqElement transmutation_product(const OqElement& x, const OqElement& y) {
    OqTensor tx = coproduct3(x), dy = coproduct(y);
    OqElement r;
    for (auto& [kx, cx] : tx.terms()) {
        OqElement sx = mono_antipode(kx[0]) * OqElement::monomial(kx[2]);
        for (auto& [ky, cy] : dy.terms()) {
            HalfLaurent w = cx * cy * co_r(sx, mono_antipode(ky[0]));
            if (!w.is_zero()) r += w * mono_mul(kx[1], ky[1]);
        }
    }
    return r;
}

} // namespace skein
