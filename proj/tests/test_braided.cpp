#include "doctest.h"
#include "skein/braided.hpp"
#include "skein/checks.hpp"

#include <random>

using namespace skein;

namespace {

HalfLaurent q(int k) { return HalfLaurent::q(k); }
OqElement g(char x) { return OqElement::gen(x); }
OqElement M(const PBWMonomial& m) { return OqElement::monomial(m); }

// x placed in leg i of a k-leg tensor
BraidedElement leg(int k, int i, const OqElement& x) {
    std::vector<OqElement> legs(k, OqElement(1));
    legs[i] = x;
    return OqTensor::pure(legs);
}

BraidedElement random_braided(std::mt19937& rng, int k, int maxdeg) {
    std::vector<OqElement> legs;
    for (int i = 0; i < k; ++i) legs.push_back(checks::random_element(rng, maxdeg, 2));
    return OqTensor::pure(legs);
}

// product on (k braided legs) (x) U, the last leg multiplied as usual
OqTensor coaction_product(const OqTensor& x, const OqTensor& y, RhoVariant var) {
    const int k = x.arity() - 1;
    OqTensor r(k + 1);
    for (auto& [kx, cx] : x.terms())
        for (auto& [ky, cy] : y.terms()) {
            BraidedElement bx(k), by(k);
            bx.add(OqTensor::Key(kx.begin(), kx.end() - 1), HalfLaurent(1));
            by.add(OqTensor::Key(ky.begin(), ky.end() - 1), HalfLaurent(1));
            BraidedElement p = braided_product(bx, by, var);
            const OqElement& u = mono_mul(kx.back(), ky.back());
            for (auto& [kp, cp] : p.terms())
                for (auto& [m, cm] : u.terms()) {
                    auto key = kp;
                    key.push_back(m);
                    r.add(key, cx * cy * cp * cm);
                }
        }
    return r;
}

// the printed formula with the antipode applied to x' x''' (kept as a regression)
OqElement literal_transmutation(const OqElement& x, const OqElement& y) {
    OqTensor tx = coproduct3(x), dy = coproduct(y);
    OqElement r;
    for (auto& [kx, cx] : tx.terms()) {
        OqElement sx = antipode(M(kx[0]) * M(kx[2]));
        for (auto& [ky, cy] : dy.terms()) r += (cx * cy * co_r(sx, mono_antipode(ky[0]))) * mono_mul(kx[1], ky[1]);
    }
    return r;
}

// transmutation rebuilt from the self-braided construction: Delta_2 = Delta,
// Delta_1 from the left coproduct and S, underlying product (.)
OqElement transmutation_via_self(const OqElement& x, const OqElement& y) {
    return self_braided_product(x, y, left_to_right_coaction, coproduct_coaction, twisted_product);
}

std::vector<OqElement> generators() { return {g('a'), g('b'), g('c'), g('d')}; }

} // namespace

TEST_CASE("braided product examples") {
    auto A = leg(2, 0, g('a')), B = leg(2, 1, g('a'));
    CHECK(braided_product(A, B) == OqTensor::pure({g('a'), g('a')}));
    CHECK(braided_product(B, A) == q(1) * OqTensor::pure({g('a'), g('a')}));
    CHECK(braided_product(B, A, RhoVariant::Mirror) == q(-1) * OqTensor::pure({g('a'), g('a')}));
    // legs multiply freely within a leg
    for (auto& x : generators())
        for (auto& y : generators()) {
            CHECK(braided_product(leg(2, 0, x), leg(2, 0, y)) == leg(2, 0, x * y));
            CHECK(braided_product(leg(3, 2, x), leg(3, 2, y)) == leg(3, 2, x * y));
            CHECK(braided_product(leg(3, 0, x), leg(3, 2, y)) == OqTensor::pure({x, OqElement(1), y}));
        }
    // a reversed pair is exchanged with the rho-weighted sum over coproduct legs
    for (auto& x : generators())
        for (auto& y : generators()) {
            OqTensor want(2);
            OqTensor dx = coproduct(x), dy = coproduct(y);
            for (auto& [kx, cx] : dx.terms())
                for (auto& [ky, cy] : dy.terms())
                    want += (cx * cy * mono_co_r(kx[1], ky[1], false)) * OqTensor::pure({M(ky[0]), M(kx[0])});
            CHECK(braided_product(leg(2, 1, x), leg(2, 0, y)) == want);
        }
    CHECK_THROWS_AS(braided_product(leg(2, 0, g('a')), leg(3, 0, g('a'))), DomainError);
}

TEST_CASE("braided product is associative") {
    for (int k : {2, 3}) {
        std::vector<BraidedElement> gens;
        for (int i = 0; i < k; ++i)
            for (auto& x : generators()) gens.push_back(leg(k, i, x));
        for (auto var : {RhoVariant::Standard, RhoVariant::Mirror})
            for (auto& x : gens)
                for (auto& y : gens)
                    for (auto& z : gens)
                        CHECK(braided_product(braided_product(x, y, var), z, var) == braided_product(x, braided_product(y, z, var), var));
    }
    std::mt19937 rng(31);
    for (int t = 0; t < 50; ++t) {
        auto x = random_braided(rng, 2, 2), y = random_braided(rng, 2, 2), z = random_braided(rng, 2, 2);
        for (auto var : {RhoVariant::Standard, RhoVariant::Mirror})
            CHECK(braided_product(braided_product(x, y, var), z, var) == braided_product(x, braided_product(y, z, var), var));
    }
}

TEST_CASE("braided tensor power is a comodule algebra") {
    std::mt19937 rng(37);
    for (int k : {2, 3})
        for (int t = 0; t < 25; ++t) {
            auto x = random_braided(rng, k, 1), y = random_braided(rng, k, 1);
            for (auto var : {RhoVariant::Standard, RhoVariant::Mirror}) {
                CHECK(braided_coaction(braided_product(x, y, var)) == coaction_product(braided_coaction(x), braided_coaction(y), var));
            }
        }
}

TEST_CASE("self-braided product") {
    std::mt19937 rng(41);
    for (int t = 0; t < 20; ++t) {
        auto x = checks::random_element(rng, 2), y = checks::random_element(rng, 2);
        CHECK(self_braided_product(x, y, trivial_coaction, trivial_coaction) == x * y);
        CHECK(self_braided_product(OqElement(1), x, coproduct_coaction, coproduct_coaction) == x);
        CHECK(self_braided_product(x, OqElement(1), left_to_right_coaction, coproduct_coaction, twisted_product) == x);
    }
    // (.) is associative and unital
    for (auto& x : generators())
        for (auto& y : generators())
            for (auto& z : generators())
                CHECK(twisted_product(twisted_product(x, y), z) == twisted_product(x, twisted_product(y, z)));
    CHECK(twisted_product(OqElement(1), g('b')) == g('b'));
}

TEST_CASE("transmutation product") {
    CHECK(transmutation_product(g('a'), g('a')) == g('a') * g('a'));
    CHECK(transmutation_product(g('a'), g('d')) == q(4) * (g('a') * g('d')) - q(4) + 1);
    CHECK(literal_transmutation(g('a'), g('a')) == q(2) * (g('a') * g('a')));
    std::mt19937 rng(43);
    for (int t = 0; t < 20; ++t) {
        auto x = checks::random_element(rng, 2);
        CHECK(transmutation_product(OqElement(1), x) == x);
        CHECK(transmutation_product(x, OqElement(1)) == x);
    }
    int literal_differs = 0;
    for (auto& x : generators())
        for (auto& y : generators()) {
            auto p = transmutation_product(x, y);
            CHECK(p == transmutation_via_self(x, y));
            literal_differs += literal_transmutation(x, y) != p;
            // coadjoint coaction is multiplicative for the new product
            OqTensor rhs(2);
            OqTensor cx = coadjoint_coaction(x), cy = coadjoint_coaction(y);
            for (auto& [kx, ax] : cx.terms())
                for (auto& [ky, ay] : cy.terms())
                    rhs += (ax * ay) * OqTensor::pure({transmutation_product(M(kx[0]), M(ky[0])), M(kx[1]) * M(ky[1])});
            CHECK(coadjoint_coaction(p) == rhs);
            for (auto& z : generators())
                CHECK(transmutation_product(transmutation_product(x, y), z) == transmutation_product(x, transmutation_product(y, z)));
        }
    CHECK(literal_differs > 0);
    for (int t = 0; t < 30; ++t) {
        auto x = M(checks::random_monomial(rng, 2)), y = M(checks::random_monomial(rng, 2)), z = M(checks::random_monomial(rng, 2));
        CHECK(transmutation_product(transmutation_product(x, y), z) == transmutation_product(x, transmutation_product(y, z)));
        CHECK(transmutation_product(x, y) == transmutation_via_self(x, y));
    }
}

TEST_CASE("polygon splitting") {
    auto x = leg(2, 0, g('a'));
    auto s = polygon_split(3, x, 1);
    CHECK(s == OqTensor::pure({g('a'), g('a'), OqElement(1)}) + OqTensor::pure({g('b'), g('c'), OqElement(1)}));
    CHECK_THROWS_AS(polygon_split(3, x, 2), DomainError);
    CHECK_THROWS_AS(polygon_split(3, x, 0), DomainError);
    CHECK_THROWS_AS(polygon_split(4, x, 1), DomainError);

    std::mt19937 rng(47);
    for (int n : {3, 4})
        for (int cut = 1; cut <= n - 2; ++cut)
            for (int t = 0; t < 15; ++t) {
                auto X = random_braided(rng, n - 1, 2), Y = random_braided(rng, n - 1, 2);
                // counit on the first leg of the right piece recovers x
                auto sx = polygon_split(n, X, cut);
                OqTensor back(n - 1);
                for (auto& [k, c] : sx.terms()) {
                    auto key = k;
                    HalfLaurent e = mono_counit(key[cut]);
                    key.erase(key.begin() + cut);
                    back.add(key, c * e);
                }
                CHECK(back == X);
                // algebra map for the componentwise braided product
                auto sy = polygon_split(n, Y, cut);
                OqTensor rhs(n);
                for (auto& [kx, cx] : sx.terms())
                    for (auto& [ky, cy] : sy.terms()) {
                        BraidedElement lx(cut), ly(cut), rx(n - cut), ry(n - cut);
                        lx.add(OqTensor::Key(kx.begin(), kx.begin() + cut), HalfLaurent(1));
                        ly.add(OqTensor::Key(ky.begin(), ky.begin() + cut), HalfLaurent(1));
                        rx.add(OqTensor::Key(kx.begin() + cut, kx.end()), HalfLaurent(1));
                        ry.add(OqTensor::Key(ky.begin() + cut, ky.end()), HalfLaurent(1));
                        auto pl = braided_product(lx, ly), pr = braided_product(rx, ry);
                        for (auto& [a, ca] : pl.terms())
                            for (auto& [b, cb] : pr.terms()) {
                                auto key = a;
                                key.insert(key.end(), b.begin(), b.end());
                                rhs.add(key, cx * cy * ca * cb);
                            }
                    }
                CHECK(polygon_split(n, braided_product(X, Y), cut) == rhs);
            }
}
