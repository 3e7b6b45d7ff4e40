#include "doctest.h"
#include "skein/checks.hpp"
#include "skein/classical.hpp"

#include <random>

using namespace skein;

namespace {

SL2Matrix M(int a, int b, int c, int d) { return SL2Matrix(a, b, c, d); }
StatedPath arc(std::vector<std::string> w, int s, int e) { return StatedPath{std::move(w), s, e, false, false}; }
StatedPath loop(std::vector<std::string> w) { return StatedPath{std::move(w), Plus, Plus, true, false}; }

Rational value(const char* w, const char* l, const char* r, const SL2Matrix& h) {
    return classical_tangle_value(parse_tangle(w, l, r), h);
}

} // namespace

TEST_CASE("SL2 matrices") {
    auto A = M(2, 1, 1, 1);
    CHECK(A * A.inverse() == SL2Matrix::identity());
    CHECK(A.trace() == 3);
    CHECK(SL2Matrix::half_fiber() * SL2Matrix::half_fiber() == -SL2Matrix::identity());
    CHECK_THROWS_AS(M(1, 1, 1, 1), DomainError);
    CHECK(SL2Matrix(Rational(1, 2), 0, 0, 2).trace() == Rational(5, 2));
    CHECK(parse_rational("-3/4") == Rational(-3, 4));
    CHECK(parse_rational("7") == 7);
    CHECK_THROWS_AS(parse_rational("x"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
    std::mt19937 rng(3);
    for (int t = 0; t < 20; ++t) {
        auto R = random_sl2(rng);
        CHECK(R(0, 0) * R(1, 1) - R(0, 1) * R(1, 0) == 1);
    }
}

TEST_CASE("holonomy and traces") {
    auto A = M(2, 1, 1, 1), B = M(1, 2, 0, 1);
    GroupoidRep rep({{"g", A}, {"h", B}});
    CHECK(holonomy(rep, arc({}, Plus, Plus)) == SL2Matrix::identity());
    CHECK(holonomy(rep, arc({"g"}, Plus, Plus)) == A);
    CHECK(holonomy(rep, arc({"g", "h"}, Plus, Plus)) == B * A);
    CHECK(holonomy(rep, arc({"~g"}, Plus, Plus)) == -A.inverse());
    CHECK(holonomy(rep, arc({"g^-1"}, Plus, Plus)) == A.inverse());
    auto rev = arc({"g", "h"}, Plus, Minus).inverse();
    CHECK(holonomy(rep, rev) == -(B * A).inverse());
    CHECK_THROWS_AS(holonomy(rep, arc({"k"}, Plus, Plus)), DomainError);
    CHECK_THROWS_AS(rep.set("sqrtO", A), DomainError);
    CHECK_THROWS_AS(rep.set("~g", A), DomainError);

    // table: (+,+) c, (+,-) d, (-,+) -a, (-,-) -b, rows the end state
    auto G = M(3, 2, 4, 3);
    GroupoidRep r2({{"g", G}});
    CHECK(trace_arc(r2, arc({"g"}, Plus, Plus)) == 4);
    CHECK(trace_arc(r2, arc({"g"}, Minus, Plus)) == 3);
    CHECK(trace_arc(r2, arc({"g"}, Plus, Minus)) == -3);
    CHECK(trace_arc(r2, arc({"g"}, Minus, Minus)) == -2);
    CHECK(trace_arc(r2, arc({}, Minus, Plus)) == 1);
    CHECK_THROWS_AS(trace_arc(r2, loop({"g"})), DomainError);

    CHECK(trace_loop(rep, loop({"g"})) == 3);
    CHECK(trace_loop(rep, loop({})) == 2);
    CHECK(trace_loop(rep, loop({"O"})) == -2);
    CHECK(trace_loop(rep, loop({"g", "h"})) == trace_loop(rep, loop({"g", "h"}).inverse()));
    CHECK_THROWS_AS(trace_loop(rep, arc({"g"}, Plus, Plus)), DomainError);

    std::mt19937 rng(21);
    for (int t = 0; t < 100; ++t) {
        GroupoidRep rr({{"x", random_sl2(rng)}, {"y", random_sl2(rng)}});
        for (int s : {Plus, Minus})
            for (int e : {Plus, Minus}) {
                auto p = arc({"x", "~y", "sqrtO"}, s, e);
                CHECK(trace_arc(rr, p) == trace_arc(rr, p.inverse()));
            }
    }
}

TEST_CASE("cutting formula") {
    GroupoidRep id({{"g", SL2Matrix()}});
    // identity pieces reproduce the one-piece table
    for (int s : {Plus, Minus})
        for (int e : {Plus, Minus}) {
            auto p = arc({"g", "|", "g"}, s, e);
            CHECK(cut_check(id, p) == trace_arc(id, arc({"sqrtO^-1"}, s, e)));
        }
    std::mt19937 rng(17);
    for (int t = 0; t < 100; ++t) {
        auto A1 = random_sl2(rng), A2 = random_sl2(rng), A3 = random_sl2(rng);
        GroupoidRep rep({{"p", A1}, {"q", A2}, {"r", A3}});
        for (int s : {Plus, Minus})
            for (int e : {Plus, Minus}) {
                auto one = arc({"p", "|", "q"}, s, e);
                CHECK(cut_check(rep, one) == trace_arc(rep, one));
                // direct 2x2 arithmetic: value matrix of the uncut arc is A2' A1'
                auto T1 = trace_table(A1), T2 = trace_table(A2);
                CHECK(trace_arc(rep, one) == T2[e][Plus] * T1[Plus][s] + T2[e][Minus] * T1[Minus][s]);
                auto two = arc({"p", "|", "q", "|", "r"}, s, e);
                CHECK(cut_check(rep, two) == trace_arc(rep, two));
            }
    }
    GroupoidRep rep({{"p", M(2, 1, 1, 1)}});
    CHECK_THROWS_AS(cut_check(rep, arc({"p"}, Plus, Plus)), DomainError);
    CHECK_THROWS_AS(cut_check(rep, arc({"p", "|", "p", "|", "p", "|", "p"}, Plus, Plus)), DomainError);
    CHECK_THROWS_AS(cut_check(rep, loop({"p", "|", "p"})), DomainError);
}

TEST_CASE("bigon at v = 1") {
    std::mt19937 rng(23);
    using E = OqElement;
    for (int t = 0; t < 50; ++t) {
        auto A = random_sl2(rng);
        auto dict = bigon_dictionary(A);
        CHECK(classical_value(E::gen('a') * E::gen('d') - E::gen('b') * E::gen('c'), dict) == 1);
        CHECK(classical_value(E::gen('b') * E::gen('c'), dict) == classical_value(E::gen('c') * E::gen('b'), dict));
        CHECK(classical_value(E::gen('c') * E::gen('a'), dict) == classical_value(HalfLaurent::q(2) * (E::gen('a') * E::gen('c')), dict));
        // single strands are the trace functions of the arc
        CHECK(classical_value(skein_element(parse_tangle("", "+", "-")), dict) == value("", "+", "-", A));
        CHECK(classical_value(skein_element(parse_tangle("", "-", "-")), dict) == value("", "-", "-", A));
        // multiplicativity on random factorizations
        auto x = checks::random_element(rng, 2), y = checks::random_element(rng, 2);
        CHECK(skein_vs_classical(x * y, {x, y}, dict));
        CHECK(skein_vs_classical(y * x, {x, y}, dict));
    }
    CHECK(classical_value(skein_element(parse_tangle("cup@0;cap@0", "", "")), bigon_dictionary(SL2Matrix())) == -2);
    CHECK(value("cup@0;cap@0", "", "", M(2, 1, 1, 1)) == -2);
    CHECK_THROWS_AS(classical_value(E::gen('a'), {{'a', 1}}), DomainError);
    // a kink is a full turn of the tangent: factor -1, matching -q^{±3} at q = 1
    for (const char* kink : {"cup@1;x+@0;cap@1", "cup@1;x-@0;cap@1", "cup@0;x+@1;cap@0"}) {
        auto B = M(3, 1, 2, 1);
        for (auto l : {"+", "-"})
            for (auto r : {"+", "-"}) CHECK(value(kink, l, r, B) == -value("", l, r, B));
    }
    // a circle with a kink: figure eight, trace of the identity
    CHECK(value("cup@0;cup@2;x+@1;cap@0;cap@0", "", "", M(2, 1, 1, 1)) == 2);

    // Kauffman relation: crossing = identity + cap-cup at q = 1, for all states;
    // the skein elements agree with the trace functions
    auto A = M(2, 3, 1, 2);
    auto dict = bigon_dictionary(A);
    const char* st[] = {"++", "+-", "-+", "--"};
    for (auto l : st)
        for (auto r : st)
            for (const char* x : {"x+@0", "x-@0"}) {
                Rational cross = value(x, l, r, A);
                CHECK(cross == value("id2", l, r, A) + value("cap@0;cup@0", l, r, A));
                CHECK(classical_value(skein_element(parse_tangle(x, l, r)), dict) == cross);
                CHECK(classical_value(skein_element(parse_tangle("cap@0;cup@0", l, r)), dict) == value("cap@0;cup@0", l, r, A));
            }
    // a longer tangle
    for (auto l : st)
        CHECK(classical_value(skein_element(parse_tangle("x+@0;cup@1;x-@0;x+@2;cap@1", l, std::string(l).c_str())), dict) ==
              value("x+@0;cup@1;x-@0;x+@2;cap@1", l, l, A));
}

TEST_CASE("classical criterion") {
    auto r = checks::classical_suite(100);
    CHECK_MESSAGE(r.ok, r.failure);
    CHECK(r.cases > 1000);
}
