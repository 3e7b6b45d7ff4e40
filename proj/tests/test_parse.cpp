#include "doctest.h"
#include "skein/checks.hpp"
#include "skein/io.hpp"

#include <random>

using namespace skein;

namespace {

HalfLaurent random_scalar(std::mt19937& rng) {
    std::uniform_int_distribution<int> e(-7, 7), c(-5, 5), n(0, 4);
    HalfLaurent r;
    for (int i = n(rng); i > 0; --i) r += HalfLaurent::mono(c(rng), e(rng));
    return r;
}

QTElement random_qt(std::mt19937& rng, const TorusPtr& T) {
    std::uniform_int_distribution<int> e(-3, 3), n(0, 4);
    QTElement x(T);
    for (int i = n(rng); i > 0; --i) {
        QTElement::Exponent k(T->rank());
        for (auto& ki : k) ki = e(rng);
        x.add(k, random_scalar(rng));
    }
    return x;
}

} // namespace

TEST_CASE("expression examples") {
    auto a = OqElement::gen('a'), c = OqElement::gen('c'), d = OqElement::gen('d');
    CHECK(parse_expression("c*a") == HalfLaurent::q(2) * (a * c));
    CHECK(parse_expression("c*a").to_qstring() == "q^2*a*c");
    CHECK(parse_expression("q^2") == OqElement(HalfLaurent::v(4)));
    CHECK(parse_expression("a*(d - 1)") == a * d - a);
    CHECK(parse_expression("b*c").to_qstring() == "q^2*a*d - q^2");
    CHECK(parse_expression("(a)^0") == OqElement(1));
    CHECK(parse_expression("v^-2*d") == HalfLaurent::q(-1) * d);
}

TEST_CASE("syntax errors carry positions") {
    for (const char* bad : {"a*(", "a+*b", "a^x", "a b", "", ")"}) CHECK_THROWS_AS(parse_expression(bad), ParseError);
    CHECK_THROWS_AS(parse_expression("e"), ParseError);
    try {
        parse_expression("a + $");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("4") != std::string::npos);
    }
    CHECK_THROWS(parse_scalar("a"));
    CHECK_THROWS(parse_tangle("cup@x", "", ""));
    CHECK_THROWS(parse_tangle("spin@0", "", ""));
    CHECK_THROWS(parse_tangle("", "+*", "+*"));
}

TEST_CASE("scalar round trip") {
    std::mt19937 rng(5);
    for (int t = 0; t < 300; ++t) {
        auto x = random_scalar(rng);
        CHECK(parse_scalar(x.to_string()) == x);
        CHECK(parse_scalar(x.to_qstring()) == x);
        CHECK(parse_scalar(x.to_string()).to_string() == x.to_string());
    }
}

TEST_CASE("element round trip") {
    std::mt19937 rng(6);
    for (int t = 0; t < 300; ++t) {
        auto x = checks::random_element(rng, 4, 4);
        x = random_scalar(rng) * x;
        CHECK(parse_expression(x.to_string()) == x);
        CHECK(parse_expression(x.to_qstring()) == x);
        CHECK(parse_expression(x.to_string()).to_string() == x.to_string());
    }
}

TEST_CASE("quantum torus round trip") {
    std::mt19937 rng(7);
    for (auto T : {triangle_torus(), edge_torus(), chekhov_fock(punctured_torus_triangulation()),
                   square_triangulation().face_torus()})
        for (int t = 0; t < 100; ++t) {
            auto x = random_qt(rng, T);
            CHECK(parse_qt(T, x.to_string()) == x);
            CHECK(parse_qt(T, x.to_qstring()) == x);
        }
}

TEST_CASE("tangle word round trip") {
    for (auto& t : checks::random_tangles(200, 4, 6, 11)) {
        auto u = parse_tangle(t.word(), states_string(t.left), states_string(t.right));
        CHECK(u.word() == t.word());
        CHECK(rt_evaluate(u) == rt_evaluate(t));
    }
}

TEST_CASE("file formats") {
    using io::json;
    auto tri = io::triangulation_from_json(json::parse(R"({"faces":[{"id":"A","sides":["m","n","r"]},{"id":"B","sides":["r","s","t"]}],
                                                          "gluings":[["A","r",1,0]]})"));
    CHECK(tri.faces().size() == 2);
    CHECK(tri.edges().size() == 5);
    CHECK(tri.boundary_count() == 4);
    CHECK_THROWS_AS(io::triangulation_from_json(json::parse(R"({"faces":[{"id":"A","sides":["m","n"]}]})")), ParseError);
    CHECK_THROWS_AS(io::triangulation_from_json(json::parse(R"({"faces":[{"id":"A","sides":["m","n","r"]}],"gluings":[["A","z","A","m"]]})")),
                    DomainError);
    CHECK_THROWS_AS(io::triangulation_from_json(json::parse(R"({"sides":[]})")), ParseError);

    auto sq = square_triangulation();
    auto c = io::curve_from_json(sq, json::parse(R"({"closed":false,"steps":[{"face":"F0","enter":"right","exit":"d"},
                                                    {"face":1,"enter":0,"exit":"left"}],"states":["+","-"]})"));
    CHECK(quantum_trace(sq, c) == quantum_trace(sq, curve_from_steps(sq, {{0, 1, 2}, {1, 0, 2}}, false, {Plus, Minus})));
    CHECK_THROWS_AS(io::curve_from_json(sq, json::parse(R"({"steps":[{"face":0,"enter":1,"exit":2}],"states":"+"})")), DomainError);
    CHECK_THROWS_AS(io::curve_from_json(sq, json::parse(R"({"steps":[{"face":0,"enter":1,"exit":2},{"face":1,"enter":0,"exit":2}],
                                                           "states":"++","edge_orders":{"d":[0,1]}})")),
                    DomainError);
    auto to = punctured_torus_triangulation();
    CHECK(quantum_trace(to, io::curve_from_json(to, json::parse(R"({"weights":{"x":1,"y":0,"d":1}})"))) ==
          quantum_trace(to, torus_curve(to, 0, 1)));

    auto rep = io::rep_from_json(json::parse(R"({"generators":{"g":[["2","1"],[1,"1"]],"h":[["1/3",0],[0,3]]}})"));
    CHECK(rep.get("h").trace() == Rational(10, 3));
    CHECK_THROWS_AS(io::rep_from_json(json::parse(R"({"generators":{"g":[["2","1"],["1","2"]]}})")), DomainError);
    CHECK_THROWS_AS(io::rep_from_json(json::parse(R"({"generators":{"g":[["2","1"]]}})")), ParseError);
    auto p = io::path_from_json(json::parse(R"({"word":["g","~h","sqrtO"],"states":"+-"})"));
    CHECK(p.word.size() == 3);
    CHECK(p.start_state == Plus);
    CHECK(p.end_state == Minus);
    CHECK_THROWS_AS(io::path_from_json(json::parse(R"({"word":["g"],"states":"+"})")), ParseError);
    CHECK(io::path_from_json(json::parse(R"({"word":["g"],"closed":true})")).closed);
}
