// skein: command-line front end for the skein library.

#include "skein/braided.hpp"
#include "skein/checks.hpp"
#include "skein/io.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <iostream>

using namespace skein;
using io::json;

namespace {

struct Output {
    bool as_json = false;
    bool v_form = false;

    std::string scalar(const HalfLaurent& c) const { return v_form ? c.to_string() : c.to_qstring(); }
    std::string text(const OqElement& x) const { return v_form ? x.to_string() : x.to_qstring(); }
    std::string text(const OqTensor& x) const { return x.to_string(!v_form); }
    std::string text(const QTElement& x) const { return v_form ? x.to_string() : x.to_qstring(); }

    void emit(const std::string& t, const json& j) const {
        if (as_json) std::cout << j.dump(2) << "\n";
        else std::cout << t << "\n";
    }
    void print(const HalfLaurent& c) const { emit(scalar(c), {{"text", scalar(c)}, {"terms", io::to_json(c)}}); }
    void print(const OqElement& x) const {
        json j = io::to_json(x);
        j["text"] = text(x);
        emit(text(x), j);
    }
    void print(const OqTensor& x) const {
        json j = io::to_json(x);
        j["text"] = text(x);
        emit(text(x), j);
    }
    void print(const QTElement& x) const {
        json j = io::to_json(x);
        j["text"] = text(x);
        emit(text(x), j);
    }
    void print(const Rational& r) const { emit(r.str(), {{"value", r.str()}}); }
};

std::string xl_text(const XLaurent& p, const Output& o) {
    if (p.empty()) return "0";
    std::string s;
    for (auto& [e, c] : p) {
        if (!s.empty()) s += " + ";
        s += "(" + o.scalar(c) + ")";
        if (e) s += "*x^" + std::to_string(e);
    }
    return s;
}

std::string wl_text(const WordLinear& w, const Output& o) {
    if (w.empty()) return "0";
    std::string s;
    for (auto& [word, c] : w) {
        if (!s.empty()) s += " + ";
        s += "(" + o.scalar(c) + ")*[" + (word.empty() ? "1" : word) + "]";
    }
    return s;
}

// a pure tensor written leg by leg, separated by ';'
OqTensor parse_legs(const std::string& text) {
    std::vector<OqElement> legs;
    size_t start = 0;
    for (;;) {
        size_t p = text.find(';', start);
        legs.push_back(parse_expression(text.substr(start, p == std::string::npos ? std::string::npos : p - start)));
        if (p == std::string::npos) break;
        start = p + 1;
    }
    return OqTensor::pure(legs);
}

Triangulation load_surface(const std::string& s) {
    if (s == "square") return square_triangulation();
    if (s == "torus") return punctured_torus_triangulation();
    return io::triangulation_from_json(io::load_json(s));
}

int selftest(const Output& o) {
    using namespace checks;
    std::vector<std::pair<std::string, std::function<Result()>>> suites = {
        {"hopf", [] { return hopf_suite(); }},
        {"lift", [] { return lift_theorem(tangle_corpus()); }},
        {"oracle", [] { return oracle_equivalence(tangle_corpus()); }},
        {"co-r-table", [] { return co_r_table(); }},
        {"jones-wenzl", [] { return jones_wenzl_suite(); }},
        {"positivity", [] { return canonical_positivity(); }},
        {"triangle", [] { return triangle_presentation(); }},
        {"qtrace", [] { return quantum_trace_suite(); }},
        {"classical", [] { return classical_suite(); }},
        {"reduced-bigon", [] { return reduced_bigon(); }},
    };
    int passed = 0;
    long cases = 0;
    json rows = json::array();
    for (auto& [name, fn] : suites) {
        Result r = fn();
        passed += r.ok;
        cases += r.cases;
        rows.push_back({{"suite", name}, {"ok", r.ok}, {"cases", r.cases}, {"failure", r.failure}});
        if (!o.as_json)
            std::cout << (r.ok ? "PASS " : "FAIL ") << name << " (" << r.cases << " cases)" << (r.ok ? "" : ": " + r.failure) << "\n";
    }
    if (o.as_json)
        std::cout << json{{"suites", rows}, {"passed", passed}, {"total", suites.size()}, {"cases", cases}}.dump(2) << "\n";
    else
        std::cout << passed << "/" << suites.size() << " suites passed, " << cases << " cases\n";
    return passed == int(suites.size()) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations in the stated skein algebra of the bigon and its relatives."};
    app.require_subcommand(1);
    Output out;
    app.add_flag("--json", out.as_json, "structured output");
    app.add_flag("--v-form", out.v_form, "print coefficients in powers of v = q^(1/2)");
    app.fallthrough();

    std::string expr, expr2, op;

    auto* nf = app.add_subcommand("normal-form", "PBW normal form of an expression in a, b, c, d, q, v");
    nf->add_option("expr", expr)->required();

    auto* hopf = app.add_subcommand("hopf", "Hopf structure maps");
    hopf->add_option("op", op, "coproduct | coproduct3 | counit | antipode | rho | rho-inv | pair | act | bar | rotate | reduce | canonical")
        ->required()
        ->check(CLI::IsMember({"coproduct", "coproduct3", "counit", "antipode", "rho", "rho-inv", "pair", "act", "bar", "rotate", "reduce", "canonical"}));
    hopf->add_option("x", expr, "element (a U word for pair and act)")->required();
    hopf->add_option("y", expr2, "second element for rho, pair and act");

    std::string word, left, right;
    auto* tangle = app.add_subcommand("tangle", "sliced tangle diagrams");
    tangle->add_option("op", op, "eval | skein | kauffman")->required()->check(CLI::IsMember({"eval", "skein", "kauffman"}));
    tangle->add_option("--word", word, "slices such as \"cup@0;x+@1;cap@0\"");
    tangle->add_option("--left", left, "states on the left edge, bottom to top");
    tangle->add_option("--right", right, "states on the right edge, bottom to top");

    bool mirror = false;
    auto* braided = app.add_subcommand("braided", "braided tensor products");
    braided->add_option("op", op, "product | transmute")->required()->check(CLI::IsMember({"product", "transmute"}));
    braided->add_option("x", expr, "legs separated by ';' for product")->required();
    braided->add_option("y", expr2)->required();
    braided->add_flag("--mirror", mirror, "use the mirror co-R-form");

    std::string surface, curve;
    bool edge_coords = false;
    auto* qtrace = app.add_subcommand("qtrace", "quantum trace of a stated curve");
    qtrace->add_option("--surface", surface, "triangulation file, or 'square' / 'torus'")->required();
    qtrace->add_option("--curve", curve, "curve file")->required();
    qtrace->add_flag("--edge-coords", edge_coords, "rewrite the balanced result in edge coordinates");

    std::string rep_file, path_file;
    auto* classical = app.add_subcommand("classical", "trace functions of SL2 groupoid representations");
    classical->add_option("op", op, "arc | loop | cut | holonomy")->required()->check(CLI::IsMember({"arc", "loop", "cut", "holonomy"}));
    classical->add_option("--rep", rep_file, "representation file")->required();
    classical->add_option("--path", path_file, "path file")->required();

    auto* self = app.add_subcommand("selftest", "run the full invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return 2;
    }

    try {
        if (*nf) {
            out.print(parse_expression(expr));
        } else if (*hopf) {
            auto need_y = [&] { if (expr2.empty()) throw ParseError(0, "'" + op + "' takes two arguments"); };
            if (op == "pair" || op == "act") {
                need_y();
                UWord u = parse_uword(expr);
                OqElement x = parse_expression(expr2);
                if (op == "pair") out.print(hopf_pairing(u, x));
                else out.print(u_action(u, x));
                return 0;
            }
            OqElement x = parse_expression(expr);
            if (op == "coproduct") out.print(coproduct(x));
            else if (op == "coproduct3") out.print(coproduct3(x));
            else if (op == "counit") out.print(counit(x));
            else if (op == "antipode") out.print(antipode(x));
            else if (op == "rho" || op == "rho-inv") {
                need_y();
                out.print(co_r(x, parse_expression(expr2), op == "rho-inv"));
            } else if (op == "bar") out.print(bar_involution(x));
            else if (op == "rotate") out.print(rotation(x));
            else if (op == "reduce") {
                XLaurent r = reduce_bigon(x);
                json j = json::array();
                for (auto& [e, c] : r) j.push_back({{"x", e}, {"coeff", out.scalar(c)}});
                out.emit(xl_text(r, out), {{"text", xl_text(r, out)}, {"terms", j}});
            } else {
                WordLinear w = to_canonical(x);
                json j = json::array();
                for (auto& [k, c] : w) j.push_back({{"word", k}, {"coeff", out.scalar(c)}});
                out.emit(wl_text(w, out), {{"text", wl_text(w, out)}, {"terms", j}});
            }
        } else if (*tangle) {
            SlicedTangle t = parse_tangle(word, left, right);
            if (op == "eval") out.print(rt_evaluate(t));
            else if (op == "skein") out.print(skein_element(t));
            else out.print(kauffman_reduce(t));
        } else if (*braided) {
            if (op == "product") {
                RhoVariant var = mirror ? RhoVariant::Mirror : RhoVariant::Standard;
                out.print(braided_product(parse_legs(expr), parse_legs(expr2), var));
            } else {
                if (mirror) throw DomainError("--mirror applies to product only");
                out.print(transmutation_product(parse_expression(expr), parse_expression(expr2)));
            }
        } else if (*qtrace) {
            Triangulation tri = load_surface(surface);
            NormalCurve c = io::curve_from_json(tri, io::load_json(curve));
            QTElement x = quantum_trace(tri, c);
            if (edge_coords) {
                out.print(to_edge_coordinates(tri, x));
            } else {
                bool balanced = check_balanced(tri, x);
                json j = io::to_json(x);
                j["text"] = out.text(x);
                j["balanced"] = balanced;
                std::string t = out.text(x);
                if (!out.as_json) {
                    for (auto& [k, cf] : x.terms()) {
                        t += "\n  " + out.scalar(cf) + " [";
                        for (size_t i = 0; i < k.size(); ++i) t += (i ? " " : "") + std::to_string(k[i]);
                        t += "]";
                    }
                    t += std::string("\nbalanced: ") + (balanced ? "yes" : "no");
                }
                out.emit(t, j);
            }
        } else if (*classical) {
            GroupoidRep rep = io::rep_from_json(io::load_json(rep_file));
            StatedPath p = io::path_from_json(io::load_json(path_file));
            if (op == "arc") out.print(trace_arc(rep, p));
            else if (op == "loop") out.print(trace_loop(rep, p));
            else if (op == "cut") {
                Rational a = cut_check(rep, p), b = trace_arc(rep, p);
                out.emit(a.str() + (a == b ? " (matches the uncut arc)" : " (differs from the uncut arc " + b.str() + ")"),
                         {{"value", a.str()}, {"uncut", b.str()}, {"match", a == b}});
                return a == b ? 0 : 1;
            } else {
                SL2Matrix h = holonomy(rep, p);
                out.emit(h.to_string(), {{"matrix", io::to_json(h)}});
            }
        } else if (*self) {
            return selftest(out);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
