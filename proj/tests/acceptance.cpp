// Acceptance run: one PASS/FAIL line per criterion, exact arithmetic throughout.

#include "skein/checks.hpp"

#include <chrono>
#include <cstdio>
#include <functional>

using namespace skein;

namespace {

int failures = 0;

void criterion(int n, const char* name, double limit_s, const std::function<checks::Result()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    checks::Result r;
    try {
        r = fn();
    } catch (const std::exception& e) {
        r.ok = false;
        r.failure = std::string("exception: ") + e.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = limit_s <= 0 || s < limit_s;
    bool ok = r.ok && in_time && r.cases > 0;
    if (!ok) ++failures;
    std::printf("%s %2d %-22s %8ld cases %7.2fs", ok ? "PASS" : "FAIL", n, name, r.cases, s);
    if (limit_s > 0) std::printf(" (limit %.0fs)", limit_s);
    if (!r.ok) std::printf("  %s", r.failure.c_str());
    else if (!in_time) std::printf("  too slow");
    std::printf("\n");
    std::fflush(stdout);
}

} // namespace

int main() {
    criterion(1, "hopf-suite", 10, [] { return checks::hopf_suite(); });
    std::vector<SlicedTangle> corpus;
    criterion(2, "lift-theorem", 30, [&] {
        corpus = checks::tangle_corpus();
        return checks::lift_theorem(corpus);
    });
    criterion(3, "oracle-equivalence", 0, [&] { return checks::oracle_equivalence(corpus); });
    criterion(4, "co-r-table", 0, [] { return checks::co_r_table(); });
    criterion(5, "jones-wenzl", 0, [] { return checks::jones_wenzl_suite(5, 3); });
    criterion(6, "canonical-positivity", 0, [] { return checks::canonical_positivity(); });
    criterion(7, "triangle-presentation", 0, [] { return checks::triangle_presentation(); });
    criterion(8, "quantum-trace", 0, [] { return checks::quantum_trace_suite(); });
    criterion(9, "classical-limit", 0, [] { return checks::classical_suite(100); });
    criterion(10, "reduced-bigon", 0, [] { return checks::reduced_bigon(); });
    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures ? 1 : 0;
}
