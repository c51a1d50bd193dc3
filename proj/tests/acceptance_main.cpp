// Runs the acceptance checks and prints one pass/fail line per criterion.
// Exit status 0 only if every check passes. `--payload` additionally dumps
// the deterministic results document (useful when pinning regression values).

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <string>

#include "algdyn/acceptance.hpp"

int main(int argc, char** argv) {
    bool dump_payload = false;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--payload") == 0) dump_payload = true;

    algdyn::AcceptanceRun run = algdyn::run_acceptance();
    for (const auto& r : run.results) {
        std::printf("[%s] %d. %s — %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.details.c_str());
    }
    std::printf("%s: %zu/%zu criteria passed\n", run.all_passed ? "OK" : "FAILING",
                static_cast<std::size_t>(
                    std::count_if(run.results.begin(), run.results.end(),
                                  [](const auto& r) { return r.passed; })),
                run.results.size());
    if (dump_payload) std::printf("%s\n", run.payload.dump(2).c_str());
    return run.all_passed ? 0 : 1;
}
