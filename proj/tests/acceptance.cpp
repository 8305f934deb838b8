// One line per acceptance criterion; exits nonzero if any criterion fails.
#include <cstdio>

#include "nanopteron/validation.hpp"

using namespace nanopteron;

int main() {
    const DimerParams p = DimerParams::make(2.0, 1.0);
    int failed = 0;
    for (const GateResult& g : run_validation(p, true)) {
        std::printf("[%s] criterion %s (%.2fs, limit %.0fs): %s\n", g.passed ? "PASS" : "FAIL", g.name.c_str(),
                    g.seconds, g.time_limit, g.detail.c_str());
        std::fflush(stdout);
        failed += g.passed ? 0 : 1;
    }
    std::printf("%d criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
