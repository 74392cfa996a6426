// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fail.
#include <cstdio>
#include <cstdlib>

#include "stg/acceptance.hpp"

int main() {
    stg::AcceptanceOptions opt;
    if (const char* s = std::getenv("STG_ACCEPTANCE_SAMPLES")) opt.samples = std::atol(s);
    bool ok = true;
    stg::run_acceptance(opt, [&](const stg::CriterionResult& r) {
        std::printf("%s\n", stg::format_result_line(r).c_str());
        std::fflush(stdout);
        ok = ok && r.pass;
    });
    return ok ? 0 : 1;
}
