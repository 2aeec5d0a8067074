// Acceptance suite runner: one pass/fail line per criterion; exit 0 iff all
// pass. `--level fast` skips the nonlinear-evolution regression.

#include <cstring>
#include <string>

#include "blowup/acceptance.hpp"

int main(int argc, char** argv) {
    blowup::acceptance::Level level = blowup::acceptance::Level::full;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--level") == 0 && i + 1 < argc) {
            level = (std::string(argv[i + 1]) == "fast") ? blowup::acceptance::Level::fast
                                                         : blowup::acceptance::Level::full;
        }
    }
    const auto results = blowup::acceptance::run(level);
    return blowup::acceptance::print_table(results) ? 0 : 1;
}
