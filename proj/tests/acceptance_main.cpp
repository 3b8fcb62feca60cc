#include <cstring>
#include <iostream>

#include "oeb/acceptance.hpp"

int main(int argc, char** argv) {
    oeb::accept::Level level = oeb::accept::Level::Fast;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--level") == 0 && i + 1 < argc &&
            std::strcmp(argv[i + 1], "full") == 0)
            level = oeb::accept::Level::Full;
    const auto results = oeb::accept::run_all(level);
    const int failures = oeb::accept::print_report(std::cout, results);
    return failures == 0 ? 0 : 1;
}
