#include <cstdio>
#include <cstdlib>
#include <string>

#include "treelab/acceptance.hpp"

int main(int argc, char** argv) {
    std::uint64_t seed = 20260808;
    int threads = 0;
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        if (flag == "--seed") seed = std::strtoull(argv[i + 1], nullptr, 10);
        if (flag == "--threads") threads = std::atoi(argv[i + 1]);
    }
    const auto results = treelab::run_acceptance(seed, threads);
    return treelab::report_acceptance(results) ? 0 : 1;
}
