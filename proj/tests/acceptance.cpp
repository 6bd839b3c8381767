// Acceptance gate: one process per criterion so ctest reports them
// individually. Usage: acceptance <1..14|all> <path-to-cli>.
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "tsn/selftest.hpp"

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance <criterion|all> <cli-path>\n";
        return 2;
    }
    std::vector<int> which;
    std::string sel = argv[1];
    if (sel != "all") {
        int id = std::atoi(sel.c_str());
        if (id < 1 || id > 14) {
            std::cerr << "criterion must be 1..14 or all\n";
            return 2;
        }
        which.push_back(id);
    }
    auto results = tsn::run_selftest(argv[2], which);
    bool all = true;
    for (const auto& r : results) {
        std::cout << "criterion " << r.id << " " << (r.pass ? "PASS" : "FAIL") << " (" << r.detail
                  << ") [" << r.ms << " ms]\n";
        all = all && r.pass;
    }
    return all ? 0 : 1;
}
