#include "bondedkb/cli.hpp"
#include "bondedkb/skein_engine.hpp"

#include <iostream>

int main(int argc, char** argv) {
#ifdef BONDEDKB_INJECT_FAULT
    bkb::testing::set_fault_injection(true);
#endif
    return bkb::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
