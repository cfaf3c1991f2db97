#include <iostream>

#include "potts/cli.hpp"

int main(int argc, char** argv) {
    const auto r = potts::cli::run(std::vector<std::string>(argv + 1, argv + argc));
    std::cout << r.out;
    return r.exit_code;
}
