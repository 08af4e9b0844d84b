#include <iostream>

#include "dagreal/cli.hpp"

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);
    return dagreal::run_cli({argv, argv + argc}, std::cout, std::cerr);
}
