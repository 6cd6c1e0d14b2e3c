#include "curve_lab/app.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return curve_lab::run(args, std::cout, std::cerr);
}
