#include <iostream>
#include <string>
#include <vector>

#include "tz/cli.hpp"

int main(int argc, char** argv) {
    if (!tz::cli::configure_bit_limit_from_env(std::cerr)) return tz::cli::schema_error;
    std::vector<std::string> args(argv + 1, argv + argc);
    return tz::cli::run(args, std::cout, std::cerr);
}
