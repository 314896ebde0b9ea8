#include "cli.hpp"

int main(int argc, char ** argv)
{
    std::vector<std::string> args(argv, argv + argc);
    return burling::cli::run(args, std::cout, std::cerr);
}
