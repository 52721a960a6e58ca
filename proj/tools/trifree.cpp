#include "trifree_cli.hpp"

int main(int argc, char **argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return trifree::cli::run(std::move(args), std::cout, std::cerr);
}
