#include <string>
#include <vector>

#include "tgideal/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return tgideal::cli_dispatch(args);
}
