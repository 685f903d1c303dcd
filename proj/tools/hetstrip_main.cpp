#include <string>
#include <vector>

#include "hetstrip/cli/run_config.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return hetstrip::cli::run_command(args);
}
