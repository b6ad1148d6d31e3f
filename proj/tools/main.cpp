#include "meshcurv/cli.hpp"

int main(int argc, char** argv) {
    return meshcurv::cli_main(argc, argv);
}
