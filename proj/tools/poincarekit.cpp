#include "poincarekit/cli.hpp"

int main(int argc, char** argv) { return poincarekit::cli::run(argc, argv); }
