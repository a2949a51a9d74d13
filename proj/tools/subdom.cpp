#include "subdom/cli/parse.hpp"

int main(int argc, char** argv) { return subdom::cli::main(argc, argv); }
