#include "lutdec/harness.hpp"

int main(int argc, char** argv) { return lutdec::cli_main(argc, argv); }
