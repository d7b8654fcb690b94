#include "twobody/cli.hpp"

int main(int argc, char** argv) { return twobody::dispatch(argc, argv); }
