#include <unistd.h>

#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dgla::cli::run(args, std::cout, std::cerr, dgla::cli::color_enabled(isatty(STDOUT_FILENO) != 0));
}
