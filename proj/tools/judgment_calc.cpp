#include <unistd.h>

#include <iostream>
#include <string>
#include <vector>

#include "judgment/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return judgment::cli::run(args, std::cin, std::cout, std::cerr, ::isatty(STDIN_FILENO) != 0);
}
