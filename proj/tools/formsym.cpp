#include <iostream>

#include "formsym/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return formsym::cli::run(std::move(args), std::cout, std::cerr);
}
