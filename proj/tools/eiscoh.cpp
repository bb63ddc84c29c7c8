#include "eiscoh/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return eiscoh::cli::run(std::move(args), std::cout, std::cerr);
}
