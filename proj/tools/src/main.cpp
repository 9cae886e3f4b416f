#include <iostream>

#include "ptnoise_cli/commands.hpp"

int main(int argc, char** argv) {
  return ptnoise::cli::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
