#include <iostream>

#include "cli_app.hpp"

int main(int argc, char** argv) {
  return defzeta::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
