#include <iostream>
#include <string>
#include <vector>

#include "fadingqkd/cli/app.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return fqkd::cli::run_app(args, {FADINGQKD_PRESET_DIR, std::cout, std::cerr});
}
