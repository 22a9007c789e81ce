#include <iostream>
#include <string>
#include <vector>

#include <globrep/cli.hpp>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return globrep::run_command(args, std::cout, std::cerr);
}
