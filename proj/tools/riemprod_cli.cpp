#include <string>
#include <vector>

#include "riemprod/cli.hpp"

int main(int argc, char** argv) {
  return riemprod::cli::run(std::vector<std::string>(argv, argv + argc));
}
