#include <iostream>

#include "gibbsloss/acceptance.hpp"

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : GIBBSLOSS_FIXTURE_DIR;
  bool all = true;
  for (const auto& r : gibbsloss::acceptance::run_all(dir)) {
    std::cout << gibbsloss::acceptance::format_line(r) << std::endl;
    all = all && r.passed;
  }
  return all ? 0 : 1;
}
