// Acceptance gate. Prints one line per criterion; exit code is the number
// of failing criteria.

#include <iostream>

#include "hypkg/acceptance.hpp"

int main() {
  auto results = hypkg::acceptance::run_all(std::cout);
  return hypkg::acceptance::exit_code(results);
}
