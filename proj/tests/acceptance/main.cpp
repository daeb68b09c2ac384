#include <cstdlib>
#include <iostream>
#include <string>

#include "acceptance.hpp"

namespace ac = gmbif::acceptance;

int main(int argc, char** argv) {
  std::string sel;
  for (int i = 1; i < argc; ++i) sel += (sel.empty() ? "" : ",") + std::string(argv[i]);
  std::vector<int> ids;
  try {
    ids = sel.empty() ? ac::all_ids() : ac::parse_selection(sel);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  int failed = 0;
  for (int id : ids) {
    const auto r = ac::run(id);
    std::cout << ac::summary_line(r) << "\n";
    for (const auto& m : r.measurements)
      std::cout << "    " << (m.pass ? "ok  " : "BAD ") << m.name << " = " << m.value << "  (want "
                << m.expected << ")\n";
    for (const auto& n : r.notes) std::cout << "    note: " << n << "\n";
    if (!r.pass) ++failed;
  }
  std::cout << ids.size() - failed << "/" << ids.size() << " criteria passed\n";
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
