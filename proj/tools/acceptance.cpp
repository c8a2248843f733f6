#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "csf/acceptance.hpp"
#include "csf/error.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int k = 1; k < argc; ++k) ids.push_back(std::atoi(argv[k]));
  if (ids.empty()) {
    for (int id = 1; id <= csf::kCriterionCount; ++id) ids.push_back(id);
  }
  try {
    csf::AcceptanceSuite suite;
    int failed = 0;
    for (int id : ids) {
      const auto r = suite.run(id);
      std::printf("%s\n", csf::format_line(r).c_str());
      std::fflush(stdout);
      if (!r.pass) ++failed;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(ids.size()) - failed, ids.size());
    return failed ? 1 : 0;
  } catch (const csf::InvalidInput& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
