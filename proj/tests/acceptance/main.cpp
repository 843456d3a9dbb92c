#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>

#include "criteria.hpp"

int main(int argc, char** argv) {
  // Optional filter: run only the listed criterion ids.
  auto selected = [&](int id) {
    if (argc < 2) return true;
    for (int i = 1; i < argc; ++i) {
      if (std::atoi(argv[i]) == id) return true;
    }
    return false;
  };

  int failures = 0;
  for (const auto& c : acceptance::all_criteria()) {
    if (!selected(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    acceptance::Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0 && secs > c.time_limit_s) {
      out.pass = false;
      out.detail += "; over time limit";
    }
    const char* verdict = out.pass ? "PASS" : "FAIL";
    if (c.informative && out.detail.rfind("skipped", 0) == 0) verdict = "SKIP";
    std::printf("%s [%d] %s%s: %s (%.1fs)\n", verdict, c.id, c.name,
                c.informative ? " (informative)" : "", out.detail.c_str(), secs);
    std::fflush(stdout);
    if (!out.pass && !c.informative) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
