#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <stdexcept>
#include <vector>

#include "gmoduli/parallel.hpp"

using gmoduli::run_tasks;

TEST_CASE("run_tasks covers every index exactly once") {
  for (int threads : {1, 2, 8}) {
    std::vector<int> hits(100, 0);
    run_tasks(100, threads, [&](int i) { hits[static_cast<size_t>(i)] += 1; });
    CHECK(std::accumulate(hits.begin(), hits.end(), 0) == 100);
    CHECK(*std::min_element(hits.begin(), hits.end()) == 1);
  }
  run_tasks(0, 4, [](int) { throw std::logic_error("never runs"); });
}

TEST_CASE("run_tasks rethrows the lowest-index failure") {
  for (int threads : {1, 3, 8}) {
    std::vector<int> done(50, 0);
    std::string message;
    try {
      run_tasks(50, threads, [&](int i) {
        if (i == 7 || i == 31) throw std::runtime_error("task " + std::to_string(i));
        done[static_cast<size_t>(i)] = 1;
      });
      FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
      message = e.what();
    }
    CHECK(message == "task 7");
    // the remaining tasks still ran to completion
    int completed = std::accumulate(done.begin(), done.end(), 0);
    CHECK(completed == 48);
  }
}
