#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "zakharov/parallel.hpp"

using namespace zakharov;

TEST_CASE("worker_count honors the environment") {
  setenv("ZAKHAROV_THREADS", "5", 1);
  CHECK(worker_count() == 5);
  setenv("ZAKHAROV_THREADS", "junk", 1);
  CHECK(worker_count() >= 1);
  unsetenv("ZAKHAROV_THREADS");
  CHECK(worker_count() >= 1);
}

TEST_CASE("parallel_for visits every index once") {
  for (const char* threads : {"1", "4"}) {
    setenv("ZAKHAROV_THREADS", threads, 1);
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
    for (const auto& h : hits) CHECK(h.load() == 1);
    parallel_for(0, [&](std::size_t) { FAIL("no work expected"); });
  }
  unsetenv("ZAKHAROV_THREADS");
}

TEST_CASE("parallel_for rethrows the first failure") {
  setenv("ZAKHAROV_THREADS", "3", 1);
  CHECK_THROWS_AS(parallel_for(50, [](std::size_t i) {
                    if (i == 17) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
  unsetenv("ZAKHAROV_THREADS");
}
