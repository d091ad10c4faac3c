#include "hfm/threading.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

#include "hfm/error.hpp"

namespace hfm {
namespace {
std::atomic<int> g_threads{1};
}

void set_thread_count(int n) {
  if (n < 1) throw InvalidArgument("thread count must be >= 1");
  g_threads.store(n);
}

int thread_count() { return g_threads.load(); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n);
  std::vector<std::exception_ptr> errors(n);
  const auto run = [&](std::size_t w) {
    for (std::size_t i = w; i < n; i += workers) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run, w);
  run(0);
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace hfm
