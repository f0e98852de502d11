#ifndef SUBWAVE_PARALLEL_HPP
#define SUBWAVE_PARALLEL_HPP

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace subwave {

/// Run fn(i) for i in [0, n) on `threads` workers. Tasks are pure and
/// write to index-addressed slots, so the outcome does not depend on the
/// scheduling. The first exception (lowest index) is rethrown.
inline void parallel_for_index(int n, int threads, const std::function<void(int)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex err_mutex;
  int err_index = n;
  std::exception_ptr err;
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (i < err_index) {
          err_index = i;
          err = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  const int nw = std::min(threads, n);
  pool.reserve(nw);
  for (int t = 0; t < nw; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

/// Worker count: explicit argument > SUBWAVE_THREADS > hardware concurrency.
int default_thread_count(int requested = 0);

}  // namespace subwave

#endif
