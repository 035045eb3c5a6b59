#ifndef DCNC_PARALLEL_H_
#define DCNC_PARALLEL_H_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace dcnc {

// Evaluates fn(i) for i in [0, count) on up to `threads` workers and returns
// the results in index order, so output never depends on scheduling. The
// first exception (by index) is rethrown.
template <typename Result>
std::vector<Result> ParallelMap(size_t count, int threads,
                                const std::function<Result(size_t)>& fn) {
  std::vector<Result> out(count);
  const size_t workers =
      std::min<size_t>(count, static_cast<size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<size_t> error_index(workers, count);
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      // Strided assignment keeps per-thread work balanced.
      for (size_t i = w; i < count; i += workers) {
        try {
          out[i] = fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
          error_index[w] = i;
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  size_t first = workers;
  for (size_t w = 0; w < workers; ++w) {
    if (errors[w] && (first == workers || error_index[w] < error_index[first])) first = w;
  }
  if (first < workers) std::rethrow_exception(errors[first]);
  return out;
}

}  // namespace dcnc

#endif  // DCNC_PARALLEL_H_
