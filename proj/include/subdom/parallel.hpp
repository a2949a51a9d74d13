#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <type_traits>
#include <vector>

namespace subdom {

/// Runs fn(0), ..., fn(count - 1) on up to `workers` threads and returns the
/// results in index order. Each index writes only its own slot, so the output
/// does not depend on the worker count as long as fn(i) depends only on i.
template <class Fn>
auto map_trials(std::size_t count, std::size_t workers, Fn&& fn) {
  using Result = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<Result> out(count);
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  const std::size_t n = workers < count ? workers : count;
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  pool.reserve(n);
  for (std::size_t w = 0; w < n; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += n) out[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace subdom
