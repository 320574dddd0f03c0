#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace bandgas {

// worker count: BANDGAS_THREADS if set and positive, else hardware concurrency
int thread_count();

// calls body(i) for i in [0, n); static contiguous chunks; first exception is rethrown
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace bandgas
