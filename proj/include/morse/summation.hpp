#pragma once

#include <cmath>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace morse {

// Neumaier-compensated accumulator. Adding values in a fixed order gives
// bit-identical results independent of optimization of the surrounding code.
class StableSum {
 public:
  void add(double v) {
    double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }

  StableSum& operator+=(double v) {
    add(v);
    return *this;
  }

  double get() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Parallelism cap: MORSE_THREADS (0 or unset means auto).
inline unsigned thread_budget() {
  if (const char* env = std::getenv("MORSE_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v > 256 ? 256 : v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  return hw > 64 ? 64 : hw;
}

struct MapReduceItem {
  double value = 0.0;
  long count = 0;
};

struct MapReduceResult {
  double value = 0.0;
  long count = 0;
};

// Deterministic sample reduction: indices are grouped into fixed blocks of
// `block_size`, each block is summed compensated in index order, and block
// results are folded in block order. The grouping does not depend on the
// thread count, so results are bit-identical for any level of parallelism.
// If fn throws, the exception from the lowest-indexed failing block is
// rethrown after all workers join.
template <class Fn>
MapReduceResult blocked_mapreduce(std::size_t n, Fn&& fn, unsigned threads = 0,
                                  std::size_t block_size = 4096) {
  if (n == 0) return {};
  const std::size_t nblocks = (n + block_size - 1) / block_size;
  std::vector<double> values(nblocks, 0.0);
  std::vector<long> counts(nblocks, 0);
  std::vector<std::exception_ptr> errors(nblocks);

  auto run_block = [&](std::size_t b) {
    const std::size_t lo = b * block_size;
    const std::size_t hi = std::min(n, lo + block_size);
    try {
      StableSum s;
      long c = 0;
      for (std::size_t i = lo; i < hi; ++i) {
        MapReduceItem item = fn(i);
        s.add(item.value);
        c += item.count;
      }
      values[b] = s.get();
      counts[b] = c;
    } catch (...) {
      errors[b] = std::current_exception();
    }
  };

  unsigned budget = threads == 0 ? thread_budget() : threads;
  if (budget <= 1 || nblocks <= 1) {
    for (std::size_t b = 0; b < nblocks; ++b) run_block(b);
  } else {
    if (budget > nblocks) budget = static_cast<unsigned>(nblocks);
    std::vector<std::thread> pool;
    pool.reserve(budget);
    for (unsigned w = 0; w < budget; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t b = w; b < nblocks; b += budget) run_block(b);
      });
    }
    for (auto& t : pool) t.join();
  }

  for (std::size_t b = 0; b < nblocks; ++b)
    if (errors[b]) std::rethrow_exception(errors[b]);

  MapReduceResult out;
  StableSum total;
  for (std::size_t b = 0; b < nblocks; ++b) {
    total.add(values[b]);
    out.count += counts[b];
  }
  out.value = total.get();
  return out;
}

}  // namespace morse
