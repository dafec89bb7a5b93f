#ifndef CDIAG_UTIL_HPP
#define CDIAG_UTIL_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdiag {

enum class ErrorKind {
  Parameter,    // out-of-range or malformed arguments
  Validation,   // structural invariant violated (bad table, non-functor, ...)
  Bounds,       // bounded view does not cover the request
  Domain,       // precondition on the mathematical input violated
  Unsupported,  // input outside the exactly-decidable fragment
  Parse,        // DSL lexical/syntax/semantic errors
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

inline void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2);
}

struct VecIntHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = v.size();
    for (int x : v) hash_combine(h, static_cast<std::size_t>(x) + 1);
    return h;
  }
};

// Thread count for internal parallelism; reads CDIAG_THREADS once (>=1).
int thread_count();

// Runs fn(i) for i in [0, n); parallel when thread_count() > 1. Results must
// be written to disjoint slots so that the outcome is order-independent.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace cdiag

#endif  // CDIAG_UTIL_HPP
