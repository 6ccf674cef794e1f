#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

namespace specband {

// Thrown when a numerical routine fails (eigensolver non-convergence,
// bracketing failure, truncation too small). CLI maps this to exit code 1.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Worker cap for parallel loops. 0 = hardware concurrency (the default).
void set_max_threads(unsigned n);
unsigned max_threads();

// Runs body(i) for i in [0, n). Iterations must be independent; results
// should be written to preallocated per-index slots so that the output is
// identical to the serial order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// "%.12e" rendering used by every CSV writer.
std::string format_sci(double x);

} // namespace specband
