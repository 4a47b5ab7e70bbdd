#ifndef EVIDENT_PARALLEL_HPP
#define EVIDENT_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace evident::par {

/// Execution mode for replication loops. Every loop body writes only to its
/// own index's slot, and aggregation happens serially afterwards, so both
/// modes produce byte-identical results; the serial path is kept as the
/// reference implementation for testing and benchmarking.
enum class Mode { serial, openmp };

/// Worker cap from EVIDENT_THREADS (0 or unset = auto).
int thread_count();

/// openmp when compiled with OpenMP support, else serial.
Mode default_mode();

/// Runs body(i) for i in [0, n). In openmp mode iterations are distributed
/// across threads; bodies must touch disjoint state.
void for_each_index(std::size_t n, Mode mode, const std::function<void(std::size_t)>& body);

}  // namespace evident::par

#endif  // EVIDENT_PARALLEL_HPP
