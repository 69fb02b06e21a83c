#pragma once

#include <functional>

namespace qcausal {

// Runs body(0..count-1) on up to `workers` threads (0 = hardware threads).
// The first exception thrown by any task is rethrown after all threads join.
void parallel_for(int count, int workers, const std::function<void(int)>& body);

int default_workers();

}  // namespace qcausal
