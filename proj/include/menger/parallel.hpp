#pragma once

#include <cstdlib>
#include <functional>

namespace menger {

// 0 means "whatever the runtime picks"
void set_num_threads(int n);
int num_threads();

// Runs body(block, begin, end) over a fixed partition of [0, n) into
// `blocks` contiguous ranges. The partition does not depend on the thread
// count, so per-block partial results merged in block order are bitwise
// reproducible.
void for_blocks(long n, int blocks, const std::function<void(int, long, long)>& body);

int default_blocks(long n);

}  // namespace menger
