#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace poslab::detail {

// Worker cap: POSLAB_THREADS if set (clamped to [1,64]), else hardware
// concurrency. Results never depend on this value, only wall time does.
inline int worker_count() {
    if (const char* env = std::getenv("POSLAB_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<int>(std::min(v, 64L));
        return 1;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 64u));
}

}  // namespace poslab::detail
