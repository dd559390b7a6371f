#pragma once

#include <cstdint>
#include <random>

namespace catord {

// Handle for a reproducible random stream. A (seed, stream) pair always
// yields the same draw sequence, so parallel work is split by deriving one
// substream per task up front; the result is then independent of thread
// count and scheduling.
struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    RngStream derive(std::uint64_t substream) const;
    std::mt19937_64 engine() const;
};

}  // namespace catord
