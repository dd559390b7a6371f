#include "catord/rng.hpp"

namespace catord {

namespace {

// splitmix64 finalizer; decorrelates derived stream ids.
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

RngStream RngStream::derive(std::uint64_t substream) const {
    return RngStream{seed, mix64(stream ^ mix64(substream))};
}

std::mt19937_64 RngStream::engine() const {
    std::seed_seq seq{
        static_cast<std::uint32_t>(seed),
        static_cast<std::uint32_t>(seed >> 32),
        static_cast<std::uint32_t>(stream),
        static_cast<std::uint32_t>(stream >> 32),
    };
    return std::mt19937_64(seq);
}

}  // namespace catord
