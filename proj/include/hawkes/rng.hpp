#pragma once

#include <array>
#include <cstdint>

namespace hawkes {

// Philox4x32-10 counter-based generator. A stream is (key, counter); jumping
// to any point in the stream is O(1), and distinct streams keyed by
// (seed, replica, site, immigrant) are independent for all practical
// purposes. This is what makes parallel simulation reproducible: the numbers
// an event consumes depend only on its stream id and draw index, never on
// which thread got there first.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key);

// 64-bit mix used to derive stream keys from structured ids.
std::uint64_t mix64(std::uint64_t x);

// Sequential view over one Philox stream.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          ctr_{0, 0, static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)},
          have_(0) {}

    // Derive a stream id from up to three structured indices.
    static std::uint64_t stream_id(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
        return mix64(a + 0x9e3779b97f4a7c15ULL * (b + 1) + 0x94d049bb133111ebULL * (c + 1));
    }

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    // uniform in [0, 1)
    double uniform();
    // uniform in (0, 1]; safe argument for log()
    double uniform_pos();
    double exponential(double rate);
    // Poisson by inversion; intended for small means (< ~30).
    int poisson(double mean);

  private:
    void refill();
    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> ctr_;
    std::array<std::uint32_t, 4> buf_{};
    int have_;
};

} // namespace hawkes
