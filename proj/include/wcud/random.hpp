#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

namespace wcud {

using Philox4x64Counter = std::array<std::uint64_t, 4>;
using Philox4x64Key = std::array<std::uint64_t, 2>;

// Philox4x64-10 block function (Salmon et al., "Parallel random numbers:
// as easy as 1, 2, 3"). Bit-compatible with numpy.random.Philox.
Philox4x64Counter philox4x64_10(Philox4x64Counter counter, Philox4x64Key key);

// Counter-based stream over Philox4x64-10 with a 128-bit key and a 256-bit
// counter. Each call to operator() returns the next 64-bit word; blocks are
// produced from counter values 1, 2, 3, ... so that the output matches numpy's
// Philox(key=..., counter=0).random_raw().
//
// Streams are cheap values. Two streams with different keys are independent.
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(Philox4x64Key key, Philox4x64Counter start = {0, 0, 0, 0});

    // Sub-stream for a named consumer: key = (master seed, hash(label, index)).
    static RandomStream derive(std::uint64_t master_seed, std::string_view label,
                               std::uint64_t index = 0);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    // Uniform in [0, 1) with 53 random bits.
    double next_unit();

    // Uniform integer in [0, bound), unbiased (Lemire's multiply-and-reject).
    std::uint64_t next_below(std::uint64_t bound);

    std::vector<double> units(std::size_t count);

    const Philox4x64Key& key() const { return key_; }

private:
    void refill();

    Philox4x64Key key_;
    Philox4x64Counter counter_;
    Philox4x64Counter block_{};
    int position_ = 4;
};

// 64-bit FNV-1a; used to turn consumer labels into key words.
std::uint64_t hash_label(std::string_view label);

}  // namespace wcud
