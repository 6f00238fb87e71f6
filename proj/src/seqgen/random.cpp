#include "wcud/random.hpp"

#include <stdexcept>

namespace wcud {

__extension__ using u128 = unsigned __int128;

namespace {

constexpr std::uint64_t kPhiloxM0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kPhiloxM1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kPhiloxW0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kPhiloxW1 = 0xBB67AE8584CAA73BULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
    const u128 product = static_cast<u128>(a) * b;
    hi = static_cast<std::uint64_t>(product >> 64);
    lo = static_cast<std::uint64_t>(product);
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

void increment(Philox4x64Counter& c) {
    for (auto& word : c) {
        if (++word != 0) return;
    }
}

}  // namespace

Philox4x64Counter philox4x64_10(Philox4x64Counter ctr, Philox4x64Key key) {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kPhiloxW0;
            key[1] += kPhiloxW1;
        }
        std::uint64_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
        mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

std::uint64_t hash_label(std::string_view label) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : label) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

RandomStream::RandomStream(Philox4x64Key key, Philox4x64Counter start)
    : key_(key), counter_(start) {}

RandomStream RandomStream::derive(std::uint64_t master_seed, std::string_view label,
                                  std::uint64_t index) {
    const std::uint64_t tag = splitmix64(hash_label(label) ^ splitmix64(index));
    return RandomStream({master_seed, tag});
}

void RandomStream::refill() {
    increment(counter_);
    block_ = philox4x64_10(counter_, key_);
    position_ = 0;
}

RandomStream::result_type RandomStream::operator()() {
    if (position_ >= 4) refill();
    return block_[position_++];
}

double RandomStream::next_unit() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

std::uint64_t RandomStream::next_below(std::uint64_t bound) {
    if (bound == 0) throw std::domain_error("next_below: bound must be positive");
    std::uint64_t x = (*this)();
    u128 m = static_cast<u128>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            x = (*this)();
            m = static_cast<u128>(x) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

std::vector<double> RandomStream::units(std::size_t count) {
    std::vector<double> out(count);
    for (auto& v : out) v = next_unit();
    return out;
}

}  // namespace wcud
