#include "dqc/experiments/seeding.hpp"

namespace dqc::experiments {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys) {
    std::uint64_t h = mix64(master ^ 0x6471635F73656564ULL);
    for (std::uint64_t k : keys) {
        h = mix64(h ^ k);
    }
    return h;
}

}  // namespace dqc::experiments
