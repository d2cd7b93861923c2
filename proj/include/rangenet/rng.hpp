#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace rangenet {

/// Independent sub-streams of one round. Each consumer gets its own stream so
/// that, e.g., enabling a diffusion observer never perturbs the network
/// trajectory.
enum class StreamPurpose : std::uint64_t {
    Model = 1,
    Metrics = 2,
    Diffusion = 3,
};

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/*!
 * Deterministic pseudo-random stream.
 *
 * Backed by std::mt19937_64, whose output sequence is fixed by the standard.
 * The standard <random> distributions are implementation-defined, so all
 * variate generation here is done by hand to keep trajectories bit-identical
 * across standard libraries.
 */
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    /// Stream for (seed, round, purpose); distinct triples give unrelated
    /// engine seeds.
    static RngStream for_round(std::uint64_t seed, std::uint64_t round,
                               StreamPurpose purpose = StreamPurpose::Model)
    {
        std::uint64_t s = splitmix64(seed);
        s = splitmix64(s ^ splitmix64(round + 0x632BE59BD9B4E019ULL));
        s = splitmix64(s ^ static_cast<std::uint64_t>(purpose));
        return RngStream(s);
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t uniform_index(std::uint64_t n)
    {
        // Rejection on the top of the range removes modulo bias.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// True with probability p. p <= 0 never fires, p >= 1 always fires.
    bool bernoulli(double p) { return uniform01() < p; }

    template <class T>
    void shuffle(std::span<T> values)
    {
        for (std::size_t i = values.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(uniform_index(i));
            using std::swap;
            swap(values[i - 1], values[j]);
        }
    }

    bool operator==(RngStream const&) const = default;

private:
    std::mt19937_64 engine_;
};

} // namespace rangenet
