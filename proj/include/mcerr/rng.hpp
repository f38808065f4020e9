#pragma once

#include <cmath>
#include <cstdint>

namespace mcerr {

/// Counter-based random stream.  Each output is a stateless mix of
/// (key, counter), so identical (seed, stream_id) pairs reproduce identical
/// sequences and distinct stream_ids give statistically independent streams
/// without jump-ahead bookkeeping.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : key_(derive_key(seed, stream_id)) {}

    std::uint64_t next_u64() {
        return mix(key_ + (++counter_) * 0x9E3779B97F4A7C15ULL);
    }

    /// Uniform on the open interval (0,1); never returns an endpoint.
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Standard normal via Box-Muller (pairs cached).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::uint64_t key() const { return key_; }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 33;
        z *= 0xFF51AFD7ED558CCDULL;
        z ^= z >> 33;
        z *= 0xC4CEB9FE1A85EC53ULL;
        z ^= z >> 33;
        return z;
    }

    static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream_id) {
        std::uint64_t a = mix(seed + 0x9E3779B97F4A7C15ULL);
        std::uint64_t b = mix(stream_id + 0xD1B54A32D192ED03ULL);
        return mix(a ^ (b + 0x9E3779B97F4A7C15ULL + (a << 6) + (a >> 2)));
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace mcerr
