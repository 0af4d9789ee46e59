#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace icestack {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Shape disagreement between tensors.
class ShapeError : public Error {
public:
    using Error::Error;
};

// Bad configuration value (out-of-range probability, odd width, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

// Malformed input data: failed sample validation, parse errors.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Degenerate geometry: collinear or duplicate points.
class GeometryError : public Error {
public:
    using Error::Error;
};

// Filesystem-level failure (open/read/write).
class IoError : public Error {
public:
    using Error::Error;
};

// Broken caller contract (non-scalar loss, epoch out of schedule range, ...).
class ContractError : public Error {
public:
    using Error::Error;
};

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Combine two seeds into a derived stream seed.
inline std::uint64_t mix_seeds(std::uint64_t a, std::uint64_t b) {
    return mix64(a ^ (0x9E3779B97F4A7C15ULL + (b << 6) + (b >> 2)));
}

// Sequential splitmix64 generator. Fully specified, so streams are
// bit-identical across platforms and standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Inclusive integer range.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (hi < lo) throw ContractError("uniform_int: empty range");
        std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
        if (range == 0) return static_cast<std::int64_t>(next_u64());  // full 64-bit range
        while (true) {
            std::uint64_t x = next_u64();
            std::uint64_t r = x % range;
            if (x - r <= UINT64_MAX - range + 1) return lo + static_cast<std::int64_t>(r);
        }
    }

    double normal() {
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 1e-300);
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

private:
    std::uint64_t state_;
};

// Counter-based generator: the i-th draw depends only on (key, i), so a
// stream keyed by (seed, epoch, batch) replays identically regardless of
// how previous batches consumed it.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key = 0) : key_(key) {}

    void rekey(std::uint64_t key) {
        key_ = key;
        counter_ = 0;
    }

    double uniform() {
        std::uint64_t h = mix64(key_ ^ mix64(counter_++));
        return static_cast<double>(h >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

// Log verbosity from ICESTACK_LOG: quiet < info (default) < debug.
enum class LogLevel { quiet = 0, info = 1, debug = 2 };
LogLevel log_level();
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

}  // namespace icestack
