#pragma once

#include <cstdint>
#include <string>

namespace windband {

// Seeded 64-bit PRNG (splitmix64). Used for every random decision in the
// project so that results are bit-reproducible across platforms; the
// standard <random> distributions are implementation-defined and are
// deliberately avoided.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n). Rejection-free modulo is fine here: n is
    // tiny relative to 2^64 so the bias is far below reproducibility needs,
    // but we keep the rejection loop anyway to make the stream exact.
    std::uint64_t next_below(std::uint64_t n);

    // Standard normal via Box-Muller on two splitmix draws.
    double next_gaussian();

    // Derives an independent stream, e.g. one per generated day.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index);

private:
    std::uint64_t state_;
};

// ISO-8601 calendar-date helpers for synthetic day ids.
std::string iso_date_add(const std::string& iso_date, long days);
bool is_iso_date(const std::string& s);

// FNV-1a 64-bit over a file's bytes, hex-encoded; provenance stamp for
// band files.
std::string fnv1a_file_hex(const std::string& path);

// Shortest round-trippable decimal for report files ("%.12g"); keeps
// emitted CSV/JSON byte-stable across runs.
std::string format_num(double v);

} // namespace windband
