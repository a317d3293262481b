#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spreadnet {

/// Raised on bad user input or violated preconditions (CLI exit code 1).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

inline double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

/// Floor division for possibly-negative numerators (timestamps before 1970).
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

/// Quantile with linear interpolation between closest ranks. `sorted` must be
/// ascending and non-empty; q in [0, 1].
double quantile(const std::vector<double>& sorted, double q);

/// FNV-1a 64-bit over a byte range.
std::uint64_t fnv1a64(const void* data, std::size_t len);

/// FNV-1a digest of a file's contents as a 16-char hex string.
std::string file_digest(const std::string& path);

std::string to_hex(std::uint64_t v);

/// Shortest decimal that round-trips a double exactly.
std::string fmt_full(double v);

/// Compact decimal with 9 significant digits, for report CSVs.
std::string fmt_short(double v);

struct Histogram {
    double lo = 0.0;
    double hi = 1.0;
    std::vector<std::uint64_t> counts;

    double bin_low(std::size_t k) const { return lo + (hi - lo) * double(k) / double(counts.size()); }
    double bin_high(std::size_t k) const { return lo + (hi - lo) * double(k + 1) / double(counts.size()); }
};

/// Values outside [lo, hi] are clipped into the edge bins.
Histogram make_histogram(const std::vector<double>& values, std::size_t nbins, double lo, double hi);

/// Static-partition parallel map over [0, n). Results must be written to
/// per-index slots so the outcome is independent of scheduling.
/// threads == 0 picks hardware concurrency; threads == 1 runs inline.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace spreadnet
