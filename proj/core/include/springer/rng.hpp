#pragma once

#include <complex>
#include <cstdint>
#include <string_view>

#include <Eigen/Core>

namespace springer {

/// Deterministic random stream with counter-based derivation.
///
/// Every stream is keyed by (seed, name, trial). Streams for different
/// trials of one check are independent by construction, so trials can run
/// in any order, on any number of threads, and reproduce bit-identically.
/// The derivation is:
///
///   state0 = mix64(seed ^ fnv1a64(name)) + 0x9E3779B97F4A7C15 * trial
///
/// with splitmix64 stepping from state0; mix64 is the splitmix64 finalizer.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::string_view name, std::uint64_t trial);

    /// Human-readable description of the derivation scheme, echoed in
    /// verification reports so a run can be reproduced externally.
    static const char* derivation();

    std::uint64_t next_u64();

    /// Uniform on [0, 1).
    double uniform();

    /// Standard normal (Box-Muller, deterministic per stream).
    double gaussian();

    /// Complex standard normal: (g1 + i g2) / sqrt(2).
    std::complex<double> cgaussian();

    /// Vector of independent complex standard normals.
    Eigen::VectorXcd cgaussian_vector(int n);

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);

private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// FNV-1a over the bytes of a string, used for stream naming.
std::uint64_t fnv1a64(std::string_view text);

} // namespace springer
