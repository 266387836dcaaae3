#include "springer/rng.hpp"

#include <cmath>

namespace springer {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

} // namespace

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

RngStream::RngStream(std::uint64_t seed, std::string_view name, std::uint64_t trial)
    : state_(mix64(seed ^ fnv1a64(name)) + kGolden * trial) {}

const char* RngStream::derivation() {
    return "splitmix64; state0 = mix64(seed xor fnv1a64(name)) + 0x9E3779B97F4A7C15 * trial";
}

std::uint64_t RngStream::next_u64() {
    state_ += kGolden;
    return mix64(state_);
}

double RngStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

std::complex<double> RngStream::cgaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re * M_SQRT1_2, im * M_SQRT1_2};
}

Eigen::VectorXcd RngStream::cgaussian_vector(int n) {
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) {
        v(i) = cgaussian();
    }
    return v;
}

std::uint64_t RngStream::below(std::uint64_t bound) {
    // Rejection-free modulo is fine here: bound is tiny relative to 2^64.
    return next_u64() % bound;
}

} // namespace springer
