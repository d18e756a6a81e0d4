#pragma once

#include <compare>
#include <cstdint>
#include <vector>

// Minimal arbitrary-precision unsigned integer: just enough for exact
// factorials, binomials and their natural logs. Little-endian 64-bit limbs.

namespace latinkit::bounds {

class BigNat {
public:
    BigNat() = default;  // zero
    explicit BigNat(std::uint64_t v);

    static BigNat factorial(unsigned n);
    static BigNat binomial(std::uint64_t n, std::uint64_t k);
    static BigNat pow2(unsigned e);

    void mul(std::uint64_t m);
    // division must be exact; throws otherwise
    void div_exact(std::uint64_t d);
    void add(const BigNat& other);
    void add(std::uint64_t v);

    bool is_zero() const { return limbs_.empty(); }
    std::size_t bit_length() const;

    // natural log; relative error a few ulp of long double. Throws on zero.
    long double log() const;

    std::strong_ordering operator<=>(const BigNat& other) const;
    bool operator==(const BigNat& other) const = default;

private:
    void trim();
    std::vector<std::uint64_t> limbs_;
};

}  // namespace latinkit::bounds
