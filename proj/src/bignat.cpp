#include "latinkit/bignat.hpp"

#include <bit>
#include <cmath>

#include "latinkit/core.hpp"

namespace latinkit::bounds {

BigNat::BigNat(std::uint64_t v) {
    if (v) limbs_.push_back(v);
}

void BigNat::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

void BigNat::mul(std::uint64_t m) {
    if (m == 0 || is_zero()) {
        limbs_.clear();
        return;
    }
    unsigned __int128 carry = 0;
    for (std::uint64_t& limb : limbs_) {
        unsigned __int128 prod = static_cast<unsigned __int128>(limb) * m + carry;
        limb = static_cast<std::uint64_t>(prod);
        carry = prod >> 64;
    }
    if (carry) limbs_.push_back(static_cast<std::uint64_t>(carry));
}

void BigNat::div_exact(std::uint64_t d) {
    if (d == 0) throw error("division by zero");
    unsigned __int128 rem = 0;  // read-only remainder pass, so a throw leaves *this intact
    for (std::size_t i = limbs_.size(); i-- > 0;) rem = ((rem << 64) | limbs_[i]) % d;
    if (rem != 0) throw error("inexact division in big integer arithmetic");
    rem = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        unsigned __int128 cur = (rem << 64) | limbs_[i];
        limbs_[i] = static_cast<std::uint64_t>(cur / d);
        rem = cur % d;
    }
    trim();
}

void BigNat::add(const BigNat& other) {
    if (other.limbs_.size() > limbs_.size()) limbs_.resize(other.limbs_.size(), 0);
    unsigned __int128 carry = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        unsigned __int128 sum = static_cast<unsigned __int128>(limbs_[i]) + carry +
                                (i < other.limbs_.size() ? other.limbs_[i] : 0);
        limbs_[i] = static_cast<std::uint64_t>(sum);
        carry = sum >> 64;
    }
    if (carry) limbs_.push_back(static_cast<std::uint64_t>(carry));
}

void BigNat::add(std::uint64_t v) { add(BigNat(v)); }

std::size_t BigNat::bit_length() const {
    if (is_zero()) return 0;
    return 64 * (limbs_.size() - 1) + (64 - std::countl_zero(limbs_.back()));
}

long double BigNat::log() const {
    if (is_zero()) throw error("log of zero");
    // top two limbs carry more precision than a long double mantissa
    const std::size_t k = limbs_.size();
    long double top = static_cast<long double>(limbs_[k - 1]);
    if (k >= 2) top = top * 18446744073709551616.0L + static_cast<long double>(limbs_[k - 2]);
    std::size_t shifted = k >= 2 ? (k - 2) * 64 : 0;
    return std::log(top) + static_cast<long double>(shifted) * 0.69314718055994530941723212145818L;
}

std::strong_ordering BigNat::operator<=>(const BigNat& other) const {
    if (limbs_.size() != other.limbs_.size())
        return limbs_.size() <=> other.limbs_.size();
    for (std::size_t i = limbs_.size(); i-- > 0;)
        if (limbs_[i] != other.limbs_[i]) return limbs_[i] <=> other.limbs_[i];
    return std::strong_ordering::equal;
}

BigNat BigNat::factorial(unsigned n) {
    BigNat r(1);
    for (unsigned i = 2; i <= n; ++i) r.mul(i);
    return r;
}

BigNat BigNat::binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return BigNat();
    if (k > n - k) k = n - k;
    BigNat r(1);
    for (std::uint64_t i = 1; i <= k; ++i) {
        r.mul(n - k + i);
        r.div_exact(i);
    }
    return r;
}

BigNat BigNat::pow2(unsigned e) {
    BigNat r;
    r.limbs_.assign(e / 64 + 1, 0);
    r.limbs_.back() = 1ull << (e % 64);
    return r;
}

}  // namespace latinkit::bounds
