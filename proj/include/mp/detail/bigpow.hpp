#pragma once

#include <cstdint>
#include <vector>

// Exact comparison of integer powers, for radix computations that must not
// rely on native floating point.

namespace mp::detail {

// Little-endian base-2^32 magnitude.
class BigNat {
public:
    BigNat() : limb_{0} {}
    explicit BigNat(std::uint64_t v) {
        limb_.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
        if (v >> 32) limb_.push_back(static_cast<std::uint32_t>(v >> 32));
    }

    void mul_small(std::uint64_t m) {
        std::uint64_t carry = 0;
        for (auto& l : limb_) {
            // m <= 2^32 keeps the product within 64 bits
            std::uint64_t v = static_cast<std::uint64_t>(l) * m + carry;
            l = static_cast<std::uint32_t>(v & 0xffffffffu);
            carry = v >> 32;
        }
        while (carry) {
            limb_.push_back(static_cast<std::uint32_t>(carry & 0xffffffffu));
            carry >>= 32;
        }
    }

    int compare(const BigNat& o) const {
        std::size_t n = limb_.size() > o.limb_.size() ? limb_.size() : o.limb_.size();
        for (std::size_t i = n; i-- > 0;) {
            std::uint32_t a = i < limb_.size() ? limb_[i] : 0;
            std::uint32_t b = i < o.limb_.size() ? o.limb_[i] : 0;
            if (a != b) return a > b ? +1 : -1;
        }
        return 0;
    }

private:
    std::vector<std::uint32_t> limb_;
};

// Exact pow: b^e with b < 2^32.
inline BigNat big_pow(std::uint64_t b, std::int64_t e) {
    BigNat r(1);
    for (std::int64_t i = 0; i < e; ++i) r.mul_small(b);
    return r;
}

// Exact three-way comparison b1^e1 <=> b2^e2 (all nonnegative exponents).
inline int cmp_pow(std::uint64_t b1, std::int64_t e1, std::uint64_t b2, std::int64_t e2) {
    return big_pow(b1, e1).compare(big_pow(b2, e2));
}

} // namespace mp::detail
