#ifndef ZEROSET_OPCOUNT_HPP
#define ZEROSET_OPCOUNT_HPP

#include <bit>
#include <cstdint>

namespace zeroset {

// Counts scalar ring operations. One interval (or complex) add/mul counts as
// one operation. A power x^e is weighted as the multiplications a
// square-and-multiply expansion performs: floor(log2 e) + popcount(e) - 1.
struct OpCounter {
    std::uint64_t adds = 0;
    std::uint64_t muls = 0;
    std::uint64_t pow_muls = 0;

    void count_add(std::uint64_t n = 1) { adds += n; }
    void count_mul(std::uint64_t n = 1) { muls += n; }
    void count_pow(unsigned e) { pow_muls += pow_weight(e); }

    static std::uint64_t pow_weight(unsigned e) {
        if (e <= 1) return 0;
        return static_cast<std::uint64_t>(std::bit_width(e) - 1) + std::popcount(e) - 1;
    }

    std::uint64_t total() const { return adds + muls + pow_muls; }

    void reset() { adds = muls = pow_muls = 0; }

    OpCounter& operator+=(const OpCounter& o) {
        adds += o.adds;
        muls += o.muls;
        pow_muls += o.pow_muls;
        return *this;
    }
};

struct OpReport {
    std::uint64_t adds = 0;
    std::uint64_t muls = 0;
    std::uint64_t pows = 0;
    std::uint64_t total = 0;
};

inline OpReport op_count_report(const OpCounter& c) {
    return OpReport{c.adds, c.muls, c.pow_muls, c.total()};
}

} // namespace zeroset

#endif // ZEROSET_OPCOUNT_HPP
