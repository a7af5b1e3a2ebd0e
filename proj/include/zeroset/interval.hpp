#ifndef ZEROSET_INTERVAL_HPP
#define ZEROSET_INTERVAL_HPP

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace zeroset {

namespace detail {

inline double prev_float(double x) {
    return std::nextafter(x, -std::numeric_limits<double>::infinity());
}

inline double next_float(double x) {
    return std::nextafter(x, std::numeric_limits<double>::infinity());
}

// a + b rounded toward -inf / +inf. The Knuth two-sum error term tells us
// whether the nearest-rounded sum is exact, so exact results stay exact.
inline double add_down(double a, double b) {
    double s = a + b;
    double z = s - a;
    double err = (a - (s - z)) + (b - z);
    return err < 0.0 ? prev_float(s) : s;
}

inline double add_up(double a, double b) {
    double s = a + b;
    double z = s - a;
    double err = (a - (s - z)) + (b - z);
    return err > 0.0 ? next_float(s) : s;
}

// a * b rounded toward -inf / +inf via the fma residual. In the subnormal
// range (including underflow to zero) the residual itself may round to zero,
// so widen unconditionally there.
inline bool mul_maybe_inexact(double p, double a, double b) {
    return std::abs(p) < std::numeric_limits<double>::min() && a != 0.0 && b != 0.0;
}

inline double mul_down(double a, double b) {
    double p = a * b;
    double err = std::fma(a, b, -p);
    if (err < 0.0 || mul_maybe_inexact(p, a, b)) return prev_float(p);
    return p;
}

inline double mul_up(double a, double b) {
    double p = a * b;
    double err = std::fma(a, b, -p);
    if (err > 0.0 || mul_maybe_inexact(p, a, b)) return next_float(p);
    return p;
}

// x^e for x >= 0 with directed rounding. Sequential multiplication keeps the
// rounding sequence aligned with repeated interval multiplication, so the
// monotone power below is contained in the repeated-product enclosure. All
// partial products are non-negative, so per-step directed rounding composes.
inline double pow_mag_down(double x, unsigned e) {
    double acc = x;
    for (unsigned i = 1; i < e; ++i) acc = mul_down(acc, x);
    return acc < 0.0 ? 0.0 : acc;
}

inline double pow_mag_up(double x, unsigned e) {
    double acc = x;
    for (unsigned i = 1; i < e; ++i) acc = mul_up(acc, x);
    return acc;
}

} // namespace detail

// Closed interval with finite double endpoints. Arithmetic rounds endpoints
// outward, so every result encloses the exact real-number image. Overflow
// widens to the whole-line sentinel [-max, +max], which absorbs under
// arithmetic instead of producing NaN.
class Interval {
public:
    Interval() : lo_(0.0), hi_(0.0) {}

    explicit Interval(double v) : lo_(v), hi_(v) {
        if (!std::isfinite(v)) throw std::invalid_argument("Interval: endpoint not finite");
    }

    Interval(double lo, double hi) : lo_(lo), hi_(hi) {
        if (!(std::isfinite(lo) && std::isfinite(hi)))
            throw std::invalid_argument("Interval: endpoint not finite");
        if (lo > hi) throw std::invalid_argument("Interval: lo > hi");
    }

    static Interval whole() {
        Interval r;
        r.lo_ = -std::numeric_limits<double>::max();
        r.hi_ = std::numeric_limits<double>::max();
        return r;
    }

    double lo() const { return lo_; }
    double hi() const { return hi_; }

    bool is_whole() const {
        return lo_ == -std::numeric_limits<double>::max() &&
               hi_ == std::numeric_limits<double>::max();
    }

    bool contains(double x) const { return lo_ <= x && x <= hi_; }
    bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool contains_zero() const { return lo_ <= 0.0 && 0.0 <= hi_; }
    bool strictly_positive() const { return lo_ > 0.0; }
    bool strictly_negative() const { return hi_ < 0.0; }

    bool operator==(const Interval& o) const { return lo_ == o.lo_ && hi_ == o.hi_; }
    bool operator!=(const Interval& o) const { return !(*this == o); }

    friend std::ostream& operator<<(std::ostream& os, const Interval& a) {
        return os << "[" << a.lo_ << "," << a.hi_ << "]";
    }

private:
    // Bypasses the ctor checks; overflow is mapped to the sentinel here.
    static Interval make(double lo, double hi) {
        if (!(std::isfinite(lo) && std::isfinite(hi))) return whole();
        Interval r;
        r.lo_ = lo;
        r.hi_ = hi;
        return r;
    }

    double lo_;
    double hi_;

    friend Interval operator+(const Interval&, const Interval&);
    friend Interval operator-(const Interval&, const Interval&);
    friend Interval operator*(const Interval&, const Interval&);
    friend Interval pow(const Interval&, unsigned);
};

inline Interval operator-(const Interval& a) {
    if (a.is_whole()) return Interval::whole();
    return Interval(-a.hi(), -a.lo());
}

inline Interval operator+(const Interval& a, const Interval& b) {
    if (a.is_whole() || b.is_whole()) return Interval::whole();
    return Interval::make(detail::add_down(a.lo_, b.lo_), detail::add_up(a.hi_, b.hi_));
}

inline Interval operator-(const Interval& a, const Interval& b) {
    if (a.is_whole() || b.is_whole()) return Interval::whole();
    return Interval::make(detail::add_down(a.lo_, -b.hi_), detail::add_up(a.hi_, -b.lo_));
}

inline Interval operator*(const Interval& a, const Interval& b) {
    if (a.is_whole() || b.is_whole()) return Interval::whole();
    double lo = detail::mul_down(a.lo_, b.lo_);
    lo = std::min(lo, detail::mul_down(a.lo_, b.hi_));
    lo = std::min(lo, detail::mul_down(a.hi_, b.lo_));
    lo = std::min(lo, detail::mul_down(a.hi_, b.hi_));
    double hi = detail::mul_up(a.lo_, b.lo_);
    hi = std::max(hi, detail::mul_up(a.lo_, b.hi_));
    hi = std::max(hi, detail::mul_up(a.hi_, b.lo_));
    hi = std::max(hi, detail::mul_up(a.hi_, b.hi_));
    return Interval::make(lo, hi);
}

inline Interval& operator+=(Interval& a, const Interval& b) { a = a + b; return a; }
inline Interval& operator-=(Interval& a, const Interval& b) { a = a - b; return a; }
inline Interval& operator*=(Interval& a, const Interval& b) { a = a * b; return a; }

// Monotone-aware power: for even e over an interval straddling zero the lower
// endpoint is exactly 0, which is tighter than repeated multiplication.
inline Interval pow(const Interval& a, unsigned e) {
    if (e == 0) return Interval(1.0);
    if (a.is_whole()) return Interval::whole();
    if (e == 1) return a;
    if (e % 2u == 0) {
        double mag = std::max(-a.lo(), a.hi());
        double mig = a.lo() > 0.0 ? a.lo() : (a.hi() < 0.0 ? -a.hi() : 0.0);
        return Interval::make(detail::pow_mag_down(mig, e), detail::pow_mag_up(mag, e));
    }
    double lo = a.lo() >= 0.0 ? detail::pow_mag_down(a.lo(), e) : -detail::pow_mag_up(-a.lo(), e);
    double hi = a.hi() >= 0.0 ? detail::pow_mag_up(a.hi(), e) : -detail::pow_mag_down(-a.hi(), e);
    return Interval::make(lo, hi);
}

// Midpoint is a float guaranteed inside the interval; width rounds up.
inline double midpoint(const Interval& a) {
    if (a.is_whole()) return 0.0;
    double m = a.lo() + 0.5 * (a.hi() - a.lo());
    if (!(m >= a.lo())) m = a.lo();
    if (!(m <= a.hi())) m = a.hi();
    return m;
}

inline double width(const Interval& a) {
    double w = detail::add_up(a.hi(), -a.lo());
    return std::isfinite(w) ? w : std::numeric_limits<double>::infinity();
}

} // namespace zeroset

#endif // ZEROSET_INTERVAL_HPP
