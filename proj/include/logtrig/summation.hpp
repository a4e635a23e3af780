#pragma once

#include <cstddef>
#include <span>

#include "logtrig/ext_real.hpp"

namespace logtrig {

/// Neumaier-compensated running sum.
///
/// After k terms each bounded by B in magnitude, the accumulated rounding
/// error of total() is below 2*k*ulp(B). Terms are folded in the order
/// they are added; adding a term wider than the current accumulator
/// widens the accumulator first (exactly).
class SumAccumulator {
public:
    explicit SumAccumulator(precision_t bits)
        : running_(check_precision(bits)),
          comp_(bits),
          scratch_(ExtReal::raw_tag{}, bits),
          carry_(ExtReal::raw_tag{}, bits),
          count_(0) {}

    void add(const ExtReal& term) {
        if (!term.is_finite())
            throw non_finite_input("compensated sum: non-finite term");
        if (term.precision_bits() > running_.precision_bits())
            widen(term.precision_bits());
        // scratch = running + term; carry = the low-order bits lost there.
        mpfr_add(scratch_.raw(), running_.raw(), term.raw(), MPFR_RNDN);
        if (mpfr_cmpabs(running_.raw(), term.raw()) >= 0) {
            mpfr_sub(carry_.raw(), running_.raw(), scratch_.raw(), MPFR_RNDN);
            mpfr_add(carry_.raw(), carry_.raw(), term.raw(), MPFR_RNDN);
        } else {
            mpfr_sub(carry_.raw(), term.raw(), scratch_.raw(), MPFR_RNDN);
            mpfr_add(carry_.raw(), carry_.raw(), running_.raw(), MPFR_RNDN);
        }
        mpfr_add(comp_.raw(), comp_.raw(), carry_.raw(), MPFR_RNDN);
        mpfr_swap(running_.raw(), scratch_.raw());
        ++count_;
    }

    ExtReal total() const { return running_ + comp_; }
    const ExtReal& running_total() const { return running_; }
    const ExtReal& compensation() const { return comp_; }
    std::size_t term_count() const { return count_; }
    precision_t precision_bits() const { return running_.precision_bits(); }

private:
    void widen(precision_t bits) {
        mpfr_prec_round(running_.raw(), bits, MPFR_RNDN);
        mpfr_prec_round(comp_.raw(), bits, MPFR_RNDN);
        mpfr_set_prec(scratch_.raw(), bits);
        mpfr_set_prec(carry_.raw(), bits);
    }

    ExtReal running_;
    ExtReal comp_;
    ExtReal scratch_;
    ExtReal carry_;
    std::size_t count_;
};

/// Sums the terms in input order at the given precision (default: the
/// widest term precision, at least min_precision).
inline ExtReal compensated_sum(std::span<const ExtReal> terms,
                               precision_t bits = 0) {
    if (bits == 0) {
        bits = min_precision;
        for (const ExtReal& t : terms)
            bits = std::max(bits, t.precision_bits());
    }
    SumAccumulator acc(bits);
    for (const ExtReal& t : terms) acc.add(t);
    return acc.total();
}

}  // namespace logtrig
