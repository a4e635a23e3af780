#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace logtrig {

/// Requested significand width is below the supported minimum (53 bits).
class invalid_precision : public std::invalid_argument {
public:
    explicit invalid_precision(long requested)
        : std::invalid_argument("precision_bits must be >= 53, got " +
                                std::to_string(requested)),
          requested_(requested) {}
    long requested() const noexcept { return requested_; }

private:
    long requested_;
};

/// An argument is outside the operation's stated domain (e.g. N < 2).
class invalid_parameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A term fed into a summation is NaN or infinite.
class non_finite_input : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A product factor is too close to zero for the relative-error contract
/// to hold; carries the index of the offending factor.
class near_singular_product : public std::runtime_error {
public:
    near_singular_product(std::size_t factor_index, const std::string& what)
        : std::runtime_error(what), factor_index_(factor_index) {}
    std::size_t factor_index() const noexcept { return factor_index_; }

private:
    std::size_t factor_index_;
};

/// The integrand evaluated to NaN or infinity at an interior node.
class bad_integrand : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Subdivision points passed to an interval split are unsorted or touch
/// the interval boundary.
class invalid_split : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace logtrig
