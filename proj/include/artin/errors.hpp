#pragma once

#include <stdexcept>
#include <string>

namespace artin {

// Bad caller input: limits below 2, malformed checkpoints, composite q, ...
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// n beyond the range a lookup table was built for.
class OutOfRange : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// The order of a mod p does not exist (p | a).
class UndefinedOrder : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A formula was asked for outside the hypotheses it is proved under
// (a not squarefree, a < 3, ...).
class HypothesisViolation : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A post-condition the library itself guarantees did not hold.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace artin
