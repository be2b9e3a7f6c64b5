#pragma once

#include <stdexcept>
#include <string>

namespace quadpair {

/** Base of every error raised by the library. */
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Modulus that is even, composite where a prime is required, or not squarefree.
class InvalidModulus : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation (x <= 0, non-coprime inverse, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Standing hypothesis of a formula violated (p | 2*m*gamma, inadmissible q, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Input exceeds representable range or a brute-force scale cap.
class TooLarge : public Error {
public:
    using Error::Error;
};

/// Work budget exhausted before a numerical procedure converged.
class BudgetExhausted : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent experiment configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace quadpair
