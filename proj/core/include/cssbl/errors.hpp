#ifndef CSSBL_ERRORS_HPP
#define CSSBL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cssbl {

// Base class for every error raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An SPD factorization met a non-positive leading minor even after the
// jitter ladder. Usually means an invalid correlation coefficient or a
// collapsed posterior.
class NotPositiveDefinite : public Error {
public:
    using Error::Error;
};

// Input outside an operation's mathematical domain (e.g. digamma(x<=0)).
class DomainError : public Error {
public:
    using Error::Error;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

// A clustering logit went non-finite; the run is aborted with diagnostics.
class NonFiniteLogit : public Error {
public:
    using Error::Error;
};

// AUC needs at least one positive and one negative label.
class DegenerateLabels : public Error {
public:
    using Error::Error;
};

// NMSE is undefined against an all-zero truth vector.
class ZeroTruth : public Error {
public:
    using Error::Error;
};

class GroupCountMismatch : public Error {
public:
    using Error::Error;
};

// Malformed matrix / config file.
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace cssbl

#endif
