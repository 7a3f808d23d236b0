#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace quadbound {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Out-of-range input to a constructor or closed-form routine.
class ParameterError : public Error {
public:
    using Error::Error;
};

// A function sample was non-finite or outside its domain.
class EvaluationError : public Error {
public:
    EvaluationError(const std::string& what, double abscissa)
        : Error(what), abscissa_(abscissa) {}

    double abscissa() const noexcept { return abscissa_; }

private:
    double abscissa_;
};

class NonConvergenceError : public Error {
public:
    NonConvergenceError(const std::string& what, double best_estimate, double est_error)
        : Error(what), best_estimate_(best_estimate), est_error_(est_error) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double est_error() const noexcept { return est_error_; }

private:
    double best_estimate_;
    double est_error_;
};

// Parse failure at a byte offset of the source text.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t offset)
        : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class UnknownIdentifierError : public SyntaxError {
public:
    UnknownIdentifierError(const std::string& token, std::size_t offset)
        : SyntaxError("unknown identifier '" + token + "'", offset), token_(token) {}

    const std::string& token() const noexcept { return token_; }

private:
    std::string token_;
};

// Corpus or grid input that cannot be used (I/O, schema, validation).
class InputError : public Error {
public:
    using Error::Error;
};

} // namespace quadbound
