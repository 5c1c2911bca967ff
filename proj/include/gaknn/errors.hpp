#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gaknn {

/// Errors caused by invalid configuration (bad flags, bad parameter values).
/// The CLI maps these to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Errors caused by the data itself (unreadable files, malformed content,
/// contract violations on dataset inputs). The CLI maps these to exit code 3.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parse diagnostics carry a 1-based line number of the offending input line.
class ParseError : public DataError {
public:
    ParseError(const std::string& kind, std::size_t line, const std::string& reason)
        : DataError(kind + " at line " + std::to_string(line) + ": " + reason),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class SyntaxError : public ParseError {
public:
    SyntaxError(std::size_t line, const std::string& reason)
        : ParseError("syntax error", line, reason) {}
};

class SchemaError : public ParseError {
public:
    SchemaError(std::size_t line, const std::string& reason)
        : ParseError("schema error", line, reason) {}
};

class ClassError : public DataError {
public:
    explicit ClassError(const std::string& reason) : DataError("class error: " + reason) {}
    ClassError(std::size_t line, const std::string& reason)
        : DataError("class error at line " + std::to_string(line) + ": " + reason) {}
};

class HeaderMismatch : public ParseError {
public:
    explicit HeaderMismatch(const std::string& reason) : ParseError("header mismatch", 1, reason) {}
};

class InvalidFoldCount : public ConfigError {
public:
    explicit InvalidFoldCount(const std::string& reason) : ConfigError("invalid fold count: " + reason) {}
};

class MaskLengthError : public ConfigError {
public:
    MaskLengthError(std::size_t expected, std::size_t got)
        : ConfigError("mask length " + std::to_string(got) + " does not match feature count " +
                      std::to_string(expected)) {}
};

class EmptyMaskError : public ConfigError {
public:
    EmptyMaskError() : ConfigError("attribute mask selects no attributes") {}
};

class SchemaMismatch : public DataError {
public:
    explicit SchemaMismatch(const std::string& reason) : DataError("schema mismatch: " + reason) {}
};

class KTooLarge : public ConfigError {
public:
    KTooLarge(int k, std::size_t train_size)
        : ConfigError("k=" + std::to_string(k) + " exceeds training-set size " +
                      std::to_string(train_size)) {}
};

class EmptyTrainingSet : public DataError {
public:
    EmptyTrainingSet() : DataError("training set is empty") {}
};

class LengthMismatch : public DataError {
public:
    explicit LengthMismatch(const std::string& reason) : DataError("length mismatch: " + reason) {}
};

class EmptyInput : public DataError {
public:
    explicit EmptyInput(const std::string& reason) : DataError("empty input: " + reason) {}
};

class EmptyPopulation : public DataError {
public:
    EmptyPopulation() : DataError("population is empty") {}
};

}  // namespace gaknn
