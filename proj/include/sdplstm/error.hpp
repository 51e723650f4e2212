#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sdplstm {

/// Root of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad or inconsistent input data / arguments. The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values during numeric work. The CLI maps these to exit code 3.
class NumericError : public Error {
 public:
  using Error::Error;
};

#define SDPLSTM_DEFINE_ERROR(Name, Base)      \
  class Name : public Base {                  \
   public:                                    \
    explicit Name(const std::string& what)    \
        : Base(std::string(#Name ": ") + what) {} \
  };

SDPLSTM_DEFINE_ERROR(FileNotFound, InputError)
SDPLSTM_DEFINE_ERROR(DuplicateSentenceId, InputError)
SDPLSTM_DEFINE_ERROR(EntityNotInSentence, InputError)
SDPLSTM_DEFINE_ERROR(BadK, InputError)
SDPLSTM_DEFINE_ERROR(IndexOutOfRange, InputError)
SDPLSTM_DEFINE_ERROR(SelfLoop, InputError)
SDPLSTM_DEFINE_ERROR(Disconnected, InputError)
SDPLSTM_DEFINE_ERROR(PathTooLong, InputError)
SDPLSTM_DEFINE_ERROR(DimensionMismatch, InputError)
SDPLSTM_DEFINE_ERROR(ShapeMismatch, InputError)
SDPLSTM_DEFINE_ERROR(FormatError, InputError)
SDPLSTM_DEFINE_ERROR(EmptySequence, InputError)
SDPLSTM_DEFINE_ERROR(BadRate, InputError)
SDPLSTM_DEFINE_ERROR(MissingDependencyData, InputError)
SDPLSTM_DEFINE_ERROR(EmptyTrainingSet, InputError)
SDPLSTM_DEFINE_ERROR(ConfigError, InputError)
SDPLSTM_DEFINE_ERROR(IoError, InputError)
SDPLSTM_DEFINE_ERROR(VersionMismatch, InputError)
SDPLSTM_DEFINE_ERROR(CorruptChecksum, InputError)
SDPLSTM_DEFINE_ERROR(NonFiniteInput, NumericError)
SDPLSTM_DEFINE_ERROR(NonFiniteGradient, NumericError)
SDPLSTM_DEFINE_ERROR(NonFiniteLoss, NumericError)

#undef SDPLSTM_DEFINE_ERROR

/// Malformed line in a line-oriented input file.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : InputError("ParseError: line " + std::to_string(line) + ": " + reason),
        line_(line),
        reason_(reason) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

}  // namespace sdplstm
