#pragma once

#include <stdexcept>
#include <string>

namespace kummer {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: wrong shapes, non-prime modulus, unparsable literal.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Degree outside the admissible range (exterior powers, group cohomology).
class BadDegree : public Error {
 public:
  using Error::Error;
};

/// (m - I)^p != 0, so m is not a unipotent matrix of exponent p.
class NotUnipotent : public Error {
 public:
  using Error::Error;
};

/// Integer matrix does not satisfy sigma^3 = I.
class NotOrderThree : public Error {
 public:
  using Error::Error;
};

/// Two independent computation routes disagree. Always a bug.
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// A vanishing certificate entry is non-zero.
class CertificateFailure : public Error {
 public:
  using Error::Error;
};

/// An internal invariant was violated (failed exact solve, broken SNF, ...).
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace kummer
