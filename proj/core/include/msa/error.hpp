#pragma once

#include <stdexcept>
#include <string>

namespace msa {

// Base for every error raised by the library. Callers that only care about
// "something failed" catch this; the subclasses exist so the CLI and tests
// can tell a bad input file from a broken contract.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Unreadable or unparseable corpus source.
class IngestError : public Error {
public:
  using Error::Error;
};

// Persisted index / rule store problems: missing files, bad magic, version
// mismatch, refused overwrite.
class ArtifactError : public Error {
public:
  using Error::Error;
};

// Dataset, grid or score file that does not parse. The message carries the
// file and row.
class ParseError : public Error {
public:
  using Error::Error;
};

// Numeric precondition violated (|r| >= 1 for the Fisher transform, n < 4,
// invalid parameter values, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

// Correlation undefined because one side has zero variance.
class DegenerateCorrelation : public Error {
public:
  using Error::Error;
};

// Caller passed a value the operation's contract rules out.
class ContractViolation : public Error {
public:
  using Error::Error;
};

}  // namespace msa
