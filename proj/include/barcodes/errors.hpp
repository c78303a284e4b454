#pragma once

#include <stdexcept>
#include <string>

namespace barcodes {

/// Base class for violations of an operation's mathematical preconditions.
/// The CLI maps these to exit code 1.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by the text readers. Carries the 1-based line number when known
/// (0 otherwise). The CLI maps these to exit code 2.
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

#define BARCODES_DOMAIN_ERROR(Name)                                              \
    class Name : public DomainError {                                           \
    public:                                                                     \
        explicit Name(const std::string& what) : DomainError(#Name ": " + what) {} \
    }

BARCODES_DOMAIN_ERROR(MalformedInterval);
BARCODES_DOMAIN_ERROR(MissingDegree);
BARCODES_DOMAIN_ERROR(TrivialInterval);
BARCODES_DOMAIN_ERROR(InvalidModule);
BARCODES_DOMAIN_ERROR(CapExceeded);
BARCODES_DOMAIN_ERROR(BoundarySquareNonzero);
BARCODES_DOMAIN_ERROR(FiltrationViolation);
BARCODES_DOMAIN_ERROR(InvalidComplex);
BARCODES_DOMAIN_ERROR(InvalidMesh);
BARCODES_DOMAIN_ERROR(MeshMismatch);
BARCODES_DOMAIN_ERROR(RootNotBracketed);
BARCODES_DOMAIN_ERROR(NonMonotone);
BARCODES_DOMAIN_ERROR(VanishingOnCircle);
BARCODES_DOMAIN_ERROR(FixedPointOnCircle);
BARCODES_DOMAIN_ERROR(RefinementBudgetExceeded);

#undef BARCODES_DOMAIN_ERROR

} // namespace barcodes
