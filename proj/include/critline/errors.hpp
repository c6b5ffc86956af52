#pragma once

#include <stdexcept>
#include <string>

namespace critline {

/// Base of every error raised by the toolkit. Carries the module and
/// operation names so the CLI can print a single-line diagnostic.
class Error : public std::runtime_error {
public:
    Error(std::string module, std::string operation, const std::string& what)
        : std::runtime_error(module + "::" + operation + ": " + what),
          module_(std::move(module)),
          operation_(std::move(operation)) {}

    const std::string& module() const noexcept { return module_; }
    const std::string& operation() const noexcept { return operation_; }

private:
    std::string module_;
    std::string operation_;
};

#define CRITLINE_DEFINE_ERROR(Name)          \
    class Name : public Error {              \
    public:                                  \
        using Error::Error;                  \
    };

CRITLINE_DEFINE_ERROR(PoleError)
CRITLINE_DEFINE_ERROR(DomainError)
CRITLINE_DEFINE_ERROR(AccuracyError)
CRITLINE_DEFINE_ERROR(NonFiniteError)
CRITLINE_DEFINE_ERROR(ScanError)
CRITLINE_DEFINE_ERROR(InsufficientDataError)
CRITLINE_DEFINE_ERROR(NonRealNormError)
CRITLINE_DEFINE_ERROR(ConvergenceError)
CRITLINE_DEFINE_ERROR(DimensionError)
CRITLINE_DEFINE_ERROR(SingularMetricError)
CRITLINE_DEFINE_ERROR(CacheFormatError)
CRITLINE_DEFINE_ERROR(CacheStaleError)
CRITLINE_DEFINE_ERROR(ValidationError)

#undef CRITLINE_DEFINE_ERROR

}  // namespace critline
