#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace metriclie {

/// Base of every error the library throws. `exit_code()` is the CLI mapping:
/// 1 input, 2 axiom, 3 abelian-factor refusal, 4 internal.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual const char* kind() const noexcept = 0;
    virtual int exit_code() const noexcept = 0;
};

#define METRICLIE_ERROR(Name, Base, Code)                                  \
    class Name : public Base {                                             \
    public:                                                                \
        using Base::Base;                                                  \
        const char* kind() const noexcept override { return #Name; }       \
        int exit_code() const noexcept override { return Code; }           \
    };

METRICLIE_ERROR(ParseError, Error, 1)
METRICLIE_ERROR(InvalidArgument, Error, 1)
METRICLIE_ERROR(UnknownExample, Error, 1)
METRICLIE_ERROR(InvalidL, Error, 1)
METRICLIE_ERROR(DimensionMismatch, Error, 1)
METRICLIE_ERROR(MetricNotSymmetric, Error, 2)
METRICLIE_ERROR(NotAProjection, Error, 2)
METRICLIE_ERROR(InvalidComplexStructure, Error, 2)
METRICLIE_ERROR(IrrationalNormalizer, Error, 2)
METRICLIE_ERROR(NoComplexStructureOnBlock, Error, 2)
METRICLIE_ERROR(AbelianFactorPresent, Error, 3)
METRICLIE_ERROR(AbelianBlock, Error, 3)
METRICLIE_ERROR(GenericityFailure, Error, 4)
METRICLIE_ERROR(InternalAssertionFailure, Error, 4)
// Raised by exact routines whose answer needs irrational numbers; callers
// holding a rational algebra rerun on the numeric backend.
METRICLIE_ERROR(NumericFallbackRequired, Error, 4)

#undef METRICLIE_ERROR

class JacobiViolation : public Error {
public:
    JacobiViolation(std::array<std::size_t, 3> triple, double residual, const std::string& what)
        : Error(what), triple_(triple), residual_(residual) {}
    const char* kind() const noexcept override { return "JacobiViolation"; }
    int exit_code() const noexcept override { return 2; }
    /// 1-based basis indices.
    std::array<std::size_t, 3> triple() const { return triple_; }
    double residual() const { return residual_; }

private:
    std::array<std::size_t, 3> triple_;
    double residual_;
};

class MetricNotPositiveDefinite : public Error {
public:
    MetricNotPositiveDefinite(std::size_t minor_index, const std::string& what)
        : Error(what), minor_(minor_index) {}
    const char* kind() const noexcept override { return "MetricNotPositiveDefinite"; }
    int exit_code() const noexcept override { return 2; }
    /// Size of the first leading principal minor that is not positive.
    std::size_t minor_index() const { return minor_; }

private:
    std::size_t minor_;
};

class NotASubalgebra : public Error {
public:
    NotASubalgebra(std::pair<std::size_t, std::size_t> witness, const std::string& what)
        : Error(what), witness_(witness) {}
    const char* kind() const noexcept override { return "NotASubalgebra"; }
    int exit_code() const noexcept override { return 2; }
    /// 0-based indices into the subspace basis whose bracket leaves it.
    std::pair<std::size_t, std::size_t> witness() const { return witness_; }

private:
    std::pair<std::size_t, std::size_t> witness_;
};

}  // namespace metriclie
