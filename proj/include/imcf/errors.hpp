#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace imcf {

enum class ErrorKind {
    Domain,
    Degenerate,
    ZeroMeanCurvature,
    Causal,
    Param,
    Hypothesis,
    ZeroB,
    ZeroC,
    Singularity,
    NegativeRadicand,
    Projection,
    Config,
    Io,
};

std::string_view error_kind_name(ErrorKind kind) noexcept;

/// Base of every error raised by the library. The kind drives CLI exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

template <ErrorKind K>
class KindError : public Error {
public:
    explicit KindError(const std::string& what) : Error(K, what) {}
};

using DomainError = KindError<ErrorKind::Domain>;
using DegenerateError = KindError<ErrorKind::Degenerate>;
using ZeroMeanCurvatureError = KindError<ErrorKind::ZeroMeanCurvature>;
using CausalError = KindError<ErrorKind::Causal>;
using ParamError = KindError<ErrorKind::Param>;
using HypothesisError = KindError<ErrorKind::Hypothesis>;
using ZeroBError = KindError<ErrorKind::ZeroB>;
using ZeroCError = KindError<ErrorKind::ZeroC>;
using SingularityError = KindError<ErrorKind::Singularity>;
using NegativeRadicandError = KindError<ErrorKind::NegativeRadicand>;
using ProjectionError = KindError<ErrorKind::Projection>;
using ConfigError = KindError<ErrorKind::Config>;
using IoError = KindError<ErrorKind::Io>;

} // namespace imcf
