#pragma once

#include <stdexcept>
#include <string>

namespace rmt {

/// Base class for every error raised by the library. `name()` is the stable
/// identifier surfaced by the command-line tool (e.g. "NotSelfAdjoint").
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define RMT_DEFINE_ERROR(Type)                                            \
    class Type : public Error {                                           \
    public:                                                               \
        explicit Type(const std::string& what) : Error(#Type, what) {}    \
    }

// hmatrix
RMT_DEFINE_ERROR(DimensionError);
RMT_DEFINE_ERROR(StructureError);
RMT_DEFINE_ERROR(SpecError);
RMT_DEFINE_ERROR(FieldError);

// decomp
RMT_DEFINE_ERROR(NotSelfAdjoint);
RMT_DEFINE_ERROR(NotUnitary);
RMT_DEFINE_ERROR(DegenerateCS);
RMT_DEFINE_ERROR(NotSymmetric);
RMT_DEFINE_ERROR(NotSkewSymmetric);
RMT_DEFINE_ERROR(NotLagrangianSymmetric);
RMT_DEFINE_ERROR(NotSymplecticSymmetric);
RMT_DEFINE_ERROR(NotPositiveDefinite);

// ensembles
RMT_DEFINE_ERROR(ParamError);
RMT_DEFINE_ERROR(SupportError);

// manifolds
RMT_DEFINE_ERROR(DegenerateSpectrum);
RMT_DEFINE_ERROR(RankDeficient);
RMT_DEFINE_ERROR(NotOnManifold);
RMT_DEFINE_ERROR(SigmaNotIdentity);
RMT_DEFINE_ERROR(RouteError);

// volumes
RMT_DEFINE_ERROR(DomainError);

// stats
RMT_DEFINE_ERROR(InsufficientSamples);

// cli_io
RMT_DEFINE_ERROR(ParseError);

#undef RMT_DEFINE_ERROR

}  // namespace rmt
