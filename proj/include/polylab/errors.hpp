#ifndef POLYLAB_ERRORS_HPP
#define POLYLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace polylab {

// Base error carrying a stable machine-readable name; the CLI maps names to
// exit codes (2 parse/validation, 3 configuration, 4 size).
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

#define POLYLAB_DEFINE_ERROR(NAME)                                            \
    class NAME : public Error {                                               \
    public:                                                                   \
        explicit NAME(const std::string& what) : Error(#NAME, what) {}        \
    }

POLYLAB_DEFINE_ERROR(NotFullDimensional);
POLYLAB_DEFINE_ERROR(RedundantVertex);
POLYLAB_DEFINE_ERROR(NonIntegerVertex);
POLYLAB_DEFINE_ERROR(SizeLimit);
POLYLAB_DEFINE_ERROR(TooLarge);
POLYLAB_DEFINE_ERROR(NotLps);
POLYLAB_DEFINE_ERROR(WindowOverlap);
POLYLAB_DEFINE_ERROR(NoUniqueDiffEdge);
POLYLAB_DEFINE_ERROR(NotFound);
POLYLAB_DEFINE_ERROR(InternalInconsistency);
POLYLAB_DEFINE_ERROR(IncompatibleFringe);
POLYLAB_DEFINE_ERROR(ParseError);

#undef POLYLAB_DEFINE_ERROR

}  // namespace polylab

#endif
