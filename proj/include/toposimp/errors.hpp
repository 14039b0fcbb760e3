#pragma once

#include <stdexcept>
#include <string>

namespace toposimp {

enum class Errc {
    SelfLoop,
    DuplicateEdge,
    NonPositiveWeight,
    UnknownVertex,
    RegularCycle,
    NotRegular,
    CapacityExhausted,
    Inconsistent,
    MissingAdjacency,
    ParseError,
};

const char* errc_name(Errc c);

class GraphError : public std::runtime_error {
public:
    GraphError(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace toposimp
