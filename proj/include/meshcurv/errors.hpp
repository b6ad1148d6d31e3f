#pragma once

#include <stdexcept>
#include <string>

namespace meshcurv {

/// Base class of everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyMesh : Error {
    EmptyMesh() : Error("mesh has no vertices") {}
};

struct IndexOutOfRange : Error {
    using Error::Error;
};

struct DegenerateFace : Error {
    using Error::Error;
};

struct DuplicateVertexInFace : Error {
    using Error::Error;
};

struct IsolatedVertex : Error {
    explicit IsolatedVertex(int vertex)
        : Error("vertex " + std::to_string(vertex) + " has no incident faces"), vertex(vertex) {}
    int vertex;
};

struct PointOutsideFace : Error {
    using Error::Error;
};

struct SingularGramMatrix : Error {
    using Error::Error;
};

struct ZeroNormalSum : Error {
    explicit ZeroNormalSum(int vertex)
        : Error("weighted face normals cancel at vertex " + std::to_string(vertex)), vertex(vertex) {}
    int vertex;
};

struct NonUnitNormal : Error {
    using Error::Error;
};

struct TooFewNeighbors : Error {
    using Error::Error;
};

struct DegenerateProjection : Error {
    using Error::Error;
};

struct RankDeficientFit : Error {
    using Error::Error;
};

struct RetryExhausted : Error {
    using Error::Error;
};

/// Parse errors carry the 1-based line number of the offending line.
struct ParseError : Error {
    ParseError(int line, const std::string& msg)
        : Error("line " + std::to_string(line) + ": " + msg), line(line) {}
    int line;
};

struct SyntaxError : ParseError {
    using ParseError::ParseError;
};

struct NonTriangleFace : ParseError {
    using ParseError::ParseError;
};

struct CountMismatch : ParseError {
    using ParseError::ParseError;
};

}  // namespace meshcurv
