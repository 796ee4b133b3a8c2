#pragma once

#include <stdexcept>
#include <string>

namespace treeramsey {

// Vertex id outside the tree, or the wrong kind of vertex (e.g. a non-leaf
// where a leaf is required).
class InvalidVertexError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input too large for the desk-scale caps (depth, family size, big-integer size).
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Malformed input: files, traces, trees that violate their invariants.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The requested signature is not realized by any regular embedding into H.
class NoWitnessError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace treeramsey
