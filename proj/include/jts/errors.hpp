#pragma once

#include <stdexcept>
#include <string>

namespace jts {

struct NotDecomposable : std::runtime_error {
    explicit NotDecomposable(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidProposal : std::runtime_error {
    explicit InvalidProposal(const std::string& what) : std::runtime_error(what) {}
};

struct ParamOutOfRange : std::runtime_error {
    explicit ParamOutOfRange(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace jts
