#pragma once

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>

namespace clawgate {

using Json = nlohmann::json;

struct CanonError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Deterministic, injective serialization of a record body: key-sorted
/// objects, minimal whitespace, UTF-8. Equal values yield identical bytes;
/// distinct values yield distinct bytes.
std::string canonicalize(const Json& body);

}  // namespace clawgate
