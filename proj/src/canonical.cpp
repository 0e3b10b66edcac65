#include "clawgate/canonical.hpp"

#include <cmath>

namespace clawgate {

static void rejectUnserializable(const Json& v) {
    switch (v.type()) {
        case Json::value_t::number_float: {
            double d = v.get<double>();
            if (!std::isfinite(d)) throw CanonError("non-finite number in record body");
            break;
        }
        case Json::value_t::binary:
        case Json::value_t::discarded:
            throw CanonError("non-serializable value in record body");
        case Json::value_t::object:
        case Json::value_t::array:
            for (const auto& child : v) rejectUnserializable(child);
            break;
        default:
            break;
    }
}

std::string canonicalize(const Json& body) {
    rejectUnserializable(body);
    // nlohmann::json keeps object keys sorted at every nesting level and
    // dump() emits minimal whitespace, so this is the canonical form.
    try {
        return body.dump(-1, ' ', false, Json::error_handler_t::strict);
    } catch (const Json::exception& e) {
        throw CanonError(e.what());
    }
}

}  // namespace clawgate
