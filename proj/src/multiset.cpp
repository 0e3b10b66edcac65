#include "clawgate/multiset.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <stdexcept>

namespace clawgate {

void KeyedMultiset::add(const std::string& cap, const std::string& target, std::int64_t count) {
    if (count <= 0) throw std::invalid_argument("count must be positive");
    auto& slot = entries_[{cap, target}];
    if (slot > kMaxCount - count) throw std::overflow_error("multiset count saturated");
    slot += count;
}

std::int64_t KeyedMultiset::count(const std::string& cap, const std::string& target) const {
    auto it = entries_.find({cap, target});
    return it == entries_.end() ? 0 : it->second;
}

KeyedMultiset multisetDiff(const KeyedMultiset& a, const KeyedMultiset& b) {
    KeyedMultiset out;
    for (const auto& [key, na] : a.entries()) {
        std::int64_t nb = b.count(key.first, key.second);
        if (na > nb) out.add(key.first, key.second, na - nb);
    }
    return out;
}

const char* verdictName(VerdictKind k) {
    switch (k) {
        case VerdictKind::Ok: return "ok";
        case VerdictKind::F1Bypass: return "f1Bypass";
        case VerdictKind::F2Forgery: return "f2Forgery";
        case VerdictKind::F4WrongTarget: return "f4WrongTarget";
    }
    return "?";
}

Verdict checkBiconditional(const KeyedMultiset& d, const KeyedMultiset& s) {
    Verdict v;
    v.dMinusS = multisetDiff(d, s);
    v.sMinusD = multisetDiff(s, d);
    if (v.dMinusS.empty() && v.sMinusD.empty()) {
        v.kind = VerdictKind::Ok;
    } else if (!v.dMinusS.empty() && v.sMinusD.empty()) {
        v.kind = VerdictKind::F1Bypass;
    } else if (v.dMinusS.empty() && !v.sMinusD.empty()) {
        v.kind = VerdictKind::F2Forgery;
    } else {
        v.kind = VerdictKind::F4WrongTarget;
    }
    return v;
}

static std::string toLower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string canonicalTarget(const std::string& target) {
    auto schemeEnd = target.find("://");
    if (schemeEnd != std::string::npos) {
        std::string scheme = toLower(target.substr(0, schemeEnd));
        std::string rest = target.substr(schemeEnd + 3);
        auto hostEnd = rest.find_first_of("/?#");
        std::string host = toLower(rest.substr(0, hostEnd));
        std::string tail = hostEnd == std::string::npos ? "" : rest.substr(hostEnd);
        return scheme + "://" + host + tail;
    }
    if (target.find('/') != std::string::npos || target.find('\\') != std::string::npos) {
        return std::filesystem::path(target).lexically_normal().generic_string();
    }
    return target;  // channel IDs and bare tokens compare verbatim
}

}  // namespace clawgate
