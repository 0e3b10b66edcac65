#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

namespace clawgate {

/// Multiset over (capability, target) keys. Counts are strictly positive;
/// a key with count zero is absent.
class KeyedMultiset {
public:
    using Key = std::pair<std::string, std::string>;  // (cap, target)
    using Map = std::map<Key, std::int64_t>;

    static constexpr std::int64_t kMaxCount = 2147483647;  // saturation bound

    void add(const std::string& cap, const std::string& target, std::int64_t count = 1);
    std::int64_t count(const std::string& cap, const std::string& target) const;

    bool empty() const { return entries_.empty(); }
    std::size_t keyCount() const { return entries_.size(); }
    const Map& entries() const { return entries_; }

    bool operator==(const KeyedMultiset&) const = default;

private:
    Map entries_;
};

/// Per-key max(a(k) - b(k), 0); zero-count keys omitted.
KeyedMultiset multisetDiff(const KeyedMultiset& a, const KeyedMultiset& b);

enum class VerdictKind { Ok, F1Bypass, F2Forgery, F4WrongTarget };

const char* verdictName(VerdictKind k);

struct Verdict {
    VerdictKind kind = VerdictKind::Ok;
    KeyedMultiset dMinusS;
    KeyedMultiset sMinusD;
};

/// Four-way classification of corpus delta D against audit projection S.
Verdict checkBiconditional(const KeyedMultiset& d, const KeyedMultiset& s);

/// Byte-exact target comparison after normalization: lowercased scheme and
/// host for URLs, lexically-normal form for paths, anything else verbatim.
std::string canonicalTarget(const std::string& target);

}  // namespace clawgate
