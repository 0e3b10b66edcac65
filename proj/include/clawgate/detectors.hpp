#pragma once

#include "clawgate/canonical.hpp"

#include <cstddef>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

namespace clawgate {

enum class InjectionKind { ImperativeOverride, RoleBoundaryToken };

struct InjectionFinding {
    InjectionKind kind;
    std::string matchedToken;  // case-normalized slice
    std::size_t begin = 0;
    std::size_t end = 0;
};

/// Structural prompt shield: imperative-override tokens (case-insensitive,
/// word-bounded) and role-boundary serialization tokens (exact literals).
std::vector<InjectionFinding> detectInjection(std::string_view text);

const std::vector<std::string>& imperativeTokens();
const std::vector<std::string>& roleBoundaryTokens();

enum class Severity { Low, Medium, High, Critical };
const char* severityName(Severity s);
Severity parseSeverity(const std::string& name);

enum class PatternTier { Strict, Widened };

struct DlpPattern {
    std::string id;
    Severity severity = Severity::Low;
    std::string pattern;       // regex source
    PatternTier tier = PatternTier::Strict;
    bool anchored = true;      // require start-of-text or delimiter before the match
    bool luhnCheck = false;    // digit-run post filter
    std::regex compiled;
};

/// Ordered, append-only pattern list.
class DlpCatalog {
public:
    static DlpCatalog strict();

    const std::vector<DlpPattern>& patterns() const { return patterns_; }

    Json toJson() const;
    static DlpCatalog fromJson(const Json& j);

    void appendPattern(const std::string& id, Severity severity, const std::string& pattern,
                       PatternTier tier, bool anchored, bool luhnCheck = false);

private:
    std::vector<DlpPattern> patterns_;
};

/// Appends the widened tier (short fake prefixes, glued prefixes, padded
/// key variant) and relaxes the boundary on the strict AWS pattern. Strict
/// pattern bodies are otherwise byte-identical, so every strict match
/// survives under the widened catalog.
DlpCatalog widenCatalog(const DlpCatalog& strict);

struct DlpFinding {
    std::string patternId;
    Severity severity = Severity::Low;
    std::size_t begin = 0;
    std::size_t end = 0;
};

/// Non-overlapping leftmost matches per pattern, in catalog order.
std::vector<DlpFinding> dlpScan(std::string_view text, const DlpCatalog& catalog);

struct BlockDecision {
    bool block = false;
    Severity severity = Severity::Low;
    std::string reason;
};

/// Block on any finding at high or above, or on two distinct
/// medium-severity patterns.
BlockDecision aggregate(const std::vector<DlpFinding>& findings);

/// Replace each finding span with [REDACTED:<patternId>]; bytes outside
/// the spans are untouched.
std::string redact(std::string_view text, const std::vector<DlpFinding>& findings);

}  // namespace clawgate
