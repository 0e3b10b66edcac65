#include "clawgate/detectors.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace clawgate {

const std::vector<std::string>& imperativeTokens() {
    static const std::vector<std::string> t = {"IGNORE", "DISREGARD", "OVERRIDE",
                                               "BYPASS", "FORGET",    "PURGE"};
    return t;
}

const std::vector<std::string>& roleBoundaryTokens() {
    static const std::vector<std::string> t = {"</system>", "<|im_end|>", "[/INST]",
                                               "<|system|>", "<|endoftext|>"};
    return t;
}

std::vector<InjectionFinding> detectInjection(std::string_view text) {
    std::vector<InjectionFinding> findings;

    static const std::regex imperativeRe(
        R"(\b(?:IGNORE|DISREGARD|OVERRIDE|BYPASS|FORGET|PURGE)\b)",
        std::regex::ECMAScript | std::regex::icase | std::regex::optimize);
    for (auto it = std::cregex_iterator(text.data(), text.data() + text.size(), imperativeRe);
         it != std::cregex_iterator(); ++it) {
        InjectionFinding f;
        f.kind = InjectionKind::ImperativeOverride;
        f.begin = static_cast<std::size_t>(it->position());
        f.end = f.begin + static_cast<std::size_t>(it->length());
        f.matchedToken = it->str();
        std::transform(f.matchedToken.begin(), f.matchedToken.end(), f.matchedToken.begin(),
                       [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
        findings.push_back(std::move(f));
    }

    for (const auto& token : roleBoundaryTokens()) {
        for (std::size_t pos = text.find(token); pos != std::string_view::npos;
             pos = text.find(token, pos + token.size())) {
            findings.push_back({InjectionKind::RoleBoundaryToken, token, pos, pos + token.size()});
        }
    }

    std::stable_sort(findings.begin(), findings.end(),
                     [](const InjectionFinding& a, const InjectionFinding& b) {
                         return a.begin != b.begin ? a.begin < b.begin : a.matchedToken < b.matchedToken;
                     });
    return findings;
}

const char* severityName(Severity s) {
    switch (s) {
        case Severity::Low: return "low";
        case Severity::Medium: return "medium";
        case Severity::High: return "high";
        case Severity::Critical: return "critical";
    }
    return "?";
}

Severity parseSeverity(const std::string& name) {
    if (name == "low") return Severity::Low;
    if (name == "medium") return Severity::Medium;
    if (name == "high") return Severity::High;
    if (name == "critical") return Severity::Critical;
    throw std::invalid_argument("unknown severity: " + name);
}

void DlpCatalog::appendPattern(const std::string& id, Severity severity,
                               const std::string& pattern, PatternTier tier, bool anchored,
                               bool luhnCheck) {
    for (const auto& p : patterns_) {
        if (p.id == id) throw std::invalid_argument("duplicate pattern id: " + id);
    }
    DlpPattern p;
    p.id = id;
    p.severity = severity;
    p.pattern = pattern;
    p.tier = tier;
    p.anchored = anchored;
    p.luhnCheck = luhnCheck;
    p.compiled = std::regex(pattern, std::regex::ECMAScript | std::regex::optimize);
    patterns_.push_back(std::move(p));
}

DlpCatalog DlpCatalog::strict() {
    DlpCatalog c;
    c.appendPattern("openai-key", Severity::High, R"(sk-[A-Za-z0-9=]{20,})", PatternTier::Strict, true);
    c.appendPattern("aws-key", Severity::High, R"(AKIA[0-9A-Z]{16}(?![0-9A-Za-z]))", PatternTier::Strict, true);
    c.appendPattern("github-token", Severity::High, R"(ghp_[A-Za-z0-9]{36}(?![0-9A-Za-z]))", PatternTier::Strict, true);
    c.appendPattern("stripe-key", Severity::High, R"(sk_(?:live|test)_[A-Za-z0-9]{24,})", PatternTier::Strict, true);
    c.appendPattern("jwt", Severity::High, R"(eyJ[A-Za-z0-9_\-]+\.[A-Za-z0-9_\-]+\.[A-Za-z0-9_\-]+)", PatternTier::Strict, true);
    c.appendPattern("credit-card", Severity::High, R"((?:[0-9][ \-]?){12,18}[0-9](?![0-9]))", PatternTier::Strict, true, true);
    c.appendPattern("email", Severity::Medium, R"([A-Za-z0-9._%+\-]+@[A-Za-z0-9.\-]+\.[A-Za-z]{2,})", PatternTier::Strict, false);
    c.appendPattern("e164-phone", Severity::Medium, R"(\+[0-9]{8,15}(?![0-9]))", PatternTier::Strict, true);
    return c;
}

DlpCatalog widenCatalog(const DlpCatalog& strict) {
    DlpCatalog c;
    for (const auto& p : strict.patterns()) {
        // The one boundary relaxation of the widening patch: the AWS
        // pattern stops requiring a leading delimiter. Everything else is
        // carried over byte-identical.
        bool anchored = p.id == "aws-key" ? false : p.anchored;
        c.appendPattern(p.id, p.severity, p.pattern, p.tier, anchored, p.luhnCheck);
    }
    c.appendPattern("openai-key-short", Severity::High, R"(sk-[A-Za-z0-9=]{4,19}(?![0-9A-Za-z=]))", PatternTier::Widened, true);
    c.appendPattern("aws-key-short", Severity::High, R"(AKIA[0-9A-Z]{4,15}(?![0-9A-Z]))", PatternTier::Widened, true);
    c.appendPattern("slack-token-stub", Severity::High, R"(xoxb-[A-Za-z0-9\-]{2,})", PatternTier::Widened, true);
    c.appendPattern("github-token-glued", Severity::High, R"(ghp_[A-Za-z0-9]{36}(?![0-9A-Za-z]))", PatternTier::Widened, false);
    c.appendPattern("openai-key-padded", Severity::High, R"(sk-=[A-Za-z0-9=]{3,})", PatternTier::Widened, false);
    return c;
}

Json DlpCatalog::toJson() const {
    Json arr = Json::array();
    for (const auto& p : patterns_) {
        arr.push_back(Json{{"id", p.id},
                           {"severity", severityName(p.severity)},
                           {"pattern", p.pattern},
                           {"tier", p.tier == PatternTier::Strict ? "strict" : "widened"},
                           {"anchored", p.anchored},
                           {"luhnCheck", p.luhnCheck}});
    }
    return arr;
}

DlpCatalog DlpCatalog::fromJson(const Json& j) {
    DlpCatalog c;
    for (const auto& e : j) {
        c.appendPattern(e.at("id").get<std::string>(), parseSeverity(e.at("severity")),
                        e.at("pattern").get<std::string>(),
                        e.at("tier") == "widened" ? PatternTier::Widened : PatternTier::Strict,
                        e.value("anchored", true), e.value("luhnCheck", false));
    }
    return c;
}

static bool delimiterBefore(std::string_view text, std::size_t pos) {
    if (pos == 0) return true;
    char c = text[pos - 1];
    return std::isspace(static_cast<unsigned char>(c)) || c == '"' || c == '\'' || c == '(' ||
           c == '[' || c == '{' || c == '<' || c == ',' || c == ';' || c == ':';
}

static bool passesLuhn(std::string_view slice) {
    std::string digits;
    for (char c : slice) {
        if (c >= '0' && c <= '9') digits.push_back(c);
    }
    if (digits.size() < 13 || digits.size() > 19) return false;
    int sum = 0;
    bool dbl = false;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        int d = *it - '0';
        if (dbl) {
            d *= 2;
            if (d > 9) d -= 9;
        }
        sum += d;
        dbl = !dbl;
    }
    return sum % 10 == 0;
}

std::vector<DlpFinding> dlpScan(std::string_view text, const DlpCatalog& catalog) {
    std::vector<DlpFinding> findings;
    for (const auto& p : catalog.patterns()) {
        for (auto it = std::cregex_iterator(text.data(), text.data() + text.size(), p.compiled);
             it != std::cregex_iterator(); ++it) {
            std::size_t begin = static_cast<std::size_t>(it->position());
            std::size_t end = begin + static_cast<std::size_t>(it->length());
            if (p.anchored && !delimiterBefore(text, begin)) continue;
            if (p.luhnCheck && !passesLuhn(text.substr(begin, end - begin))) continue;
            findings.push_back({p.id, p.severity, begin, end});
        }
    }
    return findings;
}

BlockDecision aggregate(const std::vector<DlpFinding>& findings) {
    Severity maxSev = Severity::Low;
    bool any = false;
    std::vector<std::string> mediumIds;
    for (const auto& f : findings) {
        any = true;
        maxSev = std::max(maxSev, f.severity);
        if (f.severity == Severity::Medium &&
            std::find(mediumIds.begin(), mediumIds.end(), f.patternId) == mediumIds.end()) {
            mediumIds.push_back(f.patternId);
        }
    }
    BlockDecision d;
    if (any && maxSev >= Severity::High) {
        d.block = true;
        d.severity = maxSev;
        d.reason = std::string("DLP findings (severity=") + severityName(maxSev) + ")";
    } else if (mediumIds.size() >= 2) {
        d.block = true;
        d.severity = Severity::Medium;
        d.reason = "DLP findings (severity=medium)";
    }
    return d;
}

std::string redact(std::string_view text, const std::vector<DlpFinding>& findings) {
    std::vector<DlpFinding> sorted = findings;
    std::sort(sorted.begin(), sorted.end(), [](const DlpFinding& a, const DlpFinding& b) {
        return a.begin != b.begin ? a.begin < b.begin : a.end > b.end;
    });
    std::string out;
    std::size_t cursor = 0;
    for (const auto& f : sorted) {
        if (f.begin < cursor) continue;  // overlap with an already-redacted span
        out.append(text.substr(cursor, f.begin - cursor));
        out += "[REDACTED:" + f.patternId + "]";
        cursor = f.end;
    }
    out.append(text.substr(cursor));
    return out;
}

}  // namespace clawgate
