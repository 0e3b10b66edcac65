#pragma once

#include "clawgate/detectors.hpp"
#include "clawgate/gatekeeper.hpp"
#include "clawgate/prng.hpp"
#include "clawgate/stats.hpp"
#include "clawgate/trust.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace clawgate {

enum class FCategory {
    F1Bypass,
    F2Forge,
    F3Silent,
    F4WrongTgt,
    LegitChat,
    LegitAudit,
    LegitStatus,
    LegitOps,
};

const char* fCategoryName(FCategory c);  // "F1_BYPASS", ...
bool isAdversarialCategory(FCategory c);
FCategory legitCounterpart(FCategory adversarial);

struct Sample {
    std::string id;
    std::string channel;
    FCategory fCategory = FCategory::LegitChat;
    bool adversarial = false;
    std::string content;
    std::optional<std::string> probeTag;
    // Scripted side effects of the sample (the behavioral F2 path). Part of
    // what mediation may see; the ground-truth label is not.
    bool writeAudit = false;
    bool writeDelta = false;
};

/// The slice of a sample the mediation path is allowed to see: content,
/// channel, probe tag, scripted behavior. No label, no category.
struct MediationRequest {
    const std::string& content;
    const std::string& channel;
    const std::optional<std::string>& probeTag;
    bool writeAudit;
    bool writeDelta;
};

inline MediationRequest requestOf(const Sample& s) {
    return {s.content, s.channel, s.probeTag, s.writeAudit, s.writeDelta};
}

struct Decision {
    std::string subject;
    bool delivered = true;
    std::optional<std::string> blockReason;
    std::optional<std::string> fCategoryDetected;
};

struct RunConfig {
    int nPerCell = 100;
    std::vector<std::string> channels = {"discord-mock", "telegram-mock"};
    std::string seedString = "clawgate-default";
    bool statsOnly = false;
    bool disableWitness = false;
    bool widenedDlp = false;
    std::filesystem::path outDir = "out";
    std::vector<std::string> subjects = {"passthrough", "gated", "gated-witness"};
};

struct Fingerprint {
    std::string runtimeVersion;
    std::string osName;
    std::string cpuModel;
    int cpuCount = 0;
    std::uint64_t totalRamBytes = 0;
    std::string sourceCommit;
    std::string seedString;

    static Fingerprint collect(const std::string& seedString);
};

/// Mock channel endpoint. Enforces the per-channel length clamp; in
/// stats-only mode messages are counted but not retained.
class ChannelSink {
public:
    ChannelSink(std::string channel, bool statsOnly);

    void post(std::string_view message);
    std::size_t clampChars() const { return clampChars_; }
    std::size_t postCount() const { return postCount_; }
    const std::vector<std::string>& posts() const { return posts_; }

    static std::size_t clampFor(const std::string& channel);

private:
    std::string channel_;
    std::size_t clampChars_;
    bool statsOnly_;
    std::size_t postCount_ = 0;
    std::vector<std::string> posts_;
};

std::vector<Sample> generateSamples(const RunConfig& config, Mulberry32& prng);

/// Ungated negative control: delivers everything verbatim, writes no audit.
Decision mediatePassthrough(const MediationRequest& req, ChannelSink& sink);

/// A booted gated runtime: sealed trust root, admitted channel extension,
/// injection + DLP gates, per-probe biconditional reconciliation.
class GatedSubject {
public:
    GatedSubject(std::string name, const RunConfig& config, bool requireWitness);

    Decision mediate(const MediationRequest& req, ChannelSink& sink);

    const std::string& name() const { return name_; }
    bool operational() const { return operational_; }
    const std::vector<AdmissionDecision>& admissionDecisions() const { return admissions_; }
    Runtime& runtime() { return runtime_; }
    std::string witnessPublicKeyHex() const;

private:
    std::string name_;
    bool requireWitness_;
    Ed25519KeyPair signerKey_;
    std::optional<Ed25519KeyPair> witnessKey_;
    WitnessState witnessState_;
    Runtime runtime_;
    DlpCatalog catalog_;
    std::map<std::string, KeyedMultiset> corpusDeltas_;  // per probe tag
    std::vector<AdmissionDecision> admissions_;
    bool operational_ = false;
    std::unique_ptr<std::ofstream> witnessJournal_;
};

struct SubjectResult {
    std::string name;
    bool failedClosed = false;
    std::vector<Decision> decisions;  // parallel to samples
    ConfusionMatrix aggregate;
    // (channel, adversarial category) -> matrix over that cell's
    // adversarial samples and their paired legit family.
    std::map<std::pair<std::string, FCategory>, ConfusionMatrix> cells;
};

struct McNemarPair {
    std::string subjectA;
    std::string subjectB;
    std::int64_t b = 0;  // A blocked, B delivered
    std::int64_t c = 0;  // A delivered, B blocked
    double chi2 = 0.0;
};

struct ReportBundle {
    RunConfig config;
    Fingerprint fingerprint;
    std::vector<Sample> samples;
    std::vector<SubjectResult> results;
    std::vector<McNemarPair> mcnemarPairs;
    std::string csvDigest;
    bool chainsOk = false;
    std::filesystem::path csvPath;
    std::filesystem::path reportPath;
};

ReportBundle runExperiment(const RunConfig& config);

/// Publish-safety scrub: redact the content column with the given catalog.
std::filesystem::path scrubCsv(const std::filesystem::path& csvPath, const DlpCatalog& catalog);

// CSV helpers shared by the harness and the scrubber.
std::string csvQuote(const std::string& field);
std::vector<std::string> csvParseLine(const std::string& line);

}  // namespace clawgate
