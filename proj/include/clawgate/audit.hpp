#pragma once

#include "clawgate/canonical.hpp"
#include "clawgate/multiset.hpp"
#include "clawgate/sha256.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace clawgate {

struct AuditRecord {
    std::uint64_t seq = 0;
    std::string recordType;
    Json payload;
    Digest prevHash{};
    Digest hash{};

    /// Record body entering the hash (everything except the hash itself;
    /// prevHash is prepended as raw bytes rather than serialized here).
    Json body() const;
};

/// Append-only hash-chained journal. Single writer; reads are safe when no
/// writer is active.
class AuditChain {
public:
    AuditChain() = default;
    /// Mirrors every append to a line-delimited journal file.
    explicit AuditChain(const std::filesystem::path& journalPath);

    const AuditRecord& append(const std::string& recordType, Json payload);

    /// nullopt when every record satisfies both hash equations, otherwise
    /// the index of the first violating record.
    std::optional<std::size_t> verify() const;

    /// Eq-style projection: multiset over (cap, target) of records with
    /// recordType irreversible.executed and payload.ok == true. ok=false
    /// records stay in the chain for forensics but never enter S.
    KeyedMultiset projectS(const std::optional<std::string>& probeTag = std::nullopt) const;

    const std::vector<AuditRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    const Digest& headHash() const { return headHash_; }

    static const Digest& genesis();
    static Digest hashRecord(const Digest& prevHash, const Json& body);

    /// Direct record access for tamper experiments; production code never
    /// mutates a stored record.
    AuditRecord& recordForTamper(std::size_t i) { return records_.at(i); }

    static constexpr const char* kIrreversibleExecuted = "irreversible.executed";
    static constexpr const char* kGateDecision = "gate.decision";
    static constexpr const char* kTamperAttempt = "tamper.attempt";

private:
    std::vector<AuditRecord> records_;
    Digest headHash_ = genesis();
    std::ofstream journal_;
};

}  // namespace clawgate
