#include "clawgate/audit.hpp"

namespace clawgate {

Json AuditRecord::body() const {
    return Json{{"seq", seq}, {"type", recordType}, {"payload", payload}};
}

AuditChain::AuditChain(const std::filesystem::path& journalPath) {
    if (journalPath.has_parent_path()) {
        std::filesystem::create_directories(journalPath.parent_path());
    }
    journal_.open(journalPath, std::ios::trunc);
}

const Digest& AuditChain::genesis() {
    static const Digest g = sha256("clawgate-genesis-v1");
    return g;
}

Digest AuditChain::hashRecord(const Digest& prevHash, const Json& body) {
    std::string input(reinterpret_cast<const char*>(prevHash.data()), prevHash.size());
    input += canonicalize(body);
    return sha256(input);
}

const AuditRecord& AuditChain::append(const std::string& recordType, Json payload) {
    AuditRecord rec;
    rec.seq = records_.size();
    rec.recordType = recordType;
    rec.payload = std::move(payload);
    rec.prevHash = headHash_;
    rec.hash = hashRecord(rec.prevHash, rec.body());
    headHash_ = rec.hash;
    records_.push_back(std::move(rec));
    const AuditRecord& stored = records_.back();
    if (journal_.is_open()) {
        Json line = stored.body();
        line["prevHash"] = toHex(stored.prevHash);
        line["hash"] = toHex(stored.hash);
        journal_ << canonicalize(line) << '\n';
        journal_.flush();
    }
    return stored;
}

std::optional<std::size_t> AuditChain::verify() const {
    Digest expectPrev = genesis();
    for (std::size_t i = 0; i < records_.size(); ++i) {
        const AuditRecord& r = records_[i];
        if (r.seq != i) return i;
        if (r.prevHash != expectPrev) return i;
        if (r.hash != hashRecord(r.prevHash, r.body())) return i;
        expectPrev = r.hash;
    }
    return std::nullopt;
}

KeyedMultiset AuditChain::projectS(const std::optional<std::string>& probeTag) const {
    KeyedMultiset s;
    for (const AuditRecord& r : records_) {
        if (r.recordType != kIrreversibleExecuted) continue;
        if (!r.payload.contains("ok") || r.payload["ok"] != true) continue;
        if (probeTag) {
            if (!r.payload.contains("probeTag") || r.payload["probeTag"] != *probeTag) continue;
        }
        s.add(r.payload.value("cap", std::string{}),
              canonicalTarget(r.payload.value("target", std::string{})));
    }
    return s;
}

}  // namespace clawgate
