#pragma once

#include "clawgate/audit.hpp"
#include "clawgate/policy.hpp"
#include "clawgate/sha256.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace clawgate {

using Bytes = std::vector<std::uint8_t>;

/// Fresh Ed25519 keypair. Never seeded by the replay PRNG; a new key per
/// process, with the public half emitted into run artifacts.
class Ed25519KeyPair {
public:
    static Ed25519KeyPair generate();
    ~Ed25519KeyPair();
    Ed25519KeyPair(Ed25519KeyPair&&) noexcept;
    Ed25519KeyPair& operator=(Ed25519KeyPair&&) noexcept;
    Ed25519KeyPair(const Ed25519KeyPair&) = delete;
    Ed25519KeyPair& operator=(const Ed25519KeyPair&) = delete;

    Bytes publicKey() const;
    Bytes sign(std::string_view message) const;

private:
    Ed25519KeyPair() = default;
    void* pkey_ = nullptr;  // EVP_PKEY
};

bool ed25519Verify(const Bytes& publicKey, std::string_view message, const Bytes& signature);

struct ModuleManifest {
    std::string name;
    std::string version;
    std::set<std::string> declaredCapabilities;
    Digest contentDigest{};
    Bytes signature;
    std::string signerKeyId;

    /// Everything except the signature, in canonical form.
    Json unsignedBody() const;
};

ModuleManifest makeSignedManifest(const std::string& name, const std::string& version,
                                  const std::set<std::string>& capabilities,
                                  std::string_view moduleContent, const Ed25519KeyPair& signer,
                                  const std::string& signerKeyId);

enum class ManifestCheck { Ok, UnknownSigner, BadSignature, DigestMismatch };
const char* manifestCheckName(ManifestCheck c);

struct TrustRoot {
    std::map<std::string, Bytes> signers;  // keyId -> raw public key
    bool locked = false;
};

/// First failing check wins: signer known, signature valid, content digest.
ManifestCheck verifyManifest(const TrustRoot& root, const ModuleManifest& manifest,
                             std::string_view moduleContent);

struct SealState {
    bool sealed = false;  // monotone false -> true
};

enum class TrustError {
    None,
    AlreadyLocked,
    MutationAfterLock,
    SealBeforeLock,
    TamperAttempt,
};
const char* trustErrorName(TrustError e);

/// Boot-time container for root + policy + seal + audit. After
/// sealBootstrap() every mutation attempt is refused and accounted as a
/// tamper.attempt audit record, exactly once per attempt.
class Runtime {
public:
    explicit Runtime(Policy policy, AuditChain audit = AuditChain{});

    TrustError addSigner(const std::string& keyId, Bytes publicKey);
    TrustError lockTrustRoot();
    TrustError sealBootstrap();  // idempotent once sealed
    TrustError updatePolicy(Policy next);

    const TrustRoot& root() const { return root_; }
    const Policy& policy() const { return policy_; }
    bool sealed() const { return seal_.sealed; }
    AuditChain& audit() { return audit_; }
    const AuditChain& audit() const { return audit_; }

private:
    TrustError tamper(const std::string& what);

    TrustRoot root_;
    Policy policy_;
    SealState seal_;
    AuditChain audit_;
};

}  // namespace clawgate
