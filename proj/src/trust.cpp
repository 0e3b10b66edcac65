#include "clawgate/trust.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace clawgate {

Ed25519KeyPair Ed25519KeyPair::generate() {
    EVP_PKEY_CTX* ctx = EVP_PKEY_CTX_new_id(EVP_PKEY_ED25519, nullptr);
    EVP_PKEY* pkey = nullptr;
    if (!ctx || EVP_PKEY_keygen_init(ctx) <= 0 || EVP_PKEY_keygen(ctx, &pkey) <= 0) {
        EVP_PKEY_CTX_free(ctx);
        throw std::runtime_error("ed25519 keygen failed");
    }
    EVP_PKEY_CTX_free(ctx);
    Ed25519KeyPair kp;
    kp.pkey_ = pkey;
    return kp;
}

Ed25519KeyPair::~Ed25519KeyPair() {
    if (pkey_) EVP_PKEY_free(static_cast<EVP_PKEY*>(pkey_));
}

Ed25519KeyPair::Ed25519KeyPair(Ed25519KeyPair&& other) noexcept : pkey_(other.pkey_) {
    other.pkey_ = nullptr;
}

Ed25519KeyPair& Ed25519KeyPair::operator=(Ed25519KeyPair&& other) noexcept {
    if (this != &other) {
        if (pkey_) EVP_PKEY_free(static_cast<EVP_PKEY*>(pkey_));
        pkey_ = other.pkey_;
        other.pkey_ = nullptr;
    }
    return *this;
}

Bytes Ed25519KeyPair::publicKey() const {
    std::size_t len = 32;
    Bytes pub(len);
    if (EVP_PKEY_get_raw_public_key(static_cast<EVP_PKEY*>(pkey_), pub.data(), &len) <= 0) {
        throw std::runtime_error("ed25519 public key export failed");
    }
    pub.resize(len);
    return pub;
}

Bytes Ed25519KeyPair::sign(std::string_view message) const {
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    std::size_t sigLen = 64;
    Bytes sig(sigLen);
    bool ok = ctx &&
              EVP_DigestSignInit(ctx, nullptr, nullptr, nullptr, static_cast<EVP_PKEY*>(pkey_)) > 0 &&
              EVP_DigestSign(ctx, sig.data(), &sigLen,
                             reinterpret_cast<const unsigned char*>(message.data()),
                             message.size()) > 0;
    EVP_MD_CTX_free(ctx);
    if (!ok) throw std::runtime_error("ed25519 sign failed");
    sig.resize(sigLen);
    return sig;
}

bool ed25519Verify(const Bytes& publicKey, std::string_view message, const Bytes& signature) {
    EVP_PKEY* pkey =
        EVP_PKEY_new_raw_public_key(EVP_PKEY_ED25519, nullptr, publicKey.data(), publicKey.size());
    if (!pkey) return false;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    bool ok = ctx && EVP_DigestVerifyInit(ctx, nullptr, nullptr, nullptr, pkey) > 0 &&
              EVP_DigestVerify(ctx, signature.data(), signature.size(),
                               reinterpret_cast<const unsigned char*>(message.data()),
                               message.size()) > 0;
    EVP_MD_CTX_free(ctx);
    EVP_PKEY_free(pkey);
    return ok;
}

Json ModuleManifest::unsignedBody() const {
    return Json{{"name", name},
                {"version", version},
                {"declaredCapabilities", declaredCapabilities},
                {"contentDigest", toHex(contentDigest)},
                {"signerKeyId", signerKeyId}};
}

ModuleManifest makeSignedManifest(const std::string& name, const std::string& version,
                                  const std::set<std::string>& capabilities,
                                  std::string_view moduleContent, const Ed25519KeyPair& signer,
                                  const std::string& signerKeyId) {
    ModuleManifest m;
    m.name = name;
    m.version = version;
    m.declaredCapabilities = capabilities;
    m.contentDigest = sha256(moduleContent);
    m.signerKeyId = signerKeyId;
    m.signature = signer.sign(canonicalize(m.unsignedBody()));
    return m;
}

const char* manifestCheckName(ManifestCheck c) {
    switch (c) {
        case ManifestCheck::Ok: return "Ok";
        case ManifestCheck::UnknownSigner: return "UnknownSigner";
        case ManifestCheck::BadSignature: return "BadSignature";
        case ManifestCheck::DigestMismatch: return "DigestMismatch";
    }
    return "?";
}

ManifestCheck verifyManifest(const TrustRoot& root, const ModuleManifest& manifest,
                             std::string_view moduleContent) {
    auto it = root.signers.find(manifest.signerKeyId);
    if (it == root.signers.end()) return ManifestCheck::UnknownSigner;
    if (!ed25519Verify(it->second, canonicalize(manifest.unsignedBody()), manifest.signature)) {
        return ManifestCheck::BadSignature;
    }
    if (sha256(moduleContent) != manifest.contentDigest) return ManifestCheck::DigestMismatch;
    return ManifestCheck::Ok;
}

const char* trustErrorName(TrustError e) {
    switch (e) {
        case TrustError::None: return "None";
        case TrustError::AlreadyLocked: return "AlreadyLocked";
        case TrustError::MutationAfterLock: return "MutationAfterLock";
        case TrustError::SealBeforeLock: return "SealBeforeLock";
        case TrustError::TamperAttempt: return "TamperAttempt";
    }
    return "?";
}

Runtime::Runtime(Policy policy, AuditChain audit)
    : policy_(std::move(policy)), audit_(std::move(audit)) {}

TrustError Runtime::tamper(const std::string& what) {
    audit_.append(AuditChain::kTamperAttempt,
                  Json{{"cap", "tool.invoke"}, {"target", what}, {"ok", false}});
    return TrustError::TamperAttempt;
}

TrustError Runtime::addSigner(const std::string& keyId, Bytes publicKey) {
    if (seal_.sealed) return tamper("trust-root");
    if (root_.locked) return TrustError::MutationAfterLock;
    root_.signers[keyId] = std::move(publicKey);
    return TrustError::None;
}

TrustError Runtime::lockTrustRoot() {
    if (seal_.sealed) return tamper("trust-root");
    if (root_.locked) return TrustError::AlreadyLocked;
    root_.locked = true;
    return TrustError::None;
}

TrustError Runtime::sealBootstrap() {
    if (seal_.sealed) return TrustError::None;  // idempotent-safe
    if (!root_.locked) return TrustError::SealBeforeLock;
    seal_.sealed = true;
    return TrustError::None;
}

TrustError Runtime::updatePolicy(Policy next) {
    if (seal_.sealed) return tamper("policy");
    policy_ = std::move(next);
    return TrustError::None;
}

}  // namespace clawgate
