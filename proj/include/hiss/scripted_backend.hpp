#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "hiss/backend.hpp"

namespace hiss {

struct ScriptEntry {
    std::string match_key;     // suffix pattern of the prompt; empty matches anything
    std::string continuation;  // raw text; stop truncation is applied on top
};

struct ScriptConversation {
    std::string key;  // substring identifying the claim this conversation serves
    std::vector<ScriptEntry> entries;
};

/// Deterministic replay backend. A conversation is chosen by the longest
/// `key` found in the prompt; within it, the unconsumed entry with the
/// longest match_key that suffixes the prompt wins, falling back to strict
/// in-order consumption. Conversations are isolated, so parallel batch runs
/// stay deterministic.
class ScriptedBackend : public Backend {
public:
    ScriptedBackend(std::string name, std::vector<ScriptConversation> conversations);

    static std::shared_ptr<ScriptedBackend> from_file(const std::filesystem::path& path);

    CompletionResponse complete(const CompletionRequest& request) override;
    std::string id() const override { return "scripted:" + name_; }

    /// Forget consumption state; the next run replays from the top.
    void reset();

private:
    struct ConversationState {
        ScriptConversation conversation;
        std::vector<bool> consumed;
        std::mutex mutex;
    };

    ConversationState* pick_conversation(const std::string& prompt);

    std::string name_;
    std::vector<std::unique_ptr<ConversationState>> conversations_;
};

}  // namespace hiss
