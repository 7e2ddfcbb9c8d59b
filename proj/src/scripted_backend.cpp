#include "hiss/scripted_backend.hpp"

#include <fstream>

#include <json.hpp>

#include "hiss/errors.hpp"

namespace hiss {

ScriptedBackend::ScriptedBackend(std::string name,
                                 std::vector<ScriptConversation> conversations)
    : name_(std::move(name)) {
    for (auto& conv : conversations) {
        auto state = std::make_unique<ConversationState>();
        state->conversation = std::move(conv);
        state->consumed.assign(state->conversation.entries.size(), false);
        for (const auto& entry : state->conversation.entries) {
            require(!entry.continuation.empty(), ErrorCode::precondition,
                    "scripted continuation must be non-empty");
        }
        conversations_.push_back(std::move(state));
    }
}

std::shared_ptr<ScriptedBackend> ScriptedBackend::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    require(in.good(), ErrorCode::io_failure, "cannot open fixture " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::io_failure, "fixture " + path.string() + ": " + e.what());
    }

    auto parse_entries = [](const nlohmann::json& arr) {
        std::vector<ScriptEntry> entries;
        for (const auto& item : arr) {
            entries.push_back(ScriptEntry{item.value("match", std::string{}),
                                          item.at("text").get<std::string>()});
        }
        return entries;
    };

    std::vector<ScriptConversation> conversations;
    try {
        if (j.contains("conversations")) {
            for (const auto& c : j.at("conversations")) {
                conversations.push_back(ScriptConversation{
                    c.value("key", std::string{}), parse_entries(c.at("entries"))});
            }
        } else {
            conversations.push_back(
                ScriptConversation{std::string{}, parse_entries(j.at("entries"))});
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::io_failure, "fixture " + path.string() + ": " + e.what());
    }
    return std::make_shared<ScriptedBackend>(path.stem().string(), std::move(conversations));
}

ScriptedBackend::ConversationState* ScriptedBackend::pick_conversation(
    const std::string& prompt) {
    ConversationState* best = nullptr;
    for (const auto& state : conversations_) {
        const std::string& key = state->conversation.key;
        if (!key.empty() && prompt.find(key) == std::string::npos) continue;
        if (best == nullptr || key.size() > best->conversation.key.size()) best = state.get();
    }
    return best;
}

CompletionResponse ScriptedBackend::complete(const CompletionRequest& request) {
    validate_request(request);
    ConversationState* state = pick_conversation(request.prompt);
    require(state != nullptr, ErrorCode::script_exhausted,
            "no scripted conversation matches the prompt");

    std::lock_guard<std::mutex> lock(state->mutex);
    const auto& entries = state->conversation.entries;

    auto is_suffix = [&](const std::string& key) {
        return key.size() <= request.prompt.size() &&
               request.prompt.compare(request.prompt.size() - key.size(), key.size(), key) == 0;
    };

    // Longest suffix-matching match_key wins; strict in-order as fallback.
    std::size_t chosen = entries.size();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (state->consumed[i] || !is_suffix(entries[i].match_key)) continue;
        if (chosen == entries.size() ||
            entries[i].match_key.size() > entries[chosen].match_key.size())
            chosen = i;
    }
    if (chosen == entries.size()) {
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (!state->consumed[i]) {
                chosen = i;
                break;
            }
        }
    }
    require(chosen < entries.size(), ErrorCode::script_exhausted,
            "scripted conversation has no entry left for this request");

    state->consumed[chosen] = true;
    return apply_stops(entries[chosen].continuation, request.stop_sequences);
}

void ScriptedBackend::reset() {
    for (auto& state : conversations_) {
        std::lock_guard<std::mutex> lock(state->mutex);
        state->consumed.assign(state->conversation.entries.size(), false);
    }
}

}  // namespace hiss
