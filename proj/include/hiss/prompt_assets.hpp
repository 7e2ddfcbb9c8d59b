#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace hiss {

/// A versioned set of demonstration examples. Demo files are plain text:
/// leading "# key: value" lines carry name/version metadata, then one block
/// per demonstration, each starting at a line that begins with "Q:".
struct DemoSet {
    std::string name;
    int version = 1;
    std::vector<std::string> demos;

    std::string asset_id() const { return name + "@" + std::to_string(version); }
};

DemoSet load_demo_file(const std::filesystem::path& path);

/// Joins the first `k` demos with blank lines; the claim block is appended by
/// the prompt builders.
std::string join_demos(const DemoSet& set, int k);

}  // namespace hiss
