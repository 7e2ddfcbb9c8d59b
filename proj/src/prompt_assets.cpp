#include "hiss/prompt_assets.hpp"

#include <fstream>
#include <sstream>

#include "hiss/errors.hpp"
#include "hiss/text.hpp"

namespace hiss {

DemoSet load_demo_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    require(in.good(), ErrorCode::io_failure, "cannot open demo file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string content = buffer.str();

    DemoSet set;
    set.name = path.stem().string();

    std::vector<std::string> demo_lines;
    std::string current;
    bool in_header = true;
    for (std::string_view line : text::split_lines(content)) {
        if (in_header && line.starts_with("#")) {
            std::string_view meta = text::trim(line.substr(1));
            if (meta.starts_with("name:")) set.name = std::string(text::trim(meta.substr(5)));
            if (meta.starts_with("version:")) {
                try {
                    set.version = std::stoi(std::string(text::trim(meta.substr(8))));
                } catch (...) {
                    fail(ErrorCode::io_failure, "bad version line in " + path.string());
                }
            }
            continue;
        }
        if (in_header && text::trim(line).empty()) continue;
        in_header = false;

        if (line.starts_with("Q:")) {
            if (!text::trim(current).empty()) {
                set.demos.push_back(std::string(text::trim(current)));
            }
            current.clear();
        }
        current += std::string(line);
        current += '\n';
    }
    if (!text::trim(current).empty()) set.demos.push_back(std::string(text::trim(current)));

    require(!set.demos.empty(), ErrorCode::io_failure, "demo file has no Q: blocks: " + path.string());
    return set;
}

std::string join_demos(const DemoSet& set, int k) {
    require(k >= 0, ErrorCode::precondition, "negative shot count");
    require(static_cast<std::size_t>(k) <= set.demos.size(), ErrorCode::insufficient_demos,
            "asset '" + set.name + "' has " + std::to_string(set.demos.size()) +
                " demos, need " + std::to_string(k));
    std::string out;
    for (int i = 0; i < k; ++i) {
        if (i > 0) out += "\n\n";
        out += set.demos[static_cast<std::size_t>(i)];
    }
    return out;
}

}  // namespace hiss
