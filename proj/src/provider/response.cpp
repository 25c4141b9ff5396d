#include <sstream>

#include "tuplevo/dsl/parser.hpp"
#include "tuplevo/core/errors.hpp"
#include "tuplevo/provider/provider.hpp"

namespace tuplevo::provider {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string current;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty()) lines.push_back(current);
    return lines;
}

std::string trimmed(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool is_fence(const std::string& line) {
    std::string t = trimmed(line);
    return t.size() >= 3 && t.substr(0, 3) == "```";
}

}  // namespace

std::vector<ResponseComponent> parse_response(const std::string& text,
                                               int expected_components) {
    std::vector<ResponseComponent> out;
    std::vector<std::string> lines = split_lines(text);
    std::size_t i = 0;
    while (static_cast<int>(out.size()) < expected_components && i < lines.size()) {
        // first `thought:` line
        std::string thought;
        bool found_thought = false;
        for (; i < lines.size(); ++i) {
            std::string t = trimmed(lines[i]);
            if (t.starts_with("thought:")) {
                thought = trimmed(t.substr(8));
                found_thought = true;
                ++i;
                break;
            }
        }
        if (!found_thought) break;
        // first fenced block after it
        while (i < lines.size() && !is_fence(lines[i])) ++i;
        if (i >= lines.size()) break;
        ++i;
        std::string code;
        bool closed = false;
        bool first = true;
        for (; i < lines.size(); ++i) {
            if (is_fence(lines[i])) {
                closed = true;
                ++i;
                break;
            }
            if (!first) code += "\n";
            code += lines[i];
            first = false;
        }
        if (!closed) break;
        ResponseComponent comp;
        comp.thought = thought;
        comp.code = code;
        try {
            dsl::parse(code);
            comp.valid = true;
        } catch (const Error&) {
            comp.valid = false;
        }
        out.push_back(std::move(comp));
    }
    return out;
}

}  // namespace tuplevo::provider
