#include "tuplevo/core/tuple_io.hpp"

#include <algorithm>
#include <sstream>

#include "tuplevo/core/errors.hpp"

namespace tuplevo {

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

std::size_t longest_backtick_run(const std::string& text) {
    std::size_t best = 0, run = 0;
    for (char c : text) {
        run = c == '`' ? run + 1 : 0;
        best = std::max(best, run);
    }
    return best;
}

bool is_fence(const std::string& line, std::size_t* ticks) {
    std::size_t n = 0;
    while (n < line.size() && line[n] == '`') ++n;
    if (n < 3 || n != line.size()) return false;
    *ticks = n;
    return true;
}

}  // namespace

std::string render_tuple(const HeuristicTuple& tuple, const std::vector<std::string>& names) {
    std::string out = "# heuristic tuple\n# components: " +
                      std::to_string(tuple.components.size()) + "\n";
    for (std::size_t i = 0; i < tuple.components.size(); ++i) {
        const auto& comp = tuple.components[i];
        out += "\n## subproblem " + std::to_string(i + 1);
        if (i < names.size() && !names[i].empty()) out += ": " + names[i];
        out += "\nthought: " + comp.thought + "\n";
        std::string fence(std::max<std::size_t>(3, longest_backtick_run(comp.code) + 1), '`');
        out += fence + "\n" + comp.code;
        if (comp.code.empty() || comp.code.back() != '\n') out += "\n";
        out += fence + "\n";
    }
    return out;
}

HeuristicTuple parse_tuple(const std::string& text) {
    std::vector<std::string> lines = split_lines(text);
    std::vector<std::pair<std::string, std::string>> parts;
    std::size_t i = 0;
    while (i < lines.size()) {
        const std::string& line = lines[i];
        if (!line.starts_with("thought:")) {
            ++i;
            continue;
        }
        std::string thought = line.substr(8);
        if (!thought.empty() && thought.front() == ' ') thought.erase(0, 1);
        ++i;
        std::size_t ticks = 0;
        while (i < lines.size() && !is_fence(lines[i], &ticks)) ++i;
        if (i >= lines.size()) {
            throw FormatError("tuple section missing code fence after thought");
        }
        ++i;  // past opening fence
        std::string code;
        bool closed = false;
        bool first = true;
        for (; i < lines.size(); ++i) {
            std::size_t close_ticks = 0;
            if (is_fence(lines[i], &close_ticks) && close_ticks == ticks) {
                closed = true;
                ++i;
                break;
            }
            if (!first) code += "\n";
            code += lines[i];
            first = false;
        }
        if (!closed) throw FormatError("unterminated code fence in tuple document");
        parts.emplace_back(code, thought);
    }
    if (parts.empty()) throw FormatError("no components found in tuple document");
    return tuplevo::make_tuple(parts, parts.size());
}

}  // namespace tuplevo
