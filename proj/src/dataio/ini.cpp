#include "divscore/dataio/ini.hpp"

#include "divscore/error.hpp"

namespace divscore::dataio {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view s, char sep) {
    std::vector<std::string> out;
    if (trim(s).empty()) return out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = s.find(sep, pos);
        out.push_back(trim(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos)));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return out;
}

std::optional<std::string> IniSection::get(std::string_view key) const {
    for (const auto& [k, v] : entries)
        if (k == key) return v;
    return std::nullopt;
}

const IniSection* IniDocument::find(std::string_view name) const {
    for (const auto& s : sections)
        if (s.name == name) return &s;
    return nullptr;
}

IniDocument parse_ini(std::string_view text) {
    IniDocument doc;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const std::string line = trim(text.substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        if (line.empty() || line.front() == '#' || line.front() == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ValidationError("config line " + std::to_string(line_no) + ": unterminated section header");
            }
            std::string name = trim(std::string_view(line).substr(1, line.size() - 2));
            if (doc.find(name) != nullptr) {
                throw ValidationError("config line " + std::to_string(line_no) + ": duplicate section [" + name + "]");
            }
            doc.sections.push_back({std::move(name), {}});
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ValidationError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        if (doc.sections.empty()) doc.sections.push_back({"", {}});
        doc.sections.back().entries.emplace_back(trim(std::string_view(line).substr(0, eq)),
                                                 trim(std::string_view(line).substr(eq + 1)));
    }
    return doc;
}

std::string format_ini(const IniDocument& doc) {
    std::string out;
    for (const auto& section : doc.sections) {
        if (!out.empty()) out += "\n";
        if (!section.name.empty()) out += "[" + section.name + "]\n";
        for (const auto& [k, v] : section.entries) out += k + " = " + v + "\n";
    }
    return out;
}

} // namespace divscore::dataio
