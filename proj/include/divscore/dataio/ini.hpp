#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace divscore::dataio {

// Flat "[section]" / "key = value" text. Order is preserved; '#' and ';'
// start comment lines.
struct IniSection {
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries;

    std::optional<std::string> get(std::string_view key) const;
};

struct IniDocument {
    std::vector<IniSection> sections;

    const IniSection* find(std::string_view name) const;
};

IniDocument parse_ini(std::string_view text);
std::string format_ini(const IniDocument& doc);

std::string trim(std::string_view s);
std::vector<std::string> split_list(std::string_view s, char sep = ',');

} // namespace divscore::dataio
