#include "mailgraph/roster.hpp"

#include <fstream>
#include <sstream>

#include "mailgraph/error.hpp"
#include "mailgraph/message.hpp"
#include "mailgraph/text.hpp"

namespace mailgraph {

Roster Roster::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read roster: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path.string());
}

Roster Roster::parse(std::string_view content, std::string_view source_name) {
    Roster roster;
    std::unordered_map<std::string, std::size_t> claimed_line; // address -> line no

    std::size_t line_no = 0;
    for (const std::string& raw_line : split(content, '\n')) {
        ++line_no;
        std::string_view line = trim(raw_line);
        if (line.empty() || line.front() == '#') continue;

        auto fields = split(line, ',');
        auto fail = [&](const std::string& what) {
            throw DataError(std::string(source_name) + ":" + std::to_string(line_no) +
                            ": " + what);
        };
        if (fields.size() < 2) fail("expected folder,primary_address[,position[,alias...]]");

        RosterEntry entry;
        entry.folder = std::string(trim(fields[0]));
        if (entry.folder.empty()) fail("empty folder name");

        auto primary = normalize_address(fields[1]);
        if (!primary) fail("primary address is not a valid address: '" + fields[1] + "'");
        entry.primary = std::move(*primary);

        if (fields.size() >= 3) entry.position = std::string(trim(fields[2]));
        for (std::size_t i = 3; i < fields.size(); ++i) {
            if (trim(fields[i]).empty()) continue;
            auto alias = normalize_address(fields[i]);
            if (!alias) fail("alias is not a valid address: '" + fields[i] + "'");
            entry.aliases.push_back(std::move(*alias));
        }

        auto claim = [&](const std::string& address) {
            auto [it, inserted] = claimed_line.emplace(address, line_no);
            if (!inserted)
                fail("address '" + address + "' already claimed on line " +
                     std::to_string(it->second));
            roster.by_address_[address] = roster.entries_.size();
        };
        claim(entry.primary);
        for (const auto& alias : entry.aliases) claim(alias);
        roster.entries_.push_back(std::move(entry));
    }
    return roster;
}

std::optional<std::string> Roster::resolve(std::string_view address) const {
    if (const RosterEntry* e = entry_for(address)) return e->primary;
    return std::nullopt;
}

bool Roster::contains(std::string_view address) const {
    return by_address_.find(std::string(address)) != by_address_.end();
}

const RosterEntry* Roster::entry_for(std::string_view address) const {
    auto it = by_address_.find(std::string(address));
    if (it == by_address_.end()) return nullptr;
    return &entries_[it->second];
}

} // namespace mailgraph
