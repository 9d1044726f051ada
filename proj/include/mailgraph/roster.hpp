#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mailgraph {

struct RosterEntry {
    std::string folder;
    std::string primary; // normalized address, unique across entries
    std::string position;
    std::vector<std::string> aliases; // normalized; each maps to one entry
};

// Employee roster: maps folder names to canonical addresses with optional
// position titles and alias addresses.
//
// File format, one entry per line:
//   folder,primary_address[,position[,alias...]]
// '#' lines and blank lines are skipped. Fields must not contain commas.
class Roster {
public:
    Roster() = default;

    // Throws DataError naming the offending line for malformed lines,
    // duplicate primary addresses, or aliases claimed by two entries.
    static Roster load(const std::filesystem::path& path);
    static Roster parse(std::string_view content, std::string_view source_name);

    // Resolves a primary or alias address to the entry's primary address.
    std::optional<std::string> resolve(std::string_view address) const;
    bool contains(std::string_view address) const;
    const RosterEntry* entry_for(std::string_view address) const;

    const std::vector<RosterEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

private:
    std::vector<RosterEntry> entries_;
    std::unordered_map<std::string, std::size_t> by_address_; // primary + aliases
};

} // namespace mailgraph
