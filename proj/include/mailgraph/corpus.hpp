#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "mailgraph/message.hpp"

namespace mailgraph {

// Sent-folder allowlist used when WalkOptions.folder_allowlist is left at its
// default. Patterns are case-insensitive globs matched against the first-level
// folder name under each employee directory.
std::vector<std::string> default_sent_folders();

constexpr std::int64_t kDefaultWindowStart = 883612800;  // 1998-01-01T00:00:00Z
constexpr std::int64_t kDefaultWindowEnd = 1041379199;   // 2002-12-31T23:59:59Z

struct CorpusFilter {
    std::int64_t start = kDefaultWindowStart; // inclusive
    std::int64_t end = kDefaultWindowEnd;     // inclusive
    std::vector<std::string> folder_allowlist = default_sent_folders(); // empty = all
    std::vector<std::string> employees; // folder names; empty = all
};

// Accounting per walk: parsed + rejected + deduplicated == files_visited.
// date_filtered counts the subset of rejections caused by the date window.
struct WalkStats {
    std::size_t files_visited = 0;
    std::size_t parsed = 0;
    std::size_t rejected = 0;
    std::size_t deduplicated = 0;
    std::size_t date_filtered = 0;
};

// Walks root/<employee>/<folder>/... and feeds every retained message to the
// sink in lexicographic path order (deterministic for any jobs value; files
// are parsed in parallel but merged in order). Throws DataError when root is
// missing or unreadable; per-file parse problems only count as rejections.
void walk_corpus(const std::filesystem::path& root, const CorpusFilter& filter,
                 const std::function<void(EmailMessage&&)>& sink,
                 WalkStats* stats = nullptr, unsigned jobs = 1);

std::vector<EmailMessage> collect_corpus(const std::filesystem::path& root,
                                         const CorpusFilter& filter,
                                         WalkStats* stats = nullptr, unsigned jobs = 1);

} // namespace mailgraph
