#include "mailgraph/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "mailgraph/error.hpp"
#include "mailgraph/text.hpp"

namespace mailgraph {

namespace fs = std::filesystem;

std::vector<std::string> default_sent_folders() {
    return {"sent", "_sent_mail", "sent_items"};
}

namespace {

bool folder_allowed(const std::vector<std::string>& allowlist, std::string_view folder) {
    if (allowlist.empty()) return true;
    return std::any_of(allowlist.begin(), allowlist.end(),
                       [&](const std::string& p) { return glob_match(p, folder); });
}

struct CorpusFile {
    std::string rel_path; // employee/folder/.../name, '/'-separated
    std::string owner;
    fs::path abs_path;
};

std::vector<CorpusFile> list_files(const fs::path& root, const CorpusFilter& filter) {
    std::error_code ec;
    if (!fs::is_directory(root, ec) || ec)
        throw DataError("corpus root is not a readable directory: " + root.string());

    std::vector<std::string> employees;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (!entry.is_directory()) continue;
        std::string name = entry.path().filename().string();
        if (!filter.employees.empty() &&
            std::find(filter.employees.begin(), filter.employees.end(), name) ==
                filter.employees.end())
            continue;
        employees.push_back(std::move(name));
    }
    std::sort(employees.begin(), employees.end());

    std::vector<CorpusFile> files;
    for (const std::string& employee : employees) {
        const fs::path employee_dir = root / employee;
        for (const auto& entry : fs::directory_iterator(employee_dir)) {
            if (entry.is_directory()) {
                std::string folder = entry.path().filename().string();
                if (!folder_allowed(filter.folder_allowlist, folder)) continue;
                for (const auto& f : fs::recursive_directory_iterator(entry.path())) {
                    if (!f.is_regular_file()) continue;
                    std::string rel =
                        employee + "/" + fs::relative(f.path(), employee_dir).generic_string();
                    files.push_back({std::move(rel), employee, f.path()});
                }
            } else if (entry.is_regular_file() && filter.folder_allowlist.empty()) {
                // Loose files directly under the employee dir only count when
                // all folders are requested.
                files.push_back({employee + "/" + entry.path().filename().string(),
                                 employee, entry.path()});
            }
        }
    }
    std::sort(files.begin(), files.end(),
              [](const CorpusFile& a, const CorpusFile& b) { return a.rel_path < b.rel_path; });
    return files;
}

std::string read_whole_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw DataError("cannot read file: " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct ParseSlot {
    std::optional<EmailMessage> message;
    std::string reject_reason;
};

} // namespace

void walk_corpus(const fs::path& root, const CorpusFilter& filter,
                 const std::function<void(EmailMessage&&)>& sink, WalkStats* stats,
                 unsigned jobs) {
    if (filter.start > filter.end)
        throw std::invalid_argument("corpus filter start must be <= end");

    const std::vector<CorpusFile> files = list_files(root, filter);
    std::vector<ParseSlot> slots(files.size());

    auto parse_range = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            slots[i].message = parse_message(read_whole_file(files[i].abs_path),
                                             files[i].owner, files[i].rel_path,
                                             &slots[i].reject_reason);
        }
    };

    if (jobs <= 1 || files.size() < 2) {
        parse_range(0, files.size());
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        unsigned n = std::min<unsigned>(jobs, std::thread::hardware_concurrency() * 2 + 2);
        for (unsigned w = 0; w < n; ++w) {
            workers.emplace_back([&] {
                constexpr std::size_t kChunk = 64;
                for (;;) {
                    std::size_t lo = next.fetch_add(kChunk);
                    if (lo >= files.size()) break;
                    parse_range(lo, std::min(files.size(), lo + kChunk));
                }
            });
        }
        for (auto& t : workers) t.join();
    }

    WalkStats local;
    local.files_visited = files.size();
    std::unordered_set<DedupKey, DedupKeyHash> seen;
    for (auto& slot : slots) {
        if (!slot.message) {
            ++local.rejected;
            continue;
        }
        EmailMessage& m = *slot.message;
        if (m.sent_at < filter.start || m.sent_at > filter.end) {
            ++local.rejected;
            ++local.date_filtered;
            continue;
        }
        if (!seen.insert(dedup_key(m)).second) {
            ++local.deduplicated;
            continue;
        }
        ++local.parsed;
        sink(std::move(m));
    }
    if (stats) *stats = local;
}

std::vector<EmailMessage> collect_corpus(const fs::path& root, const CorpusFilter& filter,
                                         WalkStats* stats, unsigned jobs) {
    std::vector<EmailMessage> out;
    walk_corpus(root, filter, [&](EmailMessage&& m) { out.push_back(std::move(m)); },
                stats, jobs);
    return out;
}

} // namespace mailgraph
