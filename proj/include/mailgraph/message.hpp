#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mailgraph {

// One parsed corpus file. Addresses are normalized (lowercase bare address);
// sent_at is UTC. owner is the employee folder the file was found under.
struct EmailMessage {
    std::string owner;
    std::string source_path; // corpus-relative, '/'-separated
    std::string sender;
    std::vector<std::string> to;
    std::vector<std::string> cc;
    std::vector<std::string> bcc;
    std::string subject;
    std::string body;
    std::int64_t sent_at = 0;
    std::string message_id; // raw header value; empty when absent

    bool operator==(const EmailMessage&) const = default;

    std::vector<std::string> all_recipients() const;
};

// Lowercases, strips quotes/whitespace, and reduces display-name and
// angle-bracket forms to the bare address. Returns nullopt when the token
// carries no '@'-bearing address.
std::optional<std::string> normalize_address(std::string_view raw);

// Splits a header value on commas and normalizes each token, dropping tokens
// with no address.
std::vector<std::string> parse_address_list(std::string_view header_value);

// Parses one raw message (header block, blank line, body). Returns nullopt on
// rejection (missing/unparseable From, unparseable Date); when reject_reason
// is given it receives a short description. Never throws on bad content.
std::optional<EmailMessage> parse_message(std::string_view raw, std::string_view owner,
                                          std::string_view source_path,
                                          std::string* reject_reason = nullptr);

// Renders a message back to header-block + blank line + body form.
// parse_message(serialize_message(m), m.owner, m.source_path) == m for
// messages whose fields are already normalized.
std::string serialize_message(const EmailMessage& m);

// Identity used for duplicate suppression: Message-ID when present, otherwise
// a hash over (sender, sent_at, subject, body).
struct DedupKey {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;
    bool operator==(const DedupKey&) const = default;
};

struct DedupKeyHash {
    std::size_t operator()(const DedupKey& k) const {
        return static_cast<std::size_t>(k.hi ^ (k.lo * 0x9E3779B97F4A7C15ULL));
    }
};

DedupKey dedup_key(const EmailMessage& m);

} // namespace mailgraph
