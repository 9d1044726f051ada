#include "mailgraph/message.hpp"

#include <algorithm>

#include "mailgraph/datetime.hpp"
#include "mailgraph/text.hpp"

namespace mailgraph {

namespace {

// FNV-1a, run twice with different offsets for a 128-bit effective key.
std::uint64_t fnv1a(std::string_view s, std::uint64_t h) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

struct HeaderField {
    std::string name;  // lowercased
    std::string value; // unfolded, untrimmed tail
};

// Splits raw text into (unfolded header fields, body). Continuation lines
// starting with whitespace are joined with a single space. The body is
// everything after the first blank line, CRLF-normalized.
void split_headers(std::string_view raw, std::vector<HeaderField>& fields,
                   std::string& body) {
    std::size_t pos = 0;
    bool in_body = false;
    while (pos <= raw.size()) {
        std::size_t eol = raw.find('\n', pos);
        std::string_view line;
        std::size_t next;
        if (eol == std::string_view::npos) {
            if (pos >= raw.size()) break;
            line = raw.substr(pos);
            next = raw.size() + 1;
        } else {
            line = raw.substr(pos, eol - pos);
            next = eol + 1;
        }
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        if (in_body) {
            body.append(line);
            if (eol != std::string_view::npos) body.push_back('\n');
        } else if (line.empty()) {
            in_body = true;
        } else if (line.front() == ' ' || line.front() == '\t') {
            if (!fields.empty()) {
                fields.back().value.push_back(' ');
                fields.back().value.append(trim(line));
            }
        } else {
            std::size_t colon = line.find(':');
            if (colon != std::string_view::npos) {
                fields.push_back({to_lower(line.substr(0, colon)),
                                  std::string(line.substr(colon + 1))});
            }
            // Lines without a colon inside the header block are ignored.
        }
        pos = next;
    }
}

const std::string* find_field(const std::vector<HeaderField>& fields,
                              std::string_view name) {
    for (const auto& f : fields)
        if (f.name == name) return &f.value; // first occurrence wins
    return nullptr;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

} // namespace

std::vector<std::string> EmailMessage::all_recipients() const {
    std::vector<std::string> out;
    out.reserve(to.size() + cc.size() + bcc.size());
    out.insert(out.end(), to.begin(), to.end());
    out.insert(out.end(), cc.begin(), cc.end());
    out.insert(out.end(), bcc.begin(), bcc.end());
    return out;
}

std::optional<std::string> normalize_address(std::string_view raw) {
    std::string_view s = trim(raw);
    // Display-name form: take the content of the last <...> group.
    std::size_t lt = s.rfind('<');
    if (lt != std::string_view::npos) {
        std::size_t gt = s.find('>', lt + 1);
        s = (gt == std::string_view::npos) ? s.substr(lt + 1)
                                           : s.substr(lt + 1, gt - lt - 1);
    }
    s = trim(s, " \t\r\n'\"");
    if (s.find('@') == std::string_view::npos) return std::nullopt;
    std::string out = to_lower(s);
    if (out.front() == '@' || out.back() == '@') return std::nullopt;
    return out;
}

std::vector<std::string> parse_address_list(std::string_view header_value) {
    std::vector<std::string> out;
    for (const auto& token : split(header_value, ',')) {
        if (auto addr = normalize_address(token)) out.push_back(std::move(*addr));
    }
    return out;
}

std::optional<EmailMessage> parse_message(std::string_view raw, std::string_view owner,
                                          std::string_view source_path,
                                          std::string* reject_reason) {
    std::vector<HeaderField> fields;
    EmailMessage m;
    split_headers(raw, fields, m.body);
    m.owner = std::string(owner);
    m.source_path = std::string(source_path);

    const std::string* from = find_field(fields, "from");
    if (!from) {
        if (reject_reason) *reject_reason = "missing From header";
        return std::nullopt;
    }
    auto senders = parse_address_list(*from);
    if (senders.empty()) {
        if (reject_reason) *reject_reason = "From header has no address";
        return std::nullopt;
    }
    m.sender = std::move(senders.front());

    const std::string* date = find_field(fields, "date");
    if (!date) {
        if (reject_reason) *reject_reason = "missing Date header";
        return std::nullopt;
    }
    auto sent_at = parse_rfc2822(*date);
    if (!sent_at) {
        if (reject_reason) *reject_reason = "unparseable Date: " + std::string(trim(*date));
        return std::nullopt;
    }
    m.sent_at = *sent_at;

    if (const std::string* v = find_field(fields, "to")) m.to = parse_address_list(*v);
    if (const std::string* v = find_field(fields, "cc")) m.cc = parse_address_list(*v);
    if (const std::string* v = find_field(fields, "bcc")) m.bcc = parse_address_list(*v);
    if (const std::string* v = find_field(fields, "subject"))
        m.subject = std::string(trim(*v));
    if (const std::string* v = find_field(fields, "message-id"))
        m.message_id = std::string(trim(*v));
    return m;
}

std::string serialize_message(const EmailMessage& m) {
    std::string out;
    if (!m.message_id.empty()) out += "Message-ID: " + m.message_id + "\n";
    out += "Date: " + format_rfc2822_utc(m.sent_at) + "\n";
    out += "From: " + m.sender + "\n";
    if (!m.to.empty()) out += "To: " + join(m.to, ", ") + "\n";
    if (!m.cc.empty()) out += "Cc: " + join(m.cc, ", ") + "\n";
    if (!m.bcc.empty()) out += "Bcc: " + join(m.bcc, ", ") + "\n";
    out += "Subject: " + m.subject + "\n";
    out += "\n";
    out += m.body;
    return out;
}

DedupKey dedup_key(const EmailMessage& m) {
    DedupKey k;
    if (!m.message_id.empty()) {
        k.hi = fnv1a(m.message_id, 0xCBF29CE484222325ULL);
        k.lo = fnv1a(m.message_id, 0x84222325CBF29CE4ULL);
        return k;
    }
    std::string blob = m.sender;
    blob.push_back('\x1f');
    blob += std::to_string(m.sent_at);
    blob.push_back('\x1f');
    blob += m.subject;
    blob.push_back('\x1f');
    blob += m.body;
    k.hi = fnv1a(blob, 0xAF63BD4C8601B7DFULL);
    k.lo = fnv1a(blob, 0x6C62272E07BB0142ULL);
    return k;
}

} // namespace mailgraph
