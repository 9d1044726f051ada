#include "mailgraph/sentiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mailgraph/error.hpp"
#include "mailgraph/stats.hpp"
#include "mailgraph/text.hpp"

namespace mailgraph {

namespace {

double clamp_polarity(double p) { return std::clamp(p, -1.0, 1.0); }
double clamp_subjectivity(double s) { return std::clamp(s, 0.0, 1.0); }

std::string decode_xml_entities(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '&') {
            out.push_back(s[i++]);
            continue;
        }
        std::size_t semi = s.find(';', i);
        if (semi == std::string_view::npos || semi - i > 8) {
            out.push_back(s[i++]);
            continue;
        }
        std::string_view ent = s.substr(i + 1, semi - i - 1);
        if (ent == "amp") out.push_back('&');
        else if (ent == "lt") out.push_back('<');
        else if (ent == "gt") out.push_back('>');
        else if (ent == "quot") out.push_back('"');
        else if (ent == "apos") out.push_back('\'');
        else if (!ent.empty() && ent.front() == '#') {
            int code = std::atoi(std::string(ent.substr(1)).c_str());
            if (code > 0 && code < 128) out.push_back(static_cast<char>(code));
        } else {
            out.append(s.substr(i, semi - i + 1));
        }
        i = semi + 1;
    }
    return out;
}

// Parses name="value" attributes from the inside of a <word .../> element.
std::map<std::string, std::string> parse_attributes(std::string_view element) {
    std::map<std::string, std::string> attrs;
    std::size_t i = 0;
    while (i < element.size()) {
        while (i < element.size() &&
               (element[i] == ' ' || element[i] == '\t' || element[i] == '\n' ||
                element[i] == '\r'))
            ++i;
        std::size_t eq = element.find('=', i);
        if (eq == std::string_view::npos) break;
        std::string name(trim(element.substr(i, eq - i)));
        std::size_t vstart = eq + 1;
        while (vstart < element.size() && element[vstart] != '"' && element[vstart] != '\'')
            ++vstart;
        if (vstart >= element.size()) break;
        char quote = element[vstart];
        std::size_t vend = element.find(quote, vstart + 1);
        if (vend == std::string_view::npos) break;
        attrs[to_lower(name)] = decode_xml_entities(element.substr(vstart + 1, vend - vstart - 1));
        i = vend + 1;
    }
    return attrs;
}

double parse_number(const std::map<std::string, std::string>& attrs,
                    const std::string& key, double fallback) {
    auto it = attrs.find(key);
    if (it == attrs.end() || trim(it->second).empty()) return fallback;
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        return fallback;
    }
}

bool is_adverb_pos(std::string_view pos) {
    return pos.size() >= 2 && (pos[0] == 'R' || pos[0] == 'r') &&
           (pos[1] == 'B' || pos[1] == 'b');
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read lexicon: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

Lexicon Lexicon::load(const std::filesystem::path& path, LexiconStats* stats) {
    const std::string content = slurp(path);
    std::string_view head = trim(content);
    if (!head.empty() && head.front() == '<')
        return parse_xml(content, path.string(), stats);
    return parse_csv(content, path.string(), stats);
}

Lexicon Lexicon::parse_xml(std::string_view content, std::string_view source_name,
                           LexiconStats* stats) {
    Lexicon lex;
    LexiconStats local;
    std::size_t pos = 0;
    bool saw_any_element = false;
    while ((pos = content.find('<', pos)) != std::string_view::npos) {
        if (content.compare(pos, 4, "<!--") == 0) {
            std::size_t end = content.find("-->", pos);
            if (end == std::string_view::npos) break;
            pos = end + 3;
            continue;
        }
        std::size_t close = content.find('>', pos);
        if (close == std::string_view::npos)
            throw DataError(std::string(source_name) + ": unterminated XML element");
        saw_any_element = true;
        if (content.compare(pos, 5, "<word") == 0 &&
            (pos + 5 >= content.size() || !std::isalnum(static_cast<unsigned char>(content[pos + 5])))) {
            std::string_view body = content.substr(pos + 5, close - pos - 5);
            if (!body.empty() && body.back() == '/') body.remove_suffix(1);
            auto attrs = parse_attributes(body);
            auto form_it = attrs.find("form");
            if (form_it == attrs.end() || trim(form_it->second).empty())
                throw DataError(std::string(source_name) + ": <word> element without form");

            const std::string form = to_lower(trim(form_it->second));
            auto [idx_it, inserted] = lex.index_.emplace(form, lex.entries_.size());
            if (inserted) {
                LexiconEntry entry;
                entry.form = form;
                lex.entries_.push_back(std::move(entry));
            }
            LexiconEntry& entry = lex.entries_[idx_it->second];

            LexiconSense sense;
            sense.polarity = parse_number(attrs, "polarity", 0.0);
            sense.subjectivity = parse_number(attrs, "subjectivity", 0.0);
            sense.intensity = parse_number(attrs, "intensity", 1.0);
            auto sense_it = attrs.find("sense");
            if (sense_it != attrs.end()) sense.sense = sense_it->second;

            const bool duplicate =
                std::any_of(entry.senses.begin(), entry.senses.end(),
                            [&](const LexiconSense& s) { return s.sense == sense.sense; });
            if (duplicate) {
                ++local.duplicates_merged;
            } else {
                entry.senses.push_back(std::move(sense));
                ++local.senses;
            }
            auto pos_it = attrs.find("pos");
            if (pos_it != attrs.end() && is_adverb_pos(trim(pos_it->second)))
                entry.is_modifier = true;
        }
        pos = close + 1;
    }
    if (!saw_any_element || lex.entries_.empty())
        throw DataError(std::string(source_name) + ": no <word> entries found");
    lex.finalize();
    local.forms = lex.entries_.size();
    if (stats) *stats = local;
    return lex;
}

Lexicon Lexicon::parse_csv(std::string_view content, std::string_view source_name,
                           LexiconStats* stats) {
    Lexicon lex;
    LexiconStats local;
    std::size_t line_no = 0;
    bool header_seen = false;
    for (const std::string& raw : split(content, '\n')) {
        ++line_no;
        std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            header_seen = true;
            if (line == "form,polarity,subjectivity,intensity,is_modifier,sense") continue;
            throw DataError(std::string(source_name) +
                            ":1: expected header form,polarity,subjectivity,intensity,is_modifier,sense");
        }
        auto fields = split(line, ',');
        if (fields.size() < 5)
            throw DataError(std::string(source_name) + ":" + std::to_string(line_no) +
                            ": expected at least 5 fields");
        const std::string form = to_lower(trim(fields[0]));
        if (form.empty())
            throw DataError(std::string(source_name) + ":" + std::to_string(line_no) +
                            ": empty form");
        LexiconSense sense;
        try {
            sense.polarity = std::stod(fields[1]);
            sense.subjectivity = std::stod(fields[2]);
            sense.intensity = std::stod(fields[3]);
        } catch (const std::exception&) {
            throw DataError(std::string(source_name) + ":" + std::to_string(line_no) +
                            ": bad numeric field");
        }
        const std::string_view mod = trim(fields[4]);
        const bool is_modifier = mod == "1" || iequals(mod, "true");
        if (fields.size() >= 6) sense.sense = std::string(trim(fields[5]));

        auto [idx_it, inserted] = lex.index_.emplace(form, lex.entries_.size());
        if (inserted) {
            LexiconEntry entry;
            entry.form = form;
            lex.entries_.push_back(std::move(entry));
        }
        LexiconEntry& entry = lex.entries_[idx_it->second];
        const bool duplicate =
            std::any_of(entry.senses.begin(), entry.senses.end(),
                        [&](const LexiconSense& s) { return s.sense == sense.sense; });
        if (duplicate) {
            ++local.duplicates_merged;
        } else {
            entry.senses.push_back(std::move(sense));
            ++local.senses;
        }
        if (is_modifier) entry.is_modifier = true;
    }
    if (lex.entries_.empty())
        throw DataError(std::string(source_name) + ": no lexicon rows found");
    lex.finalize();
    local.forms = lex.entries_.size();
    if (stats) *stats = local;
    return lex;
}

void Lexicon::finalize() {
    for (LexiconEntry& entry : entries_) {
        double p = 0.0, s = 0.0, i = 0.0;
        for (const LexiconSense& sense : entry.senses) {
            p += sense.polarity;
            s += sense.subjectivity;
            i += sense.intensity;
        }
        const double n = static_cast<double>(entry.senses.size());
        entry.polarity = p / n;
        entry.subjectivity = s / n;
        entry.intensity = i / n;
    }
}

const LexiconEntry* Lexicon::find(std::string_view form) const {
    auto it = index_.find(std::string(form));
    if (it == index_.end()) return nullptr;
    return &entries_[it->second];
}

bool is_negation_token(const ScoreOptions& options, std::string_view token) {
    if (token.size() >= 3 && token.substr(token.size() - 3) == "n't") return true;
    return std::find(options.negations.begin(), options.negations.end(), token) !=
           options.negations.end();
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    auto is_word_char = [](unsigned char c) {
        return std::isalnum(c) || c >= 0x80;
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const unsigned char c = static_cast<unsigned char>(text[i]);
        if (is_word_char(c)) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else if (c == '\'' && !current.empty() && i + 1 < text.size() &&
                   is_word_char(static_cast<unsigned char>(text[i + 1]))) {
            current.push_back('\'');
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

SentimentScore score_phrase(std::span<const std::string> tokens, const Lexicon& lexicon,
                            const ScoreOptions& options) {
    if (tokens.empty()) return {};
    const LexiconEntry* word = lexicon.find(tokens.back());
    if (!word) return {};

    SentimentScore score;
    score.assessed_count = 1;
    score.polarity = clamp_polarity(word->polarity);
    score.subjectivity = clamp_subjectivity(word->subjectivity);
    if (tokens.size() == 1) return score;

    const std::string& prev = tokens[tokens.size() - 2];
    const LexiconEntry* prev_entry = lexicon.find(prev);
    const bool prev_negates = is_negation_token(options, prev);
    const bool prev_modifies = !prev_negates && prev_entry && prev_entry->is_modifier;

    if (tokens.size() == 2) {
        if (prev_negates) {
            score.polarity = clamp_polarity(score.polarity * -0.5);
        } else if (prev_modifies) {
            score.polarity = clamp_polarity(score.polarity * prev_entry->intensity);
            score.subjectivity = clamp_subjectivity(score.subjectivity * prev_entry->intensity);
        }
        return score;
    }

    // [neg, mod, word]: the negation flips at half strength and the modifier
    // applies inverted intensity to both components.
    if (prev_modifies && is_negation_token(options, tokens.front())) {
        const double inverse = 1.0 / prev_entry->intensity;
        score.polarity = clamp_polarity(score.polarity * -0.5);
        score.polarity = clamp_polarity(score.polarity * inverse);
        score.subjectivity = clamp_subjectivity(score.subjectivity * inverse);
    } else if (prev_negates) {
        score.polarity = clamp_polarity(score.polarity * -0.5);
    } else if (prev_modifies) {
        score.polarity = clamp_polarity(score.polarity * prev_entry->intensity);
        score.subjectivity = clamp_subjectivity(score.subjectivity * prev_entry->intensity);
    }
    return score;
}

namespace {

std::string strip_quoted_lines(std::string_view body) {
    std::string out;
    out.reserve(body.size());
    std::size_t pos = 0;
    while (pos <= body.size()) {
        std::size_t eol = body.find('\n', pos);
        std::string_view line = (eol == std::string_view::npos)
                                    ? body.substr(pos)
                                    : body.substr(pos, eol - pos);
        std::string_view stripped = trim(line);
        if (stripped.empty() || stripped.front() != '>') {
            out.append(line);
            out.push_back('\n');
        }
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    return out;
}

} // namespace

SentimentScore score_document(std::string_view body, const Lexicon& lexicon,
                              const ScoreOptions& options) {
    std::string stripped;
    if (options.strip_quoted) {
        stripped = strip_quoted_lines(body);
        body = stripped;
    }
    const std::vector<std::string> tokens = tokenize(body);

    double polarity_sum = 0.0, subjectivity_sum = 0.0;
    std::size_t phrases = 0, zero_terms = 0;

    // Right-to-left scan anchored on scored words; each anchor greedily
    // absorbs a preceding modifier and/or negation.
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(tokens.size()) - 1;
    while (i >= 0) {
        const std::string& tok = tokens[static_cast<std::size_t>(i)];
        const LexiconEntry* entry = (tok.size() > 1) ? lexicon.find(tok) : nullptr;
        if (!entry) {
            ++zero_terms;
            --i;
            continue;
        }
        std::size_t phrase_len = 1;
        if (i >= 1) {
            const std::string& prev = tokens[static_cast<std::size_t>(i - 1)];
            const LexiconEntry* prev_entry =
                (prev.size() > 1) ? lexicon.find(prev) : nullptr;
            if (is_negation_token(options, prev)) {
                phrase_len = 2;
            } else if (prev_entry && prev_entry->is_modifier) {
                phrase_len = 2;
                if (i >= 2 &&
                    is_negation_token(options, tokens[static_cast<std::size_t>(i - 2)]))
                    phrase_len = 3;
            }
        }
        const auto first = static_cast<std::size_t>(i) - (phrase_len - 1);
        const SentimentScore phrase =
            score_phrase(std::span(tokens).subspan(first, phrase_len), lexicon, options);
        polarity_sum += phrase.polarity;
        subjectivity_sum += phrase.subjectivity;
        ++phrases;
        i -= static_cast<std::ptrdiff_t>(phrase_len);
    }

    SentimentScore score;
    const std::size_t denom = phrases + (options.zeros_count ? zero_terms : 0);
    score.assessed_count = phrases;
    if (denom > 0) {
        score.polarity = polarity_sum / static_cast<double>(denom);
        score.subjectivity = subjectivity_sum / static_cast<double>(denom);
    }
    return score;
}

std::vector<SentimentSeries> monthly_series(std::span<const ScoredEmail> emails,
                                            bool per_employee) {
    struct Bucket {
        double polarity = 0.0;
        double subjectivity = 0.0;
        std::size_t count = 0;
    };
    std::map<std::string, std::map<YearMonth, Bucket>> by_scope;
    for (const ScoredEmail& e : emails) {
        const std::string scope =
            per_employee ? e.sender : std::string(kOrganizationScope);
        Bucket& b = by_scope[scope][year_month_of(e.sent_at)];
        b.polarity += e.score.polarity;
        b.subjectivity += e.score.subjectivity;
        ++b.count;
    }

    std::vector<SentimentSeries> out;
    out.reserve(by_scope.size());
    for (const auto& [scope, buckets] : by_scope) {
        SentimentSeries series;
        series.scope = scope;
        for (const auto& [month, bucket] : buckets) {
            SeriesPoint point;
            point.month = month;
            point.email_count = bucket.count;
            point.mean_polarity = bucket.polarity / static_cast<double>(bucket.count);
            point.mean_subjectivity =
                bucket.subjectivity / static_cast<double>(bucket.count);
            series.points.push_back(point);
        }
        out.push_back(std::move(series));
    }
    return out;
}

void write_series_csv(std::ostream& os, std::span<const SentimentSeries> series) {
    os << "scope,month,mean_polarity,mean_subjectivity,count\n";
    for (const SentimentSeries& s : series) {
        for (const SeriesPoint& p : s.points) {
            os << s.scope << ',' << format_year_month(p.month) << ','
               << format_double(p.mean_polarity) << ',' << format_double(p.mean_subjectivity)
               << ',' << p.email_count << '\n';
        }
    }
}

PeriodComparison compare_periods(std::span<const double> a, std::span<const double> b) {
    const WelchResult welch = welch_t_test(a, b);
    PeriodComparison cmp;
    cmp.n_a = a.size();
    cmp.n_b = b.size();
    cmp.mean_a = mean(a);
    cmp.mean_b = mean(b);
    cmp.absolute_difference = cmp.mean_b - cmp.mean_a;
    if (cmp.mean_a != 0.0) {
        cmp.relative_defined = true;
        cmp.relative_difference = cmp.absolute_difference / std::abs(cmp.mean_a);
    }
    cmp.t = welch.t;
    cmp.df = welch.df;
    cmp.p_value = welch.p;
    return cmp;
}

} // namespace mailgraph
