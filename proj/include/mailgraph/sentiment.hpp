#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mailgraph/datetime.hpp"

namespace mailgraph {

struct LexiconSense {
    double polarity = 0.0;     // [-1, 1]
    double subjectivity = 0.0; // [0, 1]
    double intensity = 1.0;    // > 0
    std::string sense;
};

struct LexiconEntry {
    std::string form; // lowercase
    std::vector<LexiconSense> senses;
    bool is_modifier = false; // carries an adverb sense (RB* part of speech)
    // Per-form averages across senses, used for scoring.
    double polarity = 0.0;
    double subjectivity = 0.0;
    double intensity = 1.0;
};

struct LexiconStats {
    std::size_t forms = 0;
    std::size_t senses = 0;
    std::size_t duplicates_merged = 0;
};

// Word form -> averaged sentiment values. Loads either the XML schema with
// per-word form/sense/polarity/subjectivity/intensity/pos attributes or the
// CSV fallback `form,polarity,subjectivity,intensity,is_modifier,sense`.
class Lexicon {
public:
    Lexicon() = default;

    static Lexicon load(const std::filesystem::path& path, LexiconStats* stats = nullptr);
    static Lexicon parse_xml(std::string_view content, std::string_view source_name,
                             LexiconStats* stats = nullptr);
    static Lexicon parse_csv(std::string_view content, std::string_view source_name,
                             LexiconStats* stats = nullptr);

    const LexiconEntry* find(std::string_view form) const;
    std::size_t size() const { return entries_.size(); }

private:
    void finalize();
    std::vector<LexiconEntry> entries_;
    std::unordered_map<std::string, std::size_t> index_;
};

struct SentimentScore {
    double polarity = 0.0;
    double subjectivity = 0.0;
    std::size_t assessed_count = 0;
};

struct ScoreOptions {
    // Count tokens outside any scored phrase as zero-valued terms in the
    // document average instead of excluding them.
    bool zeros_count = false;
    // Drop '>'-quoted reply lines before scoring.
    bool strip_quoted = false;
    std::vector<std::string> negations = {"not", "never", "no", "cannot"};
};

bool is_negation_token(const ScoreOptions& options, std::string_view token);

// Lowercase tokens split on non-alphanumeric characters, keeping intra-word
// apostrophes. Bytes >= 0x80 are treated as word characters.
std::vector<std::string> tokenize(std::string_view text);

// Scores one phrase of up to three tokens ending in a lexicon word:
//   [word]            -> (p, s)
//   [neg, word]       -> (-0.5 * p, s)
//   [mod, word]       -> (I * p, I * s)
//   [neg, mod, word]  -> ((1/I) * -0.5 * p, (1/I) * s)
// Polarity clamps to [-1, 1] and subjectivity to [0, 1] after each step.
SentimentScore score_phrase(std::span<const std::string> tokens, const Lexicon& lexicon,
                            const ScoreOptions& options = {});

// Mean over phrases matched right-to-left, anchored on scored words;
// single-letter and unknown words are skipped. Zero phrases -> (0, 0).
SentimentScore score_document(std::string_view body, const Lexicon& lexicon,
                              const ScoreOptions& options = {});

struct ScoredEmail {
    std::string sender;
    std::int64_t sent_at = 0;
    SentimentScore score;
};

struct SeriesPoint {
    YearMonth month;
    double mean_polarity = 0.0;
    double mean_subjectivity = 0.0;
    std::size_t email_count = 0;
};

constexpr std::string_view kOrganizationScope = "organization";

struct SentimentSeries {
    std::string scope; // kOrganizationScope or a sender address
    std::vector<SeriesPoint> points; // months strictly increasing
};

// Buckets by UTC calendar month with unweighted means; empty months are
// omitted. per_employee groups by sender (series sorted by scope).
std::vector<SentimentSeries> monthly_series(std::span<const ScoredEmail> emails,
                                            bool per_employee);

// CSV `scope,month,mean_polarity,mean_subjectivity,count`.
void write_series_csv(std::ostream& os, std::span<const SentimentSeries> series);

struct PeriodComparison {
    double mean_a = 0.0;
    double mean_b = 0.0;
    double absolute_difference = 0.0; // mean_b - mean_a
    bool relative_defined = false;    // false when mean_a == 0
    double relative_difference = 0.0; // (mean_b - mean_a) / |mean_a|
    double t = 0.0;
    double df = 0.0;
    double p_value = 1.0;
    std::size_t n_a = 0;
    std::size_t n_b = 0;
};

// Welch two-tailed comparison of two polarity samples. Throws
// std::invalid_argument when a sample has fewer than two values or both
// variances are zero; a zero mean(a) only leaves relative_defined unset.
PeriodComparison compare_periods(std::span<const double> a, std::span<const double> b);

} // namespace mailgraph
