#include "tvaffect/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "tvaffect/affect.hpp"
#include "tvaffect/corpus.hpp"
#include "tvaffect/eval.hpp"
#include "tvaffect/features.hpp"
#include "tvaffect/lexicon.hpp"
#include "tvaffect/synth.hpp"

namespace tvaffect {

namespace {

namespace fs = std::filesystem;

struct RunConfig {
    std::string lexicon_path;
    std::string corpus_path;
    std::string out_path;
    std::uint64_t seed = 42;
    std::string corpus_format = "auto";

    // score
    bool per_document = false;
    std::string window;
    std::string origin;
    std::string channel;

    // features / evaluate
    std::string rep;
    std::string nb;
    double alpha = 1.0;
    std::size_t folds = 5;
    std::size_t min_genre_support = 20;

    // synth
    std::string preset = "genres";
    std::string profiles_path;
    std::size_t make_lexicon = 0;
    std::string start = "2013-01-01";
    std::string spacing = "1w";
};

// A failure the user can fix; reported without a stack of context.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void require(const std::string& value, const char* flag) {
    if (value.empty()) throw UsageError(std::string(flag) + " is required for this command");
}

// Writes to a sibling temp file and renames, so a failed run never leaves a
// truncated output behind.
void write_file(const fs::path& path, const std::string& contents) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        f << contents;
        f.flush();
        if (!f) throw std::runtime_error("failed writing '" + tmp.string() + "'");
    }
    fs::rename(tmp, path);
}

void emit(const RunConfig& cfg, const std::string& contents, std::ostream& out) {
    if (cfg.out_path.empty()) {
        out << contents;
        out.flush();
    } else {
        write_file(cfg.out_path, contents);
    }
}

CorpusFormat corpus_format(const RunConfig& cfg) {
    if (cfg.corpus_format == "text") return CorpusFormat::text;
    if (cfg.corpus_format == "counts") return CorpusFormat::counts;
    return CorpusFormat::automatic;
}

AffectLexicon read_lexicon(const RunConfig& cfg) {
    require(cfg.lexicon_path, "--lexicon");
    return load_lexicon(cfg.lexicon_path);
}

Corpus read_corpus(const RunConfig& cfg) {
    require(cfg.corpus_path, "--corpus");
    return load_corpus(fs::path(cfg.corpus_path), corpus_format(cfg));
}

int cmd_lexicon_validate(const RunConfig& cfg, std::ostream& out) {
    const AffectLexicon lexicon = read_lexicon(cfg);
    out << lexicon.size() << " entries";
    for (const Dimension d : kDimensions) {
        double lo = 1.0;
        double hi = 0.0;
        for (const auto& [word, e] : lexicon.entries()) {
            lo = std::min(lo, e.rating(d).mean);
            hi = std::max(hi, e.rating(d).mean);
        }
        out << "; " << dimension_name(d) << " [" << format_double(lo) << ", " << format_double(hi) << "]";
    }
    out << '\n';
    return 0;
}

void summary_columns(std::ostream& os, const AffectSummary& s) {
    for (const Dimension d : kDimensions) os << ',' << format_double(s.score.mean[d]);
    for (const Dimension d : kDimensions) os << ',' << format_double(s.sd[d]);
}

int cmd_score(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const AffectLexicon lexicon = read_lexicon(cfg);
    const Corpus corpus = read_corpus(cfg);

    std::vector<std::string> channels = corpus.channels();
    if (!cfg.channel.empty()) {
        if (std::find(channels.begin(), channels.end(), cfg.channel) == channels.end()) {
            throw UsageError("channel '" + cfg.channel + "' does not occur in the corpus");
        }
        channels = {cfg.channel};
    }
    const auto in_scope = [&](const Document& d) {
        return std::find(channels.begin(), channels.end(), d.channel) != channels.end();
    };

    std::vector<std::pair<std::string, std::string>> skipped;
    for (const Document& d : corpus.documents()) {
        if (in_scope(d) && match_terms(d.term_counts, lexicon).empty()) {
            skipped.emplace_back(d.id, "no token matched the lexicon");
        }
    }

    std::ostringstream csv;
    std::size_t rows = 0;
    if (!cfg.window.empty()) {
        const auto length = parse_window_length(cfg.window);
        if (!length) throw UsageError("--window must look like 7d or 4w, got '" + cfg.window + "'");
        Timestamp origin;
        if (!cfg.origin.empty()) {
            const auto t = parse_timestamp(cfg.origin);
            if (!t) throw UsageError("--origin is not an ISO-8601 UTC timestamp: '" + cfg.origin + "'");
            origin = *t;
        } else {
            std::optional<Timestamp> earliest;
            for (const Document& d : corpus.documents()) {
                if (d.timestamp && (!earliest || *d.timestamp < *earliest)) earliest = d.timestamp;
            }
            if (!earliest) throw std::runtime_error("corpus has no timestamped documents");
            origin = truncate_to_midnight(*earliest);
        }
        csv << kSeriesCsvHeader << '\n';
        for (const std::string& ch : channels) {
            const AffectSeries series = score_windows(corpus, ch, lexicon, *length, origin);
            for (const SeriesPoint& p : series.points) rows += p.value ? 1 : 0;
            write_series_rows(csv, series);
        }
    } else if (cfg.per_document) {
        csv << "id,channel,genre,valence,arousal,dominance,valence_sd,arousal_sd,dominance_sd,matched_tokens\n";
        for (const Document& d : corpus.documents()) {
            if (!in_scope(d) || match_terms(d.term_counts, lexicon).empty()) continue;
            const Document* one[] = {&d};
            const AffectSummary s = score_pooled(one, lexicon);
            csv << csv_field(d.id) << ',' << csv_field(d.channel) << ',' << csv_field(d.genre.value_or(""));
            summary_columns(csv, s);
            csv << ',' << s.score.matched_token_total << '\n';
            ++rows;
        }
    } else {
        csv << "channel,valence,arousal,dominance,valence_sd,arousal_sd,dominance_sd,documents,matched_tokens\n";
        for (const std::string& ch : channels) {
            std::size_t docs = 0;
            for (const Document& d : corpus.documents()) docs += d.channel == ch ? 1 : 0;
            try {
                const AffectSummary s = score_channel(corpus, ch, lexicon);
                csv << csv_field(ch);
                summary_columns(csv, s);
                csv << ',' << docs << ',' << s.score.matched_token_total << '\n';
                ++rows;
            } catch (const NoSignalError& e) {
                skipped.emplace_back("channel " + ch, e.what());
            }
        }
    }

    if (!skipped.empty()) {
        err << "skipped items:\n";
        for (const auto& [what, why] : skipped) err << "  " << what << ": " << why << '\n';
    }
    if (rows == 0) throw NoSignalError("nothing in the corpus matched the lexicon");
    emit(cfg, csv.str(), out);
    return 0;
}

int cmd_features(const RunConfig& cfg, std::ostream& out) {
    const AffectLexicon lexicon = read_lexicon(cfg);
    const Corpus corpus = read_corpus(cfg);
    const std::string rep = cfg.rep.empty() ? "meta" : cfg.rep;
    std::ostringstream csv;
    if (rep == "meta") {
        write_meta_header(csv);
        for (const Document& d : corpus.documents()) write_meta_row(csv, d, extract_meta(d, lexicon));
    } else if (rep == "vsm") {
        write_vsm_header(csv);
        for (const Document& d : corpus.documents()) write_vsm_rows(csv, d, extract_vsm(d, lexicon));
    } else {
        throw UsageError("--rep must be meta or vsm for features");
    }
    emit(cfg, csv.str(), out);
    return 0;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cmd_synth(const RunConfig& cfg, std::ostream& out) {
    require(cfg.out_path, "--out");
    AffectLexicon lexicon;
    if (cfg.make_lexicon > 0) {
        require(cfg.lexicon_path, "--lexicon");
        lexicon = generate_lexicon(cfg.make_lexicon, cfg.seed);
        std::ostringstream lex;
        serialize_lexicon(lex, lexicon);
        write_file(cfg.lexicon_path, lex.str());
    } else {
        lexicon = read_lexicon(cfg);
    }

    std::vector<GenreProfile> profiles;
    if (!cfg.profiles_path.empty()) {
        profiles = parse_profiles_json(slurp(cfg.profiles_path));
    } else if (cfg.preset == "genres") {
        profiles = genre_benchmark_profiles();
    } else if (cfg.preset == "channels") {
        profiles = channel_profiles();
    } else {
        throw UsageError("--preset must be genres or channels");
    }

    SynthOptions options;
    options.seed = cfg.seed;
    const auto start = parse_timestamp(cfg.start);
    if (!start) throw UsageError("--start is not an ISO-8601 UTC timestamp: '" + cfg.start + "'");
    options.start = *start;
    const auto spacing = parse_window_length(cfg.spacing);
    if (!spacing) throw UsageError("--spacing must look like 1d or 1w");
    options.spacing = *spacing;

    const Corpus corpus = generate(profiles, lexicon, options);
    std::ostringstream jsonl;
    write_corpus(jsonl, corpus);
    write_file(cfg.out_path, jsonl.str());
    out << "wrote " << corpus.size() << " documents to " << cfg.out_path << '\n';
    return 0;
}

int cmd_evaluate(const RunConfig& cfg, std::ostream& out) {
    require(cfg.out_path, "--out");
    const AffectLexicon lexicon = read_lexicon(cfg);
    const Corpus corpus = filter_min_genre_support(read_corpus(cfg), cfg.min_genre_support);

    std::vector<Representation> reps;
    const std::string rep = cfg.rep.empty() ? "vsm" : cfg.rep;
    if (rep == "vsm" || rep == "both") reps.push_back(Representation::vsm);
    if (rep == "meta" || rep == "both") reps.push_back(Representation::meta);
    if (reps.empty()) throw UsageError("--rep must be vsm, meta, or both");

    std::vector<EvalReport> reports;
    for (const Representation r : reps) {
        EvalConfig ec;
        ec.representation = r;
        ec.k = cfg.folds;
        ec.seed = cfg.seed;
        ec.alpha = cfg.alpha;
        if (r == Representation::meta) {
            if (cfg.nb == "multinomial") throw UsageError("--rep meta works only with --nb gaussian");
            ec.nb = NbVariant::gaussian;
        } else if (cfg.nb.empty() || cfg.nb == "multinomial") {
            ec.nb = NbVariant::multinomial;
        } else if (cfg.nb == "gaussian") {
            ec.nb = NbVariant::gaussian;
        } else {
            throw UsageError("--nb must be gaussian or multinomial");
        }
        reports.push_back(run_cv(corpus, lexicon, ec));
    }

    fs::path json_path = cfg.out_path;
    fs::path csv_path = cfg.out_path;
    json_path.replace_extension(".json");
    csv_path.replace_extension(".csv");
    std::ostringstream table;
    write_table_csv(table, reports);
    write_file(json_path, report_to_json(reports) + "\n");
    write_file(csv_path, table.str());

    for (const EvalReport& r : reports) {
        out << to_string(r.config.representation) << " (" << to_string(r.config.nb) << ") weighted average: TP "
            << format_double(r.weighted_tp_rate) << ", FP " << format_double(r.weighted_fp_rate) << ", AUC "
            << format_double(r.weighted_auc) << '\n';
    }
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Affect scoring and genre classification for transcript corpora", "tvaffect"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    app.add_option("--lexicon", cfg.lexicon_path, "Affect lexicon CSV");
    app.add_option("--corpus", cfg.corpus_path, "Corpus JSON-lines file");
    app.add_option("--out", cfg.out_path, "Output path");
    app.add_option("--seed", cfg.seed, "Seed for every random choice")->capture_default_str();
    app.add_option("--corpus-format", cfg.corpus_format, "Corpus record form")
        ->check(CLI::IsMember({"auto", "text", "counts"}))
        ->capture_default_str();

    auto* validate = app.add_subcommand("lexicon-validate", "Parse a lexicon and summarize it");

    auto* score = app.add_subcommand("score", "Score channels, documents, or time windows");
    score->add_flag("--per-document", cfg.per_document, "One row per document");
    score->add_option("--window", cfg.window, "Window length such as 7d or 4w; emits a time series");
    score->add_option("--origin", cfg.origin, "First window start (default: earliest document, midnight UTC)");
    score->add_option("--channel", cfg.channel, "Restrict to one channel");

    auto* features = app.add_subcommand("features", "Export the feature matrix");
    features->add_option("--rep", cfg.rep, "meta (default) or vsm");

    auto* synth = app.add_subcommand("synth", "Generate a synthetic labeled corpus");
    synth->add_option("--preset", cfg.preset, "genres or channels")->capture_default_str();
    synth->add_option("--profiles", cfg.profiles_path, "JSON profile list (overrides --preset)");
    synth->add_option("--make-lexicon", cfg.make_lexicon, "Generate an N-word lexicon into --lexicon first");
    synth->add_option("--start", cfg.start, "Timestamp of each profile's first document")->capture_default_str();
    synth->add_option("--spacing", cfg.spacing, "Gap between consecutive documents")->capture_default_str();

    auto* evaluate = app.add_subcommand("evaluate", "Cross-validate naive Bayes genre classification");
    evaluate->add_option("--rep", cfg.rep, "vsm (default), meta, or both");
    evaluate->add_option("--nb", cfg.nb, "gaussian or multinomial (vsm default: multinomial)");
    evaluate->add_option("--alpha", cfg.alpha, "Multinomial smoothing")->capture_default_str();
    evaluate->add_option("--folds", cfg.folds, "Cross-validation folds")->capture_default_str()->check(
        CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
    evaluate->add_option("--min-genre-support", cfg.min_genre_support, "Drop genres with fewer documents")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        // --help and --version report success; every real parse error is a usage error.
        return code == 0 ? 0 : 2;
    }

    try {
        if (validate->parsed()) return cmd_lexicon_validate(cfg, out);
        if (score->parsed()) return cmd_score(cfg, out, err);
        if (features->parsed()) return cmd_features(cfg, out);
        if (synth->parsed()) return cmd_synth(cfg, out);
        if (evaluate->parsed()) return cmd_evaluate(cfg, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace tvaffect
