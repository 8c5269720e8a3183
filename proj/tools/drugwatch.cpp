// drugwatch: ingest, eval, serve and faers subcommands.

#include "drugwatch/classifier.hpp"
#include "drugwatch/corpus.hpp"
#include "drugwatch/error.hpp"
#include "drugwatch/extractor.hpp"
#include "drugwatch/faers.hpp"
#include "drugwatch/index.hpp"
#include "drugwatch/metrics.hpp"
#include "drugwatch/pipeline.hpp"
#include "drugwatch/record.hpp"
#include "drugwatch/service.hpp"
#include "drugwatch/session.hpp"
#include "drugwatch/text.hpp"

#include <CLI11.hpp>
#include <httplib.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using namespace drugwatch;

namespace {

/// Missing or unreadable input file; maps to exit code 2.
struct InputError : Error {
    using Error::Error;
};

void require_readable(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
}

std::string data_path(const std::string& data_dir, const std::string& rel) { return (fs::path(data_dir) / rel).string(); }

std::optional<std::string> env(const char* name) {
    const char* v = std::getenv(name);
    if (!v || !*v) return std::nullopt;
    return std::string(v);
}

// ingest

struct IngestArgs {
    std::string corpus, out, report;
    std::string data_dir = DRUGWATCH_DATA_DIR;
    std::string train, drugs, effects, synonyms;
    std::string extractor = "rule";
    std::string remote_url, remote_model = "remote";
    std::optional<double> threshold;
    bool append = false;
    bool keyword_filter = false;
};

int run_ingest(IngestArgs a) {
    if (a.train.empty()) a.train = data_path(a.data_dir, "ade_train.tsv");
    if (a.drugs.empty()) a.drugs = data_path(a.data_dir, "lexicons/drugs.txt");
    if (a.effects.empty()) a.effects = data_path(a.data_dir, "lexicons/effects.txt");
    if (a.synonyms.empty()) a.synonyms = data_path(a.data_dir, "synonyms.tsv");
    for (const auto& p : {a.corpus, a.train, a.synonyms}) require_readable(p);

    std::ifstream corpus_in(a.corpus);
    const IngestResult ingest = parse_corpus(corpus_in, IngestOptions{a.keyword_filter});
    for (const auto& issue : ingest.issues)
        std::cerr << a.corpus << ":" << issue.line << ": " << issue.reason << '\n';

    auto classifier = BaselineClassifier::train(BaselineClassifier::load_labeled(a.train));
    if (a.threshold) {
        if (*a.threshold < 0.0 || *a.threshold > 1.0) throw Error("--threshold must be within [0, 1]");
        classifier.set_threshold(*a.threshold);
    }

    std::unique_ptr<EventExtractor> extractor;
    if (a.extractor == "rule") {
        require_readable(a.drugs);
        require_readable(a.effects);
        extractor = std::make_unique<RuleBasedExtractor>(Lexicons{Lexicon::load(a.drugs), Lexicon::load(a.effects)});
    } else {
        if (a.remote_url.empty()) throw Error("--extractor remote needs --remote-url");
        extractor = std::make_unique<RemoteExtractor>(RemoteConfig{a.remote_url, a.remote_model},
                                                      std::make_shared<HttplibTransport>());
    }

    PipelineConfig config{SynonymDictionary::load(a.synonyms)};
    PipelineOutput out = run_pipeline(ingest.reports, classifier, *extractor, config);
    for (const auto& f : out.failures)
        std::cerr << "extraction failed: pmid " << f.pmid << " sentence " << f.sentence_index << ": " << f.message
                  << '\n';

    std::vector<NormalizedEventRecord> records = std::move(out.records);
    if (a.append && fs::exists(a.out)) {
        std::vector<std::string> pmids;
        for (const auto& r : ingest.reports) pmids.push_back(r.pmid);
        records = merge_record_stores(load_records(a.out), records, pmids);
    }

    const fs::path tmp = a.out + ".tmp";
    {
        std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
        if (!o) throw Error("cannot write " + tmp.string());
        write_records(o, records);
        if (!o.flush()) throw Error("write failed: " + tmp.string());
    }
    fs::rename(tmp, a.out);

    auto report = to_json(out.report);
    report["lines_accepted"] = ingest.accepted;
    report["lines_rejected"] = ingest.rejected;
    report["lines_malformed"] = ingest.malformed;
    report["records_written"] = records.size();
    if (!a.report.empty()) {
        std::ofstream r(a.report);
        if (!r) throw Error("cannot write " + a.report);
        r << report.dump(2) << '\n';
    } else {
        std::cerr << report.dump() << '\n';
    }
    return 0;
}

// eval

int run_eval(const std::string& gold_path, const std::string& pred_path, bool per_role, bool json_only) {
    require_readable(gold_path);
    require_readable(pred_path);
    const auto gold = eval::load_sentence_events(gold_path);
    const auto pred = eval::load_sentence_events(pred_path);

    eval::EvalReport report;
    auto is_ade = [](const eval::SentenceEventsList& events) {
        for (const auto& e : events)
            if (e.event_type == EventType::ADE) return true;
        return false;
    };
    if (gold.size() != pred.size())
        throw Error("gold has " + std::to_string(gold.size()) + " sentences, prediction has " +
                    std::to_string(pred.size()));
    if (!gold.empty()) {
        std::vector<bool> g, p;
        for (std::size_t i = 0; i < gold.size(); ++i) {
            g.push_back(is_ade(gold[i]));
            p.push_back(is_ade(pred[i]));
        }
        report.classification = eval::classification_metrics(g, p);
        report.has_classification = true;
    }
    report.em = eval::em_f1(gold, pred);
    report.token = eval::token_f1(gold, pred);
    std::cout << eval::to_json(report, per_role).dump() << '\n';
    if (!json_only) std::cout << '\n' << eval::to_table(report, per_role);
    return 0;
}

// serve

struct ServeArgs {
    std::string records, articles, druginfo, preloaded, synonyms, config;
    std::string data_dir = DRUGWATCH_DATA_DIR;
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string faers_mode = "fixture";
    std::string faers_fixtures;
    std::string remote_extractor, remote_model = "remote";
    std::string drugs, effects;
    std::optional<std::size_t> max_upload_lines;
    std::optional<long> session_ttl;
};

int run_serve(ServeArgs a) {
    if (a.druginfo.empty()) a.druginfo = data_path(a.data_dir, "druginfo.json");
    if (a.preloaded.empty()) a.preloaded = data_path(a.data_dir, "preloaded_phee.jsonl");
    if (a.synonyms.empty()) a.synonyms = data_path(a.data_dir, "synonyms.tsv");
    if (a.faers_fixtures.empty()) a.faers_fixtures = data_path(a.data_dir, "fixtures/faers");
    if (a.drugs.empty()) a.drugs = data_path(a.data_dir, "lexicons/drugs.txt");
    if (a.effects.empty()) a.effects = data_path(a.data_dir, "lexicons/effects.txt");
    for (const auto& p : {a.records, a.druginfo, a.preloaded, a.synonyms, a.drugs, a.effects}) require_readable(p);

    // Precedence: flag, then environment, then config file, then built-in default.
    std::size_t max_lines = 1000;
    long ttl = 1800;
    if (!a.config.empty()) {
        require_readable(a.config);
        auto cfg = nlohmann::json::parse(text::read_file(a.config));
        max_lines = cfg.value("max_upload_lines", max_lines);
        ttl = cfg.value("session_ttl_seconds", ttl);
    }
    if (auto v = env("DRUGWATCH_MAX_UPLOAD_LINES")) max_lines = std::stoul(*v);
    if (auto v = env("DRUGWATCH_SESSION_TTL")) ttl = std::stol(*v);
    if (a.max_upload_lines) max_lines = *a.max_upload_lines;
    if (a.session_ttl) ttl = *a.session_ttl;

    ServiceDeps deps;
    deps.index = std::make_shared<Index>(Index::build(load_records(a.records), SynonymDictionary::load(a.synonyms)));
    if (!a.articles.empty()) {
        require_readable(a.articles);
        std::ifstream in(a.articles);
        deps.articles = parse_corpus(in).reports;
    }
    deps.druginfo = DrugInfoStore::load(a.druginfo);
    deps.extractors.push_back(
        std::make_shared<RuleBasedExtractor>(Lexicons{Lexicon::load(a.drugs), Lexicon::load(a.effects)}));
    if (!a.remote_extractor.empty())
        deps.extractors.push_back(std::make_shared<RemoteExtractor>(RemoteConfig{a.remote_extractor, a.remote_model},
                                                                    std::make_shared<HttplibTransport>()));
    faers::ClientConfig fc;
    fc.mode = a.faers_mode == "live" ? faers::Mode::Live : faers::Mode::Fixture;
    fc.fixture_dir = a.faers_fixtures;
    deps.faers = std::make_shared<faers::Client>(fc);
    deps.sessions = std::make_shared<SessionStore>(std::chrono::seconds(ttl));
    deps.sessions->set_preloaded(load_preloaded(a.preloaded));
    deps.max_upload_lines = max_lines;

    ApiService service(std::move(deps));
    httplib::Server server;
    service.mount(server);
    int port = a.port;
    if (port == 0) {
        port = server.bind_to_any_port(a.host);
    } else if (!server.bind_to_port(a.host, port)) {
        port = -1;
    }
    if (port < 0) throw Error("cannot bind " + a.host + ":" + std::to_string(a.port));
    std::cout << "listening on " << a.host << ":" << port << std::endl;
    server.listen_after_bind();
    return 0;
}

// faers

struct FaersArgs {
    std::string kind = "generic", term, count = "reaction", sex, age_group, country, from, to;
    std::string base = faers::kDefaultBase;
    int limit = 50;
    bool fetch = false;
    std::string mode = "fixture", fixtures;
    std::string data_dir = DRUGWATCH_DATA_DIR;
};

int run_faers(FaersArgs a) {
    static const std::map<std::string, faers::SearchKind> kinds{{"generic", faers::SearchKind::GenericName},
                                                                {"brand", faers::SearchKind::BrandName},
                                                                {"reaction", faers::SearchKind::Reaction}};
    static const std::map<std::string, faers::CountField> fields{{"reaction", faers::CountField::Reaction},
                                                                 {"generic", faers::CountField::GenericName},
                                                                 {"brand", faers::CountField::BrandName},
                                                                 {"receivedate", faers::CountField::ReceiveDate},
                                                                 {"sex", faers::CountField::PatientSex},
                                                                 {"onsetage", faers::CountField::OnsetAge}};
    faers::FaersQuery q;
    q.kind = kinds.at(a.kind);
    q.count_field = fields.at(a.count);
    q.term = a.term;
    q.limit = a.limit;
    if (!a.sex.empty()) {
        auto g = parse_gender(a.sex);
        if (!g) throw Error("unknown sex '" + a.sex + "'");
        q.sex = *g;
    }
    if (!a.age_group.empty()) {
        auto g = parse_age_group(a.age_group);
        if (!g || *g == AgeGroup::Unknown) throw Error("unknown age group '" + a.age_group + "'");
        q.onset_age = faers::onset_filter_for(*g);
    }
    if (!a.country.empty()) q.country = a.country;
    if (!a.from.empty() || !a.to.empty()) q.received = std::pair{a.from, a.to};

    const std::string url = faers::build_count_request(q, a.base);
    std::cout << url << '\n' << faers::sha1_hex(url) << ".json\n";
    if (a.fetch) {
        faers::ClientConfig fc;
        fc.mode = a.mode == "live" ? faers::Mode::Live : faers::Mode::Fixture;
        fc.base = a.base;
        fc.fixture_dir = a.fixtures.empty() ? data_path(a.data_dir, "fixtures/faers") : a.fixtures;
        const faers::Client client(fc);
        const auto r = client.fetch_counts(q);
        nlohmann::ordered_json out;
        out["total"] = r.total;
        out["entries"] = nlohmann::ordered_json::array();
        for (const auto& e : r.entries) out["entries"].push_back({{"key", e.key}, {"count", e.count}});
        std::cout << out.dump(2) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DrugWatch pharmacovigilance text mining and search"};
    app.require_subcommand(1);

    IngestArgs ingest;
    auto* ing = app.add_subcommand("ingest", "Run the extraction pipeline over a case-report corpus");
    ing->add_option("--corpus", ingest.corpus, "Line-delimited corpus (JSON per line)")->required();
    ing->add_option("--out", ingest.out, "Record store to write")->required();
    ing->add_option("--threshold", ingest.threshold, "ADE classifier decision threshold");
    ing->add_option("--extractor", ingest.extractor, "rule or remote")->check(CLI::IsMember({"rule", "remote"}));
    ing->add_flag("--append", ingest.append, "Merge into an existing record store");
    ing->add_flag("--keyword-filter", ingest.keyword_filter, "Require adverse-event keywords at ingest");
    ing->add_option("--data-dir", ingest.data_dir, "Directory with the bundled lexicons and training data");
    ing->add_option("--train", ingest.train, "Labeled sentences for the baseline classifier");
    ing->add_option("--drugs", ingest.drugs, "Drug lexicon");
    ing->add_option("--effects", ingest.effects, "Effect lexicon");
    ing->add_option("--synonyms", ingest.synonyms, "Synonym dictionary (TSV)");
    ing->add_option("--remote-url", ingest.remote_url, "Remote extractor endpoint");
    ing->add_option("--remote-model", ingest.remote_model, "Remote model name");
    ing->add_option("--report", ingest.report, "Write the run report here instead of stderr");

    std::string gold, pred;
    bool per_role = false, json_only = false;
    auto* ev = app.add_subcommand("eval", "Score predicted events against gold events");
    ev->add_option("--gold", gold, "Gold sentence events")->required();
    ev->add_option("--pred", pred, "Predicted sentence events")->required();
    ev->add_flag("--per-role", per_role, "Include per-role scores");
    ev->add_flag("--json", json_only, "Print only the JSON report");

    ServeArgs serve;
    auto* sv = app.add_subcommand("serve", "Start the REST service");
    sv->add_option("--records", serve.records, "Record store")->required();
    sv->add_option("--port", serve.port, "Port (0 picks a free one)");
    sv->add_option("--host", serve.host, "Bind address");
    sv->add_option("--faers-mode", serve.faers_mode, "live or fixture")->check(CLI::IsMember({"live", "fixture"}));
    sv->add_option("--faers-fixtures", serve.faers_fixtures, "FAERS recordings directory");
    sv->add_option("--remote-extractor", serve.remote_extractor, "Remote extractor endpoint");
    sv->add_option("--remote-model", serve.remote_model, "Remote model name");
    sv->add_option("--articles", serve.articles, "Corpus used for the article views");
    sv->add_option("--druginfo", serve.druginfo, "Drug information cards");
    sv->add_option("--preloaded", serve.preloaded, "Read-only annotation dataset");
    sv->add_option("--synonyms", serve.synonyms, "Synonym dictionary (TSV)");
    sv->add_option("--drugs", serve.drugs, "Drug lexicon");
    sv->add_option("--effects", serve.effects, "Effect lexicon");
    sv->add_option("--data-dir", serve.data_dir, "Directory with the bundled data files");
    sv->add_option("--config", serve.config, "JSON config with max_upload_lines and session_ttl_seconds");
    sv->add_option("--max-upload-lines", serve.max_upload_lines, "Bulk upload line limit");
    sv->add_option("--session-ttl", serve.session_ttl, "Session TTL in seconds");

    FaersArgs fa;
    auto* fq = app.add_subcommand("faers", "Print an OpenFDA count request URL and its fixture name");
    fq->add_option("--kind", fa.kind, "generic, brand or reaction")->check(CLI::IsMember({"generic", "brand", "reaction"}));
    fq->add_option("--term", fa.term, "Search term")->required();
    fq->add_option("--count", fa.count, "Count field")
        ->check(CLI::IsMember({"reaction", "generic", "brand", "receivedate", "sex", "onsetage"}));
    fq->add_option("--sex", fa.sex, "male, female or unknown");
    fq->add_option("--age-group", fa.age_group, "Shared age group");
    fq->add_option("--country", fa.country, "Occurrence country code");
    fq->add_option("--from", fa.from, "Received from (YYYYMMDD)");
    fq->add_option("--to", fa.to, "Received to (YYYYMMDD)");
    fq->add_option("--limit", fa.limit, "Result limit");
    fq->add_option("--base", fa.base, "API base URL");
    fq->add_flag("--fetch", fa.fetch, "Also fetch and print the counts");
    fq->add_option("--mode", fa.mode, "live or fixture")->check(CLI::IsMember({"live", "fixture"}));
    fq->add_option("--fixtures", fa.fixtures, "Fixture directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ing) return run_ingest(ingest);
        if (*ev) return run_eval(gold, pred, per_role, json_only);
        if (*sv) return run_serve(serve);
        if (*fq) return run_faers(fa);
    } catch (const InputError& e) {
        std::cerr << "drugwatch: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "drugwatch: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
