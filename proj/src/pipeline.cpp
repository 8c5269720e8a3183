#include "drugwatch/pipeline.hpp"

#include <unordered_set>

namespace drugwatch {

namespace {

struct DocumentOutput {
    std::vector<NormalizedEventRecord> records;
    RunReport report;
    std::vector<ExtractionFailure> failures;
};

DocumentOutput process_document(const CaseReport& doc, const SentenceClassifier& classifier,
                                const EventExtractor& extractor, const PipelineConfig& config) {
    DocumentOutput out;
    out.report.articles_in = 1;
    std::vector<SentenceEvents> article;
    for (const Sentence& s : split_sentences(doc.abstract, doc.pmid)) {
        ++out.report.sentences_total;
        if (!classifier.classify(s.text).is_ade) continue;
        ++out.report.sentences_ade;
        try {
            auto extracted = extractor.extract(s.text);
            article.push_back(SentenceEvents{s.index, std::move(extracted.events)});
        } catch (const std::exception& e) {
            ++out.report.extraction_failures;
            out.failures.push_back({doc.pmid, s.index, e.what()});
        }
    }
    if (out.report.sentences_ade > 0) out.report.articles_ade = 1;
    auto merged = merge_by_drug(doc.pmid, doc.pub_year, article, config.synonyms);
    out.report.events_without_drug = merged.events_without_drug;
    out.report.records_out = merged.records.size();
    out.records = std::move(merged.records);
    return out;
}

PipelineOutput gather(std::vector<DocumentOutput>& docs) {
    PipelineOutput out;
    for (auto& d : docs) {
        out.report += d.report;
        for (auto& r : d.records) out.records.push_back(std::move(r));
        for (auto& f : d.failures) out.failures.push_back(std::move(f));
    }
    return out;
}

}  // namespace

RunReport& RunReport::operator+=(const RunReport& o) {
    articles_in += o.articles_in;
    articles_ade += o.articles_ade;
    sentences_total += o.sentences_total;
    sentences_ade += o.sentences_ade;
    records_out += o.records_out;
    events_without_drug += o.events_without_drug;
    extraction_failures += o.extraction_failures;
    return *this;
}

nlohmann::ordered_json to_json(const RunReport& r) {
    return nlohmann::ordered_json{{"articles_in", r.articles_in},
                                  {"articles_ade", r.articles_ade},
                                  {"sentences_total", r.sentences_total},
                                  {"sentences_ade", r.sentences_ade},
                                  {"records_out", r.records_out},
                                  {"events_without_drug", r.events_without_drug},
                                  {"extraction_failures", r.extraction_failures}};
}

PipelineOutput run_pipeline_serial(const std::vector<CaseReport>& corpus, const SentenceClassifier& classifier,
                                   const EventExtractor& extractor, const PipelineConfig& config) {
    std::vector<DocumentOutput> docs;
    docs.reserve(corpus.size());
    for (const auto& doc : corpus) docs.push_back(process_document(doc, classifier, extractor, config));
    return gather(docs);
}

PipelineOutput run_pipeline(const std::vector<CaseReport>& corpus, const SentenceClassifier& classifier,
                            const EventExtractor& extractor, const PipelineConfig& config) {
    std::vector<DocumentOutput> docs(corpus.size());
    const auto n = static_cast<std::ptrdiff_t>(corpus.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        docs[static_cast<std::size_t>(i)] = process_document(corpus[static_cast<std::size_t>(i)], classifier,
                                                             extractor, config);
    return gather(docs);
}

std::vector<NormalizedEventRecord> merge_record_stores(const std::vector<NormalizedEventRecord>& existing,
                                                       const std::vector<NormalizedEventRecord>& incoming,
                                                       const std::vector<std::string>& refreshed_pmids) {
    std::unordered_set<std::string> replaced(refreshed_pmids.begin(), refreshed_pmids.end());
    for (const auto& r : incoming) replaced.insert(r.pmid);
    std::vector<NormalizedEventRecord> out;
    for (const auto& r : existing)
        if (!replaced.count(r.pmid)) out.push_back(r);
    out.insert(out.end(), incoming.begin(), incoming.end());
    return out;
}

}  // namespace drugwatch
