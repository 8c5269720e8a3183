// Serial reference vs OpenMP kernels over a synthetic record store, plus the pipeline fan-out.

#include "drugwatch/classifier.hpp"
#include "drugwatch/corpus.hpp"
#include "drugwatch/extractor.hpp"
#include "drugwatch/pipeline.hpp"
#include "drugwatch/stats_kernels.hpp"
#include "generators.hpp"

#include <benchmark/benchmark.h>

#include <fstream>
#include <numeric>

using namespace drugwatch;

namespace {

std::string data(const std::string& rel) { return std::string(DRUGWATCH_DATA_DIR) + "/" + rel; }

struct Store {
    Index index;
    std::vector<RecordId> all;
    QuerySpec query;
    std::vector<MatchedArticle> articles;
};

const Store& store() {
    static const Store s = [] {
        testsupport::Rng rng(99);
        const testsupport::CorpusShape shape{200000, 300, 500};
        Store st{Index::build(testsupport::random_records(rng, shape)), {}, {}, {}};
        st.all.resize(st.index.records().size());
        std::iota(st.all.begin(), st.all.end(), RecordId{0});
        st.query.terms = {testsupport::drug_name(0)};
        st.query.gender = Gender::Female;
        st.query.year_range = std::pair{2005, 2020};
        st.articles = kernels::serial::collapse(st.index, TermKind::Drug, st.all);
        return st;
    }();
    return s;
}

template <auto Fn>
void bm_filter(benchmark::State& state) {
    const auto& s = store();
    for (auto _ : state) benchmark::DoNotOptimize(Fn(s.index, s.query, s.all));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.all.size()));
}

template <auto Fn>
void bm_collapse(benchmark::State& state) {
    const auto& s = store();
    for (auto _ : state) benchmark::DoNotOptimize(Fn(s.index, TermKind::Drug, s.all));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.all.size()));
}

template <auto Fn>
void bm_articles(benchmark::State& state) {
    const auto& s = store();
    for (auto _ : state) benchmark::DoNotOptimize(Fn(s.articles));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.articles.size()));
}

struct PipelineInputs {
    std::vector<CaseReport> corpus;
    BaselineClassifier classifier;
    RuleBasedExtractor extractor;
    PipelineConfig config;
};

const PipelineInputs& pipeline_inputs() {
    static const PipelineInputs p = [] {
        std::ifstream in(data("fixtures/corpus50.jsonl"));
        const auto base = parse_corpus(in).reports;
        std::vector<CaseReport> corpus;
        for (int copy = 0; copy < 20; ++copy)
            for (auto doc : base) {
                doc.pmid += "-" + std::to_string(copy);
                corpus.push_back(std::move(doc));
            }
        return PipelineInputs{
            std::move(corpus),
            BaselineClassifier::train(BaselineClassifier::load_labeled(data("ade_train.tsv"))),
            RuleBasedExtractor(Lexicons{Lexicon::load(data("lexicons/drugs.txt")), Lexicon::load(data("lexicons/effects.txt"))}),
            PipelineConfig{SynonymDictionary::load(data("synonyms.tsv"))}};
    }();
    return p;
}

void bm_pipeline_serial(benchmark::State& state) {
    const auto& p = pipeline_inputs();
    for (auto _ : state) benchmark::DoNotOptimize(run_pipeline_serial(p.corpus, p.classifier, p.extractor, p.config));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p.corpus.size()));
}

void bm_pipeline_omp(benchmark::State& state) {
    const auto& p = pipeline_inputs();
    for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(p.corpus, p.classifier, p.extractor, p.config));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p.corpus.size()));
}

}  // namespace

BENCHMARK(bm_filter<kernels::serial::filter>)->Name("filter/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(bm_filter<kernels::omp::filter>)->Name("filter/omp")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(bm_collapse<kernels::serial::collapse>)->Name("collapse/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(bm_collapse<kernels::omp::collapse>)->Name("collapse/omp")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(bm_articles<kernels::serial::count_terms>)->Name("count_terms/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(bm_articles<kernels::omp::count_terms>)->Name("count_terms/omp")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(bm_articles<kernels::serial::count_demographics>)->Name("count_demographics/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(bm_articles<kernels::omp::count_demographics>)
    ->Name("count_demographics/omp")
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK(bm_pipeline_serial)->Name("pipeline/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(bm_pipeline_omp)->Name("pipeline/omp")->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
