#include "chaosnet/pipeline.hpp"

#include <tuple>

#include "chaosnet/errors.hpp"
#include "chaosnet/rng.hpp"

namespace chaosnet {

Experiment Experiment::load(const ExperimentConfig& config) {
    Experiment experiment;
    experiment.config = config;
    experiment.dataset = load_csv(config.dataset, config.label_column, config.has_header);
    return experiment;
}

std::vector<LayerSpec> Experiment::layers_for(std::size_t n_inputs) const {
    if (!config.has_pairing()) return {};
    return {paired_layer_spec(n_inputs, *config.pair_eta, *config.pair_gamma, *config.pair_q,
                              config.params.map_kind, config.params.threshold)};
}

Experiment::Trial Experiment::run_trial(std::optional<std::size_t> k,
                                        std::uint64_t seed) const {
    const auto class_names = dataset.class_names();
    const auto layers = layers_for(dataset.features.cols());

    LabeledDataset train_rows;
    LabeledDataset test_rows;
    Extrema extrema;

    if (config.normalization == "global") {
        LabeledDataset normalized = dataset;
        std::tie(normalized.features, extrema) = normalize(dataset.features);
        if (k) {
            auto split = sample_per_class(normalized, *k, seed);
            train_rows = std::move(split.train);
            test_rows = std::move(split.rest);
        } else {
            train_rows = std::move(normalized);
        }
    } else {
        if (k) {
            auto split = sample_per_class(dataset, *k, seed);
            train_rows = std::move(split.train);
            test_rows = std::move(split.rest);
        } else {
            train_rows = dataset;
        }
        std::tie(train_rows.features, extrema) = normalize(train_rows.features);
        test_rows.features = normalize_with(test_rows.features, extrema);
    }

    std::vector<Matrix> per_class;
    per_class.reserve(class_names.size());
    for (const auto& name : class_names) {
        per_class.push_back(train_rows.rows_of(name));
    }

    Trial trial;
    trial.model = train(per_class, class_names, config.params, extrema, layers);
    trial.test_features = std::move(test_rows.features);
    trial.test_labels = std::move(test_rows.labels);
    return trial;
}

std::vector<SweepRecord> few_shot_sweep(const Experiment& experiment) {
    const auto& config = experiment.config;
    std::vector<SweepRecord> records;
    for (std::size_t k = config.k_min; k <= config.k_max; ++k) {
        for (std::size_t t = 0; t < config.trials; ++t) {
            SweepRecord record;
            record.k = k;
            record.trial = t;
            record.seed = Rng::stream(config.seed, k, t).next_u64();
            const auto trial = experiment.run_trial(k, record.seed);
            record.accuracy =
                evaluate(trial.model, trial.test_features, trial.test_labels, true).accuracy;
            records.push_back(record);
        }
    }
    return records;
}

} // namespace chaosnet
