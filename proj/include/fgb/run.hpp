#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "fgb/ballgen.hpp"
#include "fgb/blobs.hpp"
#include "fgb/connect.hpp"
#include "fgb/csv.hpp"
#include "fgb/fcm.hpp"
#include "fgb/metrics.hpp"

namespace fgb {

enum class Method { FgbOverlap, FgbKmeans, Fcm, Kmeans };

inline std::string method_name(Method m) {
    switch (m) {
        case Method::FgbOverlap: return "fgb-overlap";
        case Method::FgbKmeans: return "fgb-kmeans";
        case Method::Fcm: return "fcm";
        case Method::Kmeans: return "kmeans";
    }
    return "";
}

struct BlobsSpec {
    std::size_t n_per_cluster = 0;
    std::size_t k = 0;
    std::size_t d = 2;
    double spread = 1.0;
};

struct RunConfig {
    std::optional<std::string> input_path;
    std::optional<BlobsSpec> synthetic;
    Method method = Method::FgbKmeans;
    std::optional<std::size_t> k;
    std::uint64_t seed = 0;
    double fuzzifier_m = 2.0;
    int max_iter = 100;
    double tol = 1e-6;
    std::size_t min_split_size = 8;
    double radius_factor = 2.0;
    bool scale = false;  // min-max scale features to [0,1] before clustering
    std::optional<std::string> label_column;
    bool has_header = true;
    std::optional<std::string> output_labels;
    std::optional<std::string> output_balls;
    std::optional<std::string> output_metrics;
};

struct RunResult {
    ClusteringResult clustering;
    MetricsReport report;
};

namespace detail {

inline void min_max_scale(Matrix& points) {
    for (std::size_t c = 0; c < points.cols; ++c) {
        double lo = points(0, c), hi = points(0, c);
        for (std::size_t r = 1; r < points.rows; ++r) {
            lo = std::min(lo, points(r, c));
            hi = std::max(hi, points(r, c));
        }
        const double span = hi - lo;
        for (std::size_t r = 0; r < points.rows; ++r)
            points(r, c) = span > 0.0 ? (points(r, c) - lo) / span : 0.0;
    }
}

}  // namespace detail

inline RunResult run(const RunConfig& config) {
    if (config.input_path.has_value() == config.synthetic.has_value())
        throw ConfigError("exactly one of --input and --synthetic is required");
    const bool needs_k = config.method != Method::FgbOverlap;
    if (needs_k && !config.k)
        throw ConfigError("--k is required for method '" +
                          method_name(config.method) + "'");
    if (!needs_k && config.k)
        throw ConfigError("--k is not accepted for fgb-overlap; "
                          "the cluster count is emergent");
    if (config.output_balls && config.method != Method::FgbOverlap &&
        config.method != Method::FgbKmeans)
        throw ConfigError("--output-balls requires a fgb-* method");

    Dataset data;
    if (config.input_path) {
        data = load_csv(*config.input_path, config.label_column, config.has_header);
    } else {
        const BlobsSpec& spec = *config.synthetic;
        data = make_blobs(spec.n_per_cluster, spec.k, spec.d, spec.spread,
                          config.seed);
    }
    if (config.k && *config.k > data.n())
        throw ConfigError("--k exceeds the number of points");
    if (config.scale) detail::min_max_scale(data.points);

    FcmConfig fcm_config{config.fuzzifier_m, config.max_iter, config.tol,
                         config.seed};
    BallGenConfig ball_config{config.min_split_size, fcm_config,
                              config.radius_factor};

    ClusteringResult result;
    const auto start = std::chrono::steady_clock::now();
    switch (config.method) {
        case Method::FgbOverlap:
        case Method::FgbKmeans: {
            auto balls = generate_balls(data, ball_config);
            balls = normalize_radii(data, std::move(balls), ball_config);
            result = config.method == Method::FgbOverlap
                         ? connect_overlap(data, balls)
                         : connect_kmeans(data, balls, *config.k, config.seed,
                                          config.max_iter);
            break;
        }
        case Method::Fcm: {
            FcmResult fit = fcm_fit(data, *config.k, fcm_config);
            result.point_labels = hard_labels(fit.U);
            result.n_clusters = *config.k;
            result.iterations = fit.iterations;
            break;
        }
        case Method::Kmeans: {
            KmeansResult fit =
                kmeans_fit(data.points, *config.k, config.seed, config.max_iter);
            result.point_labels = std::move(fit.labels);
            result.n_clusters = *config.k;
            result.iterations = fit.iterations;
            break;
        }
    }
    const auto stop = std::chrono::steady_clock::now();
    result.runtime_seconds = std::chrono::duration<double>(stop - start).count();

    MetricsReport report;
    report.runtime_seconds = result.runtime_seconds;
    report.n_clusters = result.n_clusters;
    if (!result.balls.empty()) report.n_balls = result.balls.size();
    if (data.labels) {
        report.acc = accuracy(*data.labels, result.point_labels);
        report.nmi = nmi(*data.labels, result.point_labels);
        report.ari = ari(*data.labels, result.point_labels);
    }

    if (config.output_labels) write_labels_csv(*config.output_labels, result.point_labels);
    if (config.output_balls)
        write_balls_csv(*config.output_balls, result.balls, result.ball_labels,
                        data.d());
    if (config.output_metrics) {
        nlohmann::json j;
        j["acc"] = report.acc ? nlohmann::json(*report.acc) : nlohmann::json();
        j["nmi"] = report.nmi ? nlohmann::json(*report.nmi) : nlohmann::json();
        j["ari"] = report.ari ? nlohmann::json(*report.ari) : nlohmann::json();
        j["runtime_seconds"] = report.runtime_seconds;
        j["n_balls"] =
            report.n_balls ? nlohmann::json(*report.n_balls) : nlohmann::json();
        j["n_clusters"] = report.n_clusters;
        j["method"] = method_name(config.method);
        j["seed"] = config.seed;
        std::ofstream out(*config.output_metrics);
        if (!out) throw CsvError("cannot write '" + *config.output_metrics + "'");
        out << j.dump(2) << "\n";
    }
    return {std::move(result), report};
}

}  // namespace fgb
