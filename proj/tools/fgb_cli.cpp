// Command-line interface: `fgb fit ...` clusters a CSV (or a synthetic blob
// dataset) and writes labels, a ball inventory, and a metrics JSON.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <fgb/fgb.hpp>

namespace {

fgb::BlobsSpec parse_blobs_spec(const std::string& text) {
    const std::string prefix = "blobs:";
    if (text.rfind(prefix, 0) != 0)
        throw fgb::ConfigError("--synthetic expects 'blobs:n=<int>,k=<int>,"
                               "d=<int>,spread=<real>', got '" + text + "'");
    fgb::BlobsSpec spec;
    bool have_n = false, have_k = false;
    std::stringstream ss(text.substr(prefix.size()));
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw fgb::ConfigError("--synthetic: bad key=value pair '" + item + "'");
        const std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        try {
            if (key == "n") {
                spec.n_per_cluster = std::stoul(value);
                have_n = true;
            } else if (key == "k") {
                spec.k = std::stoul(value);
                have_k = true;
            } else if (key == "d") {
                spec.d = std::stoul(value);
            } else if (key == "spread") {
                spec.spread = std::stod(value);
            } else {
                throw fgb::ConfigError("--synthetic: unknown key '" + key + "'");
            }
        } catch (const fgb::ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw fgb::ConfigError("--synthetic: cannot parse value '" + value +
                                   "' for key '" + key + "'");
        }
    }
    if (!have_n || !have_k)
        throw fgb::ConfigError("--synthetic requires at least n= and k=");
    return spec;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fuzzy granular-ball clustering benchmark harness"};
    app.require_subcommand(1);

    CLI::App* fit = app.add_subcommand(
        "fit", "Cluster a dataset and emit labels/balls/metrics");

    std::string input, synthetic, method_text, label_column;
    std::string output_labels, output_balls, output_metrics;
    std::uint64_t seed = 0;
    long long k = -1;
    int max_iter = 100;
    double tol = 1e-6, fuzzifier = 2.0, radius_factor = 2.0;
    std::size_t min_split_size = 8;
    bool no_header = false, scale = false;

    auto* input_opt =
        fit->add_option("--input", input, "Input CSV of points (one row each)");
    auto* synth_opt = fit->add_option(
        "--synthetic", synthetic,
        "Synthetic dataset spec: blobs:n=<points per cluster>,k=<clusters>,"
        "d=<dims>,spread=<real>");
    input_opt->excludes(synth_opt);
    fit->add_option("--method", method_text,
                    "One of fgb-overlap, fgb-kmeans, fcm, kmeans")
        ->required();
    fit->add_option("--k", k,
                    "Cluster count (required for fgb-kmeans/fcm/kmeans; "
                    "fgb-overlap derives its own)");
    fit->add_option("--seed", seed, "Random seed (default 0)");
    fit->add_option("--max-iter", max_iter, "Iteration cap for FCM/K-means");
    fit->add_option("--tol", tol, "Convergence threshold on center movement");
    fit->add_option("--fuzzifier", fuzzifier, "FCM fuzzifier m (> 1)");
    fit->add_option("--min-split-size", min_split_size,
                    "Smallest ball eligible for splitting");
    fit->add_option("--radius-factor", radius_factor,
                    "Oversize-ball threshold multiplier");
    fit->add_option("--label-column", label_column,
                    "Ground-truth label column: a header name or 'last'");
    fit->add_flag("--no-header", no_header, "Input CSV has no header row");
    fit->add_flag("--scale", scale, "Min-max scale features to [0,1]");
    fit->add_option("--output-labels", output_labels, "Write per-point labels CSV");
    fit->add_option("--output-balls", output_balls, "Write ball inventory CSV");
    fit->add_option("--output-metrics", output_metrics, "Write metrics JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        fgb::RunConfig config;
        if (!input.empty()) config.input_path = input;
        if (!synthetic.empty()) config.synthetic = parse_blobs_spec(synthetic);
        if (method_text == "fgb-overlap") {
            config.method = fgb::Method::FgbOverlap;
        } else if (method_text == "fgb-kmeans") {
            config.method = fgb::Method::FgbKmeans;
        } else if (method_text == "fcm") {
            config.method = fgb::Method::Fcm;
        } else if (method_text == "kmeans") {
            config.method = fgb::Method::Kmeans;
        } else {
            throw fgb::ConfigError("unknown method '" + method_text + "'");
        }
        if (k >= 0) config.k = static_cast<std::size_t>(k);
        if (fuzzifier <= 1.0) throw fgb::ConfigError("--fuzzifier must be > 1");
        if (max_iter < 1) throw fgb::ConfigError("--max-iter must be >= 1");
        if (tol < 0.0) throw fgb::ConfigError("--tol must be >= 0");
        if (min_split_size < 2) throw fgb::ConfigError("--min-split-size must be >= 2");
        if (radius_factor <= 0.0) throw fgb::ConfigError("--radius-factor must be > 0");
        if (!label_column.empty()) {
            if (no_header && label_column != "last")
                throw fgb::ConfigError(
                    "--label-column by name needs a header; use 'last' with "
                    "--no-header");
            config.label_column = label_column;
        }
        config.seed = seed;
        config.fuzzifier_m = fuzzifier;
        config.max_iter = max_iter;
        config.tol = tol;
        config.min_split_size = min_split_size;
        config.radius_factor = radius_factor;
        config.scale = scale;
        config.has_header = !no_header;
        if (!output_labels.empty()) config.output_labels = output_labels;
        if (!output_balls.empty()) config.output_balls = output_balls;
        if (!output_metrics.empty()) config.output_metrics = output_metrics;

        const fgb::RunResult result = fgb::run(config);
        std::cout << "method=" << method_text
                  << " n_clusters=" << result.report.n_clusters;
        if (result.report.n_balls)
            std::cout << " n_balls=" << *result.report.n_balls;
        if (result.report.acc) std::cout << " acc=" << *result.report.acc;
        if (result.report.nmi) std::cout << " nmi=" << *result.report.nmi;
        if (result.report.ari) std::cout << " ari=" << *result.report.ari;
        std::cout << " runtime_seconds=" << result.report.runtime_seconds << "\n";
        return 0;
    } catch (const fgb::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const fgb::CsvError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const fgb::DegenerateClusterError& e) {
        std::cerr << "algorithm error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "algorithm error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
