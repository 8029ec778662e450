// Minimal library tour: make a blob dataset, build granular balls, connect
// them both ways, and print what happened.

#include <cstdio>

#include <fgb/fgb.hpp>

int main() {
    const fgb::Dataset data = fgb::make_blobs(150, 3, 2, 0.5, 42);
    std::printf("dataset: %zu points, %zu dims, 3 planted clusters\n",
                data.n(), data.d());

    fgb::BallGenConfig config;
    auto balls = fgb::generate_balls(data, config);
    balls = fgb::normalize_radii(data, std::move(balls), config);
    std::printf("granular balls: %zu\n", balls.size());
    double dm_max = 0.0, r_max = 0.0;
    for (const auto& ball : balls) {
        dm_max = std::max(dm_max, ball.dm);
        r_max = std::max(r_max, ball.radius);
    }
    std::printf("  largest radius %.3f, largest distribution measure %.3f\n",
                r_max, dm_max);

    const auto by_overlap = fgb::connect_overlap(data, balls);
    std::printf("overlap connection: %zu clusters (emergent), ari %.3f\n",
                by_overlap.n_clusters,
                fgb::ari(*data.labels, by_overlap.point_labels));

    const auto by_kmeans = fgb::connect_kmeans(data, balls, 3, 42);
    std::printf("k-means connection (k=3): ari %.3f\n",
                fgb::ari(*data.labels, by_kmeans.point_labels));
    return 0;
}
