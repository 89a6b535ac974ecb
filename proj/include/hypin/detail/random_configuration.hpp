#pragma once

#include <random>

namespace hypin {

template <typename Rng>
ConfigurationVector random_feasible_configuration(int type_id, Rng& rng) {
    constexpr double margin = 0.05;
    auto layout = configuration_layout(type_id);
    std::uniform_real_distribution<double> dist(margin, kPi - margin);
    std::vector<double> alphas(layout.alphas.size(), 0.0);
    for (int group = 0; group < layout.group_count(); ++group) {
        std::vector<std::size_t> members;
        for (std::size_t k = 0; k < alphas.size(); ++k) {
            if (layout.alpha_groups[k] == group) {
                members.push_back(k);
            }
        }
        for (;;) {
            double sum = 0.0;
            for (std::size_t t = 0; t + 1 < members.size(); ++t) {
                alphas[members[t]] = dist(rng);
                sum += alphas[members[t]];
            }
            const double last = kTwoPi - sum;
            if (last > margin && last < kPi - margin) {
                alphas[members.back()] = last;
                break;
            }
        }
    }
    return configuration_from_alphas(type_id, std::move(alphas));
}

}  // namespace hypin
