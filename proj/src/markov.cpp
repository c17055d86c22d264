#include "tsboot/models.hpp"

#include "tsboot/error.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tsboot {

std::size_t default_state_count(std::size_t n) noexcept {
    const auto root = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    return std::max<std::size_t>(1, std::min<std::size_t>(10, root));
}

double nearest_rank(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw std::invalid_argument("quantile of an empty vector");
    const double n = static_cast<double>(sorted.size());
    // The slack absorbs representation error in q (e.g. 1 - 0.05 != 0.95).
    const double rank = std::ceil(q * n - 1e-9);
    const auto r = static_cast<std::size_t>(std::clamp(rank, 1.0, n));
    return sorted[r - 1];
}

std::size_t MarkovChainModel::state_of(double value) const {
    return static_cast<std::size_t>(std::lower_bound(bin_edges.begin(), bin_edges.end(), value) -
                                    bin_edges.begin());
}

std::vector<std::vector<double>> estimate_transitions(std::span<const std::size_t> states,
                                                      std::size_t n_states, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("smoothing must be positive");
    std::vector<std::vector<double>> counts(n_states, std::vector<double>(n_states, 0.0));
    for (std::size_t t = 1; t < states.size(); ++t) counts[states[t - 1]][states[t]] += 1.0;
    for (auto& row : counts) {
        double total = 0.0;
        for (const double c : row) total += c;
        const double denom = total + static_cast<double>(n_states) * alpha;
        for (double& c : row) c = (c + alpha) / denom;
    }
    return counts;
}

MarkovChainModel fit_markov(std::span<const double> series, std::size_t n_states, double alpha) {
    if (series.empty()) throw Error(ErrorCode::InsufficientData, "cannot fit a chain to no values");
    if (n_states < 1 || n_states > series.size()) {
        throw Error(ErrorCode::InsufficientData,
                    "state count " + std::to_string(n_states) + " must lie in [1, " +
                        std::to_string(series.size()) + "]");
    }
    std::vector<double> sorted(series.begin(), series.end());
    std::sort(sorted.begin(), sorted.end());

    std::vector<double> edges;
    for (std::size_t j = 1; j < n_states; ++j) {
        edges.push_back(nearest_rank(sorted, static_cast<double>(j) / static_cast<double>(n_states)));
    }
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    // Raw states, then renumber so only occupied states remain.
    const auto raw_state = [&](double v) {
        return static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), v) -
                                        edges.begin());
    };
    std::vector<bool> occupied(edges.size() + 1, false);
    for (const double v : series) occupied[raw_state(v)] = true;
    std::vector<std::size_t> renumber(edges.size() + 1, 0);

    MarkovChainModel model;
    std::size_t next = 0;
    for (std::size_t s = 0; s < occupied.size(); ++s) {
        if (!occupied[s]) continue;
        // The minimum always lands in raw state 0, so s > 0 here has a real edge below it.
        if (next > 0) model.bin_edges.push_back(edges[s - 1]);
        renumber[s] = next++;
    }
    model.n_states = next;

    std::vector<std::size_t> states(series.size());
    model.state_values.assign(model.n_states, {});
    model.state_sources.assign(model.n_states, {});
    model.initial.assign(model.n_states, 0.0);
    for (std::size_t t = 0; t < series.size(); ++t) {
        const std::size_t s = renumber[raw_state(series[t])];
        states[t] = s;
        model.state_values[s].push_back(series[t]);
        model.state_sources[s].push_back(t);
        model.initial[s] += 1.0;
    }
    for (double& p : model.initial) p /= static_cast<double>(series.size());
    model.transition = estimate_transitions(states, model.n_states, alpha);
    return model;
}

std::size_t sample_categorical(std::span<const double> probabilities, RngStream& rng) {
    const double u = rng.uniform01();
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t k = 0; k < probabilities.size(); ++k) {
        if (probabilities[k] > 0.0) last_positive = k;
        cumulative += probabilities[k];
        if (u < cumulative) return k;
    }
    return last_positive;
}

MarkovPath sample_markov_path(const MarkovChainModel& model, std::size_t count, RngStream& rng) {
    MarkovPath path;
    path.values.reserve(count);
    path.source_indices.reserve(count);
    path.states.reserve(count);
    std::size_t state = 0;
    for (std::size_t t = 0; t < count; ++t) {
        state = t == 0 ? sample_categorical(model.initial, rng)
                       : sample_categorical(model.transition[state], rng);
        const auto& values = model.state_values[state];
        if (values.empty()) {
            throw Error(ErrorCode::EmptyState,
                        "Markov state " + std::to_string(state) + " has no stored values");
        }
        const std::size_t k = rng.uniform_index(values.size());
        path.values.push_back(values[k]);
        path.source_indices.push_back(static_cast<std::int64_t>(model.state_sources[state][k]));
        path.states.push_back(state);
    }
    return path;
}

}  // namespace tsboot
