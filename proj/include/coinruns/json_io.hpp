#ifndef COINRUNS_JSON_IO_HPP
#define COINRUNS_JSON_IO_HPP

#include <json.hpp>

#include "coinruns/run_distribution.hpp"

namespace coinruns::portmanteau {

// Wire schema: {"n": <int>, "p": <double>, "atoms": [{"x": "<text>", "w": <double>}, ...]}
// with atoms sorted by the run-vector text key.
inline nlohmann::json to_json(const RunDistribution& dist) {
    std::vector<std::pair<std::string, double>> rows;
    rows.reserve(dist.atoms().size());
    for (const auto& [x, w] : dist.atoms()) rows.emplace_back(x.to_text(), w);
    std::sort(rows.begin(), rows.end());
    nlohmann::json atoms = nlohmann::json::array();
    for (const auto& [text, w] : rows) atoms.push_back({{"x", text}, {"w", w}});
    return {{"n", dist.n()}, {"p", dist.p()}, {"atoms", std::move(atoms)}};
}

inline RunDistribution from_json(const nlohmann::json& j) {
    const int n = j.at("n").get<int>();
    const double p = j.at("p").get<double>();
    std::vector<RunDistribution::Atom> atoms;
    for (const auto& row : j.at("atoms"))
        atoms.emplace_back(RunVector::from_text(row.at("x").get<std::string>()),
                           row.at("w").get<double>());
    return RunDistribution(n, p, std::move(atoms));
}

}  // namespace coinruns::portmanteau

#endif
