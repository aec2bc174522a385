#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ckdv {

// Time series of named diagnostic channels, one value per time per channel.
struct DiagnosticsSeries {
    std::vector<double> times;
    std::map<std::string, std::vector<double>> channels;

    void append(double t) { times.push_back(t); }
    std::vector<double>& channel(const std::string& name) {
        auto& c = channels[name];
        return c;
    }
    const std::vector<double>& channel(const std::string& name) const {
        auto it = channels.find(name);
        if (it == channels.end()) throw std::out_of_range("no channel " + name);
        return it->second;
    }

    void validate() const {
        for (const auto& [name, vals] : channels)
            if (vals.size() != times.size())
                throw std::logic_error("channel " + name + " length mismatch");
        for (std::size_t i = 1; i < times.size(); ++i)
            if (!(times[i] > times[i - 1]))
                throw std::logic_error("times not strictly increasing");
    }

    // One column per channel, header row, times first.
    std::string to_csv() const;
};

} // namespace ckdv
