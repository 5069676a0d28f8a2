#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace superrad {

/// Sampled trajectory: one shared time grid (tau = Gamma t unless a channel
/// label says otherwise) and named channels.  Real channels keep their values
/// in the real part; complex ones are flagged so writers can split them into
/// _re/_im columns.
struct TimeSeries {
    struct Channel {
        std::string label;
        bool complex_valued = false;
        std::vector<std::complex<double>> values;
    };

    std::vector<double> times;
    std::vector<Channel> channels;

    void add_real(const std::string& label, std::vector<double> vals) {
        Channel ch{label, false, {}};
        ch.values.assign(vals.begin(), vals.end());
        channels.push_back(std::move(ch));
    }
    void add_complex(const std::string& label,
                     std::vector<std::complex<double>> vals) {
        channels.push_back({label, true, std::move(vals)});
    }
    const Channel& find(const std::string& label) const {
        for (auto& c : channels)
            if (c.label == label) return c;
        throw std::out_of_range("TimeSeries: no channel " + label);
    }
    std::vector<double> real_values(const std::string& label) const {
        const Channel& c = find(label);
        std::vector<double> out;
        out.reserve(c.values.size());
        for (auto& v : c.values) out.push_back(v.real());
        return out;
    }
};

}  // namespace superrad
